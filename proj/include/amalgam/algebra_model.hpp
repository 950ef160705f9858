#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "amalgam/cyclo.hpp"

namespace amalgam {

using Index = Eigen::Index;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Dimension vector (p_1..p_s; q_1..q_t) of the bipartite quiver, or a
/// dimension vector of an output quiver setting. Entries are non-negative.
using DimensionVector = IntVector;

/// M_{k_1}(C) + ... + M_{k_r}(C), blocks listed in a fixed order.
class SemisimpleAlgebra {
public:
  SemisimpleAlgebra() = default;
  explicit SemisimpleAlgebra(std::vector<std::int64_t> blocks);

  const std::vector<std::int64_t>& blocks() const { return blocks_; }
  Index size() const { return static_cast<Index>(blocks_.size()); }
  std::int64_t block(Index i) const { return blocks_[static_cast<std::size_t>(i)]; }
  std::int64_t dimension() const;

  friend bool operator==(const SemisimpleAlgebra&, const SemisimpleAlgebra&) = default;

private:
  std::vector<std::int64_t> blocks_;
};

/// Bratteli diagram of base -> target. multiplicities(k, j) is the number of
/// copies of the k-th simple of the base inside the j-th simple of the
/// target, so target.block(j) = sum_k multiplicities(k, j) * base.block(k).
class BratteliEmbedding {
public:
  BratteliEmbedding(SemisimpleAlgebra base, SemisimpleAlgebra target, IntMatrix multiplicities);

  const SemisimpleAlgebra& base() const { return base_; }
  const SemisimpleAlgebra& target() const { return target_; }
  const IntMatrix& multiplicities() const { return mult_; }

private:
  SemisimpleAlgebra base_;
  SemisimpleAlgebra target_;
  IntMatrix mult_;
};

/// Optional reporting metadata: eigenvalue labels of the simple factors.
struct AmalgamLabels {
  std::vector<Cyclotomic> base;
  std::vector<Cyclotomic> left;
  std::vector<Cyclotomic> right;
  std::vector<std::string> base_text;
  std::vector<std::string> left_text;
  std::vector<std::string> right_text;
};

/// S_1 *_S S_2 given by two Bratteli embeddings of the same base.
struct AmalgamSpec {
  AmalgamSpec(BratteliEmbedding left, BratteliEmbedding right, std::optional<AmalgamLabels> labels = {});

  BratteliEmbedding left;
  BratteliEmbedding right;
  std::optional<AmalgamLabels> labels;

  const SemisimpleAlgebra& base() const { return left.base(); }
};

/// The bipartite quiver Lambda with its character and Euler form.
struct BipartiteQuiver {
  std::vector<std::int64_t> base_dims;   // k_1..k_r
  std::vector<std::int64_t> left_dims;   // l_1..l_s
  std::vector<std::int64_t> right_dims;  // m_1..m_t
  IntMatrix left_mult;                   // r x s  (a_ki)
  IntMatrix right_mult;                  // r x t  (b_kj)
  IntMatrix arrow_counts;                // s x t  (n_ij)
  IntVector theta;                       // (-l; m)
  IntMatrix euler;                       // (s+t) x (s+t)
  std::optional<AmalgamLabels> labels;

  Index left_count() const { return static_cast<Index>(left_dims.size()); }
  Index right_count() const { return static_cast<Index>(right_dims.size()); }
  Index vertex_count() const { return left_count() + right_count(); }
  /// Total dimension n = sum_i l_i p_i of a dimension vector.
  std::int64_t total_dimension(const DimensionVector& alpha) const;
};

BipartiteQuiver build_bipartite(const AmalgamSpec& spec);

/// x^T * euler * y. Throws std::invalid_argument on length mismatch.
std::int64_t euler_form(const BipartiteQuiver& q, const DimensionVector& x, const DimensionVector& y);

/// Group algebra C Z_n as n one-dimensional blocks, ordered as `eigenvalues`.
SemisimpleAlgebra cyclic_group_algebra(std::size_t n);

// Bundled amalgams.
AmalgamSpec dinfty_spec();
AmalgamSpec projective_modular_spec();
AmalgamSpec modular_spec();
/// M_{ak} *_{M_k} M_{bk}.
AmalgamSpec matrix_amalgam_spec(std::int64_t a, std::int64_t b, std::int64_t k);

/// DOT rendering of Lambda; edge labels carry the arrow multiplicities.
std::string bipartite_to_dot(const BipartiteQuiver& q);

}  // namespace amalgam
