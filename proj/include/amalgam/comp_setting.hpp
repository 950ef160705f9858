#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amalgam/algebra_model.hpp"

namespace amalgam {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2026ULL;

/// Outcome of the randomized full-rank test of the gluing map psi.
struct RankTestResult {
  bool full_rank = false;
  int trials = 0;       // independent samples drawn
  std::int64_t size = 0;  // n = sum_i l_i p_i
};

/// Linear constraints cutting out comp: one row per base block k,
/// (row_k . alpha) = sum_i a_ki p_i - sum_j b_kj q_j.
IntMatrix restriction_constraints(const BipartiteQuiver& q);

/// Builds psi = sum_a X_a (x) H_a with X_a uniform over F_p (p = 2^61 - 1),
/// H_a running over a basis of Hom_S(V_i, W_j), and checks that it is an
/// invertible n x n matrix. Repeats with fresh samples until the probability
/// of a false "not semistable" answer is below 2^-40.
RankTestResult semistable_rank_test(const BipartiteQuiver& q, const DimensionVector& alpha,
                                    std::uint64_t seed = kDefaultSeed);

/// Deterministic oracle: weighted Hall condition on each base-isotypic part
/// of psi (left weight a_ki p_i, right weight b_kj q_j, every surviving block free).
bool hall_condition(const BipartiteQuiver& q, const DimensionVector& alpha);

/// alpha is in comp: balanced and theta-semistable. The randomized test is
/// cross-checked against hall_condition; a disagreement throws std::logic_error.
bool comp_contains(const BipartiteQuiver& q, const DimensionVector& alpha);

struct CompGenerators {
  std::vector<DimensionVector> generators;  // lexicographically sorted
  /// Set when the search was cut by the bound; generators of larger total
  /// dimension may exist.
  bool possibly_incomplete = false;
};

/// Indecomposable elements of comp with total dimension <= bound
/// (bound <= 0: no bound; the search then always completes).
CompGenerators comp_generators(const BipartiteQuiver& q, std::int64_t bound = 0);

/// Writes alpha as a non-negative combination of gens, if possible.
std::optional<IntVector> decompose(const DimensionVector& alpha, const std::vector<DimensionVector>& gens);

struct QuiverSetting {
  std::vector<DimensionVector> generators;
  IntMatrix arrow_matrix;  // arrows i -> j
  IntVector alpha;
  std::vector<std::string> vertex_labels;

  Index vertex_count() const { return arrow_matrix.rows(); }
  std::int64_t loop_count() const { return arrow_matrix.trace(); }
};

/// arrow_matrix(i, j) = delta_ij - chi(beta_i, beta_j), alpha_i = |beta_i|.
QuiverSetting quiver_setting(const BipartiteQuiver& q, const std::vector<DimensionVector>& gens);

/// Equal arrow counts both ways between distinct vertices.
bool is_symmetric(const QuiverSetting& qs);

/// Simple Gamma-representations exist in the component b.beta + c.gamma.
bool gamma_has_simples(const std::array<std::int64_t, 6>& b, const std::array<std::int64_t, 6>& c);

std::string setting_to_dot(const QuiverSetting& qs);
std::string setting_to_text(const QuiverSetting& qs, bool possibly_incomplete);

bool lex_less(const DimensionVector& a, const DimensionVector& b);

}  // namespace amalgam
