#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "amalgam/path_algebra.hpp"

namespace amalgam {

using Complex = std::complex<double>;
using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using CMatrix = MatrixX<Complex>;

/// Representation of a quiver in the row-vector convention: the matrix of an
/// arrow a has shape dims[source(a)] x dims[target(a)] and a path a_1...a_k
/// acts by the product M_{a_1} ... M_{a_k}.
template <typename Scalar>
class Representation {
public:
  using Matrix = MatrixX<Scalar>;

  Representation(QuiverPtr quiver, std::vector<Eigen::Index> dims, std::vector<Matrix> matrices)
      : quiver_(std::move(quiver)), dims_(std::move(dims)), matrices_(std::move(matrices)) {
    if (static_cast<int>(dims_.size()) != quiver_->vertex_count()) {
      throw std::invalid_argument("representation needs one dimension per vertex");
    }
    for (auto d : dims_) {
      if (d < 0) throw std::invalid_argument("representation dimensions must be non-negative");
    }
    if (static_cast<int>(matrices_.size()) != quiver_->arrow_count()) {
      throw std::invalid_argument("representation needs one matrix per arrow");
    }
    for (int a = 0; a < quiver_->arrow_count(); ++a) {
      const Arrow& arr = quiver_->arrow(a);
      const Matrix& m = matrices_[static_cast<std::size_t>(a)];
      if (m.rows() != dim(arr.source) || m.cols() != dim(arr.target)) {
        throw std::invalid_argument("matrix of arrow '" + arr.name + "' is " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()) + ", expected " + std::to_string(dim(arr.source)) +
                                    "x" + std::to_string(dim(arr.target)));
      }
    }
  }

  /// All arrows zero.
  static Representation zero(QuiverPtr quiver, std::vector<Eigen::Index> dims) {
    std::vector<Matrix> mats;
    for (const Arrow& a : quiver->arrows()) {
      mats.push_back(Matrix::Zero(dims.at(static_cast<std::size_t>(a.source)), dims.at(static_cast<std::size_t>(a.target))));
    }
    return Representation(std::move(quiver), std::move(dims), std::move(mats));
  }

  const QuiverPtr& quiver() const { return quiver_; }
  const std::vector<Eigen::Index>& dims() const { return dims_; }
  Eigen::Index dim(int vertex) const { return dims_[static_cast<std::size_t>(vertex)]; }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const Matrix& matrix(int arrow) const { return matrices_[static_cast<std::size_t>(arrow)]; }
  const Matrix& matrix(std::string_view arrow) const { return matrix(quiver_->arrow_index(arrow)); }
  /// Replaces one arrow matrix (shape must match).
  void set_matrix(int arrow, Matrix m) {
    const Arrow& arr = quiver_->arrow(arrow);
    if (m.rows() != dim(arr.source) || m.cols() != dim(arr.target)) {
      throw std::invalid_argument("matrix of arrow '" + arr.name + "' has the wrong shape");
    }
    matrices_[static_cast<std::size_t>(arrow)] = std::move(m);
  }

  Eigen::Index total_dim() const {
    Eigen::Index n = 0;
    for (auto d : dims_) n += d;
    return n;
  }
  /// Row/column offset of the block of vertex v.
  Eigen::Index offset(int vertex) const {
    Eigen::Index o = 0;
    for (int v = 0; v < vertex; ++v) o += dims_[static_cast<std::size_t>(v)];
    return o;
  }

  /// Matrix of a path, shape dims[start] x dims[end].
  Matrix path_matrix(const Path& p) const {
    Matrix out = Matrix::Identity(dim(p.start), dim(p.start));
    for (int a : p.arrows) out = (out * matrix(a)).eval();
    return out;
  }

private:
  QuiverPtr quiver_;
  std::vector<Eigen::Index> dims_;
  std::vector<Matrix> matrices_;
};

using QuiverRepresentation = Representation<Complex>;

/// lambda = sum_v lambda_v e_v.
using CentralElement = std::vector<Complex>;

/// Block matrix of x: the path p from u to v contributes coeff * M_p into block (u, v).
template <typename Scalar>
MatrixX<Scalar> evaluate(const Representation<Scalar>& r, const PathElement& x) {
  if (!(r.quiver() == x.quiver() || *r.quiver() == *x.quiver())) {
    throw std::invalid_argument("evaluate: element and representation live on different quivers");
  }
  const Eigen::Index n = r.total_dim();
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(n, n);
  for (const auto& [p, c] : x.terms()) {
    const int end = path_end(*r.quiver(), p);
    if (r.dim(p.start) == 0 || r.dim(end) == 0) continue;
    out.block(r.offset(p.start), r.offset(end), r.dim(p.start), r.dim(end)) +=
        (r.path_matrix(p) * scalar_from<Scalar>(c)).eval();
  }
  return out;
}

/// Block-diagonal matrix with lambda_v * identity on vertex v.
CMatrix central_matrix(const QuiverRepresentation& r, const CentralElement& lambda);

/// || evaluate(r, m) - lambda ||_F for the moment element m.
double moment_residual(const QuiverRepresentation& r, const CentralElement& lambda);

QuiverRepresentation direct_sum(const QuiverRepresentation& r1, const QuiverRepresentation& r2);

/// Base change by g_v in GL(dims[v]): M_a -> g_{source}^{-1} M_a g_{target}.
QuiverRepresentation change_basis(const QuiverRepresentation& r, const std::vector<CMatrix>& g);

/// Dimension of the span of all words in mats (identity included).
Eigen::Index burnside_span_dimension(const std::vector<CMatrix>& mats, Eigen::Index n);

/// True iff the words in mats span M_n(C); rank tolerance 1e-8 relative to
/// the largest singular value. Throws on an empty list or wrong shapes.
bool burnside_irreducible(const std::vector<CMatrix>& mats, Eigen::Index n);

/// Burnside test for the path algebra image: idempotents and arrows.
bool burnside_irreducible(const QuiverRepresentation& r);

std::vector<Complex> necklace_traces(const QuiverRepresentation& r, const std::vector<Necklace>& ns);

/// Trace of a linear combination of necklaces.
Complex necklace_trace(const QuiverRepresentation& r, const NecklaceSum& n);

/// Matrices evaluate(r, exp(t theta)(a)) for every arrow a.
QuiverRepresentation apply_flow(const QuiverRepresentation& r, const Derivation& d, double t, int nil_bound);

/// Gaussian entries (real and imaginary parts N(0, 1/2)).
CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
QuiverRepresentation random_representation(QuiverPtr quiver, std::vector<Eigen::Index> dims, std::mt19937_64& rng);

/// Number of eigenvalues within tol of value.
Eigen::Index eigenvalue_multiplicity(const CMatrix& m, Complex value, double tol = 1e-6);

/// Numerical rank with tolerance rel_tol * sigma_max.
Eigen::Index numerical_rank(const CMatrix& m, double rel_tol = 1e-8);

}  // namespace amalgam
