#include "amalgam/quiver_rep.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace amalgam {

namespace {

void require_same_quiver(const QuiverPtr& a, const QuiverPtr& b) {
  if (a != b && !(*a == *b)) throw std::invalid_argument("representations live on different quivers");
}

}  // namespace

CMatrix central_matrix(const QuiverRepresentation& r, const CentralElement& lambda) {
  if (static_cast<int>(lambda.size()) != r.quiver()->vertex_count()) {
    throw std::invalid_argument("central element needs one scalar per vertex");
  }
  const Index n = r.total_dim();
  CMatrix out = CMatrix::Zero(n, n);
  for (int v = 0; v < r.quiver()->vertex_count(); ++v) {
    out.block(r.offset(v), r.offset(v), r.dim(v), r.dim(v)).diagonal().setConstant(lambda[static_cast<std::size_t>(v)]);
  }
  return out;
}

double moment_residual(const QuiverRepresentation& r, const CentralElement& lambda) {
  return (evaluate(r, moment_element(r.quiver())) - central_matrix(r, lambda)).norm();
}

QuiverRepresentation direct_sum(const QuiverRepresentation& r1, const QuiverRepresentation& r2) {
  require_same_quiver(r1.quiver(), r2.quiver());
  const Quiver& q = *r1.quiver();
  std::vector<Index> dims;
  for (int v = 0; v < q.vertex_count(); ++v) dims.push_back(r1.dim(v) + r2.dim(v));
  std::vector<CMatrix> mats;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const CMatrix& m1 = r1.matrix(a);
    const CMatrix& m2 = r2.matrix(a);
    CMatrix m = CMatrix::Zero(m1.rows() + m2.rows(), m1.cols() + m2.cols());
    m.topLeftCorner(m1.rows(), m1.cols()) = m1;
    m.bottomRightCorner(m2.rows(), m2.cols()) = m2;
    mats.push_back(std::move(m));
  }
  return QuiverRepresentation(r1.quiver(), std::move(dims), std::move(mats));
}

QuiverRepresentation change_basis(const QuiverRepresentation& r, const std::vector<CMatrix>& g) {
  const Quiver& q = *r.quiver();
  if (static_cast<int>(g.size()) != q.vertex_count()) throw std::invalid_argument("need one matrix per vertex");
  std::vector<CMatrix> inverses;
  for (int v = 0; v < q.vertex_count(); ++v) {
    const CMatrix& gv = g[static_cast<std::size_t>(v)];
    if (gv.rows() != r.dim(v) || gv.cols() != r.dim(v)) throw std::invalid_argument("base change has wrong shape");
    inverses.push_back(gv.rows() == 0 ? gv : CMatrix(gv.fullPivLu().inverse()));
  }
  std::vector<CMatrix> mats;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    mats.push_back(inverses[static_cast<std::size_t>(arr.source)] * r.matrix(a) * g[static_cast<std::size_t>(arr.target)]);
  }
  return QuiverRepresentation(r.quiver(), r.dims(), std::move(mats));
}

Index numerical_rank(const CMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Index rank = 0;
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > rel_tol * sv(0)) ++rank;
  }
  return rank;
}

Index burnside_span_dimension(const std::vector<CMatrix>& mats, Index n) {
  if (mats.empty()) throw std::invalid_argument("burnside test needs at least one matrix");
  if (n <= 0) throw std::invalid_argument("burnside test needs n >= 1");
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("burnside test: matrices must be n x n");
  }
  const Index full = n * n;
  // Orthonormal basis of the span (vectorised), grown from the frontier of
  // newly accepted words by right multiplication with the generators.
  std::vector<Eigen::VectorXcd> basis;
  std::vector<CMatrix> accepted;
  auto try_add = [&](const CMatrix& w) {
    double scale = w.norm();
    if (scale == 0.0) return false;
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(w.data(), full) / scale;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= b.dot(v) * b;
    }
    double residual = v.norm();
    if (residual <= 1e-8) return false;
    basis.push_back(v / residual);
    accepted.push_back(w / scale);
    return true;
  };
  std::vector<CMatrix> frontier;
  if (try_add(CMatrix::Identity(n, n))) frontier.push_back(CMatrix::Identity(n, n));
  for (const auto& m : mats) {
    if (try_add(m)) frontier.push_back(m);
  }
  while (!frontier.empty() && static_cast<Index>(basis.size()) < full) {
    std::vector<CMatrix> next;
    for (const auto& f : frontier) {
      for (const auto& g : mats) {
        CMatrix w = f * g;
        if (try_add(w)) next.push_back(std::move(w));
        if (static_cast<Index>(basis.size()) == full) break;
      }
      if (static_cast<Index>(basis.size()) == full) break;
    }
    frontier = std::move(next);
  }
  CMatrix stacked(full, static_cast<Index>(accepted.size()));
  for (std::size_t k = 0; k < accepted.size(); ++k) {
    stacked.col(static_cast<Index>(k)) = Eigen::Map<const Eigen::VectorXcd>(accepted[k].data(), full);
  }
  return numerical_rank(stacked, 1e-8);
}

bool burnside_irreducible(const std::vector<CMatrix>& mats, Index n) { return burnside_span_dimension(mats, n) == n * n; }

bool burnside_irreducible(const QuiverRepresentation& r) {
  const QuiverPtr& q = r.quiver();
  const Index n = r.total_dim();
  if (n == 0) return false;
  std::vector<CMatrix> gens;
  for (int v = 0; v < q->vertex_count(); ++v) {
    if (r.dim(v) > 0) gens.push_back(evaluate(r, PathElement::idempotent(q, v)));
  }
  for (int a = 0; a < q->arrow_count(); ++a) {
    if (r.matrix(a).size() > 0) gens.push_back(evaluate(r, PathElement(q, Path{q->arrow(a).source, {a}})));
  }
  return burnside_irreducible(gens, n);
}

namespace {

Complex trace_of(const QuiverRepresentation& r, const Necklace& n) {
  if (n.word.empty()) return static_cast<double>(r.dim(n.vertex));
  Path p{r.quiver()->arrow(n.word.front()).source, n.word};
  if (r.dim(p.start) == 0) return 0.0;
  return r.path_matrix(p).trace();
}

}  // namespace

std::vector<Complex> necklace_traces(const QuiverRepresentation& r, const std::vector<Necklace>& ns) {
  std::vector<Complex> out;
  out.reserve(ns.size());
  for (const auto& n : ns) {
    if (!n.word.empty()) make_necklace(*r.quiver(), n.word);  // validates closedness on this quiver
    out.push_back(trace_of(r, n));
  }
  return out;
}

Complex necklace_trace(const QuiverRepresentation& r, const NecklaceSum& n) {
  Complex total = 0.0;
  for (const auto& [neck, c] : n) total += c.to_complex() * trace_of(r, neck);
  return total;
}

QuiverRepresentation apply_flow(const QuiverRepresentation& r, const Derivation& d, double t, int nil_bound) {
  const QuiverPtr& q = r.quiver();
  std::vector<CMatrix> mats;
  for (int a = 0; a < q->arrow_count(); ++a) {
    const Arrow& arr = q->arrow(a);
    std::vector<PathElement> orbit = derivation_orbit(d, PathElement(q, Path{arr.source, {a}}), nil_bound);
    CMatrix full = CMatrix::Zero(r.total_dim(), r.total_dim());
    double factor = 1.0;
    for (std::size_t j = 0; j < orbit.size(); ++j) {
      if (j > 0) factor *= t / static_cast<double>(j);
      full += factor * evaluate(r, orbit[j]);
    }
    mats.push_back(full.block(r.offset(arr.source), r.offset(arr.target), r.dim(arr.source), r.dim(arr.target)));
  }
  return QuiverRepresentation(q, r.dims(), std::move(mats));
}

CMatrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      double re = normal(rng);
      double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

QuiverRepresentation random_representation(QuiverPtr quiver, std::vector<Index> dims, std::mt19937_64& rng) {
  std::vector<CMatrix> mats;
  for (const Arrow& a : quiver->arrows()) {
    mats.push_back(random_matrix(dims.at(static_cast<std::size_t>(a.source)), dims.at(static_cast<std::size_t>(a.target)), rng));
  }
  return QuiverRepresentation(std::move(quiver), std::move(dims), std::move(mats));
}

Index eigenvalue_multiplicity(const CMatrix& m, Complex value, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalue_multiplicity needs a square matrix");
  if (m.size() == 0) return 0;
  Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
  Index count = 0;
  for (Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (std::abs(solver.eigenvalues()(k) - value) <= tol) ++count;
  }
  return count;
}

}  // namespace amalgam
