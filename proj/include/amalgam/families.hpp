#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "amalgam/quiver_rep.hpp"

namespace amalgam {

/// Matrix representation of D_inf, PSL_2(Z), SL_2(Z) (generators s, t) or B_3
/// (generators sigma1, sigma2).
struct GroupRep {
  GroupTag group = GroupTag::ProjModular;
  std::vector<std::pair<std::string, CMatrix>> generators;
  Complex scale = 1.0;  // lambda of a braid representation

  const CMatrix& generator(std::string_view name) const;
  Eigen::Index dim() const { return generators.empty() ? 0 : generators.front().second.rows(); }
  std::vector<CMatrix> matrices() const;
};

struct RelationResidual {
  std::string relation;
  double residual = 0.0;
};

/// Frobenius norms of the defining relations of the group.
std::vector<RelationResidual> relation_residuals(const GroupRep& rep);
double max_relation_residual(const GroupRep& rep);

using DinftyDims = std::array<Eigen::Index, 4>;
using HexDims = std::array<Eigen::Index, 6>;

/// Arrow matrices S_1, T_1, S_2, T_2 on the D_inf quiver with dims (a1, a2, b1, b2).
GroupRep dinfty_rep(const CMatrix& s1, const CMatrix& t1, const CMatrix& s2, const CMatrix& t2, const DinftyDims& dims);
GroupRep dinfty_rep(const QuiverRepresentation& r);

/// Hexagon data S_i: a_i x a_{i+1}, T_i: a_{i+1} x a_i.
GroupRep gammabar_rep(const std::array<CMatrix, 6>& s, const std::array<CMatrix, 6>& t, const HexDims& dims);
GroupRep gammabar_rep(const QuiverRepresentation& r);

/// sigma1 = lambda t^2 s, sigma2 = lambda s t^2. Throws on lambda = 0 or a
/// non-ProjModular input.
GroupRep braid3_rep(const GroupRep& proj, Complex lambda);

/// s = diag(s_beta, i s_gamma), t = diag(t_beta, -t_gamma).
GroupRep modular_rep(const GroupRep& beta, const GroupRep& gamma);

/// Images (phi(s), phi(t)) in any scalar field; exact over Cyclotomic.
template <typename Scalar>
std::pair<MatrixX<Scalar>, MatrixX<Scalar>> phi_images(const Representation<Scalar>& r, GroupTag group) {
  PhiMap phi = phi_map(group);
  return {evaluate(r, phi.s), evaluate(r, phi.t)};
}

/// Point of the Kleinian surface: u = s1...s6, v = t6...t1, c_i = s_i t_i.
struct KleinianPoint {
  Complex u = 0.0;
  Complex v = 0.0;
  std::array<Complex, 6> c{};

  /// |u v - prod c_i|.
  double relation_residual() const;
};

/// (u, v, c) with u v = c^6.
struct Pi0Point {
  Complex u = 0.0;
  Complex v = 0.0;
  Complex c = 0.0;
};

/// u v = c_1 ... c_6 with the chain c_i = c_{i-1} + lambda_1[i] started at c6.
struct Pi1Point {
  Complex u = 0.0;
  Complex v = 0.0;
  Complex c6 = 0.0;
};

/// lambda_1 = (1, rho^2, rho, 1, rho^2, rho).
CentralElement lambda1();
std::array<Cyclotomic, 6> lambda1_exact();
/// c_1..c_6 determined by c6 and lambda_1.
std::array<Complex, 6> pi1_chain(Complex c6);

/// Direct sum of one delta-dimensional scalar solution of m = 0 per point.
QuiverRepresentation pi0_sample(const std::vector<Pi0Point>& points);
/// Same for m = lambda_1.
QuiverRepresentation pi1_sample(const std::vector<Pi1Point>& points);

/// Reads back the points of a representation built by pi0_sample / pi1_sample
/// (dims (n,...,n), diagonal arrow matrices).
std::vector<KleinianPoint> kleinian_points(const QuiverRepresentation& r);

/// Gamma-bar representation of a Pi_0 / Pi_1 sample; throws if the sample
/// does not satisfy its moment relation.
GroupRep gammabar_family(const QuiverRepresentation& sample, const CentralElement& lambda);

/// Diagonal blocks of V(sigma1), V(sigma2) compared with their expected
/// collapsed forms for Pi_0 (lambda = 0) or Pi_1 (lambda = lambda_1).
struct DiagonalCollapse {
  std::array<double, 6> sigma1_deviation{};
  std::array<double, 6> sigma2_deviation{};
  double max_deviation() const;
};
DiagonalCollapse diagonal_collapse(const QuiverRepresentation& sample, bool deformed);

Pi0Point random_pi0_point(std::mt19937_64& rng);
Pi1Point random_pi1_point(std::mt19937_64& rng);

/// Calogero-Moser data on the quiver a: 1 -> 2, a*: 2 -> 1, loops b, b* at 2.
struct CalogeroPoint {
  CMatrix x;  // b*
  CMatrix z;  // b
  CMatrix u;  // a, 1 x k
  CMatrix v;  // a*, k x 1

  Eigen::Index k() const { return x.rows(); }
  /// [X, Z] + 1.
  CMatrix commutator_plus_one() const;
};

/// lambda = -k e1 + e2.
CentralElement calogero_lambda(Eigen::Index k);

/// X = diag(x) distinct, Z_pq = 1/(x_p - x_q), diag(Z) = 0, u = ones, v = -ones.
CalogeroPoint calogero_point(const std::vector<Complex>& x);
CalogeroPoint calogero_sample(Eigen::Index k, std::uint64_t seed);
/// X -> X + t Z^n.
CalogeroPoint calogero_flow(const CalogeroPoint& p, int n, Complex t);

QuiverRepresentation calogero_to_rep(const CalogeroPoint& p);
CalogeroPoint rep_to_calogero(const QuiverRepresentation& r);

/// Necklace b^{n+1} / (n+1) generating the n-th Calogero-Moser flow.
NecklaceSum calogero_hamiltonian(int n);

}  // namespace amalgam
