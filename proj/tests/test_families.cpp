#include <algorithm>
#include <numeric>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "amalgam/comp_setting.hpp"
#include "amalgam/families.hpp"

using namespace amalgam;

namespace {

const Complex kRho = Cyclotomic::rho().to_complex();
const Complex kI(0.0, 1.0);

QuiverRepresentation random_hex(const HexDims& dims, std::mt19937_64& rng) {
  return random_representation(hexagon_quiver(), std::vector<Index>(dims.begin(), dims.end()), rng);
}

/// Scalar hexagon representation with s_i = 1 and t_i = c_i.
QuiverRepresentation scalar_hex(const std::array<Complex, 6>& c) {
  std::vector<CMatrix> mats;
  for (int i = 0; i < 6; ++i) mats.push_back(CMatrix::Ones(1, 1));
  for (int i = 0; i < 6; ++i) mats.push_back(CMatrix::Constant(1, 1, c[static_cast<std::size_t>(i)]));
  return QuiverRepresentation(hexagon_quiver(), {1, 1, 1, 1, 1, 1}, mats);
}

}  // namespace

TEST_CASE("D_inf factory examples") {
  const GroupRep zero = dinfty_rep(CMatrix::Zero(1, 1), CMatrix::Zero(1, 1), CMatrix::Zero(1, 1), CMatrix::Zero(1, 1),
                                   {1, 1, 1, 1});
  Eigen::VectorXcd s_diag(4), t_diag(4);
  s_diag << 1.0, -1.0, 1.0, -1.0;
  t_diag << 1.0, -1.0, -1.0, 1.0;
  CHECK(zero.generator("s") == CMatrix(s_diag.asDiagonal()));
  CHECK(zero.generator("t") == CMatrix(t_diag.asDiagonal()));

  std::mt19937_64 rng(1);
  const GroupRep r = dinfty_rep(random_matrix(2, 1, rng), random_matrix(1, 2, rng), random_matrix(1, 2, rng),
                                random_matrix(2, 1, rng), {2, 1, 1, 2});
  CHECK((r.generator("s") * r.generator("s") - CMatrix::Identity(6, 6)).norm() < 1e-12);
  CHECK(max_relation_residual(r) < 1e-12);

  const GroupRep simple = dinfty_rep(CMatrix::Zero(1, 0), CMatrix::Zero(0, 1), CMatrix::Zero(0, 0), CMatrix::Zero(0, 0),
                                     {1, 0, 0, 0});
  CHECK(simple.generator("s") == CMatrix::Ones(1, 1));
  CHECK(simple.generator("t") == CMatrix::Ones(1, 1));
  CHECK_THROWS_AS(dinfty_rep(CMatrix::Zero(2, 1), CMatrix::Zero(1, 1), CMatrix::Zero(1, 1), CMatrix::Zero(1, 1),
                             {1, 1, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(simple.generator("u"), std::out_of_range);
}

TEST_CASE("projective modular factory examples") {
  std::array<CMatrix, 6> s, t;
  for (auto& m : s) m = CMatrix::Zero(1, 1);
  for (auto& m : t) m = CMatrix::Zero(1, 1);
  const GroupRep zero = gammabar_rep(s, t, {1, 1, 1, 1, 1, 1});
  Eigen::VectorXcd s_diag(6), t_diag(6);
  s_diag << 1.0, -1.0, 1.0, -1.0, 1.0, -1.0;
  t_diag << 1.0, kRho, kRho * kRho, 1.0, kRho, kRho * kRho;
  CHECK((zero.generator("s") - CMatrix(s_diag.asDiagonal())).norm() < 1e-15);
  CHECK((zero.generator("t") - CMatrix(t_diag.asDiagonal())).norm() < 1e-15);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupRep g = gammabar_rep(random_hex({1, 1, 1, 1, 1, 1}, rng));
    const CMatrix& tt = g.generator("t");
    CHECK((tt * tt * tt - CMatrix::Identity(6, 6)).norm() < 1e-10);
  }
  s[0] = CMatrix::Zero(2, 1);
  CHECK_THROWS_AS(gammabar_rep(s, t, {1, 1, 1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("braid images match the reference matrices exactly") {
  using C = Cyclotomic;
  std::array<C, 6> S, T;
  std::vector<MatrixX<C>> mats;
  for (int k = 0; k < 6; ++k) S[static_cast<std::size_t>(k)] = C(Rational(k + 2, 3)) + C::i() * C(k);
  for (int k = 0; k < 6; ++k) T[static_cast<std::size_t>(k)] = C(Rational(2 * k + 5, 7)) - C::rho() * C(k % 2);
  for (const auto& x : S) mats.push_back(MatrixX<C>::Constant(1, 1, x));
  for (const auto& x : T) mats.push_back(MatrixX<C>::Constant(1, 1, x));
  const Representation<C> r(hexagon_quiver(), {1, 1, 1, 1, 1, 1}, mats);
  const auto [s, t] = phi_images(r, GroupTag::ProjModular);
  const MatrixX<C> sigma1 = t * t * s;
  const MatrixX<C> sigma2 = s * t * t;
  const C i = C::i(), p = C::rho(), p2 = p * p;
  auto S_ = [&](int k) { return S[static_cast<std::size_t>(k - 1)]; };
  auto T_ = [&](int k) { return T[static_cast<std::size_t>(k - 1)]; };
  MatrixX<C> v1(6, 6), v2(6, 6);
  v1 << 1, i * p * S_(1), 0, 0, 0, T_(6),
      -i * p2 * T_(1), S_(1) * T_(1) - T_(2) * S_(2) - p2, -S_(2), -i * p2 * S_(3) * S_(2), 0, -i * p2 * T_(6) * T_(1),
      0, p * T_(2), p, i * S_(3), 0, 0,
      0, -i * p * T_(2) * T_(3), -i * p * T_(3), S_(3) * T_(3) - T_(4) * S_(4) - 1, -S_(4), -i * S_(5) * S_(4),
      0, 0, 0, p2 * T_(4), p2, i * p2 * S_(5),
      -S_(6), -i * p * S_(1) * S_(6), 0, -i * T_(4) * T_(5), -i * T_(5), S_(5) * T_(5) - T_(6) * S_(6) - p;
  v2 << T_(1) * S_(1) - S_(6) * T_(6) + 1, i * S_(1), -i * p * S_(2) * S_(1), 0, -i * T_(5) * T_(6), p * T_(6),
      i * p2 * T_(1), -p2, S_(2), 0, 0, 0,
      -i * p2 * T_(1) * T_(2), p2 * T_(2), T_(3) * S_(3) - S_(2) * T_(2) + p, i * p2 * S_(3), -i * p2 * S_(4) * S_(3), 0,
      0, 0, i * p * T_(3), -1, S_(4), 0,
      -i * S_(6) * S_(5), 0, -i * p * T_(3) * T_(4), T_(4), p2 + T_(5) * S_(5) - S_(4) * T_(4), i * p * S_(5),
      S_(6), 0, 0, 0, i * T_(5), -p;
  CHECK(sigma1 == v1);
  CHECK(sigma2 == v2);
  CHECK(sigma1(0, 1) == i * p * S_(1));
  CHECK(sigma1(1, 2) == -S_(2));
}

TEST_CASE("braid factory") {
  std::mt19937_64 rng(3);
  const GroupRep zero = gammabar_rep(QuiverRepresentation::zero(hexagon_quiver(), {1, 1, 1, 1, 1, 1}));
  const GroupRep b1 = braid3_rep(zero, 1.0);
  CHECK(max_relation_residual(b1) < 1e-15);
  const CMatrix& sig = b1.generator("sigma1");
  CHECK((sig - CMatrix(sig.diagonal().asDiagonal())).norm() == 0.0);
  const GroupRep b2 = braid3_rep(zero, 2.0);
  CHECK(max_relation_residual(b2) < 1e-12);
  const GroupRep p = gammabar_family(pi0_sample({random_pi0_point(rng)}), CentralElement(6, 0.0));
  CHECK(max_relation_residual(braid3_rep(p, 1.0)) <= 1e-9);
  CHECK_THROWS_AS(braid3_rep(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(braid3_rep(b1, 1.0), std::invalid_argument);
}

TEST_CASE("modular factory") {
  const GroupRep zero6 = gammabar_rep(QuiverRepresentation::zero(hexagon_quiver(), {1, 1, 1, 1, 1, 1}));
  const GroupRep empty = gammabar_rep(QuiverRepresentation::zero(hexagon_quiver(), {0, 0, 0, 0, 0, 0}));

  const GroupRep lifted = modular_rep(zero6, empty);
  const CMatrix& s = lifted.generator("s");
  const CMatrix& t = lifted.generator("t");
  CHECK((s * s - CMatrix::Identity(6, 6)).norm() < 1e-12);
  CHECK((t * t * t - CMatrix::Identity(6, 6)).norm() < 1e-12);

  const GroupRep twisted = modular_rep(empty, zero6);
  const CMatrix& ts = twisted.generator("s");
  for (Index k = 0; k < 6; ++k) CHECK(ts(k, k) == (k % 2 == 0 ? kI : -kI));
  CHECK((ts * ts * ts * ts - CMatrix::Identity(6, 6)).norm() == 0.0);

  const GroupRep both = modular_rep(zero6, zero6);
  CHECK(both.dim() == 12);
  CHECK(max_relation_residual(both) < 1e-12);
  std::set<std::pair<std::string, std::string>> pairs;
  auto key = [](Complex z) {
    for (long k = 0; k < 12; ++k) {
      if (std::abs(z - Cyclotomic::zeta_pow(k).to_complex()) < 1e-9) return std::to_string(k);
    }
    return std::string("?");
  };
  for (Index k = 0; k < 12; ++k) pairs.insert({key(both.generator("s")(k, k)), key(both.generator("t")(k, k))});
  std::set<std::pair<std::string, std::string>> expected;
  for (long se : {0L, 6L}) {
    for (long te : {0L, 4L, 8L}) expected.insert({std::to_string(se), std::to_string(te)});
  }
  for (long se : {3L, 9L}) {
    for (long te : {6L, 10L, 2L}) expected.insert({std::to_string(se), std::to_string(te)});
  }
  CHECK(pairs == expected);
}

TEST_CASE("relations hold for seeded random inputs") {
  const std::vector<HexDims> profiles{{1, 1, 1, 1, 1, 1}, {2, 1, 2, 1, 2, 1}, {2, 2, 2, 2, 2, 2}};
  std::mt19937_64 rng(kDefaultSeed);
  for (const auto& dims : profiles) {
    for (int trial = 0; trial < 100; ++trial) {
      const GroupRep g = gammabar_rep(random_hex(dims, rng));
      CHECK(max_relation_residual(g) <= 1e-9);
      CHECK(max_relation_residual(braid3_rep(g, Complex(1.0, 0.5))) <= 1e-8 * std::pow(std::abs(Complex(1.0, 0.5)), 3));
      const QuiverRepresentation d = random_representation(dinfty_quiver(), {dims[0], dims[1], dims[2], dims[3]}, rng);
      CHECK(max_relation_residual(dinfty_rep(d)) <= 1e-9);
      CHECK(max_relation_residual(modular_rep(g, gammabar_rep(random_hex(dims, rng)))) <= 1e-9);
    }
  }
}

TEST_CASE("restriction multiplicities of the Kleinian family") {
  std::mt19937_64 rng(4);
  const PhiMap phi = phi_map(GroupTag::ProjModular);
  for (Index n = 1; n <= 3; ++n) {
    std::vector<Pi0Point> pts;
    for (Index k = 0; k < n; ++k) pts.push_back(random_pi0_point(rng));
    const QuiverRepresentation r = pi0_sample(pts);
    const CMatrix s = evaluate(r, phi.s);
    const CMatrix t = evaluate(r, phi.t);
    CHECK(s.rows() == 6 * n);
    CHECK(eigenvalue_multiplicity(s, 1.0) == 3 * n);
    CHECK(eigenvalue_multiplicity(s, -1.0) == 3 * n);
    CHECK(eigenvalue_multiplicity(t, 1.0) == 2 * n);
    CHECK(eigenvalue_multiplicity(t, kRho) == 2 * n);
    CHECK(eigenvalue_multiplicity(t, kRho * kRho) == 2 * n);
  }
}

TEST_CASE("irreducibility frontier") {
  std::mt19937_64 rng(5);
  for (const HexDims& dims : {HexDims{1, 1, 1, 1, 1, 1}, HexDims{2, 1, 1, 1, 1, 1}, HexDims{1, 2, 1, 2, 1, 2}}) {
    int irreducible = 0;
    for (int trial = 0; trial < 20; ++trial) irreducible += burnside_irreducible(gammabar_rep(random_hex(dims, rng)).matrices(), 
                                                                                  std::accumulate(dims.begin(), dims.end(), Index{0}));
    CHECK(irreducible >= 19);
  }
  for (const HexDims& dims : {HexDims{2, 0, 0, 0, 0, 0}, HexDims{1, 3, 1, 0, 0, 0}, HexDims{0, 0, 3, 1, 1, 0}}) {
    for (int trial = 0; trial < 20; ++trial) {
      const GroupRep g = gammabar_rep(random_hex(dims, rng));
      CHECK_FALSE(burnside_irreducible(g.matrices(), g.dim()));
    }
  }
}

TEST_CASE("Pi_0 sample examples") {
  const QuiverRepresentation one = pi0_sample({{1.0, 1.0, 1.0}});
  for (int a = 0; a < 12; ++a) CHECK(one.matrix(a)(0, 0) == Complex(1.0));
  CHECK(moment_residual(one, CentralElement(6, 0.0)) == 0.0);

  const QuiverRepresentation r = pi0_sample({{64.0, 1.0, 2.0}});
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(r.matrix(i)(0, 0) - Complex(2.0)) < 1e-14);
    CHECK(std::abs(r.matrix(i + 6)(0, 0) - Complex(1.0)) < 1e-14);
  }
  const QuiverRepresentation z = pi0_sample({{0.0, 0.0, 0.0}});
  for (int a = 0; a < 12; ++a) CHECK(z.matrix(a).norm() == 0.0);
  CHECK_THROWS_AS(pi0_sample({{1.0, 1.0, 2.0}}), std::invalid_argument);

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Pi0Point p = random_pi0_point(rng);
    const QuiverRepresentation s = pi0_sample({p});
    CHECK(moment_residual(s, CentralElement(6, 0.0)) <= 1e-10);
    const KleinianPoint k = kleinian_points(s)[0];
    CHECK(std::abs(k.u - p.u) <= 1e-10 * std::max(1.0, std::abs(p.u)));
    CHECK(std::abs(k.v - p.v) <= 1e-10 * std::max(1.0, std::abs(p.v)));
    CHECK(std::abs(k.u * k.v - std::pow(p.c, 6)) <= 1e-10 * std::max(1.0, std::abs(std::pow(p.c, 6))));
    CHECK(k.relation_residual() <= 1e-10 * std::max(1.0, std::abs(k.u * k.v)));
  }
}

TEST_CASE("Pi_1 chain and samples") {
  const auto lam = lambda1_exact();
  Cyclotomic total(0);
  for (const auto& x : lam) total += x;
  CHECK(total == Cyclotomic(0));

  const auto c = pi1_chain(10.0);
  CHECK(std::abs(c[5] - Complex(10.0)) < 1e-14);
  CHECK(std::abs(c[0] - Complex(11.0)) < 1e-14);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(c[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i + 3)]) < 1e-14);
  CHECK(std::abs(c[0] - c[1]) > 0.5);
  CHECK(std::abs(c[1] - c[2]) > 0.5);
  CHECK(std::abs(c[0] - c[2]) > 0.5);
  Complex prod = 1.0;
  for (const auto& ci : c) prod *= ci;
  const QuiverRepresentation r = pi1_sample({{2.0, prod / 2.0, 10.0}});
  CHECK(moment_residual(r, lambda1()) <= 1e-10);
  const KleinianPoint k = kleinian_points(r)[0];
  CHECK(std::abs(k.u * k.v - prod) <= 1e-10 * std::abs(prod));

  const auto degenerate = pi1_chain(-1.0);
  CHECK(std::abs(degenerate[0]) < 1e-15);
  const QuiverRepresentation d = pi1_sample({{0.0, 0.0, -1.0}});
  CHECK(moment_residual(d, lambda1()) <= 1e-10);
  CHECK(d.matrix("s1")(0, 0) * d.matrix("t1")(0, 0) == Complex(0.0));
  const KleinianPoint kd = kleinian_points(d)[0];
  CHECK(std::abs(kd.u * kd.v) == 0.0);
  const QuiverRepresentation d2 = pi1_sample({{3.0, 0.0, -1.0}});
  CHECK(moment_residual(d2, lambda1()) <= 1e-10);
  try {
    pi1_sample({{1.0, 1.0, -1.0}});
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("c_1 = 0") != std::string::npos);
  }

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Pi1Point p = random_pi1_point(rng);
    const QuiverRepresentation s = pi1_sample({p});
    CHECK(moment_residual(s, lambda1()) <= 1e-10);
    const KleinianPoint kp = kleinian_points(s)[0];
    Complex pc = 1.0;
    for (const auto& ci : pi1_chain(p.c6)) pc *= ci;
    CHECK(std::abs(kp.u * kp.v - pc) <= 1e-10 * std::max(1.0, std::abs(pc)));
  }
}

TEST_CASE("Kleinian family representations") {
  const GroupRep zero = gammabar_family(pi0_sample({{0.0, 0.0, 0.0}}), CentralElement(6, 0.0));
  const CMatrix& s = zero.generator("s");
  CHECK((s - CMatrix(s.diagonal().asDiagonal())).norm() == 0.0);

  std::mt19937_64 rng(8);
  int irreducible = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const GroupRep g = gammabar_family(pi0_sample({random_pi0_point(rng)}), CentralElement(6, 0.0));
    irreducible += burnside_irreducible(g.matrices(), 6);
  }
  CHECK(irreducible == 20);

  QuiverRepresentation lone = QuiverRepresentation::zero(hexagon_quiver(), {1, 1, 1, 1, 1, 1});
  lone.set_matrix(lone.quiver()->arrow_index("s1"), CMatrix::Ones(1, 1));
  const GroupRep red = gammabar_family(lone, CentralElement(6, 0.0));
  CHECK_FALSE(burnside_irreducible(red.matrices(), 6));

  std::vector<Pi0Point> pts{random_pi0_point(rng), random_pi0_point(rng), random_pi0_point(rng)};
  const GroupRep big = gammabar_family(pi0_sample(pts), CentralElement(6, 0.0));
  CHECK(big.dim() == 18);
  CHECK(max_relation_residual(big) <= 1e-9);

  CHECK_THROWS_AS(gammabar_family(pi0_sample({{1.0, 1.0, 1.0}}), lambda1()), std::invalid_argument);
}

TEST_CASE("diagonal collapse of the braid images") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const QuiverRepresentation r = pi0_sample({random_pi0_point(rng), random_pi0_point(rng)});
    CHECK(diagonal_collapse(r, false).max_deviation() <= 1e-10 * 64);
  }
  const QuiverRepresentation r1 = pi1_sample({random_pi1_point(rng)});
  const DiagonalCollapse c1 = diagonal_collapse(r1, true);
  const Complex rho2 = kRho * kRho;
  CHECK(std::abs(c1.sigma1_deviation[1] - std::abs(-2.0 * rho2)) < 1e-9);
  CHECK(std::abs(c1.sigma1_deviation[3] - 2.0) < 1e-9);
  CHECK(std::abs(c1.sigma2_deviation[0] - 2.0) < 1e-9);
  CHECK(c1.sigma1_deviation[0] < 1e-12);

  std::array<Complex, 6> neg;
  const auto lam = lambda1();
  neg[5] = Complex(0.7, -0.3);
  for (std::size_t v = 0; v < 6; ++v) neg[v] = (v == 0 ? neg[5] : neg[v - 1]) - lam[v];
  const QuiverRepresentation flipped = scalar_hex(neg);
  CentralElement minus_lambda(6);
  for (std::size_t v = 0; v < 6; ++v) minus_lambda[v] = -lam[v];
  CHECK(moment_residual(flipped, minus_lambda) <= 1e-12);
  CHECK(diagonal_collapse(flipped, true).max_deviation() <= 1e-12);
}

TEST_CASE("braid representations differing only in scale") {
  std::mt19937_64 rng(10);
  const QuiverRepresentation r = pi0_sample({random_pi0_point(rng)});
  const GroupRep g = gammabar_family(r, CentralElement(6, 0.0));
  const GroupRep b1 = braid3_rep(g, 1.0);
  const GroupRep b2 = braid3_rep(g, Complex(0.0, 2.0));
  CHECK(b1.scale != b2.scale);
  const Complex ratio = b2.scale / b1.scale;
  CHECK((b2.generator("sigma1") - ratio * b1.generator("sigma1")).norm() < 1e-12);
  CHECK((b2.generator("sigma2") - ratio * b1.generator("sigma2")).norm() < 1e-12);
  const KleinianPoint k = kleinian_points(r)[0];
  const QuiverRepresentation rebuilt = pi0_sample({Pi0Point{k.u, k.v, k.c[0]}});
  const GroupRep b3 = braid3_rep(gammabar_family(rebuilt, CentralElement(6, 0.0)), Complex(0.0, 2.0));
  CHECK(b3.scale == b2.scale);
  const QuiverPtr hex = hexagon_quiver();
  const std::vector<Necklace> ns{hexagon_s(*hex), hexagon_t(*hex), hexagon_c(*hex, 2),
                                 necklace_power(*hex, hexagon_c(*hex, 5), 2)};
  const auto tr1 = necklace_traces(r, ns);
  const auto tr2 = necklace_traces(rebuilt, ns);
  for (std::size_t j = 0; j < ns.size(); ++j) CHECK(std::abs(tr1[j] - tr2[j]) < 1e-9 * std::max(1.0, std::abs(tr1[j])));
}

TEST_CASE("Calogero-Moser points") {
  const CalogeroPoint p1 = calogero_sample(1, 1);
  CHECK((p1.commutator_plus_one() - CMatrix::Ones(1, 1)).norm() == 0.0);
  CHECK(numerical_rank(p1.commutator_plus_one()) == 1);

  const CalogeroPoint p2 = calogero_point({0.0, 1.0});
  CHECK(p2.z(0, 1) == Complex(-1.0));
  CHECK(p2.z(1, 0) == Complex(1.0));
  CHECK((p2.commutator_plus_one() - CMatrix::Ones(2, 2)).norm() < 1e-15);
  CHECK_THROWS_AS(calogero_point({1.0, 1.0}), std::invalid_argument);

  for (Index k = 1; k <= 6; ++k) {
    const CalogeroPoint p = calogero_sample(k, 40 + static_cast<std::uint64_t>(k));
    CHECK(p.k() == k);
    CHECK(numerical_rank(p.commutator_plus_one()) == 1);
    CHECK(moment_residual(calogero_to_rep(p), calogero_lambda(k)) <= 1e-10);
    const CalogeroPoint back = rep_to_calogero(calogero_to_rep(p));
    CHECK(back.x == p.x);
    CHECK(back.v == p.v);
  }
  CHECK(calogero_sample(3, 9).x == calogero_sample(3, 9).x);
}

TEST_CASE("Calogero-Moser flows") {
  const CalogeroPoint p = calogero_sample(2, 11);
  const CalogeroPoint same = calogero_flow(p, 1, 0.0);
  CHECK(same.x == p.x);
  const CalogeroPoint q = calogero_flow(p, 1, 0.5);
  CHECK(numerical_rank(q.commutator_plus_one()) == 1);
  CHECK((q.commutator_plus_one() - p.commutator_plus_one()).norm() < 1e-12);
  CHECK(std::abs(q.x.trace() - (p.x.trace() + 0.5 * p.z.trace())) < 1e-12);

  const CalogeroPoint p4 = calogero_sample(4, 12);
  const CalogeroPoint ab = calogero_flow(calogero_flow(p4, 1, 0.3), 2, -0.2);
  const CalogeroPoint ba = calogero_flow(calogero_flow(p4, 2, -0.2), 1, 0.3);
  CHECK((ab.x - ba.x).norm() < 1e-12);

  const QuiverPtr cal = calogero_quiver();
  for (int n = 1; n <= 3; ++n) {
    const Derivation d = symplectic_derivation(cal, calogero_hamiltonian(n));
    const CalogeroPoint direct = calogero_flow(p4, n, 0.7);
    const CalogeroPoint via = rep_to_calogero(apply_flow(calogero_to_rep(p4), d, 0.7, 4));
    CHECK((direct.x - via.x).norm() <= 1e-9);
    CHECK((direct.z - via.z).norm() <= 1e-9);
    CHECK((direct.u - via.u).norm() <= 1e-9);
    CHECK((direct.v - via.v).norm() <= 1e-9);
  }
  CHECK_THROWS_AS(calogero_flow(p4, 0, 1.0), std::invalid_argument);
}
