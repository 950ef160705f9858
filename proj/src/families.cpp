#include "amalgam/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace amalgam {

const CMatrix& GroupRep::generator(std::string_view name) const {
  for (const auto& [n, m] : generators) {
    if (n == name) return m;
  }
  throw std::out_of_range("group representation has no generator '" + std::string(name) + "'");
}

std::vector<CMatrix> GroupRep::matrices() const {
  std::vector<CMatrix> out;
  for (const auto& [n, m] : generators) out.push_back(m);
  return out;
}

namespace {

CMatrix mpow(const CMatrix& m, int e) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  for (int k = 0; k < e; ++k) out = out * m;
  return out;
}

CMatrix identity_like(const CMatrix& m) { return CMatrix::Identity(m.rows(), m.cols()); }

}  // namespace

std::vector<RelationResidual> relation_residuals(const GroupRep& rep) {
  std::vector<RelationResidual> out;
  switch (rep.group) {
    case GroupTag::Dinfty: {
      const CMatrix& s = rep.generator("s");
      const CMatrix& t = rep.generator("t");
      out.push_back({"s^2 = 1", (s * s - identity_like(s)).norm()});
      out.push_back({"t^2 = 1", (t * t - identity_like(t)).norm()});
      break;
    }
    case GroupTag::ProjModular: {
      const CMatrix& s = rep.generator("s");
      const CMatrix& t = rep.generator("t");
      out.push_back({"s^2 = 1", (s * s - identity_like(s)).norm()});
      out.push_back({"t^3 = 1", (mpow(t, 3) - identity_like(t)).norm()});
      break;
    }
    case GroupTag::Modular: {
      const CMatrix& s = rep.generator("s");
      const CMatrix& t = rep.generator("t");
      out.push_back({"s^4 = 1", (mpow(s, 4) - identity_like(s)).norm()});
      out.push_back({"t^6 = 1", (mpow(t, 6) - identity_like(t)).norm()});
      out.push_back({"s^2 = t^3", (s * s - mpow(t, 3)).norm()});
      break;
    }
    case GroupTag::Braid3: {
      const CMatrix& a = rep.generator("sigma1");
      const CMatrix& b = rep.generator("sigma2");
      out.push_back({"sigma1 sigma2 sigma1 = sigma2 sigma1 sigma2", (a * b * a - b * a * b).norm()});
      break;
    }
  }
  return out;
}

double max_relation_residual(const GroupRep& rep) {
  double worst = 0.0;
  for (const auto& r : relation_residuals(rep)) worst = std::max(worst, r.residual);
  return worst;
}

GroupRep dinfty_rep(const CMatrix& s1, const CMatrix& t1, const CMatrix& s2, const CMatrix& t2, const DinftyDims& dims) {
  QuiverPtr q = dinfty_quiver();
  QuiverRepresentation r(q, {dims[0], dims[1], dims[2], dims[3]}, {s1, t1, s2, t2});
  return dinfty_rep(r);
}

GroupRep dinfty_rep(const QuiverRepresentation& r) {
  if (!(*r.quiver() == *dinfty_quiver())) throw std::invalid_argument("dinfty_rep needs a representation of the D_inf quiver");
  auto [s, t] = phi_images(r, GroupTag::Dinfty);
  return GroupRep{GroupTag::Dinfty, {{"s", s}, {"t", t}}, 1.0};
}

GroupRep gammabar_rep(const std::array<CMatrix, 6>& s, const std::array<CMatrix, 6>& t, const HexDims& dims) {
  std::vector<CMatrix> mats(s.begin(), s.end());
  mats.insert(mats.end(), t.begin(), t.end());
  QuiverRepresentation r(hexagon_quiver(), std::vector<Index>(dims.begin(), dims.end()), std::move(mats));
  return gammabar_rep(r);
}

GroupRep gammabar_rep(const QuiverRepresentation& r) {
  if (!(*r.quiver() == *hexagon_quiver())) throw std::invalid_argument("gammabar_rep needs a hexagon representation");
  auto [s, t] = phi_images(r, GroupTag::ProjModular);
  return GroupRep{GroupTag::ProjModular, {{"s", s}, {"t", t}}, 1.0};
}

GroupRep braid3_rep(const GroupRep& proj, Complex lambda) {
  if (proj.group != GroupTag::ProjModular) throw std::invalid_argument("braid3_rep needs a ProjModular representation");
  if (lambda == Complex(0.0)) throw std::invalid_argument("braid3_rep: lambda must be non-zero");
  const CMatrix& s = proj.generator("s");
  const CMatrix& t = proj.generator("t");
  CMatrix t2 = t * t;
  return GroupRep{GroupTag::Braid3, {{"sigma1", lambda * (t2 * s)}, {"sigma2", lambda * (s * t2)}}, lambda};
}

GroupRep modular_rep(const GroupRep& beta, const GroupRep& gamma) {
  if (beta.group != GroupTag::ProjModular || gamma.group != GroupTag::ProjModular) {
    throw std::invalid_argument("modular_rep needs two ProjModular representations");
  }
  const Index nb = beta.dim();
  const Index ng = gamma.dim();
  CMatrix s = CMatrix::Zero(nb + ng, nb + ng);
  CMatrix t = CMatrix::Zero(nb + ng, nb + ng);
  s.topLeftCorner(nb, nb) = beta.generator("s");
  t.topLeftCorner(nb, nb) = beta.generator("t");
  s.bottomRightCorner(ng, ng) = Complex(0.0, 1.0) * gamma.generator("s");
  t.bottomRightCorner(ng, ng) = -gamma.generator("t");
  GroupRep out{GroupTag::Modular, {{"s", s}, {"t", t}}, 1.0};
  const double input = std::max(max_relation_residual(beta), max_relation_residual(gamma));
  const double residual = max_relation_residual(out);
  if (residual > 1e-9 + 8.0 * input) {
    std::ostringstream os;
    os << "modular_rep: relation residual " << residual << " after assembly";
    throw std::runtime_error(os.str());
  }
  return out;
}

double KleinianPoint::relation_residual() const {
  Complex prod = 1.0;
  for (const auto& ci : c) prod *= ci;
  return std::abs(u * v - prod);
}

std::array<Cyclotomic, 6> lambda1_exact() {
  Cyclotomic rho = Cyclotomic::rho();
  Cyclotomic rho2 = rho * rho;
  return {1, rho2, rho, 1, rho2, rho};
}

CentralElement lambda1() {
  CentralElement out;
  for (const auto& x : lambda1_exact()) out.push_back(x.to_complex());
  return out;
}

std::array<Complex, 6> pi1_chain(Complex c6) {
  CentralElement lam = lambda1();
  std::array<Complex, 6> c{};
  Complex prev = c6;
  for (std::size_t v = 0; v < 6; ++v) {
    c[v] = prev + lam[v];
    prev = c[v];
  }
  c[5] = c6;  // the chain closes because lambda_1 . delta = 0
  return c;
}

namespace {

struct ScalarSplit {
  std::array<Complex, 6> s{};
  std::array<Complex, 6> t{};
};

QuiverRepresentation assemble(const std::vector<ScalarSplit>& splits) {
  QuiverPtr hex = hexagon_quiver();
  const Index n = static_cast<Index>(splits.size());
  std::vector<CMatrix> mats(12, CMatrix::Zero(n, n));
  for (Index p = 0; p < n; ++p) {
    for (std::size_t i = 0; i < 6; ++i) {
      mats[i](p, p) = splits[static_cast<std::size_t>(p)].s[i];
      mats[i + 6](p, p) = splits[static_cast<std::size_t>(p)].t[i];
    }
  }
  return QuiverRepresentation(hex, std::vector<Index>(6, n), std::move(mats));
}

double relation_scale(Complex u, Complex v, const std::array<Complex, 6>& c) {
  double scale = std::max(1.0, std::abs(u) * std::abs(v));
  double prod = 1.0;
  for (const auto& ci : c) prod *= std::max(1.0, std::abs(ci));
  return std::max(scale, prod);
}

/// Splits c_i = s_i t_i with prod s = u, prod t = v (requires u v = prod c).
ScalarSplit split_general(Complex u, Complex v, const std::array<Complex, 6>& c, std::size_t point) {
  Complex prod = 1.0;
  for (const auto& ci : c) prod *= ci;
  if (std::abs(u * v - prod) > 1e-10 * relation_scale(u, v, c)) {
    std::ostringstream os;
    os << "point " << point << ": u*v = " << u * v << " but c_1...c_6 = " << prod;
    for (std::size_t i = 0; i < 6; ++i) {
      if (c[i] == Complex(0.0) && u * v != Complex(0.0)) os << " (c_" << (i + 1) << " = 0 forces u*v = 0)";
    }
    throw std::invalid_argument(os.str());
  }
  ScalarSplit sp;
  if (u != Complex(0.0)) {
    sp.s = {1.0, 1.0, 1.0, 1.0, 1.0, u};
    for (std::size_t i = 0; i < 6; ++i) sp.t[i] = c[i] / sp.s[i];
  } else if (v != Complex(0.0)) {
    sp.t = {1.0, 1.0, 1.0, 1.0, 1.0, v};
    for (std::size_t i = 0; i < 6; ++i) sp.s[i] = c[i] / sp.t[i];
  } else {
    std::size_t j = 0;
    for (std::size_t i = 1; i < 6; ++i) {
      if (std::abs(c[i]) < std::abs(c[j])) j = i;
    }
    if (std::abs(c[j]) > 1e-10) {
      throw std::invalid_argument("point " + std::to_string(point) + ": u = v = 0 needs some c_i = 0 (smallest is c_" +
                                  std::to_string(j + 1) + ")");
    }
    for (std::size_t i = 0; i < 6; ++i) {
      const bool cut = i == j || c[i] == Complex(0.0);
      sp.s[i] = cut ? 0.0 : 1.0;
      sp.t[i] = cut ? Complex(0.0) : c[i];
    }
  }
  return sp;
}

}  // namespace

QuiverRepresentation pi0_sample(const std::vector<Pi0Point>& points) {
  std::vector<ScalarSplit> splits;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Pi0Point& p = points[k];
    std::array<Complex, 6> c;
    c.fill(p.c);
    if (p.c != Complex(0.0)) {
      double scale = relation_scale(p.u, p.v, c);
      if (std::abs(p.u * p.v - std::pow(p.c, 6)) > 1e-10 * scale) {
        std::ostringstream os;
        os << "point " << k << ": u*v = " << p.u * p.v << " differs from c^6 = " << std::pow(p.c, 6);
        throw std::invalid_argument(os.str());
      }
      ScalarSplit sp;
      for (std::size_t i = 0; i < 5; ++i) sp.s[i] = p.c;
      sp.s[5] = p.u / std::pow(p.c, 5);
      for (std::size_t i = 0; i < 6; ++i) sp.t[i] = p.c / sp.s[i];
      splits.push_back(sp);
    } else {
      splits.push_back(split_general(p.u, p.v, c, k));
    }
  }
  return assemble(splits);
}

QuiverRepresentation pi1_sample(const std::vector<Pi1Point>& points) {
  std::vector<ScalarSplit> splits;
  for (std::size_t k = 0; k < points.size(); ++k) {
    splits.push_back(split_general(points[k].u, points[k].v, pi1_chain(points[k].c6), k));
  }
  return assemble(splits);
}

std::vector<KleinianPoint> kleinian_points(const QuiverRepresentation& r) {
  if (!(*r.quiver() == *hexagon_quiver())) throw std::invalid_argument("kleinian_points needs a hexagon representation");
  const Index n = r.dim(0);
  for (int v = 1; v < 6; ++v) {
    if (r.dim(v) != n) throw std::invalid_argument("kleinian_points needs dims (n,...,n)");
  }
  for (int a = 0; a < 12; ++a) {
    CMatrix off = r.matrix(a);
    off.diagonal().setZero();
    if (off.norm() != 0.0) throw std::invalid_argument("kleinian_points needs diagonal arrow matrices");
  }
  std::vector<KleinianPoint> out;
  for (Index p = 0; p < n; ++p) {
    KleinianPoint kp;
    kp.u = 1.0;
    kp.v = 1.0;
    for (int i = 0; i < 6; ++i) {
      Complex s = r.matrix(i)(p, p);
      Complex t = r.matrix(i + 6)(p, p);
      kp.u *= s;
      kp.v *= t;
      kp.c[static_cast<std::size_t>(i)] = s * t;
    }
    out.push_back(kp);
  }
  return out;
}

GroupRep gammabar_family(const QuiverRepresentation& sample, const CentralElement& lambda) {
  double residual = moment_residual(sample, lambda);
  double scale = 1.0;
  for (const auto& m : sample.matrices()) scale = std::max(scale, m.squaredNorm());
  if (residual > 1e-10 * scale) {
    std::ostringstream os;
    os << "sample violates its moment relation (residual " << residual << ")";
    throw std::invalid_argument(os.str());
  }
  return gammabar_rep(sample);
}

double DiagonalCollapse::max_deviation() const {
  double worst = 0.0;
  for (std::size_t v = 0; v < 6; ++v) worst = std::max({worst, sigma1_deviation[v], sigma2_deviation[v]});
  return worst;
}

DiagonalCollapse diagonal_collapse(const QuiverRepresentation& sample, bool deformed) {
  GroupRep b = braid3_rep(gammabar_rep(sample), 1.0);
  const CMatrix& s1 = b.generator("sigma1");
  const CMatrix& s2 = b.generator("sigma2");
  const Complex rho = Cyclotomic::rho().to_complex();
  const Complex rho2 = rho * rho;
  // Expected collapsed diagonals.
  std::array<Complex, 6> e1;
  std::array<Complex, 6> e2;
  if (!deformed) {
    e1 = {1.0, -rho2, rho, -1.0, rho2, -rho};
    e2 = e1;
  } else {
    e1 = {1.0, 0.0, rho, 0.0, rho2, 0.0};
    e2 = {0.0, -rho2, 0.0, -1.0, 0.0, -rho};
  }
  DiagonalCollapse out;
  for (int v = 0; v < 6; ++v) {
    const Index o = sample.offset(v);
    const Index d = sample.dim(v);
    CMatrix id = CMatrix::Identity(d, d);
    out.sigma1_deviation[static_cast<std::size_t>(v)] = (s1.block(o, o, d, d) - e1[static_cast<std::size_t>(v)] * id).norm();
    out.sigma2_deviation[static_cast<std::size_t>(v)] = (s2.block(o, o, d, d) - e2[static_cast<std::size_t>(v)] * id).norm();
  }
  return out;
}

namespace {

Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  double re = normal(rng);
  double im = normal(rng);
  return {re, im};
}

Complex nonzero_gaussian(std::mt19937_64& rng) {
  Complex z = gaussian(rng);
  while (std::abs(z) < 1e-3) z = gaussian(rng);
  return z;
}

}  // namespace

Pi0Point random_pi0_point(std::mt19937_64& rng) {
  Pi0Point p;
  p.c = nonzero_gaussian(rng);
  p.u = nonzero_gaussian(rng);
  p.v = std::pow(p.c, 6) / p.u;
  return p;
}

Pi1Point random_pi1_point(std::mt19937_64& rng) {
  Pi1Point p;
  p.c6 = nonzero_gaussian(rng);
  p.u = nonzero_gaussian(rng);
  Complex prod = 1.0;
  for (const auto& ci : pi1_chain(p.c6)) prod *= ci;
  p.v = prod / p.u;
  return p;
}

CMatrix CalogeroPoint::commutator_plus_one() const {
  return x * z - z * x + CMatrix::Identity(k(), k());
}

CentralElement calogero_lambda(Index k) { return {Complex(-static_cast<double>(k)), 1.0}; }

CalogeroPoint calogero_point(const std::vector<Complex>& xs) {
  const Index k = static_cast<Index>(xs.size());
  if (k < 1) throw std::invalid_argument("calogero_point needs k >= 1");
  CalogeroPoint p;
  p.x = CMatrix::Zero(k, k);
  p.z = CMatrix::Zero(k, k);
  for (Index a = 0; a < k; ++a) {
    p.x(a, a) = xs[static_cast<std::size_t>(a)];
    for (Index b = 0; b < k; ++b) {
      if (a == b) continue;
      Complex diff = xs[static_cast<std::size_t>(a)] - xs[static_cast<std::size_t>(b)];
      if (diff == Complex(0.0)) throw std::invalid_argument("calogero_point needs distinct eigenvalues");
      p.z(a, b) = 1.0 / diff;
    }
  }
  p.u = CMatrix::Ones(1, k);
  p.v = -CMatrix::Ones(k, 1);
  return p;
}

CalogeroPoint calogero_sample(Index k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("calogero_sample needs k >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-static_cast<double>(k), static_cast<double>(k));
  std::vector<Complex> xs;
  while (static_cast<Index>(xs.size()) < k) {
    Complex x(uniform(rng), 0.0);
    bool separated = std::all_of(xs.begin(), xs.end(), [&](Complex y) { return std::abs(x - y) >= 0.1; });
    if (separated) xs.push_back(x);
  }
  return calogero_point(xs);
}

CalogeroPoint calogero_flow(const CalogeroPoint& p, int n, Complex t) {
  if (n < 1) throw std::invalid_argument("calogero_flow needs n >= 1");
  CalogeroPoint out = p;
  out.x = p.x + t * mpow(p.z, n);
  return out;
}

QuiverRepresentation calogero_to_rep(const CalogeroPoint& p) {
  return QuiverRepresentation(calogero_quiver(), {1, p.k()}, {p.u, p.v, p.z, p.x});
}

CalogeroPoint rep_to_calogero(const QuiverRepresentation& r) {
  if (!(*r.quiver() == *calogero_quiver())) throw std::invalid_argument("rep_to_calogero needs the Calogero quiver");
  if (r.dim(0) != 1) throw std::invalid_argument("rep_to_calogero needs dimension vector (1, k)");
  return CalogeroPoint{r.matrix("b*"), r.matrix("b"), r.matrix("a"), r.matrix("a*")};
}

NecklaceSum calogero_hamiltonian(int n) {
  if (n < 1) throw std::invalid_argument("calogero_hamiltonian needs n >= 1");
  const Quiver& q = *calogero_quiver();
  std::vector<std::string> word(static_cast<std::size_t>(n + 1), "b");
  return single(necklace_from_names(q, word), Cyclotomic(Rational(1, n + 1)));
}

}  // namespace amalgam
