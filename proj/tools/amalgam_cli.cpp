// Command-line front end: amalgam specs -> quiver settings, representation
// families, verification and flows.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/SVD>

#include "amalgam/comp_setting.hpp"
#include "amalgam/families.hpp"
#include "amalgam/io.hpp"

using namespace amalgam;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerification = 2;

/// Relation or residual above tolerance.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("AMALGAM_SEED")) {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("AMALGAM_SEED is not an unsigned integer: ") + env);
    }
  }
  return kDefaultSeed;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path, e.what());
  }
}

std::vector<Index> parse_dims(const std::string& text, std::size_t expected, const char* what) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<Index>(v));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": '" + item + "' is not a non-negative integer");
    }
  }
  if (out.size() != expected) {
    throw std::invalid_argument(std::string(what) + " needs " + std::to_string(expected) + " comma-separated entries");
  }
  return out;
}

/// Complex scalar written as a cyclotomic expression ("2", "1/2 + i", "rho").
Complex parse_scalar(const std::string& text, const char* what) {
  try {
    return Cyclotomic::parse(text).to_complex();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
  }
};

QuiverRepresentation hexagon_data(const std::vector<Index>& dims, bool zero, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return zero ? QuiverRepresentation::zero(hexagon_quiver(), dims) : random_representation(hexagon_quiver(), dims, rng);
}

void check_relations(const GroupRep& rep, double tol) {
  double scale = rep.group == GroupTag::Braid3 ? std::max(1.0, std::pow(std::abs(rep.scale), 3)) : 1.0;
  for (const auto& r : relation_residuals(rep)) {
    if (r.residual > tol * scale) {
      std::ostringstream os;
      os << "relation " << r.relation << " has residual " << r.residual << " > " << tol * scale;
      throw VerificationFailure(os.str());
    }
  }
}

std::vector<Pi0Point> load_pi0_points(const std::string& path) {
  Json j = read_json(path);
  if (!j.contains("points") || !j["points"].is_array()) throw SchemaError("$.points", "expected an array");
  std::vector<Pi0Point> out;
  for (std::size_t k = 0; k < j["points"].size(); ++k) {
    const Json& p = j["points"][k];
    std::string base = "$.points[" + std::to_string(k) + "]";
    auto get = [&](const char* key) -> Complex {
      if (!p.contains(key)) throw SchemaError(base + "." + key, "missing field");
      const Json& v = p[key];
      if (v.is_number()) return {v.get<double>(), 0.0};
      if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
      throw SchemaError(base + "." + key, "expected a number or [re, im]");
    };
    out.push_back({get("u"), get("v"), get("c")});
  }
  return out;
}

std::string collapse_report(const DiagonalCollapse& dc) {
  std::ostringstream os;
  os << "diagonal collapse (deviation from expected blocks):\n";
  for (std::size_t v = 0; v < 6; ++v) {
    os << "  vertex " << (v + 1) << ": sigma1 " << dc.sigma1_deviation[v] << ", sigma2 " << dc.sigma2_deviation[v] << "\n";
  }
  os << "  max deviation " << dc.max_deviation() << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quiver settings and representation families of amalgamated products"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("-o,--output", out.path, "Write the result to a file instead of standard output");

  std::uint64_t seed = 0;
  bool seed_given = false;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Random seed (default: $AMALGAM_SEED or 0x5eed2026)")
        ->each([&](const std::string&) { seed_given = true; });
  };

  // setting
  auto* setting = app.add_subcommand("setting", "Compute the quiver setting of an amalgam spec");
  std::string setting_input;
  std::int64_t bound = 0;
  std::string format = "text";
  bool dot_flag = false;
  bool bipartite = false;
  setting->add_option("input", setting_input, "Amalgam spec (JSON)")->required();
  setting->add_option("--bound", bound, "Maximal total dimension of searched generators (0: unbounded)");
  setting->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  setting->add_flag("--dot", dot_flag, "Same as --format dot");
  setting->add_flag("--bipartite", bipartite, "Emit the bipartite quiver as DOT instead");

  // rep
  auto* rep = app.add_subcommand("rep", "Group representations from quiver data");
  rep->require_subcommand(1);
  std::string dims_text = "1,1,1,1,1,1";
  std::string beta_text = "1,1,1,1,1,1";
  std::string gamma_text = "1,1,1,1,1,1";
  std::string lambda_text = "1";
  bool zero_blocks = false;
  bool emit_quiver = false;
  auto* rep_gammabar = rep->add_subcommand("gammabar", "PSL_2(Z) representation from hexagon data");
  rep_gammabar->add_option("--dims", dims_text, "a1,...,a6");
  rep_gammabar->add_flag("--zero", zero_blocks, "All arrow blocks zero");
  rep_gammabar->add_flag("--quiver", emit_quiver, "Emit the hexagon representation instead");
  add_seed(rep_gammabar);
  auto* rep_braid3 = rep->add_subcommand("braid3", "B_3 representation sigma_i -> lambda V(sigma_i)");
  rep_braid3->add_option("--dims", dims_text, "a1,...,a6");
  rep_braid3->add_option("--lambda", lambda_text, "Scale (cyclotomic expression, e.g. 2 or 1+i)");
  rep_braid3->add_flag("--zero", zero_blocks, "All arrow blocks zero");
  add_seed(rep_braid3);
  auto* rep_dinfty = rep->add_subcommand("dinfty", "D_inf representation from two 2-cycles");
  std::string dinfty_dims = "1,1,1,1";
  rep_dinfty->add_option("--dims", dinfty_dims, "a1,a2,b1,b2");
  rep_dinfty->add_flag("--zero", zero_blocks, "All arrow blocks zero");
  add_seed(rep_dinfty);
  auto* rep_modular = rep->add_subcommand("modular", "SL_2(Z) representation from two hexagons");
  rep_modular->add_option("--beta", beta_text, "Dimensions of the first hexagon");
  rep_modular->add_option("--gamma", gamma_text, "Dimensions of the second hexagon");
  rep_modular->add_flag("--zero", zero_blocks, "All arrow blocks zero");
  add_seed(rep_modular);

  // family
  auto* family = app.add_subcommand("family", "Representations over the Kleinian surface and its deformation");
  family->require_subcommand(1);
  std::string points_file;
  int random_points = 0;
  bool as_group = false;
  bool collapse = false;
  auto* fam_pi0 = family->add_subcommand("pi0", "Points of Pi_0 (m = 0)");
  fam_pi0->add_option("--points", points_file, "JSON file {\"points\": [{\"u\", \"v\", \"c\"}]} with u v = c^6");
  fam_pi0->add_option("--random", random_points, "Number of random points");
  add_seed(fam_pi0);
  std::string c6_text = "10";
  std::string u_text = "1";
  auto* fam_pi1 = family->add_subcommand("pi1", "Point of Pi_1 (m = lambda_1)");
  fam_pi1->add_option("--c6", c6_text, "Value of c_6 (cyclotomic expression)");
  fam_pi1->add_option("--u", u_text, "Value of u = s_1 ... s_6 (non-zero)");
  fam_pi1->add_option("--random", random_points, "Number of random points (overrides --c6/--u)");
  add_seed(fam_pi1);
  for (auto* sub : {fam_pi0, fam_pi1}) {
    sub->add_flag("--group", as_group, "Emit the PSL_2(Z) representation instead");
    sub->add_flag("--collapse", collapse, "Report the diagonal blocks of V(sigma_1), V(sigma_2)");
  }

  // cm
  auto* cm = app.add_subcommand("cm", "Calogero-Moser phase space");
  cm->require_subcommand(1);
  Index k = 3;
  int flow_n = 1;
  double flow_t = 1.0;
  int steps = 0;
  auto* cm_sample = cm->add_subcommand("sample", "Sample a point of Calo_k");
  cm_sample->add_option("-k", k, "Size k")->check(CLI::PositiveNumber);
  add_seed(cm_sample);
  auto* cm_flow = cm->add_subcommand("flow", "Flow X -> X + t Z^n");
  cm_flow->add_option("-k", k, "Size k")->check(CLI::PositiveNumber);
  cm_flow->add_option("-n", flow_n, "Flow index n >= 1")->check(CLI::PositiveNumber);
  cm_flow->add_option("-t", flow_t, "Time");
  cm_flow->add_option("--steps", steps, "Emit a CSV trajectory of traces with this many steps");
  add_seed(cm_flow);

  // verify / irreducible / phi
  std::string rep_file;
  double tolerance = 1e-9;
  auto* verify = app.add_subcommand("verify", "Check relations or moment residuals of a representation file");
  verify->add_option("file", rep_file, "amalgam-rep/1 or amalgam-grouprep/1 JSON")->required();
  verify->add_option("--tolerance", tolerance, "Residual tolerance");
  auto* irreducible = app.add_subcommand("irreducible", "Burnside irreducibility test of a representation file");
  irreducible->add_option("file", rep_file, "amalgam-rep/1 or amalgam-grouprep/1 JSON")->required();
  std::string phi_group = "ProjModular";
  auto* phi = app.add_subcommand("phi", "Print and verify the algebra map phi exactly");
  phi->add_option("--group", phi_group, "Dinfty or ProjModular")->check(CLI::IsMember({"Dinfty", "ProjModular"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (!seed_given) seed = default_seed();

    if (setting->parsed()) {
      AmalgamSpec spec = amalgam_from_json(read_json(setting_input));
      BipartiteQuiver lambda_quiver = build_bipartite(spec);
      if (bipartite) {
        out.write(bipartite_to_dot(lambda_quiver));
        return kExitOk;
      }
      CompGenerators gens = comp_generators(lambda_quiver, bound);
      QuiverSetting qs = quiver_setting(lambda_quiver, gens.generators);
      if (dot_flag) format = "dot";
      if (format == "dot") {
        out.write(setting_to_dot(qs));
      } else if (format == "json") {
        out.write(dump(setting_to_json(qs, gens.possibly_incomplete)));
      } else {
        out.write(setting_to_text(qs, gens.possibly_incomplete) + "# schema " + kQuiverSchema + "\n");
      }
      return kExitOk;
    }

    if (rep_gammabar->parsed()) {
      QuiverRepresentation r = hexagon_data(parse_dims(dims_text, 6, "--dims"), zero_blocks, seed);
      if (emit_quiver) {
        out.write(dump(representation_to_json(r)));
        return kExitOk;
      }
      GroupRep g = gammabar_rep(r);
      check_relations(g, tolerance);
      out.write(dump(group_rep_to_json(g)));
      return kExitOk;
    }
    if (rep_braid3->parsed()) {
      QuiverRepresentation r = hexagon_data(parse_dims(dims_text, 6, "--dims"), zero_blocks, seed);
      GroupRep g = braid3_rep(gammabar_rep(r), parse_scalar(lambda_text, "--lambda"));
      check_relations(g, 1e-8);
      out.write(dump(group_rep_to_json(g)));
      return kExitOk;
    }
    if (rep_dinfty->parsed()) {
      std::vector<Index> dims = parse_dims(dinfty_dims, 4, "--dims");
      std::mt19937_64 rng(seed);
      QuiverRepresentation r = zero_blocks ? QuiverRepresentation::zero(dinfty_quiver(), dims)
                                           : random_representation(dinfty_quiver(), dims, rng);
      GroupRep g = dinfty_rep(r);
      check_relations(g, tolerance);
      out.write(dump(group_rep_to_json(g)));
      return kExitOk;
    }
    if (rep_modular->parsed()) {
      QuiverRepresentation rb = hexagon_data(parse_dims(beta_text, 6, "--beta"), zero_blocks, seed);
      QuiverRepresentation rg = hexagon_data(parse_dims(gamma_text, 6, "--gamma"), zero_blocks, seed + 1);
      GroupRep g = modular_rep(gammabar_rep(rb), gammabar_rep(rg));
      check_relations(g, tolerance);
      out.write(dump(group_rep_to_json(g)));
      return kExitOk;
    }

    if (fam_pi0->parsed() || fam_pi1->parsed()) {
      const bool deformed = fam_pi1->parsed();
      QuiverRepresentation sample = QuiverRepresentation::zero(hexagon_quiver(), std::vector<Index>(6, 0));
      std::mt19937_64 rng(seed);
      if (!deformed) {
        std::vector<Pi0Point> points;
        if (!points_file.empty()) {
          points = load_pi0_points(points_file);
        } else {
          for (int p = 0; p < std::max(random_points, 1); ++p) points.push_back(random_pi0_point(rng));
        }
        sample = pi0_sample(points);
      } else {
        std::vector<Pi1Point> points;
        if (random_points > 0) {
          for (int p = 0; p < random_points; ++p) points.push_back(random_pi1_point(rng));
        } else {
          Pi1Point p;
          p.c6 = parse_scalar(c6_text, "--c6");
          p.u = parse_scalar(u_text, "--u");
          if (p.u == Complex(0.0)) throw std::invalid_argument("--u must be non-zero");
          Complex prod = 1.0;
          for (const auto& c : pi1_chain(p.c6)) prod *= c;
          p.v = prod / p.u;
          points.push_back(p);
        }
        sample = pi1_sample(points);
      }
      CentralElement lambda = deformed ? lambda1() : CentralElement(6, 0.0);
      if (collapse) {
        out.write(collapse_report(diagonal_collapse(sample, deformed)));
        return kExitOk;
      }
      if (as_group) {
        GroupRep g = gammabar_family(sample, lambda);
        check_relations(g, tolerance);
        out.write(dump(group_rep_to_json(g)));
      } else {
        out.write(dump(representation_to_json(sample, &lambda)));
      }
      return kExitOk;
    }

    if (cm_sample->parsed()) {
      out.write(dump(calogero_to_json(calogero_sample(k, seed))));
      return kExitOk;
    }
    if (cm_flow->parsed()) {
      CalogeroPoint p = calogero_sample(k, seed);
      if (steps <= 0) {
        out.write(dump(calogero_to_json(calogero_flow(p, flow_n, flow_t))));
        return kExitOk;
      }
      std::ostringstream csv;
      csv << "step,t,re_tr_X,im_tr_X,re_tr_X2,im_tr_X2,re_tr_XZ,im_tr_XZ,rank_defect\n";
      csv.precision(12);
      for (int s = 0; s <= steps; ++s) {
        double t = flow_t * s / steps;
        CalogeroPoint q = calogero_flow(p, flow_n, t);
        Complex tx = q.x.trace();
        Complex tx2 = (q.x * q.x).trace();
        Complex txz = (q.x * q.z).trace();
        Eigen::BDCSVD<CMatrix> svd(q.commutator_plus_one());
        double defect = svd.singularValues().size() > 1 ? svd.singularValues()(1) : 0.0;
        csv << s << "," << t << "," << tx.real() << "," << tx.imag() << "," << tx2.real() << "," << tx2.imag() << ","
            << txz.real() << "," << txz.imag() << "," << defect << "\n";
      }
      out.write(csv.str());
      return kExitOk;
    }

    if (verify->parsed() || irreducible->parsed()) {
      Json j = read_json(rep_file);
      if (!j.contains("schema")) throw SchemaError("$.schema", "missing field");
      const bool group = j["schema"] == kGroupRepSchema;
      std::ostringstream report;
      report.precision(6);
      if (irreducible->parsed()) {
        bool irr = false;
        Index span = 0;
        Index n = 0;
        if (group) {
          GroupRep g = group_rep_from_json(j);
          n = g.dim();
          irr = n > 0 && burnside_irreducible(g.matrices(), n);
          span = n > 0 ? burnside_span_dimension(g.matrices(), n) : 0;
        } else {
          QuiverRepresentation r = representation_from_json(j);
          n = r.total_dim();
          irr = burnside_irreducible(r);
        }
        report << (irr ? "irreducible" : "reducible") << " (n=" << n;
        if (group) report << ", span dimension " << span << " of " << n * n;
        report << ")\n";
        out.write(report.str());
        return kExitOk;
      }
      bool ok = true;
      if (group) {
        GroupRep g = group_rep_from_json(j);
        double scale = g.group == GroupTag::Braid3 ? std::max(1.0, std::pow(std::abs(g.scale), 3)) : 1.0;
        for (const auto& r : relation_residuals(g)) {
          bool pass = r.residual <= tolerance * scale;
          ok = ok && pass;
          report << (pass ? "PASS " : "FAIL ") << r.relation << "  residual " << r.residual << "\n";
        }
      } else {
        QuiverRepresentation r = representation_from_json(j);
        CentralElement lambda = lambda_from_json(j);
        if (lambda.empty()) {
          report << "PASS shapes (no lambda given)\n";
        } else {
          double res = moment_residual(r, lambda);
          ok = res <= tolerance;
          report << (ok ? "PASS " : "FAIL ") << "m = lambda  residual " << res << "\n";
        }
      }
      out.write(report.str());
      return ok ? kExitOk : kExitVerification;
    }

    if (phi->parsed()) {
      GroupTag tag = group_tag_from_string(phi_group);
      PhiMap m = phi_map(tag);
      PathElement one = PathElement::one(m.s.quiver());
      PathElement t_rel = tag == GroupTag::Dinfty ? m.t * m.t : power(m.t, 3);
      bool s_ok = m.s * m.s == one;
      bool t_ok = t_rel == one;
      std::ostringstream report;
      report << "phi(s) = " << to_string(m.s) << "\n";
      report << "phi(t) = " << to_string(m.t) << "\n";
      report << (s_ok ? "PASS" : "FAIL") << " phi(s)^2 = 1\n";
      report << (t_ok ? "PASS" : "FAIL") << " phi(t)^" << (tag == GroupTag::Dinfty ? 2 : 3) << " = 1\n";
      out.write(report.str());
      return s_ok && t_ok ? kExitOk : kExitVerification;
    }
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::logic_error& e) {
    // std::invalid_argument, std::out_of_range, std::domain_error derive from logic_error.
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e) ||
        dynamic_cast<const std::domain_error*>(&e)) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitValidation;
    }
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
