#include "amalgam/io.hpp"

namespace amalgam {

namespace {

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> int_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_int(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

IntMatrix int_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  IntMatrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    std::string rp = path + "[" + std::to_string(r) + "]";
    std::vector<std::int64_t> row = int_list(j[r], rp);
    if (row.size() != cols) throw SchemaError(rp, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = row[c];
  }
  return m;
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_string()) throw SchemaError(path + "[" + std::to_string(k) + "]", "expected a string");
    out.push_back(j[k].get<std::string>());
  }
  return out;
}

Json int_matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(path, "expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

BratteliEmbedding embedding_from_json(const SemisimpleAlgebra& base, const Json& j, const std::string& path) {
  SemisimpleAlgebra target;
  try {
    target = SemisimpleAlgebra(int_list(field(j, path, "blocks"), path + ".blocks"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path + ".blocks", e.what());
  }
  IntMatrix mult = int_matrix(field(j, path, "mult"), path + ".mult");
  try {
    return BratteliEmbedding(base, target, mult);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path + ".mult", e.what());
  }
}

}  // namespace

AmalgamSpec amalgam_from_json(const Json& j) {
  SemisimpleAlgebra base;
  try {
    base = SemisimpleAlgebra(int_list(field(j, "$", "base"), "$.base"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError("$.base", e.what());
  }
  BratteliEmbedding left = embedding_from_json(base, field(j, "$", "left"), "$.left");
  BratteliEmbedding right = embedding_from_json(base, field(j, "$", "right"), "$.right");
  std::optional<AmalgamLabels> labels;
  if (j.contains("labels")) {
    const Json& lj = j["labels"];
    AmalgamLabels lab;
    auto load = [&](const char* key, std::vector<Cyclotomic>& values, std::vector<std::string>& text) {
      if (!lj.contains(key)) return;
      std::string path = std::string("$.labels.") + key;
      text = string_list(lj[key], path);
      for (std::size_t k = 0; k < text.size(); ++k) {
        try {
          values.push_back(Cyclotomic::parse(text[k]));
        } catch (const std::invalid_argument& e) {
          throw SchemaError(path + "[" + std::to_string(k) + "]", e.what());
        }
      }
    };
    load("base", lab.base, lab.base_text);
    load("left", lab.left, lab.left_text);
    load("right", lab.right, lab.right_text);
    labels = std::move(lab);
  }
  try {
    return AmalgamSpec(std::move(left), std::move(right), std::move(labels));
  } catch (const std::invalid_argument& e) {
    throw SchemaError("$.labels", e.what());
  }
}

Json amalgam_to_json(const AmalgamSpec& spec) {
  Json j;
  j["base"] = spec.base().blocks();
  j["left"] = {{"blocks", spec.left.target().blocks()}, {"mult", int_matrix_json(spec.left.multiplicities())}};
  j["right"] = {{"blocks", spec.right.target().blocks()}, {"mult", int_matrix_json(spec.right.multiplicities())}};
  if (spec.labels) {
    Json lab = Json::object();
    if (!spec.labels->base_text.empty()) lab["base"] = spec.labels->base_text;
    if (!spec.labels->left_text.empty()) lab["left"] = spec.labels->left_text;
    if (!spec.labels->right_text.empty()) lab["right"] = spec.labels->right_text;
    j["labels"] = lab;
  }
  return j;
}

Json setting_to_json(const QuiverSetting& qs, bool possibly_incomplete) {
  Json j;
  j["schema"] = kQuiverSchema;
  j["vertices"] = qs.vertex_count();
  j["loops"] = qs.loop_count();
  j["alpha"] = vector_json(qs.alpha);
  j["arrows"] = int_matrix_json(qs.arrow_matrix);
  j["symmetric"] = is_symmetric(qs);
  j["possibly_incomplete"] = possibly_incomplete;
  Json gens = Json::array();
  for (std::size_t k = 0; k < qs.generators.size(); ++k) {
    gens.push_back({{"beta", vector_json(qs.generators[k])}, {"label", qs.vertex_labels[k]}});
  }
  j["generators"] = gens;
  return j;
}

Json quiver_to_json(const Quiver& q) {
  Json j;
  j["name"] = q.name();
  j["vertices"] = q.vertex_count();
  Json arrows = Json::array();
  for (const Arrow& a : q.arrows()) arrows.push_back({{"name", a.name}, {"source", a.source + 1}, {"target", a.target + 1}});
  j["arrows"] = arrows;
  if (q.has_involution()) {
    Json pairs = Json::array();
    for (int a : q.half()) pairs.push_back(Json::array({q.arrow(a).name, q.arrow(q.star(a)).name}));
    j["involution"] = pairs;
  }
  return j;
}

QuiverPtr quiver_from_json(const Json& j) {
  const std::string path = "$.quiver";
  if (j.is_string()) {
    std::string name = j.get<std::string>();
    if (name == "hexagon") return hexagon_quiver();
    if (name == "dinfty") return dinfty_quiver();
    if (name == "calogero") return calogero_quiver();
    throw SchemaError(path, "unknown standard quiver '" + name + "'");
  }
  const Json& name = field(j, path, "name");
  if (!name.is_string()) throw SchemaError(path + ".name", "expected a string");
  int vertices = static_cast<int>(as_int(field(j, path, "vertices"), path + ".vertices"));
  const Json& arrows = field(j, path, "arrows");
  if (!arrows.is_array()) throw SchemaError(path + ".arrows", "expected an array");
  std::vector<Arrow> list;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    std::string ap = path + ".arrows[" + std::to_string(k) + "]";
    const Json& n = field(arrows[k], ap, "name");
    if (!n.is_string()) throw SchemaError(ap + ".name", "expected a string");
    list.push_back({n.get<std::string>(), static_cast<int>(as_int(field(arrows[k], ap, "source"), ap + ".source")) - 1,
                    static_cast<int>(as_int(field(arrows[k], ap, "target"), ap + ".target")) - 1});
  }
  try {
    Quiver q(name.get<std::string>(), vertices, std::move(list));
    if (j.contains("involution")) {
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const auto& p : j["involution"]) {
        if (!p.is_array() || p.size() != 2) throw SchemaError(path + ".involution", "expected [arrow, arrow*] pairs");
        pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
      }
      q.with_involution(pairs);
    }
    for (const QuiverPtr& standard : {hexagon_quiver(), dinfty_quiver(), calogero_quiver()}) {
      if (*standard == q && standard->name() == q.name()) return standard;
    }
    return std::make_shared<const Quiver>(std::move(q));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  } catch (const std::out_of_range& e) {
    throw SchemaError(path + ".involution", e.what());
  }
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  CMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) throw SchemaError(rp, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = complex_from_json(j[r][c], rp + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

Json representation_to_json(const QuiverRepresentation& r, const CentralElement* lambda) {
  Json j;
  j["schema"] = kRepSchema;
  j["quiver"] = quiver_to_json(*r.quiver());
  j["dims"] = r.dims();
  Json arrows = Json::object();
  for (int a = 0; a < r.quiver()->arrow_count(); ++a) arrows[r.quiver()->arrow(a).name] = matrix_to_json(r.matrix(a));
  j["arrows"] = arrows;
  if (lambda != nullptr) {
    Json lam = Json::array();
    for (const auto& z : *lambda) lam.push_back(complex_json(z));
    j["lambda"] = lam;
  }
  return j;
}

QuiverRepresentation representation_from_json(const Json& j) {
  const Json& schema = field(j, "$", "schema");
  if (schema != kRepSchema) throw SchemaError("$.schema", std::string("expected \"") + kRepSchema + "\"");
  QuiverPtr q = quiver_from_json(field(j, "$", "quiver"));
  std::vector<std::int64_t> dims64 = int_list(field(j, "$", "dims"), "$.dims");
  if (static_cast<int>(dims64.size()) != q->vertex_count()) {
    throw SchemaError("$.dims", "expected " + std::to_string(q->vertex_count()) + " entries");
  }
  std::vector<Index> dims(dims64.begin(), dims64.end());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] < 0) throw SchemaError("$.dims[" + std::to_string(k) + "]", "must be non-negative");
  }
  const Json& arrows = field(j, "$", "arrows");
  std::vector<CMatrix> mats;
  for (const Arrow& a : q->arrows()) {
    std::string ap = "$.arrows." + a.name;
    const Json& mj = field(arrows, "$.arrows", a.name.c_str());
    const Index rows = dims[static_cast<std::size_t>(a.source)];
    const Index cols = dims[static_cast<std::size_t>(a.target)];
    CMatrix m = (rows == 0 || cols == 0) ? CMatrix::Zero(rows, cols) : matrix_from_json(mj, ap);
    if (rows == 0 || cols == 0) {
      if (!mj.is_array() || static_cast<Index>(mj.size()) != rows) throw SchemaError(ap, "expected " + std::to_string(rows) + " rows");
    }
    if (m.rows() != rows || m.cols() != cols) {
      throw SchemaError(ap, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
    mats.push_back(std::move(m));
  }
  return QuiverRepresentation(q, std::move(dims), std::move(mats));
}

CentralElement lambda_from_json(const Json& j) {
  CentralElement out;
  if (!j.contains("lambda")) return out;
  const Json& lam = j["lambda"];
  if (!lam.is_array()) throw SchemaError("$.lambda", "expected an array");
  for (std::size_t k = 0; k < lam.size(); ++k) out.push_back(complex_from_json(lam[k], "$.lambda[" + std::to_string(k) + "]"));
  return out;
}

Json group_rep_to_json(const GroupRep& rep) {
  Json j;
  j["schema"] = kGroupRepSchema;
  j["group"] = to_string(rep.group);
  j["scale"] = complex_json(rep.scale);
  j["dim"] = rep.dim();
  Json gens = Json::object();
  for (const auto& [name, m] : rep.generators) gens[name] = matrix_to_json(m);
  j["generators"] = gens;
  return j;
}

GroupRep group_rep_from_json(const Json& j) {
  const Json& schema = field(j, "$", "schema");
  if (schema != kGroupRepSchema) throw SchemaError("$.schema", std::string("expected \"") + kGroupRepSchema + "\"");
  const Json& group = field(j, "$", "group");
  if (!group.is_string()) throw SchemaError("$.group", "expected a string");
  GroupRep rep;
  try {
    rep.group = group_tag_from_string(group.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError("$.group", e.what());
  }
  if (j.contains("scale")) rep.scale = complex_from_json(j["scale"], "$.scale");
  const Json& gens = field(j, "$", "generators");
  std::vector<std::string> names =
      rep.group == GroupTag::Braid3 ? std::vector<std::string>{"sigma1", "sigma2"} : std::vector<std::string>{"s", "t"};
  for (const auto& name : names) {
    CMatrix m = matrix_from_json(field(gens, "$.generators", name.c_str()), "$.generators." + name);
    if (m.rows() != m.cols()) throw SchemaError("$.generators." + name, "expected a square matrix");
    if (!rep.generators.empty() && m.rows() != rep.dim()) {
      throw SchemaError("$.generators." + name, "generators have different sizes");
    }
    rep.generators.emplace_back(name, std::move(m));
  }
  return rep;
}

Json calogero_to_json(const CalogeroPoint& p) {
  Json j = representation_to_json(calogero_to_rep(p));
  CentralElement lam = calogero_lambda(p.k());
  Json l = Json::array();
  for (const auto& z : lam) l.push_back(complex_json(z));
  j["lambda"] = l;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace amalgam
