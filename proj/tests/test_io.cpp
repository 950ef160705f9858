#include <random>
#include <string>

#include <doctest.h>

#include "amalgam/io.hpp"

using namespace amalgam;

namespace {

std::string schema_error_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_CASE("amalgam specs round trip") {
  for (const AmalgamSpec& spec : {dinfty_spec(), projective_modular_spec(), modular_spec(), matrix_amalgam_spec(2, 3, 1)}) {
    const Json j = amalgam_to_json(spec);
    const AmalgamSpec back = amalgam_from_json(Json::parse(dump(j)));
    CHECK(back.base() == spec.base());
    CHECK(back.left.target() == spec.left.target());
    CHECK(back.right.multiplicities() == spec.right.multiplicities());
    CHECK(back.labels.has_value() == spec.labels.has_value());
    if (spec.labels) CHECK(back.labels->right == spec.labels->right);
    CHECK(amalgam_to_json(back) == j);
  }
}

TEST_CASE("amalgam schema errors name the field") {
  Json j = amalgam_to_json(dinfty_spec());
  j["left"].erase("mult");
  CHECK(starts_with(schema_error_message([&] { amalgam_from_json(j); }), "$.left.mult"));

  j = amalgam_to_json(dinfty_spec());
  j["right"]["blocks"] = Json::array({1, 2});
  CHECK(starts_with(schema_error_message([&] { amalgam_from_json(j); }), "$.right"));

  j = amalgam_to_json(dinfty_spec());
  j["base"] = "C";
  CHECK(starts_with(schema_error_message([&] { amalgam_from_json(j); }), "$.base"));

  j = amalgam_to_json(modular_spec());
  j["labels"]["left"][1] = "sqrt(2)";
  CHECK(starts_with(schema_error_message([&] { amalgam_from_json(j); }), "$.labels.left[1]"));
}

TEST_CASE("quivers round trip") {
  for (const QuiverPtr& q : {hexagon_quiver(), dinfty_quiver(), calogero_quiver()}) {
    const QuiverPtr back = quiver_from_json(quiver_to_json(*q));
    CHECK(*back == *q);
    CHECK(back == q);
    CHECK(quiver_from_json(Json(q->name())) == q);
  }
  Json custom = quiver_to_json(*calogero_quiver());
  custom["name"] = "custom";
  const QuiverPtr c = quiver_from_json(custom);
  CHECK(c->name() == "custom");
  CHECK(c->has_involution());
  CHECK(starts_with(schema_error_message([] { quiver_from_json(Json("pentagon")); }), "$.quiver"));
}

TEST_CASE("representations round trip") {
  std::mt19937_64 rng(1);
  const QuiverRepresentation r = random_representation(hexagon_quiver(), {1, 2, 0, 1, 3, 2}, rng);
  const CentralElement lam = lambda1();
  const Json j = representation_to_json(r, &lam);
  CHECK(j["schema"] == kRepSchema);
  const QuiverRepresentation back = representation_from_json(Json::parse(dump(j)));
  CHECK(back.dims() == r.dims());
  for (int a = 0; a < 12; ++a) CHECK(back.matrix(a) == r.matrix(a));
  const CentralElement lam_back = lambda_from_json(j);
  CHECK(lam_back == lam);
  CHECK(lambda_from_json(representation_to_json(r)).empty());
  CHECK(dump(representation_to_json(back, &lam)) == dump(j));
}

TEST_CASE("representation schema errors name the field") {
  std::mt19937_64 rng(2);
  const Json good = representation_to_json(random_representation(dinfty_quiver(), {1, 2, 1, 1}, rng));
  Json j = good;
  j["schema"] = "other/1";
  CHECK(starts_with(schema_error_message([&] { representation_from_json(j); }), "$.schema"));
  j = good;
  j["arrows"]["t1"][1].erase(0);
  CHECK(starts_with(schema_error_message([&] { representation_from_json(j); }), "$.arrows.t1[1]"));
  j = good;
  j["arrows"].erase("t2");
  CHECK(starts_with(schema_error_message([&] { representation_from_json(j); }), "$.arrows.t2"));
  j = good;
  j["dims"] = Json::array({1, 2, 1});
  CHECK(starts_with(schema_error_message([&] { representation_from_json(j); }), "$.dims"));
  j = good;
  j["arrows"]["t1"][0][0] = Json::array({1.0});
  CHECK(starts_with(schema_error_message([&] { representation_from_json(j); }), "$.arrows.t1[0][0]"));
}

TEST_CASE("group representations round trip") {
  std::mt19937_64 rng(3);
  const GroupRep g = braid3_rep(gammabar_rep(random_representation(hexagon_quiver(), {1, 1, 1, 1, 1, 1}, rng)),
                                Complex(0.5, -2.0));
  const Json j = group_rep_to_json(g);
  const GroupRep back = group_rep_from_json(Json::parse(dump(j)));
  CHECK(back.group == GroupTag::Braid3);
  CHECK(back.scale == g.scale);
  CHECK(back.generator("sigma1") == g.generator("sigma1"));
  CHECK(back.generator("sigma2") == g.generator("sigma2"));
  CHECK(group_rep_to_json(back) == j);
  Json bad = j;
  bad["group"] = "SL3";
  CHECK(starts_with(schema_error_message([&] { group_rep_from_json(bad); }), "$.group"));
}

TEST_CASE("matrices keep every bit") {
  CMatrix m(2, 2);
  m << Complex(0.1, 1.0 / 3.0), Complex(-1e-300, 7.0), Complex(1e300, -0.0), Complex(2.0 / 7.0, 3.0);
  CHECK(matrix_from_json(Json::parse(matrix_to_json(m).dump()), "$") == m);
}

TEST_CASE("setting and Calogero exports") {
  const BipartiteQuiver q = build_bipartite(matrix_amalgam_spec(2, 2, 1));
  const Json s = setting_to_json(quiver_setting(q, comp_generators(q).generators), false);
  CHECK(s["schema"] == kQuiverSchema);
  CHECK(s["arrows"][0][0] == 3);
  CHECK(s["alpha"][0] == 2);
  const Json c = calogero_to_json(calogero_sample(2, 5));
  CHECK(c["schema"] == kRepSchema);
  CHECK(c["dims"] == Json::array({1, 2}));
  CHECK(representation_from_json(c).dims() == std::vector<Index>{1, 2});
}
