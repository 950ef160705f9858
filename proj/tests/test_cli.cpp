#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

#include "amalgam/io.hpp"

using namespace amalgam;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

/// Runs the CLI through the shell; stderr is merged into out when merge_stderr is set.
RunResult run(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string("'") + AMALGAM_CLI_PATH + "' " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string("'") + AMALGAM_DATA_DIR + "/" + name + "'"; }

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "amalgam_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST_CASE("setting text output for M2 * M2") {
  RunResult r = run("setting " + data("m2_amalgam_m2.json"));
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "1 vertex, 3 loops, alpha=(2)");
  CHECK(r.out.find("# schema amalgam-quiver/1") != std::string::npos);
}

TEST_CASE("setting DOT output for SL_2(Z)") {
  RunResult r = run("setting " + data("sl2z.json") + " --dot");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("// schema amalgam-quiver/1", 0) == 0);
  CHECK(count(r.out, "->") == 24);
  CHECK(count(r.out, "alpha=1") == 12);
}

TEST_CASE("setting JSON output parses") {
  RunResult r = run("setting " + data("psl2z.json") + " --format json");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["schema"] == kQuiverSchema);
  CHECK(j["alpha"].size() == 6);
}

TEST_CASE("D_inf setting text output") {
  RunResult r = run("setting " + data("dinfty.json"));
  CHECK(r.code == 0);
  CHECK(first_line(r.out) == "4 vertices, 0 loops, alpha=(1,1,1,1)");
}

TEST_CASE("seeded output is reproducible") {
  RunResult a = run("rep gammabar --dims 1,1,1,1,1,1 --seed 7");
  RunResult b = run("rep gammabar --dims 1,1,1,1,1,1 --seed 7");
  RunResult c = run("rep gammabar --dims 1,1,1,1,1,1 --seed 8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  RunResult e1 = run("rep gammabar --dims 2,1,2,1,2,1", false, "AMALGAM_SEED=11");
  RunResult e2 = run("rep gammabar --dims 2,1,2,1,2,1 --seed 11");
  CHECK(e1.code == 0);
  CHECK(e1.out == e2.out);
}

TEST_CASE("verify accepts generated representations and rejects tampered ones") {
  const auto group_path = temp_file("gammabar.json");
  REQUIRE(run("rep gammabar --dims 2,1,2,1,2,1 --seed 3 -o '" + group_path.string() + "'").code == 0);
  RunResult ok = run("verify '" + group_path.string() + "'");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(ok.out.find("PASS") != std::string::npos);

  Json j = Json::parse(std::ifstream(group_path));
  j["generators"]["s"][0][0][0] = j["generators"]["s"][0][0][0].get<double>() + 1.0;
  const auto tampered = temp_file("gammabar_bad.json");
  write_file(tampered, dump(j));
  RunResult bad = run("verify '" + tampered.string() + "'");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("FAIL") != std::string::npos);

  const auto rep_path = temp_file("pi0.json");
  REQUIRE(run("family pi0 --random 2 --seed 5 -o '" + rep_path.string() + "'").code == 0);
  CHECK(run("verify '" + rep_path.string() + "'").code == 0);
  Json r = Json::parse(std::ifstream(rep_path));
  r["arrows"]["s1"][0][0][0] = r["arrows"]["s1"][0][0][0].get<double>() + 1.0;
  write_file(tampered, dump(r));
  RunResult bad_rep = run("verify '" + tampered.string() + "'");
  CHECK(bad_rep.code == 2);
  CHECK(bad_rep.out.find("FAIL") != std::string::npos);
}

TEST_CASE("validation errors exit with code 1 and name the field") {
  const auto broken = temp_file("broken.json");
  write_file(broken, "{ not json");
  CHECK(run("verify '" + broken.string() + "'").code == 1);

  const auto missing = temp_file("missing.json");
  write_file(missing, R"({"schema": "amalgam-rep/1", "quiver": "hexagon", "dims": [1,1,1,1,1,1], "arrows": {}})");
  RunResult r = run("verify '" + missing.string() + "'", true);
  CHECK(r.code == 1);
  CHECK(r.out.find("$.arrows") != std::string::npos);

  const auto bad_spec = temp_file("bad_spec.json");
  write_file(bad_spec, R"({"base": [1], "left": {"blocks": [2], "mult": [[1]]}, "right": {"blocks": [1], "mult": [[1]]}})");
  CHECK(run("setting '" + bad_spec.string() + "'").code == 1);

  CHECK(run("rep gammabar --dims 1,1,1").code == 1);
  CHECK(run("rep gammabar --no-such-flag").code == 1);
  CHECK(run("setting '" + temp_file("does_not_exist.json").string() + "'").code == 1);
  CHECK(run("family pi1 --c6 -1 --u 0").code == 1);
}

TEST_CASE("phi prints exact identities") {
  RunResult r = run("phi --group ProjModular");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS phi(s)^2 = 1") != std::string::npos);
  CHECK(r.out.find("PASS phi(t)^3 = 1") != std::string::npos);
  RunResult d = run("phi --group Dinfty");
  CHECK(d.code == 0);
  CHECK(d.out.find("PASS phi(t)^2 = 1") != std::string::npos);
}

TEST_CASE("Calogero-Moser flow CSV") {
  RunResult r = run("cm flow -k 3 -n 1 -t 1 --steps 4");
  CHECK(r.code == 0);
  CHECK(first_line(r.out).rfind("step,t,re_tr_X", 0) == 0);
  CHECK(first_line(r.out).find("rank_defect") != std::string::npos);
  CHECK(count(r.out, "\n") == 6);
}

TEST_CASE("irreducibility report") {
  const auto good = temp_file("irr_good.json");
  REQUIRE(run("rep gammabar --dims 1,1,1,1,1,1 --seed 9 -o '" + good.string() + "'").code == 0);
  RunResult r = run("irreducible '" + good.string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("irreducible", 0) == 0);

  const auto bad = temp_file("irr_bad.json");
  REQUIRE(run("rep gammabar --dims 2,0,0,0,0,0 --seed 9 -o '" + bad.string() + "'").code == 0);
  RunResult b = run("irreducible '" + bad.string() + "'");
  CHECK(b.code == 0);
  CHECK(b.out.rfind("reducible", 0) == 0);
}

TEST_CASE("family outputs") {
  RunResult r = run("family pi1 --c6 10 --u 1");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["schema"] == kRepSchema);
  CHECK(j.contains("lambda"));
  RunResult g = run("family pi0 --random 3 --group");
  REQUIRE(g.code == 0);
  Json gj = Json::parse(g.out);
  CHECK(gj["schema"] == kGroupRepSchema);
  CHECK(gj["generators"]["s"].size() == 18);
  RunResult c = run("family pi0 --random 1 --collapse");
  CHECK(c.code == 0);
  CHECK(c.out.find("max deviation") != std::string::npos);
}
