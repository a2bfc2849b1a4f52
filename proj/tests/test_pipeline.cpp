#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "resolvent/gluing.hpp"
#include "resolvent/pipeline.hpp"

using namespace resolvent;

namespace {

RunConfig config(const std::string& cmd) {
  RunConfig c;
  c.command = cmd;
  c.instance_path = "<memory>";
  c.threads = 1;
  return c;
}

const nlohmann::ordered_json* verdict(const nlohmann::ordered_json& report, const std::string& name) {
  for (const auto& v : report["verdicts"])
    if (v["name"] == name) return &v;
  return nullptr;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("validate reports the grade") {
  for (int k = 1; k <= 4; ++k) {
    auto r = run_command(config("validate"), catalog_instance(k));
    CHECK(r.exit_code == kPass);
    CHECK(r.report["schema"] == 1);
    CHECK(r.report["grade"] == (k <= 2 ? 1 : (k == 3 ? 2 : 1)));
  }
}

TEST_CASE("input errors exit with 2") {
  auto raw = catalog_instance(1);
  raw.f = {"x^2 +"};
  auto r = run_command(config("validate"), raw);
  CHECK(r.exit_code == kInputError);
  CHECK(r.report["error"]["kind"] == "ParseError");
  CHECK(r.report["error"].contains("offset"));

  auto shape = catalog_instance(1);
  shape.f = {"x^2", "y^2", "x*y"};
  shape.A = {{"x", "0"}, {"0", "y"}, {"y", "0"}};
  CHECK(run_command(config("validate"), shape).report["error"]["kind"] == "BadShape");

  auto cfg = config("verify");
  cfg.window = std::make_pair(0, 1);
  CHECK(run_command(cfg, catalog_instance(1)).report["error"]["kind"] == "BadWindow");
  cfg = config("verify");
  cfg.degree_max = 1;
  CHECK(run_command(cfg, catalog_instance(1)).exit_code == kInputError);

  cfg = config("homology");
  cfg.module = "x+y^2";
  CHECK(run_command(cfg, catalog_instance(1)).report["error"]["kind"] == "BadModule");
  cfg.module = "x,,y";
  CHECK(run_command(cfg, catalog_instance(1)).exit_code == kInputError);

  auto missing = config("verify");
  missing.instance_path = "/nonexistent/instance.json";
  CHECK(run_command(missing).exit_code == kInputError);
  CHECK(run_command(config("frobnicate"), catalog_instance(1)).exit_code == kInputError);
}

TEST_CASE("prime override is validated") {
  auto cfg = config("validate");
  cfg.prime = 4;
  CHECK(run_command(cfg, catalog_instance(1)).exit_code == kInputError);
  cfg.prime = 7;
  auto r = run_command(cfg, catalog_instance(1));
  CHECK(r.exit_code == kPass);
  CHECK(r.report["instance"]["data"]["prime"] == 7);
  // E1 cone window bound H = 8
  auto v = config("verify");
  v.prime = 7;
  r = run_command(v, catalog_instance(1));
  CHECK(r.exit_code == kInputError);
  CHECK(r.report["error"]["kind"] == "BadPrime");
  v.prime = 11;
  CHECK(run_command(v, catalog_instance(1)).exit_code == kPass);
}

TEST_CASE("verify passes on the catalog") {
  for (int k = 1; k <= 4; ++k) {
    auto r = run_command(config("verify"), catalog_instance(k));
    CHECK_MESSAGE(r.exit_code == kPass, r.summary);
    CHECK(r.report["overall"] == "PASS");
    CHECK(r.report["first_failure"].is_null());
    const auto* lit = verdict(r.report, "stable_duality_literal[R/J]");
    REQUIRE(lit);
    CHECK((*lit)["counts_toward_overall"] == false);
    CHECK((*lit)["totals_ok"] == true);
  }
  auto e1 = run_command(config("verify"), catalog_instance(1));
  CHECK(e1.report["sigma"] == 1);
  CHECK(e1.report["window"]["request"] == nlohmann::ordered_json({-4, 6}));
  CHECK(e1.report["window"]["interior"] == nlohmann::ordered_json({-3, 5}));
  CHECK(e1.report["window"]["degree_max"] == 8);
}

TEST_CASE("a zeroed differential fails at exactness with a cell") {
  auto cfg = config("verify");
  cfg.zero_differential = 3;
  auto r = run_command(cfg, catalog_instance(1));
  CHECK(r.exit_code == kVerificationFailure);
  CHECK(r.report["first_failure"] == "exactness");
  const auto* ex = verdict(r.report, "exactness");
  REQUIRE(ex);
  CHECK((*ex)["cell"]["n"] == -3);
  CHECK((*ex)["cell"]["d"] == -2);
  // the self-duality and d*d = 0 survive the mutation
  CHECK((*verdict(r.report, "self_duality_phi"))["ok"] == true);
  CHECK((*verdict(r.report, "d_squared_zero"))["ok"] == true);
}

TEST_CASE("reports are deterministic") {
  auto a = run_command(config("verify"), catalog_instance(3));
  auto b = run_command(config("verify"), catalog_instance(3));
  CHECK(a.report.dump() == b.report.dump());
  auto cfg = config("verify");
  cfg.threads = 3;
  CHECK(run_command(cfg, catalog_instance(3)).report.dump() == a.report.dump());
  CHECK_FALSE(a.report.contains("timings_ms"));
  cfg.timings = true;
  CHECK(run_command(cfg, catalog_instance(3)).report.contains("timings_ms"));
}

TEST_CASE("build writes six artifacts, byte-identical across runs") {
  const auto dir = std::filesystem::temp_directory_path() / "resolvent_build_test";
  std::filesystem::remove_all(dir);
  auto cfg = config("build");
  cfg.out = (dir / "a").string();
  cfg.window = std::make_pair(-3, 6);
  auto r = run_command(cfg, catalog_instance(3));
  REQUIRE(r.exit_code == kPass);
  CHECK(r.report["artifacts"]["files"].size() == 6);
  cfg.out = (dir / "b").string();
  run_command(cfg, catalog_instance(3));
  for (const char* f : {"F.json", "Fstar.json", "epsilon.json", "v.json", "T.json", "phi.json"}) {
    const auto x = slurp(dir / "a" / f);
    CHECK(x.size() > 2);
    CHECK(x == slurp(dir / "b" / f));
  }
  // cone ranks are rank F_{g-1-n} + rank F_n
  auto inst = validate_instance(catalog_instance(3));
  auto F = tate_resolution(inst, 9);
  auto rank = [&](int m) { return m < 0 ? 0 : static_cast<int>(tate_rank_formula(3, 1, m)); };
  for (const auto& e : r.report["cone_ranks"]) {
    const int n = e["n"];
    CHECK(e["rank"] == rank(1 - n) + rank(n));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("homology command") {
  auto cfg = config("homology");
  auto def = run_command(cfg, catalog_instance(1));
  CHECK(def.exit_code == kPass);
  cfg.module = "x,y";
  auto xy = run_command(cfg, catalog_instance(1));
  CHECK(xy.report["tor"]["rows"] == def.report["tor"]["rows"]);
  for (const auto& row : xy.report["tor"]["rows"]) CHECK(row["total"] == 2);
  for (const auto& row : xy.report["ext"]["rows"]) CHECK(row["total"] == 2);
  cfg.module = "1";
  auto unit = run_command(cfg, catalog_instance(1));
  CHECK(unit.report["unit_ideal"] == true);
  CHECK(unit.report["tor"]["entries"].empty());
  CHECK(unit.report["ext"]["entries"].empty());
}
