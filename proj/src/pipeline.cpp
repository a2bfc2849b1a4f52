#include "resolvent/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "resolvent/errors.hpp"
#include "resolvent/gluing.hpp"
#include "resolvent/koszul.hpp"

namespace resolvent {

using json = nlohmann::ordered_json;

Plan make_plan(const Instance& inst, const RunConfig& cfg) {
  const int g = inst.grade();
  int sum_f = 0, max_f = 0, max_g = 0;
  for (int e : inst.f_degrees) {
    sum_f += e;
    max_f = std::max(max_f, e);
  }
  for (int e : inst.g_degrees) max_g = std::max(max_g, e);
  Plan p;
  p.request.n_min = cfg.window ? cfg.window->first : -(g + 3);
  p.request.n_max = cfg.window ? cfg.window->second : 2 * g + 4;
  p.request.D = cfg.degree_max ? *cfg.degree_max : 2 * sum_f + 4;
  if (p.request.n_max - p.request.n_min < 2)
    throw ValidationError("BadWindow", "window " + std::to_string(p.request.n_min) + ":" +
                                           std::to_string(p.request.n_max) + " has an empty interior");
  if (p.request.D < 2 * max_f || p.request.D < max_g)
    throw ValidationError("BadWindow", "degree bound " + std::to_string(p.request.D) + " is below 2 max deg f = " +
                                           std::to_string(2 * max_f));
  p.H = std::max(p.request.n_max, g - 1 - p.request.n_min) + g + 1;
  // divided-power binomials up to C(H, k) must not vanish mod p
  if (static_cast<std::int64_t>(inst.ring->prime()) <= p.H)
    throw ValidationError("BadPrime", "prime " + std::to_string(inst.ring->prime()) +
                                          " does not exceed the cone window bound " + std::to_string(p.H));
  return p;
}

QuotientPtr module_quotient(const Instance& inst, const std::optional<std::string>& spec) {
  if (!spec || spec->find_first_not_of(" \t") == std::string::npos) return inst.R_mod_J;
  std::vector<Poly> extra;
  std::stringstream ss(*spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Poly p = parse_poly(inst.ring, item);
    if (!p.is_homogeneous()) throw ValidationError("BadModule", "generator '" + item + "' is not homogeneous");
    extra.push_back(std::move(p));
  }
  return inst.R->extended(extra);
}

namespace {

struct Verdicts {
  json list = json::array();
  std::vector<std::string> lines;
  std::optional<std::string> first_failure;

  void add(const std::string& name, bool ok, json details, bool counts = true) {
    json v{{"name", name}, {"ok", ok}, {"counts_toward_overall", counts}};
    for (auto& [k, val] : details.items()) v[k] = val;
    list.push_back(std::move(v));
    std::string line = std::string(ok ? "PASS " : (counts ? "FAIL " : "note ")) + name;
    if (details.contains("message") && details["message"].is_string() && !details["message"].get<std::string>().empty())
      line += "  " + details["message"].get<std::string>();
    lines.push_back(line);
    if (!ok && counts && !first_failure) first_failure = name;
  }
};

json cell_json(const Cell& c) { return {{"n", c.n}, {"d", c.d}, {"expected", c.expected}, {"found", c.found}}; }

json chain_map_json(const ChainMap& m) {
  json comps = json::array();
  for (const auto& [n, mat] : m.comps) comps.push_back({{"n", n}, {"matrix", mat.to_json()}});
  return {{"shift", m.shift}, {"components", comps}};
}

json report_json(const ChainMapReport& r) {
  json failed = json::array();
  for (const auto& f : r.failures) failed.push_back(f.index);
  return {{"checked", r.checked}, {"failed", failed}};
}

class Clock {
 public:
  void lap(const std::string& name) {
    auto now = std::chrono::steady_clock::now();
    times_[name] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  const json& to_json() const { return times_; }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  json times_ = json::object();
};

json instance_echo(const RunConfig& cfg, const RawInstance& raw) {
  json j = json::parse(instance_to_json(raw));
  return {{"path", cfg.instance_path}, {"data", j}};
}

json window_json(const Plan& p, const Instance& inst) {
  return {{"request", {p.request.n_min, p.request.n_max}},
          {"interior", {p.request.n_min + 1, p.request.n_max - 1}},
          {"degree_max", p.request.D},
          {"cone_window", {inst.grade() - 1 - p.H, p.H}}};
}

// Zeroes D_n and D_{g-n}; d*d = 0 and the self-duality survive, exactness does not.
ComplexPtr corrupted(const GradedComplex& T, int n, int g) {
  std::map<int, FreeMod> mods;
  std::map<int, HomogMatrix> diffs;
  for (int i = T.lo(); i <= T.hi(); ++i) mods.emplace(i, T.module(i));
  for (const auto& [i, d] : T.diffs()) {
    if (i <= T.lo() || i > T.hi()) continue;
    diffs.emplace(i, (i == n || i == g - n) ? HomogMatrix(T.ring(), d.rows(), d.cols()) : d);
  }
  return std::make_shared<GradedComplex>(T.ring(), T.lo(), T.hi(), std::move(mods), std::move(diffs),
                                         T.closed_below(), T.closed_above());
}

std::vector<std::pair<std::string, QuotientPtr>> coefficient_modules(const Instance& inst) {
  return {{"R/J", inst.R_mod_J}, {"R", inst.R}, {"R/(g1)", inst.R->extended({inst.g.front()})}};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ContextError("cannot write " + p.string());
  os << text;
}

RunResult do_validate(const RunConfig& cfg, const Instance& inst, json report) {
  RunResult r;
  report["grade"] = inst.grade();
  report["r"] = inst.r();
  report["s"] = inst.s();
  report["twist"] = inst.twist();
  report["overall"] = "PASS";
  r.report = std::move(report);
  r.summary = "valid instance " + cfg.instance_path + "\ng = " + std::to_string(inst.grade()) + "\n";
  return r;
}

RunResult do_build(const RunConfig& cfg, const Instance& inst, json report) {
  RunResult r;
  Clock clock;
  const Plan plan = make_plan(inst, cfg);
  auto sd = build_self_dual_resolution(inst, plan.H);
  clock.lap("construction");
  if (!sd.phi_report.ok())
    throw ChainMapError("phi fails the commuting square at index " + std::to_string(sd.phi_report.failures.front().index));
  const std::filesystem::path dir = cfg.out.empty() ? "resolvent-artifacts" : cfg.out;
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, json>> files{
      {"F.json", sd.F.complex->to_json()},  {"Fstar.json", sd.Fstar->to_json()},
      {"epsilon.json", ext_element_json(sd.eps)}, {"v.json", chain_map_json(sd.v)},
      {"T.json", sd.T->to_json()},          {"phi.json", chain_map_json(sd.phi)}};
  json written = json::array();
  for (const auto& [name, j] : files) {
    const std::string text = j.dump(1) + "\n";
    write_file(dir / name, text);
    written.push_back({{"file", name}, {"bytes", text.size()}});
  }
  clock.lap("write");
  report["grade"] = inst.grade();
  report["window"] = window_json(plan, inst);
  report["sigma"] = *sd.omega.sigma;
  json ranks = json::array();
  for (int n = sd.T->lo(); n <= sd.T->hi(); ++n) ranks.push_back({{"n", n}, {"rank", sd.T->module(n).rank()}});
  report["cone_ranks"] = ranks;
  report["artifacts"] = {{"directory", dir.string()}, {"files", written}};
  if (cfg.timings) report["timings_ms"] = clock.to_json();
  report["overall"] = "PASS";
  r.report = std::move(report);
  std::ostringstream os;
  os << "built T on [" << sd.T->lo() << ", " << sd.T->hi() << "], sigma = " << *sd.omega.sigma << "\n";
  for (const auto& [name, j] : files) os << "wrote " << (dir / name).string() << "\n";
  r.summary = os.str();
  return r;
}

RunResult do_verify(const RunConfig& cfg, const Instance& inst, json report) {
  RunResult r;
  Clock clock;
  const Plan plan = make_plan(inst, cfg);
  const int g = inst.grade(), D = plan.request.D;
  const unsigned threads = cfg.threads;
  Verdicts V;

  auto K = koszul_complex(inst.g, inst.R);
  auto sd = build_self_dual_resolution(inst, plan.H);
  ComplexPtr T = sd.T;
  ChainMap phi = sd.phi;
  ChainMapReport phi_report = sd.phi_report;
  if (cfg.zero_differential) {
    T = corrupted(*sd.T, *cfg.zero_differential, g);
    phi = self_duality_iso(inst, T, *sd.omega.sigma);
    phi_report = verify_chain_map(phi);
  }
  auto Tstar = dual(*T);
  clock.lap("construction");

  {
    json per = json::object();
    bool ok = true;
    const std::vector<std::pair<std::string, const GradedComplex*>> cs{
        {"K", &K}, {"F", sd.F.complex.get()}, {"F*", sd.Fstar.get()}, {"T", T.get()}, {"T*", &Tstar}};
    for (const auto& [name, c] : cs) {
      auto f = c->square_zero_failures();
      per[name] = f;
      ok = ok && f.empty();
    }
    V.add("d_squared_zero", ok, {{"failures", per}});
  }
  {
    json per = json::array();
    bool ok = true;
    for (int l = 0; l <= static_cast<int>(inst.r()); ++l) {
      auto kb = koszul_basis_check(inst, l, D);
      ok = ok && kb.ok;
      per.push_back(kb.to_json());
    }
    V.add("koszul_homology_basis", ok, {{"degrees", {0, D}}, {"levels", per}});
  }
  {
    auto ksd = koszul_self_duality(inst);
    auto rep = verify_chain_map(ksd.corrected);
    V.add("koszul_self_duality", rep.ok(), report_json(rep));
  }
  {
    auto kc = check_horizontal_kernel(inst, sd.Fd, sd.eps);
    json nz = json::array();
    for (const auto& [label, p] : kc.nonzero) nz.push_back({{"label", label}, {"coefficient", p.to_string()}});
    V.add("epsilon_kernel", kc.ok, {{"epsilon", ext_element_json(sd.eps)}, {"nonzero", nz}});
  }
  V.add("gluing_chain_map", sd.v_report.ok(), report_json(sd.v_report));
  V.add("omega_transpose_sigma", sd.omega.sigma.has_value(),
        {{"sigma", sd.omega.sigma ? json(*sd.omega.sigma) : json(nullptr)},
         {"agree_plus", sd.omega.agree_plus},
         {"agree_minus", sd.omega.agree_minus}});
  {
    bool perm = true;
    for (const auto& [n, m] : phi.comps) perm = perm && is_signed_permutation(m);
    json d = report_json(phi_report);
    d["invertible"] = perm;
    V.add("self_duality_phi", phi_report.ok() && perm, d);
  }
  {
    auto u = minimality_check(*T);
    json d = json::object();
    if (u) d["unit_entry"] = {{"index", u->index}, {"row", u->row}, {"col", u->col}};
    V.add("minimality", !u, d);
  }
  clock.lap("maps");
  {
    auto ex = verify_exactness(*T, plan.request, threads);
    json d{{"interior", {plan.request.n_min + 1, plan.request.n_max - 1}}, {"degree_max", D}};
    if (ex.counterexample) {
      d["complex"] = ex.where;
      d["cell"] = cell_json(*ex.counterexample);
      d["message"] = "nonzero homology of " + ex.where + " at n = " + std::to_string(ex.counterexample->n) +
                     ", d = " + std::to_string(ex.counterexample->d);
    }
    V.add("exactness", ex.ok, d);
  }
  clock.lap("exactness");
  {
    auto bad = check_tail_agreement(inst, sd.F, *sd.Fstar, *T, sd.target_block_size);
    V.add("tail_agreement", bad.empty(), {{"mismatched_indices", bad}});
  }
  json tables = json::object();
  {
    auto tr = verify_tate_is_resolution(inst, *sd.F.complex, D, threads);
    json f = json::array(), e = json::array();
    for (const auto& c : tr.failures) f.push_back(cell_json(c));
    for (const auto& c : tr.ext_failures) e.push_back(cell_json(c));
    V.add("tate_resolves_R_mod_J", tr.failures.empty(), {{"failures", f}});
    json d{{"failures", e}, {"shift", tr.ext_shift ? json(*tr.ext_shift) : json(nullptr)}};
    if (tr.ext_shift) d["message"] = "Ext^g(R/J,R) = R/J shifted by " + std::to_string(*tr.ext_shift);
    V.add("ext_concentration", tr.ext_failures.empty(), d);
    tables["tate_homology"] = tr.tor_table.to_json();
    tables["ext_R"] = tr.ext_table.to_json();
  }
  clock.lap("ext");
  json stable = json::object();
  for (const auto& [name, N] : coefficient_modules(inst)) {
    auto tor = stable_tor(*T, N, plan.request, threads);
    auto ext = stable_ext(*T, N, plan.request, threads);
    auto phi_v = verify_phi_duality(tor, ext, g, D);
    auto lit = verify_stable_duality(tor, ext, g, D);
    json dp = phi_v.to_json(), dl = lit.to_json();
    dp["level"] = dl["level"] = "dimension";
    V.add("stable_duality[" + name + "]", phi_v.ok, dp);
    V.add("stable_duality_literal[" + name + "]", lit.ok, dl, false);
    stable[name] = {{"tor", tor.to_json()}, {"ext", ext.to_json()}};
  }
  tables["stable"] = stable;
  clock.lap("stable");

  report["grade"] = g;
  report["twist"] = inst.twist();
  report["window"] = window_json(plan, inst);
  report["sigma"] = sd.omega.sigma ? json(*sd.omega.sigma) : json(nullptr);
  report["verdicts"] = V.list;
  report["tables"] = tables;
  if (cfg.timings) report["timings_ms"] = clock.to_json();
  report["overall"] = V.first_failure ? "FAIL" : "PASS";
  report["first_failure"] = V.first_failure ? json(*V.first_failure) : json(nullptr);
  r.exit_code = V.first_failure ? kVerificationFailure : kPass;
  r.report = std::move(report);
  std::ostringstream os;
  for (const auto& l : V.lines) os << l << "\n";
  os << (V.first_failure ? "FAIL (first failing verdict: " + *V.first_failure + ")" : std::string("PASS")) << "\n";
  r.summary = os.str();
  return r;
}

RunResult do_homology(const RunConfig& cfg, const Instance& inst, json report) {
  RunResult r;
  Clock clock;
  const Plan plan = make_plan(inst, cfg);
  const int g = inst.grade();
  auto N = module_quotient(inst, cfg.module);
  auto sd = build_self_dual_resolution(inst, plan.H);
  clock.lap("construction");
  auto tor = stable_tor(*sd.T, N, plan.request, cfg.threads);
  auto ext = stable_ext(*sd.T, N, plan.request, cfg.threads);
  clock.lap("homology");
  Verdicts V;
  auto phi_v = verify_phi_duality(tor, ext, g, plan.request.D);
  auto lit = verify_stable_duality(tor, ext, g, plan.request.D);
  V.add("stable_duality", phi_v.ok, phi_v.to_json());
  V.add("stable_duality_literal", lit.ok, lit.to_json(), false);
  report["grade"] = g;
  report["window"] = window_json(plan, inst);
  report["module"] = cfg.module ? json(*cfg.module) : json("R/J");
  report["unit_ideal"] = N->is_unit_ideal();
  report["tor"] = tor.to_json();
  report["ext"] = ext.to_json();
  report["verdicts"] = V.list;
  if (cfg.timings) report["timings_ms"] = clock.to_json();
  report["overall"] = V.first_failure ? "FAIL" : "PASS";
  r.exit_code = V.first_failure ? kVerificationFailure : kPass;
  r.report = std::move(report);
  std::ostringstream os;
  os << "n      Tor_n  Ext^n\n";
  for (int n = plan.request.n_min; n <= plan.request.n_max; ++n) {
    os << n << (n == plan.request.n_min || n == plan.request.n_max ? "*" : " ");
    os << std::string(6 - std::min<std::size_t>(6, std::to_string(n).size()), ' ') << tor.total(n) << "      "
       << ext.total(n) << "\n";
  }
  for (const auto& l : V.lines) os << l << "\n";
  r.summary = os.str();
  return r;
}

RunResult failure(int code, const std::string& kind, const std::string& message, json report) {
  RunResult r;
  r.exit_code = code;
  report["overall"] = code == kInputError ? "INPUT_ERROR" : "CONSTRUCTION_FAILURE";
  report["error"] = {{"kind", kind}, {"message", message}};
  r.report = std::move(report);
  r.summary = "error: " + message + "\n";
  return r;
}

}  // namespace

RunResult run_command(const RunConfig& cfg, const RawInstance& raw_in) {
  json report{{"schema", 1}, {"command", cfg.command}};
  RawInstance raw = raw_in;
  if (cfg.prime) raw.prime = *cfg.prime;
  try {
    report["instance"] = instance_echo(cfg, raw);
    const Instance inst = validate_instance(raw);
    if (cfg.command == "validate") return do_validate(cfg, inst, report);
    if (cfg.command == "build") return do_build(cfg, inst, report);
    if (cfg.command == "verify") return do_verify(cfg, inst, report);
    if (cfg.command == "homology") return do_homology(cfg, inst, report);
    return failure(kInputError, "BadCommand", "unknown command '" + cfg.command + "'", report);
  } catch (const ValidationError& e) {
    return failure(kInputError, e.kind(), e.what(), report);
  } catch (const ParseError& e) {
    json rep = report;
    auto res = failure(kInputError, "ParseError", e.what(), rep);
    res.report["error"]["offset"] = e.offset();
    return res;
  } catch (const ChainMapError& e) {
    return failure(kConstructionFailure, "ChainMapError", e.what(), report);
  } catch (const ConstructionError& e) {
    return failure(kConstructionFailure, "ConstructionError", e.what(), report);
  } catch (const ContextError& e) {
    return failure(kInputError, "ContextError", e.what(), report);
  } catch (const std::exception& e) {
    return failure(kConstructionFailure, "InternalError", e.what(), report);
  }
}

RunResult run_command(const RunConfig& cfg) {
  try {
    return run_command(cfg, load_instance_file(cfg.instance_path));
  } catch (const ParseError& e) {
    auto r = failure(kInputError, "ParseError", e.what(), {{"schema", 1}, {"command", cfg.command}});
    r.report["error"]["offset"] = e.offset();
    return r;
  } catch (const Error& e) {
    return failure(kInputError, "InputError", e.what(), {{"schema", 1}, {"command", cfg.command}});
  }
}

}  // namespace resolvent
