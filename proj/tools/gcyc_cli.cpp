// gcyc command-line front end. Talks to the library only through gcyc.h.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gcyc/gcyc.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kViolation = 1, kInputError = 2 };

struct InputFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(gcyc_status s) {
  switch (s) {
    case GCYC_OK: return kOk;
    case GCYC_VIOLATION:
    case GCYC_NO_CONVERGENCE:
    case GCYC_HYPOTHESIS_VIOLATED: return kViolation;
    default: return kInputError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputFailure("cannot write '" + path + "'");
  out << text;
}

// "@file" reads the argument from a file, anything else is taken literally.
std::string inline_or_file(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg; }

json parse_arg(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputFailure(std::string("malformed JSON in ") + what + ": " + e.what());
  }
}

struct Context {
  std::unique_ptr<gcyc_context, decltype(&gcyc_context_free)> ptr{gcyc_context_new(), &gcyc_context_free};
  gcyc_context* get() const { return ptr.get(); }

  void flush_warnings() const {
    for (size_t i = 0; i < gcyc_warning_count(get()); ++i) std::cerr << "warning: " << gcyc_warning(get(), i) << "\n";
    gcyc_clear_warnings(get());
  }
};

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p) Free(p);
  }
};
using Space = Handle<gcyc_space, gcyc_space_free>;
using Map = Handle<gcyc_map, gcyc_map_free>;
using Gauge = Handle<gcyc_gauge, gcyc_gauge_free>;
using Report = Handle<gcyc_report, gcyc_report_free>;

// Non-OK status without a report: print the diagnostic and stop.
struct Failed {
  gcyc_status status;
};

void check(const Context& ctx, gcyc_status s, const std::string& witness_path = {}) {
  ctx.flush_warnings();
  if (s == GCYC_OK) return;
  const std::string diag = gcyc_last_error_json(ctx.get());
  std::cerr << "error (" << gcyc_status_name(s) << "): " << gcyc_last_error(ctx.get()) << "\n";
  if (exit_code(s) == kViolation && !witness_path.empty()) write_text(witness_path, diag + "\n");
  else std::cerr << diag << "\n";
  throw Failed{s};
}

struct Common {
  std::string out;
  bool strict = false;
};

struct VerifyArgs {
  std::string instance, map, gauges, t1, t2, psi, witness;
  bool strengthened = false, strict_ineq = false, all_pairs = false, no_gauge_check = false;
  double tol = 1e-9;
};

struct BppArgs {
  std::string instance, map, gauges, x0;
  double tol = 1e-9;
  std::size_t max_iter = 10000;
  bool no_hypotheses = false;
};

struct FixedPointArgs {
  std::string instance, t1, t2, psi, x0;
  double tol = 1e-9;
  std::size_t max_iter = 10000;
  bool no_star_check = false;
};

struct PbvpArgs {
  std::string problem, rhs, rhs2, h, w0 = "const:0", report;
  std::optional<double> alpha;
  double period = 1.0;
  long long n = 201;
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  bool no_lower_check = false, no_condition_check = false;
};

struct ReproduceArgs {
  std::string id, params, emit_dir;
};

void load_space(const Context& ctx, const std::string& path, Space& space) {
  check(ctx, gcyc_space_load(ctx.get(), read_file(path).c_str(), &space.p));
}

void load_map(const Context& ctx, const Space& space, const std::string& path, gcyc_map_kind kind, Map& map) {
  check(ctx, gcyc_map_load(ctx.get(), space.p, read_file(path).c_str(), kind, &map.p));
}

void write_violation_witness(const std::string& path, const json& report) {
  json witness{{"schema", "1"}};
  for (const char* key : {"contraction", "psi_contraction"})
    if (report.contains(key)) {
      witness[key] = json{{"violations", report[key]["violations"]}};
      if (report[key].contains("t2_witness")) witness[key]["t2_witness"] = report[key]["t2_witness"];
    }
  const std::string text = witness.dump(2) + "\n";
  if (path.empty()) std::cerr << text;
  else write_text(path, text);
}

int run_verify(const Context& ctx, const Common& common, const VerifyArgs& a) {
  Space space;
  load_space(ctx, a.instance, space);
  gcyc_verify_options opts;
  gcyc_verify_options_default(&opts);
  opts.tol_ineq = a.tol;
  opts.all_pairs = a.all_pairs;
  opts.strict_ineq = a.strict_ineq;
  opts.check_gauges = !a.no_gauge_check;

  Report report;
  gcyc_status s = GCYC_OK;
  const bool psi_mode = !a.t1.empty() || !a.t2.empty() || !a.psi.empty();
  if (psi_mode) {
    if (a.t1.empty() || a.t2.empty() || a.psi.empty()) throw InputFailure("--t1, --t2 and --psi go together");
    Map t1, t2;
    Gauge psi;
    load_map(ctx, space, a.t1, GCYC_MAP_A_TO_B, t1);
    load_map(ctx, space, a.t2, GCYC_MAP_B_TO_A, t2);
    check(ctx, gcyc_gauge_load(ctx.get(), read_file(a.psi).c_str(), &psi.p));
    s = gcyc_verify_psi(ctx.get(), space.p, t1.p, t2.p, psi.p, &opts, a.strengthened, &report.p);
  } else if (!a.map.empty()) {
    if (a.gauges.empty()) throw InputFailure("--map needs --gauges");
    Map map;
    Gauge phi1, phi2;
    load_map(ctx, space, a.map, GCYC_MAP_CYCLIC, map);
    check(ctx, gcyc_gauge_pair_load(ctx.get(), read_file(a.gauges).c_str(), &phi1.p, &phi2.p));
    s = gcyc_verify(ctx.get(), space.p, map.p, phi1.p, phi2.p, &opts, &report.p);
  } else {
    s = gcyc_verify(ctx.get(), space.p, nullptr, nullptr, nullptr, &opts, &report.p);
  }
  if (s != GCYC_OK && s != GCYC_VIOLATION) check(ctx, s, a.witness);
  ctx.flush_warnings();
  const std::string text = gcyc_report_json(report.p);
  write_text(common.out, text);
  if (s == GCYC_VIOLATION) {
    std::cerr << "violation: contraction check failed\n";
    write_violation_witness(a.witness, json::parse(text));
  }
  return exit_code(s);
}

int run_solve_bpp(const Context& ctx, const Common& common, const BppArgs& a) {
  Space space;
  Map map;
  load_space(ctx, a.instance, space);
  load_map(ctx, space, a.map, GCYC_MAP_CYCLIC, map);
  gcyc_solve_options opts;
  gcyc_solve_options_default(&opts);
  opts.tol = a.tol;
  opts.max_iter = a.max_iter;
  opts.check_hypotheses = !a.no_hypotheses;
  Report report;
  check(ctx, gcyc_solve_bpp(ctx.get(), space.p, map.p, a.x0.c_str(), &opts, &report.p));
  json out = json::parse(gcyc_report_json(report.p));
  if (!a.gauges.empty()) {
    Gauge phi1, phi2;
    check(ctx, gcyc_gauge_pair_load(ctx.get(), read_file(a.gauges).c_str(), &phi1.p, &phi2.p));
    gcyc_verify_options vopts;
    gcyc_verify_options_default(&vopts);
    Report verify;
    const gcyc_status vs = gcyc_verify(ctx.get(), space.p, map.p, phi1.p, phi2.p, &vopts, &verify.p);
    if (vs != GCYC_OK && vs != GCYC_VIOLATION) check(ctx, vs);
    ctx.flush_warnings();
    const json v = json::parse(gcyc_report_json(verify.p));
    out["contraction_holds"] = v["contraction"]["holds"];
    if (vs == GCYC_VIOLATION) std::cerr << "warning: the map is not a contraction for the given gauges\n";
  }
  write_text(common.out, out.dump(2) + "\n");
  return kOk;
}

int run_solve_fixed_point(const Context& ctx, const Common& common, const FixedPointArgs& a) {
  Space space;
  Map t1, t2;
  Gauge psi;
  load_space(ctx, a.instance, space);
  load_map(ctx, space, a.t1, GCYC_MAP_A_TO_B, t1);
  load_map(ctx, space, a.t2, GCYC_MAP_B_TO_A, t2);
  check(ctx, gcyc_gauge_load(ctx.get(), read_file(a.psi).c_str(), &psi.p));
  gcyc_solve_options opts;
  gcyc_solve_options_default(&opts);
  opts.tol = a.tol;
  opts.max_iter = a.max_iter;
  opts.check_hypotheses = !a.no_star_check;
  Report report;
  check(ctx, gcyc_solve_fixed_point(ctx.get(), space.p, t1.p, t2.p, psi.p, a.x0.c_str(), &opts, &report.p));
  write_text(common.out, gcyc_report_json(report.p));
  return kOk;
}

json w0_arg(const std::string& arg) {
  if (arg.rfind("const:", 0) == 0) return arg;
  return parse_arg(arg, "--w0");
}

int run_solve_pbvp(const Context& ctx, const Common& common, const PbvpArgs& a) {
  json problem;
  if (!a.problem.empty()) {
    problem = parse_arg(read_file(a.problem), "--problem");
  } else {
    if (a.rhs.empty() || !a.alpha || a.h.empty()) throw InputFailure("solve-pbvp needs --problem or --rhs, --alpha and --h");
    problem = json{{"schema", "1"},
                   {"rhs", parse_arg(inline_or_file(a.rhs), "--rhs")},
                   {"alpha", *a.alpha},
                   {"h", parse_arg(inline_or_file(a.h), "--h")},
                   {"T", a.period},
                   {"N", a.n},
                   {"w0", w0_arg(a.w0)}};
    if (!a.rhs2.empty()) problem["rhs2"] = parse_arg(inline_or_file(a.rhs2), "--rhs2");
  }
  gcyc_pbvp_options opts;
  gcyc_pbvp_options_default(&opts);
  opts.tol = a.tol;
  opts.max_iter = a.max_iter;
  opts.check_lower_solution = !a.no_lower_check;
  opts.check_condition_iv = !a.no_condition_check;
  Report report;
  check(ctx, gcyc_solve_pbvp(ctx.get(), problem.dump().c_str(), &opts, &report.p));
  if (common.out.empty()) {
    write_text(a.report, gcyc_report_json(report.p));
  } else {
    write_text(common.out, gcyc_report_csv(report.p));
    if (!a.report.empty()) write_text(a.report, gcyc_report_json(report.p));
    else std::cout << gcyc_report_json(report.p);
  }
  return kOk;
}

void emit_files(const Context& ctx, const std::string& id, const std::string& params, const fs::path& dir) {
  Report files;
  check(ctx, gcyc_emit_example(ctx.get(), id.c_str(), params.c_str(), &files.p));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputFailure("cannot create '" + dir.string() + "': " + ec.message());
  const json docs = json::parse(gcyc_report_json(files.p));
  for (auto it = docs.begin(); it != docs.end(); ++it) write_text((dir / it.key()).string(), it.value().dump(2) + "\n");
}

int run_reproduce(const Context& ctx, const Common& common, const ReproduceArgs& a) {
  const std::string params = a.params.empty() ? "" : inline_or_file(a.params);
  if (!params.empty()) parse_arg(params, "--params");
  std::vector<std::string> ids;
  if (a.id == "all") {
    if (!params.empty()) throw InputFailure("--params applies to a single example");
    ids = json::parse(gcyc_example_ids()).get<std::vector<std::string>>();
  } else {
    ids.push_back(a.id);
  }

  json reports = json::array();
  bool all_pass = true;
  for (const auto& id : ids) {
    Report report;
    const gcyc_status s = gcyc_reproduce(ctx.get(), id.c_str(), params.c_str(), &report.p);
    if (s != GCYC_OK && s != GCYC_VIOLATION) check(ctx, s);
    json r = json::parse(gcyc_report_json(report.p));
    for (const auto& c : r["checks"])
      std::cerr << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << id << ": " << c["name"].get<std::string>() << " ["
                << c["provenance"].get<std::string>() << "]\n";
    all_pass = all_pass && s == GCYC_OK;
    reports.push_back(std::move(r));
    if (!a.emit_dir.empty()) emit_files(ctx, id, params, ids.size() == 1 ? fs::path(a.emit_dir) : fs::path(a.emit_dir) / id);
  }
  const json out = ids.size() == 1 ? reports[0]
                                   : json{{"schema", "1"}, {"examples", reports}, {"all_pass", all_pass}};
  write_text(common.out, out.dump(2) + "\n");
  return all_pass ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-constrained cyclic contractions: verification, solvers and worked examples"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gcyc_version()));

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output file (default: stdout)");
    sub->add_flag("--strict", common.strict, "Reject unknown fields and a missing schema");
  };
  auto positive = CLI::PositiveNumber;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check instance predicates and contraction conditions");
  verify->add_option("--instance", va.instance, "Instance JSON")->required();
  verify->add_option("--map", va.map, "Cyclic map JSON");
  verify->add_option("--gauges", va.gauges, "Gauge pair JSON (phi1, phi2)");
  verify->add_option("--t1", va.t1, "A -> B map JSON");
  verify->add_option("--t2", va.t2, "B -> A map JSON");
  verify->add_option("--psi", va.psi, "psi gauge JSON");
  verify->add_flag("--strengthened", va.strengthened, "Two-point form of the psi inequality");
  verify->add_flag("--strict-ineq", va.strict_ineq, "Count violations within the tolerance");
  verify->add_flag("--all-pairs", va.all_pairs, "Check every pair of A x B, ignoring edges");
  verify->add_flag("--no-gauge-check", va.no_gauge_check, "Skip the gauge class checks");
  verify->add_option("--tol", va.tol, "Inequality tolerance")->check(positive);
  verify->add_option("--witness", va.witness, "Write the violation witness here");
  add_common(verify);

  BppArgs ba;
  auto* bpp = app.add_subcommand("solve-bpp", "Iterate T^2 to a best proximity point");
  bpp->add_option("--instance", ba.instance, "Instance JSON")->required();
  bpp->add_option("--map", ba.map, "Cyclic map JSON")->required();
  bpp->add_option("--gauges", ba.gauges, "Gauge pair JSON; adds the contraction verdict");
  bpp->add_option("--x0", ba.x0, "Seed point id in A")->required();
  bpp->add_option("--tol", ba.tol, "Gap tolerance")->check(positive);
  bpp->add_option("--max-iter", ba.max_iter, "Iteration cap")->check(positive);
  bpp->add_flag("--no-hypotheses", ba.no_hypotheses, "Skip the hypothesis checks");
  add_common(bpp);

  FixedPointArgs fa;
  auto* fixed = app.add_subcommand("solve-fixed-point", "Alternate T1, T2 to a common fixed point");
  fixed->add_option("--instance", fa.instance, "Instance JSON")->required();
  fixed->add_option("--t1", fa.t1, "A -> B map JSON")->required();
  fixed->add_option("--t2", fa.t2, "B -> A map JSON")->required();
  fixed->add_option("--psi", fa.psi, "psi gauge JSON")->required();
  fixed->add_option("--x0", fa.x0, "Seed point id in A")->required();
  fixed->add_option("--tol", fa.tol, "Gap tolerance")->check(positive);
  fixed->add_option("--max-iter", fa.max_iter, "Iteration cap")->check(positive);
  fixed->add_flag("--no-star-check", fa.no_star_check, "Skip the edge-limit closure check");
  add_common(fixed);

  PbvpArgs pa;
  auto* pbvp = app.add_subcommand("solve-pbvp", "Solve u' = f(t, u), u(0) = u(T) by Picard iteration");
  pbvp->set_help_flag("--help", "Print this help message and exit");
  pbvp->add_option("--problem", pa.problem, "Problem JSON file (replaces the inline options)");
  pbvp->add_option("--rhs", pa.rhs, "Right-hand side JSON (or @file)");
  pbvp->add_option("--rhs2", pa.rhs2, "Second right-hand side for the common solution");
  pbvp->add_option("--alpha", pa.alpha, "Kernel parameter alpha")->check(positive);
  pbvp->add_option("--h", pa.h, "Lipschitz gauge h(t) JSON (or @file)");
  pbvp->add_option("--T", pa.period, "Period")->check(positive);
  pbvp->add_option("--N", pa.n, "Grid nodes")->check(CLI::Range(3LL, 1000000LL));
  pbvp->add_option("--w0", pa.w0, "Lower solution: const:c or a JSON array");
  pbvp->add_option("--tol", pa.tol, "Increment tolerance")->check(positive);
  pbvp->add_option("--max-iter", pa.max_iter, "Iteration cap")->check(positive);
  pbvp->add_option("--report", pa.report, "Report JSON file");
  pbvp->add_flag("--no-lower-check", pa.no_lower_check, "Skip the lower-solution check");
  pbvp->add_flag("--no-condition-check", pa.no_condition_check, "Skip the two-sided Lipschitz check");
  add_common(pbvp);

  ReproduceArgs ra;
  auto* repro = app.add_subcommand("reproduce", "Rerun a worked example against its expected values");
  repro->add_option("id", ra.id, "Example id or 'all'")->required();
  repro->add_option("--params", ra.params, "Builder parameters as JSON (or @file)");
  repro->add_option("--emit-dir", ra.emit_dir, "Write the example's input documents here");
  add_common(repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  Context ctx;
  if (!ctx.get()) return kInputError;
  gcyc_context_set_strict(ctx.get(), common.strict);
  try {
    if (*verify) return run_verify(ctx, common, va);
    if (*bpp) return run_solve_bpp(ctx, common, ba);
    if (*fixed) return run_solve_fixed_point(ctx, common, fa);
    if (*pbvp) return run_solve_pbvp(ctx, common, pa);
    if (*repro) return run_reproduce(ctx, common, ra);
  } catch (const Failed& f) {
    return exit_code(f.status);
  } catch (const InputFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
