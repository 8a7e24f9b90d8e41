#include "gcyc/gcyc.h"

#include <cmath>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gcyc/bpp_solver.hpp"
#include "gcyc/error.hpp"
#include "gcyc/examples_corpus.hpp"
#include "gcyc/fixed_point.hpp"
#include "gcyc/io.hpp"
#include "gcyc/pbvp.hpp"

using gcyc::json;

struct gcyc_context {
  bool strict = false;
  std::string error;
  std::string error_json = "null";
  std::vector<std::string> warnings;
};

struct gcyc_space {
  gcyc::FiniteMetricGraph space;
};

struct gcyc_map {
  gcyc_map_kind kind;
  std::optional<gcyc::CyclicMap> cyclic;
  std::vector<gcyc::Vertex> table;
};

struct gcyc_gauge {
  gcyc::Gauge gauge;
};

struct gcyc_report {
  std::string json_text;
  std::string csv_text;
};

namespace {

constexpr const char* kVersion = "1.0.0";

gcyc_status status_of(gcyc::ErrorCode code) {
  using gcyc::ErrorCode;
  switch (code) {
    case ErrorCode::HypothesisViolated:
    case ErrorCode::SeedNotEligible:
    case ErrorCode::BetaNotContractive:
    case ErrorCode::NotLowerSolution:
    case ErrorCode::ConditionIvViolated:
    case ErrorCode::MonotonicityBroken:
    case ErrorCode::GaugeClassViolation:
      return GCYC_HYPOTHESIS_VIOLATED;
    case ErrorCode::NoConvergence:
      return GCYC_NO_CONVERGENCE;
    default:
      return GCYC_INPUT_ERROR;
  }
}

void set_error(gcyc_context* ctx, const std::string& code, const std::string& message, const json& detail) {
  if (!ctx) return;
  ctx->error = message;
  ctx->error_json = json{{"code", code}, {"message", message}, {"detail", detail}}.dump();
}

void clear_error(gcyc_context* ctx) {
  ctx->error.clear();
  ctx->error_json = "null";
}

template <typename Fn>
gcyc_status guarded(gcyc_context* ctx, Fn&& fn) {
  if (!ctx) return GCYC_INPUT_ERROR;
  clear_error(ctx);
  try {
    return fn();
  } catch (const gcyc::Error& e) {
    set_error(ctx, std::string(gcyc::to_string(e.code())), e.what(), e.detail());
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    set_error(ctx, "InternalError", "out of memory", nullptr);
    return GCYC_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    set_error(ctx, "InternalError", e.what(), nullptr);
    return GCYC_INTERNAL_ERROR;
  }
}

gcyc_status null_argument(gcyc_context* ctx, const char* name) {
  set_error(ctx, "InvalidInput", std::string("null argument: ") + name, nullptr);
  return GCYC_INPUT_ERROR;
}

gcyc::LoadOptions load_options(gcyc_context* ctx) { return gcyc::LoadOptions{ctx->strict, &ctx->warnings}; }

json parse_optional(const char* text) {
  if (!text || !*text) return json::object();
  return gcyc::parse_json_text(text);
}

gcyc_report* make_report(json doc, std::string csv = {}) {
  auto* r = new gcyc_report;
  r->json_text = doc.dump(2) + "\n";
  r->csv_text = std::move(csv);
  return r;
}

json with_schema(json body) {
  json out{{"schema", gcyc::kSchemaVersion}};
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

gcyc::ContractionOptions contraction_options(const gcyc_verify_options* o) {
  gcyc_verify_options defaults;
  gcyc_verify_options_default(&defaults);
  if (!o) o = &defaults;
  gcyc::ContractionOptions opts;
  opts.tol_ineq = o->tol_ineq;
  opts.scope = o->all_pairs ? gcyc::PairScope::AllPairs : gcyc::PairScope::EdgeEligible;
  opts.strict = o->strict_ineq != 0;
  opts.check_gauges = o->check_gauges != 0;
  return opts;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw gcyc::Error(gcyc::ErrorCode::InvalidInput, std::string(name) + " must be a positive number",
                      json{{"param", name}, {"value", value}});
}

gcyc::PairMaps pair_maps(const gcyc_space* space, const gcyc_map* t1, const gcyc_map* t2) {
  if (t1->kind != GCYC_MAP_A_TO_B || t2->kind != GCYC_MAP_B_TO_A)
    throw gcyc::Error(gcyc::ErrorCode::InvalidInput, "T1 must be loaded as A->B and T2 as B->A");
  return gcyc::PairMaps(space->space, t1->table, t2->table);
}

json verify_body(gcyc_context* ctx, const gcyc_space* space) {
  (void)ctx;
  return json{{"predicates", gcyc::predicates_to_json(space->space)}};
}

}  // namespace

extern "C" {

const char* gcyc_version(void) { return kVersion; }

const char* gcyc_status_name(gcyc_status status) {
  switch (status) {
    case GCYC_OK: return "ok";
    case GCYC_VIOLATION: return "violation";
    case GCYC_INPUT_ERROR: return "input_error";
    case GCYC_NO_CONVERGENCE: return "no_convergence";
    case GCYC_HYPOTHESIS_VIOLATED: return "hypothesis_violated";
    case GCYC_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

gcyc_context* gcyc_context_new(void) { return new (std::nothrow) gcyc_context; }
void gcyc_context_free(gcyc_context* ctx) { delete ctx; }
void gcyc_context_set_strict(gcyc_context* ctx, int strict) {
  if (ctx) ctx->strict = strict != 0;
}
const char* gcyc_last_error(const gcyc_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }
const char* gcyc_last_error_json(const gcyc_context* ctx) { return ctx ? ctx->error_json.c_str() : "null"; }
size_t gcyc_warning_count(const gcyc_context* ctx) { return ctx ? ctx->warnings.size() : 0; }
const char* gcyc_warning(const gcyc_context* ctx, size_t index) {
  if (!ctx || index >= ctx->warnings.size()) return nullptr;
  return ctx->warnings[index].c_str();
}
void gcyc_clear_warnings(gcyc_context* ctx) {
  if (ctx) ctx->warnings.clear();
}

gcyc_status gcyc_space_load(gcyc_context* ctx, const char* json_text, gcyc_space** out) {
  return guarded(ctx, [&] {
    if (!json_text || !out) return null_argument(ctx, "json_text/out");
    *out = nullptr;
    auto space = gcyc::space_from_json(gcyc::parse_json_text(json_text), load_options(ctx));
    *out = new gcyc_space{std::move(space)};
    return GCYC_OK;
  });
}

void gcyc_space_free(gcyc_space* space) { delete space; }
size_t gcyc_space_size(const gcyc_space* space) { return space ? space->space.size() : 0; }

gcyc_status gcyc_space_predicates(gcyc_context* ctx, const gcyc_space* space, gcyc_report** out) {
  return guarded(ctx, [&] {
    if (!space || !out) return null_argument(ctx, "space/out");
    *out = make_report(with_schema(verify_body(ctx, space)));
    return GCYC_OK;
  });
}

gcyc_status gcyc_map_load(gcyc_context* ctx, const gcyc_space* space, const char* json_text, gcyc_map_kind kind,
                          gcyc_map** out) {
  return guarded(ctx, [&] {
    if (!space || !json_text || !out) return null_argument(ctx, "space/json_text/out");
    *out = nullptr;
    const json doc = gcyc::parse_json_text(json_text);
    auto m = std::make_unique<gcyc_map>();
    m->kind = kind;
    switch (kind) {
      case GCYC_MAP_CYCLIC:
        m->cyclic = gcyc::cyclic_map_from_json(doc, space->space, load_options(ctx));
        break;
      case GCYC_MAP_A_TO_B:
      case GCYC_MAP_B_TO_A:
        m->table = gcyc::side_map_from_json(doc, space->space, kind == GCYC_MAP_A_TO_B, load_options(ctx));
        break;
      default:
        throw gcyc::Error(gcyc::ErrorCode::InvalidInput, "unknown map kind");
    }
    *out = m.release();
    return GCYC_OK;
  });
}

void gcyc_map_free(gcyc_map* map) { delete map; }

gcyc_status gcyc_gauge_load(gcyc_context* ctx, const char* json_text, gcyc_gauge** out) {
  return guarded(ctx, [&] {
    if (!json_text || !out) return null_argument(ctx, "json_text/out");
    *out = nullptr;
    auto g = gcyc::gauge_from_json(gcyc::parse_json_text(json_text), load_options(ctx), true);
    *out = new gcyc_gauge{std::move(g)};
    return GCYC_OK;
  });
}

gcyc_status gcyc_gauge_pair_load(gcyc_context* ctx, const char* json_text, gcyc_gauge** phi1, gcyc_gauge** phi2) {
  return guarded(ctx, [&] {
    if (!json_text || !phi1 || !phi2) return null_argument(ctx, "json_text/phi1/phi2");
    *phi1 = nullptr;
    *phi2 = nullptr;
    auto [a, b] = gcyc::gauge_pair_from_json(gcyc::parse_json_text(json_text), load_options(ctx));
    auto first = std::make_unique<gcyc_gauge>(gcyc_gauge{std::move(a)});
    *phi2 = new gcyc_gauge{std::move(b)};
    *phi1 = first.release();
    return GCYC_OK;
  });
}

void gcyc_gauge_free(gcyc_gauge* gauge) { delete gauge; }

gcyc_status gcyc_gauge_eval(gcyc_context* ctx, const gcyc_gauge* gauge, double s, double* out) {
  return guarded(ctx, [&] {
    if (!gauge || !out) return null_argument(ctx, "gauge/out");
    *out = gauge->gauge(s);
    return GCYC_OK;
  });
}

gcyc_status gcyc_kappa(gcyc_context* ctx, double z, int64_t* out) {
  return guarded(ctx, [&] {
    if (!out) return null_argument(ctx, "out");
    *out = gcyc::kappa(z);
    return GCYC_OK;
  });
}

void gcyc_verify_options_default(gcyc_verify_options* options) {
  if (!options) return;
  options->tol_ineq = 1e-9;
  options->all_pairs = 0;
  options->strict_ineq = 0;
  options->check_gauges = 1;
}

gcyc_status gcyc_verify(gcyc_context* ctx, const gcyc_space* space, const gcyc_map* map, const gcyc_gauge* phi1,
                        const gcyc_gauge* phi2, const gcyc_verify_options* options, gcyc_report** out) {
  return guarded(ctx, [&] {
    if (!space || !out) return null_argument(ctx, "space/out");
    *out = nullptr;
    json body = verify_body(ctx, space);
    gcyc_status status = GCYC_OK;
    if (map) {
      if (!map->cyclic) throw gcyc::Error(gcyc::ErrorCode::InvalidInput, "verify needs a cyclic map");
      if (!phi1 || !phi2) return null_argument(ctx, "phi1/phi2");
      const auto opts = contraction_options(options);
      require_positive(opts.tol_ineq, "tol_ineq");
      const auto report = gcyc::verify_g_cyclic_contraction(space->space, *map->cyclic, phi1->gauge, phi2->gauge, opts);
      body["contraction"] = gcyc::contraction_report_to_json(space->space, report);
      body["contraction"]["scope"] = opts.scope == gcyc::PairScope::AllPairs ? "all_pairs" : "edge_eligible";
      body["x_t2_a"] = gcyc::ids_to_json(space->space, gcyc::x_t2_a_set(space->space, *map->cyclic));
      if (!report.marginal.empty()) {
        const auto& m = report.marginal.front();
        ctx->warnings.push_back(std::to_string(report.marginal.size()) +
                                " pair(s) exceed the bound by no more than tol_ineq, first at (" +
                                space->space.id(m.x) + ", " + space->space.id(m.y) + ")");
      }
      if (!report.holds) status = GCYC_VIOLATION;
    }
    *out = make_report(with_schema(std::move(body)));
    return status;
  });
}

gcyc_status gcyc_verify_psi(gcyc_context* ctx, const gcyc_space* space, const gcyc_map* t1, const gcyc_map* t2,
                            const gcyc_gauge* psi, const gcyc_verify_options* options, int strengthened,
                            gcyc_report** out) {
  return guarded(ctx, [&] {
    if (!space || !t1 || !t2 || !psi || !out) return null_argument(ctx, "space/t1/t2/psi/out");
    *out = nullptr;
    const gcyc::PairMaps pair = pair_maps(space, t1, t2);
    const auto copts = contraction_options(options);
    require_positive(copts.tol_ineq, "tol_ineq");
    gcyc::PsiOptions opts;
    opts.tol_ineq = copts.tol_ineq;
    opts.strengthened = strengthened != 0;
    opts.check_gauge = copts.check_gauges;
    const auto report = gcyc::verify_g_psi_contraction(space->space, pair, psi->gauge, opts);
    json body = verify_body(ctx, space);
    body["psi_contraction"] = gcyc::contraction_report_to_json(space->space, report);
    body["psi_contraction"]["mode"] = opts.strengthened ? "two_point" : "standard";
    *out = make_report(with_schema(std::move(body)));
    return report.holds ? GCYC_OK : GCYC_VIOLATION;
  });
}

void gcyc_solve_options_default(gcyc_solve_options* options) {
  if (!options) return;
  options->tol = 1e-9;
  options->max_iter = 10000;
  options->check_hypotheses = 1;
}

gcyc_status gcyc_solve_bpp(gcyc_context* ctx, const gcyc_space* space, const gcyc_map* map, const char* x0_id,
                           const gcyc_solve_options* options, gcyc_report** out) {
  return guarded(ctx, [&] {
    if (!space || !map || !x0_id || !out) return null_argument(ctx, "space/map/x0/out");
    *out = nullptr;
    if (!map->cyclic) throw gcyc::Error(gcyc::ErrorCode::InvalidInput, "solve-bpp needs a cyclic map");
    gcyc_solve_options o;
    gcyc_solve_options_default(&o);
    if (options) o = *options;
    require_positive(o.tol, "tol");
    gcyc::BppOptions opts{o.tol, o.max_iter, o.check_hypotheses != 0};
    const auto result =
        gcyc::solve_bpp(space->space, *map->cyclic, space->space.index_of(x0_id), opts);
    *out = make_report(with_schema(gcyc::bpp_result_to_json(space->space, result)));
    return GCYC_OK;
  });
}

gcyc_status gcyc_solve_fixed_point(gcyc_context* ctx, const gcyc_space* space, const gcyc_map* t1,
                                   const gcyc_map* t2, const gcyc_gauge* psi, const char* x0_id,
                                   const gcyc_solve_options* options, gcyc_report** out) {
  return guarded(ctx, [&] {
    if (!space || !t1 || !t2 || !psi || !x0_id || !out) return null_argument(ctx, "space/t1/t2/psi/x0/out");
    *out = nullptr;
    gcyc_solve_options o;
    gcyc_solve_options_default(&o);
    if (options) o = *options;
    require_positive(o.tol, "tol");
    const gcyc::PairMaps pair = pair_maps(space, t1, t2);
    gcyc::FixedPointOptions opts{o.tol, o.max_iter, o.check_hypotheses != 0};
    const auto result =
        gcyc::solve_common_fixed_point(space->space, pair, psi->gauge, space->space.index_of(x0_id), opts);
    *out = make_report(with_schema(gcyc::fixed_point_result_to_json(space->space, result)));
    return GCYC_OK;
  });
}

void gcyc_pbvp_options_default(gcyc_pbvp_options* options) {
  if (!options) return;
  options->tol = 1e-10;
  options->max_iter = 10000;
  options->check_lower_solution = 1;
  options->check_condition_iv = 1;
}

gcyc_status gcyc_solve_pbvp(gcyc_context* ctx, const char* problem_json, const gcyc_pbvp_options* options,
                            gcyc_report** out) {
  return guarded(ctx, [&] {
    if (!problem_json || !out) return null_argument(ctx, "problem_json/out");
    *out = nullptr;
    gcyc_pbvp_options o;
    gcyc_pbvp_options_default(&o);
    if (options) o = *options;
    require_positive(o.tol, "tol");
    const gcyc::ProblemDocument doc = gcyc::problem_from_json(gcyc::parse_json_text(problem_json), load_options(ctx));
    gcyc::PicardOptions picard;
    picard.tol = o.tol;
    picard.max_iter = o.max_iter;
    picard.check_lower_solution = o.check_lower_solution != 0;

    json body;
    std::string csv;
    if (doc.f2) {
      gcyc::CommonPbvpOptions copts;
      copts.picard = picard;
      copts.check_condition_iv = o.check_condition_iv != 0;
      const auto r = gcyc::solve_common_pbvp({doc.f1, *doc.f2, doc.alpha, doc.h, doc.grid, doc.w0}, copts);
      body = gcyc::pbvp_report_to_json(r.report.picard);
      body["mode"] = "common";
      std::vector<bool> steps(r.report.monotone_steps.begin(), r.report.monotone_steps.end());
      body["monotone_steps"] = steps;
      body["residual_f1"] = r.report.residual_f1;
      body["residual_f2"] = r.report.residual_f2;
      csv = gcyc::grid_function_to_csv(r.u);
    } else {
      const auto r = gcyc::solve_pbvp({doc.f1, doc.alpha, doc.h, doc.grid, doc.w0}, picard);
      body = gcyc::pbvp_report_to_json(r.report);
      body["mode"] = "single";
      csv = gcyc::grid_function_to_csv(r.u);
    }
    body["alpha"] = doc.alpha;
    body["T"] = doc.grid.period();
    body["N"] = doc.grid.size();
    *out = make_report(with_schema(std::move(body)), std::move(csv));
    return GCYC_OK;
  });
}

gcyc_status gcyc_reproduce(gcyc_context* ctx, const char* example_id, const char* params_json, gcyc_report** out) {
  return guarded(ctx, [&] {
    if (!example_id || !out) return null_argument(ctx, "example_id/out");
    *out = nullptr;
    const auto report = gcyc::reproduce(example_id, parse_optional(params_json));
    *out = make_report(report.to_json());
    return report.all_pass() ? GCYC_OK : GCYC_VIOLATION;
  });
}

gcyc_status gcyc_emit_example(gcyc_context* ctx, const char* example_id, const char* params_json,
                              gcyc_report** out) {
  return guarded(ctx, [&] {
    if (!example_id || !out) return null_argument(ctx, "example_id/out");
    *out = nullptr;
    json files = json::object();
    for (auto& [name, doc] : gcyc::emit_example(example_id, parse_optional(params_json))) files[name] = doc;
    *out = make_report(std::move(files));
    return GCYC_OK;
  });
}

const char* gcyc_example_ids(void) {
  static const std::string ids = json(gcyc::example_ids()).dump();
  return ids.c_str();
}

const char* gcyc_report_json(const gcyc_report* report) { return report ? report->json_text.c_str() : ""; }
const char* gcyc_report_csv(const gcyc_report* report) { return report ? report->csv_text.c_str() : ""; }
void gcyc_report_free(gcyc_report* report) { delete report; }

}  // extern "C"
