#pragma once

// The five worked examples as deterministic builders plus a reproduce run that
// compares computed values with the expected ones.
//
// Provenance labels on expected values:
//   "stated"  - the value is asserted by the source example itself
//   "derived" - computed independently (closed form or brute force)
//   "trivial" - follows from the construction

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcyc/cyclic_contraction.hpp"
#include "gcyc/fixed_point.hpp"
#include "gcyc/metric_graph.hpp"
#include "gcyc/pbvp.hpp"
#include "json.hpp"

namespace gcyc {

/// ex22_kappa, ex33_dyadic_l1, ex35_not_bpo, ex41_fixed_point, ex53_pbvp.
const std::vector<std::string>& example_ids();

struct GraphBundle {
  FiniteMetricGraph space;
  std::optional<CyclicMap> map;
  std::optional<PairMaps> pair;
  Gauge phi1;
  Gauge phi2;
  std::optional<Gauge> psi;
  std::string seed;
};

/// Complex-valued f_alpha, g_beta on an alpha grid with the kappa-class edges.
/// `n` in [3, 64]: grid {0, 1, 1/k, class midpoints for k = 2..n, 0.49, 0.51}.
GraphBundle build_ex22(int n = 16);
/// Dyadic points on x = 0 and x = 1 with the l1 metric, `depth` in [3, 40].
GraphBundle build_ex33(int depth = 12);
/// Halving map on the dyadic chain {0, 1, 2^-k}, `depth` in [2, 40].
GraphBundle build_ex35(int depth = 12);
/// Real and imaginary multiples of three shapes on a `nodes`-point t-grid,
/// amplitudes 2^-k for k = 1..levels. `levels` in [2, 40], `nodes` in [3, 4096].
GraphBundle build_ex41(int levels = 24, int nodes = 64);
/// u' = -e^t u on [0, 1] with alpha = e^2, h = e^2 - e^t and w0 = -1.
/// `n` in [3, 20001].
PbvpProblem build_ex53(int n = 201);

/// Id of f_alpha (A side) or g_alpha (B side); `label` is "0", "1", "1/k",
/// a reduced fraction for class midpoints, "0.49" or "0.51".
std::string ex22_point_id(bool on_a, std::string_view label);
/// Id of (x, y) in the dyadic examples: y = 0 for exponent -1, y = 1 for
/// exponent 0, y = 2^-exponent otherwise.
std::string dyadic_point_id(int x, int exponent);

struct ExpectedCheck {
  std::string name;
  std::string provenance;
  nlohmann::json expected;
  nlohmann::json observed;
  bool pass = false;
};

struct ReproduceReport {
  std::string id;
  nlohmann::json params;
  std::vector<ExpectedCheck> checks;
  bool all_pass() const;
  nlohmann::json to_json() const;
};

/// Unknown ids and out-of-range parameters throw `Error{ParamOutOfRange}`.
ReproduceReport reproduce(std::string_view id, const nlohmann::json& params = nlohmann::json::object());

/// Input documents for the CLI keyed by file name (instance.json, map.json, ...).
std::map<std::string, nlohmann::json> emit_example(std::string_view id,
                                                   const nlohmann::json& params = nlohmann::json::object());

}  // namespace gcyc
