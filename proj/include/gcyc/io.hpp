#pragma once

// JSON loaders and report writers. Every top-level document carries
// "schema": "1"; in strict mode a missing schema or an unknown field is an
// error, otherwise a warning.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcyc/bpp_solver.hpp"
#include "gcyc/cyclic_contraction.hpp"
#include "gcyc/fixed_point.hpp"
#include "gcyc/metric_graph.hpp"
#include "gcyc/pbvp.hpp"
#include "json.hpp"

namespace gcyc {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

struct LoadOptions {
  bool strict = false;
  std::vector<std::string>* warnings = nullptr;
};

/// Throws `Error{InvalidInput}` with the parser position on malformed text.
json parse_json_text(std::string_view text);

FiniteMetricGraph space_from_json(const json& doc, const LoadOptions& opts = {});
json space_to_json(const FiniteMetricGraph& space);

/// {"schema":"1","map":{"id":"id",...}}
CyclicMap cyclic_map_from_json(const json& doc, const FiniteMetricGraph& space, const LoadOptions& opts = {});
json cyclic_map_to_json(const FiniteMetricGraph& space, const CyclicMap& map);

/// A one-sided map document; entries outside the domain are `kNoImage`.
std::vector<Vertex> side_map_from_json(const json& doc, const FiniteMetricGraph& space, bool from_a,
                                       const LoadOptions& opts = {});
json side_map_to_json(const FiniteMetricGraph& space, const std::vector<Vertex>& table);

/// {"kind": ..., "params": {...}}; `top_level` adds the schema check.
Gauge gauge_from_json(const json& doc, const LoadOptions& opts = {}, bool top_level = false);
json gauge_to_json(const Gauge& gauge);
/// {"schema":"1","phi1":{...},"phi2":{...}}
std::pair<Gauge, Gauge> gauge_pair_from_json(const json& doc, const LoadOptions& opts = {});

/// {"kind":"linear","a":..,"b":..} | {"kind":"exp_linear","c":..} |
/// {"kind":"cosine_forced","lambda":..,"amplitude":..,"freq":..} |
/// {"kind":"table","t":[..],"s":[..],"values":[[..]]}
RhsFunction rhs_from_json(const json& doc, const LoadOptions& opts = {});
/// {"kind":"const","value":..} | {"kind":"exp_gap","a":..} (a defaults to alpha) |
/// {"kind":"table","t":[..],"values":[..]}
HFunction h_from_json(const json& doc, double alpha, const LoadOptions& opts = {});
/// "const:c", a number, an array of node values or {"kind":"const","value":c}.
GridFunction w0_from_json(const json& doc, const TimeGrid& grid);

/// {"schema":"1","rhs":..,"rhs2":..?,"alpha":..,"h":..,"T":..,"N":..,"w0":..}
struct ProblemDocument {
  RhsFunction f1;
  std::optional<RhsFunction> f2;
  double alpha;
  HFunction h;
  TimeGrid grid;
  GridFunction w0;
};
ProblemDocument problem_from_json(const json& doc, const LoadOptions& opts = {});

json ids_to_json(const FiniteMetricGraph& space, const std::vector<Vertex>& vertices);
json check_to_json(const FiniteMetricGraph& space, const Check& check);
json geometry_to_json(const FiniteMetricGraph& space, const PairGeometry& geom);
/// Pair geometry, sharp proximality, G-Chebyshev, property UC, property (*) per
/// scope and the class structure of A.
json predicates_to_json(const FiniteMetricGraph& space);
json contraction_report_to_json(const FiniteMetricGraph& space, const ContractionReport& report);
json trace_to_json(const FiniteMetricGraph& space, const OrbitTrace& trace);
json bpp_result_to_json(const FiniteMetricGraph& space, const BppResult& result);
json fixed_point_result_to_json(const FiniteMetricGraph& space, const FixedPointResult& result);
json pbvp_report_to_json(const PbvpReport& report);
json grid_function_to_json(const GridFunction& u);
/// "t,u\n" followed by one row per node, 17 significant digits.
std::string grid_function_to_csv(const GridFunction& u);

}  // namespace gcyc
