#include "gcyc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <map>
#include <sstream>

#include "gcyc/error.hpp"

namespace gcyc {

namespace {

[[noreturn]] void invalid(const std::string& message, json detail = nullptr) {
  throw Error(ErrorCode::InvalidInput, message, std::move(detail));
}

void warn_or_throw(const LoadOptions& opts, const std::string& message) {
  if (opts.strict) invalid(message);
  if (opts.warnings != nullptr) opts.warnings->push_back(message);
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where,
                const LoadOptions& opts) {
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      warn_or_throw(opts, "unknown field '" + key + "' in " + std::string(where));
  }
}

void check_schema(const json& doc, std::string_view where, const LoadOptions& opts) {
  auto it = doc.find("schema");
  if (it == doc.end()) {
    warn_or_throw(opts, std::string(where) + " has no \"schema\" field");
    return;
  }
  if (!it->is_string() || it->get<std::string>() != kSchemaVersion)
    invalid(std::string(where) + " has unsupported schema " + it->dump() + " (expected \"1\")");
}

const json& require_object(const json& doc, std::string_view where) {
  if (!doc.is_object()) invalid(std::string(where) + " must be a JSON object");
  return doc;
}

const json& field(const json& obj, const char* key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) invalid(std::string(where) + " is missing \"" + key + "\"");
  return *it;
}

double number(const json& value, std::string_view what) {
  if (!value.is_number()) invalid(std::string(what) + " must be a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) invalid(std::string(what) + " must be finite");
  return v;
}

double number_or(const json& obj, const char* key, double fallback, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return number(*it, std::string(where) + "." + key);
}

std::vector<double> numbers(const json& value, std::string_view what) {
  if (!value.is_array()) invalid(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& v : value) out.push_back(number(v, what));
  return out;
}

std::string text(const json& value, std::string_view what) {
  if (!value.is_string()) invalid(std::string(what) + " must be a string");
  return value.get<std::string>();
}

Side side_from_string(const std::string& s) {
  if (s == "A") return Side::A;
  if (s == "B") return Side::B;
  if (s == "AB" || s == "both" || s == "Both") return Side::Both;
  invalid("side must be \"A\", \"B\" or \"AB\", got \"" + s + "\"");
}

Metric metric_from_string(const std::string& s) {
  if (s == "l1") return Metric::L1;
  if (s == "l2") return Metric::L2;
  if (s == "sup") return Metric::Sup;
  if (s == "table") return Metric::Table;
  invalid("metric must be l1, l2, sup or table, got \"" + s + "\"");
}

std::map<std::string, std::string> id_table(const json& doc, std::string_view where, const LoadOptions& opts) {
  require_object(doc, where);
  check_schema(doc, where, opts);
  check_keys(doc, {"schema", "map"}, where, opts);
  const json& map = field(doc, "map", where);
  if (!map.is_object()) invalid(std::string(where) + ".map must be an object of id -> id");
  std::map<std::string, std::string> out;
  for (const auto& item : map.items()) out.emplace(item.key(), text(item.value(), "map image"));
  return out;
}

MonotoneClass monotone_from_string(const std::string& s) {
  if (s == "increasing") return MonotoneClass::Increasing;
  if (s == "nondecreasing_minus_identity") return MonotoneClass::NondecreasingMinusIdentity;
  if (s == "into_unit_interval") return MonotoneClass::IntoUnitInterval;
  invalid("unknown monotone_class \"" + s + "\"");
}

}  // namespace

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what(), json{{"byte", e.byte}});
  }
}

FiniteMetricGraph space_from_json(const json& doc, const LoadOptions& opts) {
  constexpr std::string_view where = "instance";
  require_object(doc, where);
  check_schema(doc, where, opts);
  check_keys(doc, {"schema", "points", "metric", "dist_table", "edges", "auto_loops"}, where, opts);

  const json& pts = field(doc, "points", where);
  if (!pts.is_array() || pts.empty()) invalid("instance.points must be a non-empty array");
  const Metric metric = metric_from_string(text(field(doc, "metric", where), "instance.metric"));

  std::vector<Point> points;
  points.reserve(pts.size());
  for (const auto& p : pts) {
    require_object(p, "point");
    check_keys(p, {"id", "coords", "side"}, "point", opts);
    Point point;
    point.id = text(field(p, "id", "point"), "point.id");
    auto coords = p.find("coords");
    if (coords != p.end() && !coords->is_null()) point.coords = numbers(*coords, "point.coords");
    point.side = side_from_string(text(field(p, "side", "point '" + point.id + "'"), "point.side"));
    points.push_back(std::move(point));
  }

  std::unordered_map<std::string, Vertex> index;
  for (Vertex v = 0; v < points.size(); ++v)
    if (!index.emplace(points[v].id, v).second) invalid("duplicate point id '" + points[v].id + "'");

  std::vector<Edge> edges;
  if (auto e = doc.find("edges"); e != doc.end()) {
    if (!e->is_array()) invalid("instance.edges must be an array of [from, to] pairs");
    for (const auto& pair : *e) {
      if (!pair.is_array() || pair.size() != 2) invalid("each edge must be a [from, to] pair");
      const std::string from = text(pair[0], "edge endpoint");
      const std::string to = text(pair[1], "edge endpoint");
      auto f = index.find(from);
      auto t = index.find(to);
      if (f == index.end() || t == index.end())
        throw Error(ErrorCode::UnknownPoint, "edge refers to unknown point '" + (f == index.end() ? from : to) + "'");
      edges.push_back({f->second, t->second});
    }
  }
  bool auto_loops = false;
  if (auto a = doc.find("auto_loops"); a != doc.end()) {
    if (!a->is_boolean()) invalid("instance.auto_loops must be a boolean");
    auto_loops = a->get<bool>();
  }

  if (metric == Metric::Table) {
    const json& table = field(doc, "dist_table", where);
    if (!table.is_array()) invalid("instance.dist_table must be an array of rows");
    std::vector<std::vector<double>> rows;
    for (const auto& row : table) rows.push_back(numbers(row, "dist_table row"));
    return FiniteMetricGraph::from_table(std::move(points), rows, std::move(edges), auto_loops);
  }
  if (doc.contains("dist_table")) warn_or_throw(opts, "dist_table is ignored for coordinate metrics");
  return FiniteMetricGraph::from_coordinates(std::move(points), metric, std::move(edges), auto_loops);
}

json space_to_json(const FiniteMetricGraph& space) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["metric"] = std::string(to_string(space.metric()));
  json pts = json::array();
  for (const Point& p : space.points()) {
    json jp{{"id", p.id}, {"side", std::string(to_string(p.side))}};
    jp["coords"] = p.coords.empty() ? json(nullptr) : json(p.coords);
    pts.push_back(std::move(jp));
  }
  doc["points"] = std::move(pts);
  if (space.metric() == Metric::Table) {
    json rows = json::array();
    for (Vertex x = 0; x < space.size(); ++x) {
      json row = json::array();
      for (Vertex y = 0; y < space.size(); ++y) row.push_back(space.dist(x, y));
      rows.push_back(std::move(row));
    }
    doc["dist_table"] = std::move(rows);
  }
  json edges = json::array();
  for (const Edge& e : space.edges()) edges.push_back({space.id(e.from), space.id(e.to)});
  doc["edges"] = std::move(edges);
  doc["auto_loops"] = false;
  return doc;
}

CyclicMap cyclic_map_from_json(const json& doc, const FiniteMetricGraph& space, const LoadOptions& opts) {
  return CyclicMap::from_ids(space, id_table(doc, "map", opts));
}

json cyclic_map_to_json(const FiniteMetricGraph& space, const CyclicMap& map) {
  json table = json::object();
  for (Vertex v = 0; v < space.size(); ++v) table[space.id(v)] = space.id(map(v));
  return json{{"schema", kSchemaVersion}, {"map", std::move(table)}};
}

std::vector<Vertex> side_map_from_json(const json& doc, const FiniteMetricGraph& space, bool from_a,
                                       const LoadOptions& opts) {
  std::vector<Vertex> table(space.size(), kNoImage);
  for (const auto& [from, to] : id_table(doc, from_a ? "T1 map" : "T2 map", opts))
    table[space.index_of(from)] = space.index_of(to);
  return table;
}

json side_map_to_json(const FiniteMetricGraph& space, const std::vector<Vertex>& table) {
  json map = json::object();
  for (Vertex v = 0; v < table.size(); ++v)
    if (table[v] != kNoImage) map[space.id(v)] = space.id(table[v]);
  return json{{"schema", kSchemaVersion}, {"map", std::move(map)}};
}

Gauge gauge_from_json(const json& doc, const LoadOptions& opts, bool top_level) {
  constexpr std::string_view where = "gauge";
  require_object(doc, where);
  if (top_level) check_schema(doc, where, opts);
  check_keys(doc, {"schema", "kind", "params", "monotone_class"}, where, opts);
  const std::string kind = text(field(doc, "kind", where), "gauge.kind");
  static const json empty = json::object();
  const json& params = doc.contains("params") ? require_object(doc["params"], "gauge.params") : empty;

  if (kind == "linear") {
    check_keys(params, {"c"}, "linear gauge params", opts);
    return Gauge::linear(number(field(params, "c", "linear gauge params"), "c"));
  }
  if (kind == "affine_shift") {
    check_keys(params, {"c"}, "affine_shift gauge params", opts);
    return Gauge::affine_shift(number_or(params, "c", 0.0, "affine_shift"));
  }
  if (kind == "floor_fraction") {
    check_keys(params, {}, "floor_fraction gauge params", opts);
    return Gauge::floor_fraction();
  }
  if (kind == "identity") {
    check_keys(params, {}, "identity gauge params", opts);
    return Gauge::identity();
  }
  if (kind == "constant") {
    check_keys(params, {"value"}, "constant gauge params", opts);
    return Gauge::constant(number(field(params, "value", "constant gauge params"), "value"));
  }
  if (kind == "table") {
    check_keys(params, {"s", "values"}, "table gauge params", opts);
    MonotoneClass cls = MonotoneClass::Increasing;
    if (auto it = doc.find("monotone_class"); it != doc.end()) cls = monotone_from_string(text(*it, "monotone_class"));
    return Gauge::table(numbers(field(params, "s", "table gauge"), "s"), numbers(field(params, "values", "table gauge"), "values"),
                        cls);
  }
  if (kind == "induced") {
    check_keys(params, {"phi", "d_ab"}, "induced gauge params", opts);
    return Gauge::induced(gauge_from_json(field(params, "phi", "induced gauge"), opts),
                          number(field(params, "d_ab", "induced gauge"), "d_ab"));
  }
  invalid("unknown gauge kind \"" + kind + "\"");
}

json gauge_to_json(const Gauge& gauge) {
  json doc{{"kind", std::string(to_string(gauge.kind()))}};
  switch (gauge.kind()) {
    case GaugeKind::Linear:
    case GaugeKind::AffineShift: doc["params"] = {{"c", gauge.param()}}; break;
    case GaugeKind::Constant: doc["params"] = {{"value", gauge.param()}}; break;
    case GaugeKind::Table:
      doc["params"] = {{"s", gauge.knots()}, {"values", gauge.knot_values()}};
      doc["monotone_class"] = std::string(to_string(gauge.monotone_class()));
      break;
    case GaugeKind::Induced: doc["params"] = {{"phi", gauge_to_json(*gauge.base())}, {"d_ab", gauge.param()}}; break;
    default: doc["params"] = json::object(); break;
  }
  return doc;
}

std::pair<Gauge, Gauge> gauge_pair_from_json(const json& doc, const LoadOptions& opts) {
  constexpr std::string_view where = "gauges";
  require_object(doc, where);
  check_schema(doc, where, opts);
  check_keys(doc, {"schema", "phi1", "phi2"}, where, opts);
  return {gauge_from_json(field(doc, "phi1", where), opts), gauge_from_json(field(doc, "phi2", where), opts)};
}

RhsFunction rhs_from_json(const json& doc, const LoadOptions& opts) {
  constexpr std::string_view where = "rhs";
  require_object(doc, where);
  const std::string kind = text(field(doc, "kind", where), "rhs.kind");
  if (kind == "linear") {
    check_keys(doc, {"kind", "a", "b"}, where, opts);
    return RhsFunction::linear(number(field(doc, "a", where), "rhs.a"), number_or(doc, "b", 0.0, where));
  }
  if (kind == "exp_linear") {
    check_keys(doc, {"kind", "c"}, where, opts);
    return RhsFunction::exp_linear(number(field(doc, "c", where), "rhs.c"));
  }
  if (kind == "cosine_forced") {
    check_keys(doc, {"kind", "lambda", "amplitude", "freq"}, where, opts);
    return RhsFunction::cosine_forced(number_or(doc, "lambda", 1.0, where), number_or(doc, "amplitude", 1.0, where),
                                      number_or(doc, "freq", 1.0, where));
  }
  if (kind == "table") {
    check_keys(doc, {"kind", "t", "s", "values"}, where, opts);
    const json& rows = field(doc, "values", where);
    if (!rows.is_array()) invalid("rhs.values must be an array of rows");
    std::vector<std::vector<double>> values;
    for (const auto& row : rows) values.push_back(numbers(row, "rhs.values row"));
    return RhsFunction::table(numbers(field(doc, "t", where), "rhs.t"), numbers(field(doc, "s", where), "rhs.s"),
                              std::move(values));
  }
  invalid("unknown rhs kind \"" + kind + "\"");
}

HFunction h_from_json(const json& doc, double alpha, const LoadOptions& opts) {
  constexpr std::string_view where = "h";
  require_object(doc, where);
  const std::string kind = text(field(doc, "kind", where), "h.kind");
  if (kind == "const") {
    check_keys(doc, {"kind", "value"}, where, opts);
    return HFunction::constant(number(field(doc, "value", where), "h.value"));
  }
  if (kind == "exp_gap") {
    check_keys(doc, {"kind", "a"}, where, opts);
    return HFunction::exp_gap(number_or(doc, "a", alpha, where));
  }
  if (kind == "table") {
    check_keys(doc, {"kind", "t", "values"}, where, opts);
    return HFunction::table(numbers(field(doc, "t", where), "h.t"), numbers(field(doc, "values", where), "h.values"));
  }
  invalid("unknown h kind \"" + kind + "\"");
}

GridFunction w0_from_json(const json& doc, const TimeGrid& grid) {
  if (doc.is_number()) return GridFunction::constant(grid, number(doc, "w0"));
  if (doc.is_string()) {
    const std::string s = doc.get<std::string>();
    if (s.rfind("const:", 0) != 0) invalid("w0 string must look like const:<value>");
    const std::string value = s.substr(6);
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !std::isfinite(c)) invalid("w0 constant is not a number: '" + value + "'");
    return GridFunction::constant(grid, c);
  }
  if (doc.is_array()) {
    auto values = numbers(doc, "w0");
    if (values.size() != grid.size()) invalid("w0 needs one value per grid node");
    return GridFunction{grid, std::move(values)};
  }
  if (doc.is_object() && doc.value("kind", "") == "const")
    return GridFunction::constant(grid, number(field(doc, "value", "w0"), "w0.value"));
  invalid("w0 must be const:<c>, a number, an array or {\"kind\":\"const\",\"value\":c}");
}

ProblemDocument problem_from_json(const json& doc, const LoadOptions& opts) {
  constexpr std::string_view where = "problem";
  require_object(doc, where);
  check_schema(doc, where, opts);
  check_keys(doc, {"schema", "rhs", "rhs2", "alpha", "h", "T", "N", "w0"}, where, opts);
  const double alpha = number(field(doc, "alpha", where), "alpha");
  const double period = number_or(doc, "T", 1.0, where);
  const json& n_json = doc.contains("N") ? doc["N"] : json(201);
  if (!n_json.is_number_integer() || n_json.get<long long>() < 3) invalid("N must be an integer >= 3");
  const TimeGrid grid(period, static_cast<std::size_t>(n_json.get<long long>()));
  std::optional<RhsFunction> f2;
  if (doc.contains("rhs2") && !doc["rhs2"].is_null()) f2 = rhs_from_json(doc["rhs2"], opts);
  return ProblemDocument{rhs_from_json(field(doc, "rhs", where), opts), std::move(f2), alpha,
                         h_from_json(field(doc, "h", where), alpha, opts), grid,
                         w0_from_json(field(doc, "w0", where), grid)};
}

json ids_to_json(const FiniteMetricGraph& space, const std::vector<Vertex>& vertices) {
  json out = json::array();
  for (Vertex v : vertices) out.push_back(space.id(v));
  return out;
}

json check_to_json(const FiniteMetricGraph& space, const Check& check) {
  json out{{"holds", check.holds}};
  if (check.witness) out["witness"] = {{"points", ids_to_json(space, check.witness->points)}, {"note", check.witness->note}};
  return out;
}

json geometry_to_json(const FiniteMetricGraph& space, const PairGeometry& geom) {
  json pairs = json::array();
  for (const Edge& e : geom.parallel_pairs) pairs.push_back({space.id(e.from), space.id(e.to)});
  return json{{"d_ab", geom.d_ab}, {"a0", ids_to_json(space, geom.a0)}, {"b0", ids_to_json(space, geom.b0)},
              {"parallel_pairs", std::move(pairs)}};
}

json predicates_to_json(const FiniteMetricGraph& space) {
  const PairGeometry geom = pair_distance(space);
  json out;
  out["geometry"] = geometry_to_json(space, geom);
  out["sharp_proximal"] = check_to_json(space, is_sharp_proximal(space, geom));
  out["g_chebyshev"] = check_to_json(space, is_g_chebyshev(space, geom));
  out["property_uc"] = check_to_json(space, has_property_uc(space, geom));
  out["property_star"] = {{"A", check_to_json(space, check_property_star(space, Scope::A))},
                          {"B", check_to_json(space, check_property_star(space, Scope::B))},
                          {"union", check_to_json(space, check_property_star(space, Scope::Union))}};
  out["a_single_class"] = scope_in_single_class(space, Scope::A);
  out["a_induced_weakly_connected"] = induced_weakly_connected(space, Scope::A);
  out["classes_meeting_a"] = classes_meeting_a(space);
  return out;
}

namespace {

json violations_to_json(const FiniteMetricGraph& space, const std::vector<Violation>& list) {
  json out = json::array();
  for (const Violation& v : list)
    out.push_back({{"x", space.id(v.x)}, {"y", space.id(v.y)}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"kind", v.kind}});
  return out;
}

}  // namespace

json contraction_report_to_json(const FiniteMetricGraph& space, const ContractionReport& report) {
  json out{{"holds", report.holds},
           {"checked_pairs", report.checked_pairs},
           {"violations", violations_to_json(space, report.violations)},
           {"marginal", violations_to_json(space, report.marginal)},
           {"t_maps_a0_into_b0", report.t_maps_a0_into_b0},
           {"t2_preserves_edges", report.t2_preserves_edges},
           {"d_ab", report.d_ab}};
  if (report.t2_witness)
    out["t2_witness"] = {{"points", ids_to_json(space, report.t2_witness->points)}, {"note", report.t2_witness->note}};
  return out;
}

json trace_to_json(const FiniteMetricGraph& space, const OrbitTrace& trace) {
  return json{{"x0", space.id(trace.x0)},
              {"points", ids_to_json(space, trace.points)},
              {"gaps", trace.gaps},
              {"stop_reason", std::string(to_string(trace.stop))},
              {"cycle_is_t2_fixed", trace.cycle_is_t2_fixed}};
}

json bpp_result_to_json(const FiniteMetricGraph& space, const BppResult& result) {
  json out = trace_to_json(space, result.trace);
  out["bpp"] = result.bpp ? json(space.id(*result.bpp)) : json(nullptr);
  out["achieved_gap"] = result.achieved_gap;
  out["iterations"] = result.iterations;
  out["component"] = ids_to_json(space, result.component);
  return out;
}

json fixed_point_result_to_json(const FiniteMetricGraph& space, const FixedPointResult& result) {
  json out = trace_to_json(space, result.trace);
  out["p"] = space.id(result.p);
  out["d0"] = result.d0;
  out["psi0"] = result.psi0;
  out["envelope"] = result.envelope;
  out["apriori_bound"] = result.apriori;
  out["residual_t1"] = result.residual_t1;
  out["residual_t2"] = result.residual_t2;
  return out;
}

json pbvp_report_to_json(const PbvpReport& report) {
  return json{{"iterations", report.iterations},
              {"converged", report.converged},
              {"beta", report.beta},
              {"beta_quadrature", report.beta_quadrature},
              {"increments", report.increments},
              {"ratios", report.ratios},
              {"max_ratio", report.max_ratio},
              {"periodicity_residual", report.periodicity},
              {"ode_residual", report.ode_residual},
              {"ode_residual_periodic", report.ode_residual_periodic},
              {"sup_norm", report.sup_norm},
              {"lower_solution", report.lower_solution},
              {"first_step_monotone", report.first_step_monotone}};
}

json grid_function_to_json(const GridFunction& u) {
  return json{{"T", u.grid.period()}, {"N", u.grid.size()}, {"t", u.grid.nodes()}, {"u", u.values}};
}

std::string grid_function_to_csv(const GridFunction& u) {
  std::string out = "t,u\n";
  char line[64];
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", u.grid.node(i), u.values[i]);
    out += line;
  }
  return out;
}

}  // namespace gcyc
