#include "gcyc/examples_corpus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "gcyc/bpp_solver.hpp"
#include "gcyc/error.hpp"
#include "gcyc/io.hpp"

namespace gcyc {

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids{"ex22_kappa", "ex33_dyadic_l1", "ex35_not_bpo", "ex41_fixed_point",
                                            "ex53_pbvp"};
  return ids;
}

namespace {

void require_range(std::string_view name, long long value, long long lo, long long hi) {
  if (value < lo || value > hi)
    throw Error(ErrorCode::ParamOutOfRange,
                std::string(name) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                json{{"param", std::string(name)}, {"value", value}, {"min", lo}, {"max", hi}});
}

void assert_claim(const Check& check, std::string_view what) {
  if (!check)
    throw Error(ErrorCode::HypothesisViolated, "example instance fails its claim: " + std::string(what),
                json{{"claim", std::string(what)}, {"note", check.witness ? check.witness->note : ""}});
}

struct AlphaNode {
  double value;
  std::string label;
};

std::vector<AlphaNode> ex22_grid(int n) {
  std::vector<AlphaNode> grid{{0.0, "0"}, {1.0, "1"}, {0.49, "0.49"}, {0.51, "0.51"}};
  for (int k = 2; k <= n; ++k) {
    grid.push_back({1.0 / k, "1/" + std::to_string(k)});
    const long long num = 2LL * k - 1;
    const long long den = 2LL * k * (k - 1);
    grid.push_back({static_cast<double>(num) / static_cast<double>(den), std::to_string(num) + "/" + std::to_string(den)});
  }
  std::sort(grid.begin(), grid.end(), [](const AlphaNode& a, const AlphaNode& b) { return a.value < b.value; });
  return grid;
}

std::string power_label(int exponent) {
  if (exponent < 0) return "0";
  if (exponent == 0) return "1";
  return "1/" + std::to_string(1ULL << exponent);
}

double power_value(int exponent) { return exponent < 0 ? 0.0 : std::ldexp(1.0, -exponent); }

}  // namespace

std::string ex22_point_id(bool on_a, std::string_view label) {
  return std::string(on_a ? "f@" : "g@") + std::string(label);
}

std::string dyadic_point_id(int x, int exponent) {
  return "(" + std::to_string(x) + "," + power_label(exponent) + ")";
}

GraphBundle build_ex22(int n) {
  require_range("n", n, 3, 64);
  const auto grid = ex22_grid(n);
  const std::size_t m = grid.size();

  std::vector<Point> points;
  for (const auto& node : grid) points.push_back({ex22_point_id(true, node.label), {}, Side::A});
  for (const auto& node : grid) points.push_back({ex22_point_id(false, node.label), {}, Side::B});

  // norm sup_t (|Re| + |Im|): |f_a - g_b| = 1 + |a - b|, |f_a - f_b| = |g_a - g_b| = |a - b|
  std::vector<double> dist(4 * m * m, 0.0);
  for (std::size_t i = 0; i < 2 * m; ++i)
    for (std::size_t j = 0; j < 2 * m; ++j) {
      const double diff = std::abs(grid[i % m].value - grid[j % m].value);
      const bool fi = i < m;
      const bool fj = j < m;
      dist[i * 2 * m + j] = fi == fj ? diff : 1.0 + diff;
    }

  auto interior = [](double a) { return a > 0.0 && a < 1.0; };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double a = grid[i].value;
      const double b = grid[j].value;
      if (interior(a) && interior(b) && a >= b && kappa(a) == kappa(b)) edges.push_back({i, m + j});
    }
  std::map<std::string, std::size_t> by_label;
  for (std::size_t i = 0; i < m; ++i) by_label[grid[i].label] = i;
  edges.push_back({by_label.at("0"), m + by_label.at("0")});
  edges.push_back({by_label.at("1"), m + by_label.at("1")});

  FiniteMetricGraph space(std::move(points), std::move(dist), std::move(edges), true);

  std::vector<Vertex> image(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = grid[i].value;
    const std::size_t target = interior(a) ? by_label.at("1/" + std::to_string(kappa(a))) : i;
    image[i] = m + target;
    image[m + i] = target;
  }
  CyclicMap map(space, std::move(image));
  assert_claim(is_sharp_proximal(space, pair_distance(space)), "sharp proximal pair");
  return GraphBundle{std::move(space), std::move(map), std::nullopt, Gauge::floor_fraction(), Gauge::affine_shift(1.0),
                     std::nullopt, ex22_point_id(true, "0.49")};
}

namespace {

FiniteMetricGraph dyadic_space(const std::vector<int>& exponents,
                               const std::function<bool(const FiniteMetricGraph&, Vertex, Vertex)>& edge_rule) {
  std::vector<Point> points;
  for (int x = 0; x <= 1; ++x)
    for (int e : exponents)
      points.push_back({dyadic_point_id(x, e), {static_cast<double>(x), power_value(e)}, x == 0 ? Side::A : Side::B});
  const FiniteMetricGraph bare = FiniteMetricGraph::from_coordinates(points, Metric::L1, {}, true);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < bare.size(); ++u)
    for (Vertex v = 0; v < bare.size(); ++v)
      if (u != v && edge_rule(bare, u, v)) edges.push_back({u, v});
  return FiniteMetricGraph::from_coordinates(std::move(points), Metric::L1, std::move(edges), true);
}

}  // namespace

GraphBundle build_ex33(int depth) {
  require_range("depth", depth, 3, 40);
  std::vector<int> exps{-1};
  for (int k = 1; k <= depth; ++k) exps.push_back(k);
  const std::size_t m = exps.size();

  auto rule = [](const FiniteMetricGraph& s, Vertex u, Vertex v) {
    const double d = s.dist(u, v);
    const bool same_side = s.point(u).side == s.point(v).side;
    return (same_side && d <= 0.5) || d == 1.0;
  };
  FiniteMetricGraph space = dyadic_space(exps, rule);

  // index k of exps: 0 -> y = 0, k -> 2^-k; 2^-depth falls to y = 0 on the other line
  std::vector<Vertex> image(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t target = (k == 0 || k + 1 == m) ? 0 : k + 1;
    image[k] = m + target;
    image[m + k] = target;
  }
  CyclicMap map(space, std::move(image));
  const PairGeometry geom = pair_distance(space);
  assert_claim(has_property_uc(space, geom), "property UC");
  assert_claim(check_property_star(space, Scope::A), "property (*) on A");
  assert_claim(is_g_chebyshev(space, geom), "G-Chebyshev pair");
  return GraphBundle{std::move(space), std::move(map), std::nullopt, Gauge::linear(0.5), Gauge::affine_shift(1.0),
                     std::nullopt, dyadic_point_id(0, 1)};
}

GraphBundle build_ex35(int depth) {
  require_range("depth", depth, 2, 40);
  std::vector<int> exps{-1, 0};
  for (int k = 1; k <= depth; ++k) exps.push_back(k);
  const std::size_t m = exps.size();

  auto rule = [](const FiniteMetricGraph& s, Vertex u, Vertex v) {
    const double x = s.point(u).coords[1];
    const double y = s.point(v).coords[1];
    return x == y / 2.0 || y == x / 2.0 || x == y;
  };
  FiniteMetricGraph space = dyadic_space(exps, rule);

  // exps index: 0 -> y = 0, 1 -> y = 1, k >= 2 -> 2^-(k-1)
  std::vector<Vertex> image(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t target = k;
    if (k >= 2) target = k + 1 == m ? 0 : k + 1;
    image[k] = m + target;
    image[m + k] = target;
  }
  CyclicMap map(space, std::move(image));
  assert_claim(is_g_chebyshev(space, pair_distance(space)), "G-Chebyshev pair");
  return GraphBundle{std::move(space), std::move(map), std::nullopt, Gauge::linear(0.5), Gauge::affine_shift(1.0),
                     std::nullopt, dyadic_point_id(0, 1)};
}

GraphBundle build_ex41(int levels, int nodes) {
  require_range("levels", levels, 2, 40);
  require_range("nodes", nodes, 3, 4096);
  const std::size_t mt = static_cast<std::size_t>(nodes);
  const TimeGrid tgrid(1.0, mt);
  struct Shape {
    const char* name;
    double (*fn)(double);
  };
  static const Shape shapes[] = {
      {"const", [](double) { return 1.0; }},
      {"ramp", [](double t) { return t; }},
      {"hat", [](double t) { return 1.0 - std::abs(2.0 * t - 1.0); }},
  };
  constexpr std::size_t n_shapes = std::size(shapes);
  const std::size_t per_side = n_shapes * static_cast<std::size_t>(levels);

  std::vector<Point> points;
  for (int part = 0; part < 2; ++part)
    for (const Shape& shape : shapes)
      for (int k = 1; k <= levels; ++k) {
        Point p;
        p.id = std::string(part == 0 ? "re:" : "im:") + shape.name + ":" + power_label(k);
        p.coords.assign(2 * mt, 0.0);
        for (std::size_t j = 0; j < mt; ++j) p.coords[part * mt + j] = std::ldexp(shape.fn(tgrid.node(j)), -k);
        p.side = part == 0 ? Side::A : Side::B;
        points.push_back(std::move(p));
      }
  points.push_back({"zero", std::vector<double>(2 * mt, 0.0), Side::Both});
  const Vertex zero = points.size() - 1;

  const FiniteMetricGraph bare = FiniteMetricGraph::from_coordinates(points, Metric::Sup, {}, true);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < bare.size(); ++u)
    for (Vertex v = 0; v < bare.size(); ++v)
      if (u != v && bare.dist(u, v) < 1.0) edges.push_back({u, v});
  FiniteMetricGraph space = FiniteMetricGraph::from_coordinates(std::move(points), Metric::Sup, std::move(edges), true);

  // real level k -> imaginary level k+1 and back; the deepest level drops to zero
  const std::size_t lv = static_cast<std::size_t>(levels);
  std::vector<Vertex> t1(space.size(), kNoImage);
  std::vector<Vertex> t2(space.size(), kNoImage);
  for (std::size_t s = 0; s < n_shapes; ++s)
    for (std::size_t k = 0; k < lv; ++k) {
      const Vertex re = s * lv + k;
      const Vertex im = per_side + s * lv + k;
      t1[re] = k + 1 < lv ? per_side + s * lv + k + 1 : zero;
      t2[im] = k + 1 < lv ? s * lv + k + 1 : zero;
    }
  t1[zero] = zero;
  t2[zero] = zero;
  PairMaps pair(space, std::move(t1), std::move(t2));
  assert_claim(check_property_star(space, Scope::Union), "property (*) on A and B");
  assert_claim(is_g_chebyshev(space, pair_distance(space)), "G-Chebyshev pair");
  return GraphBundle{std::move(space), std::nullopt, std::move(pair), Gauge::linear(0.5), Gauge::affine_shift(1.0),
                     Gauge::constant(0.5), "re:const:1/2"};
}

PbvpProblem build_ex53(int n) {
  require_range("n", n, 3, 20001);
  const double alpha = std::exp(2.0);
  const TimeGrid grid(1.0, static_cast<std::size_t>(n));
  return PbvpProblem{RhsFunction::exp_linear(-1.0), alpha, HFunction::exp_gap(alpha), grid,
                     GridFunction::constant(grid, -1.0)};
}

bool ReproduceReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExpectedCheck& c) { return c.pass; });
}

json ReproduceReport::to_json() const {
  json list = json::array();
  std::size_t passed = 0;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"provenance", c.provenance}, {"expected", c.expected},
                    {"observed", c.observed}, {"pass", c.pass}});
    passed += c.pass ? 1 : 0;
  }
  return json{{"schema", kSchemaVersion}, {"example", id},         {"params", params},
              {"checks", std::move(list)}, {"passed", passed},     {"total", checks.size()},
              {"all_pass", all_pass()}};
}

namespace {

class Checks {
 public:
  void add(std::string name, std::string prov, json expected, json observed, bool pass) {
    list_.push_back({std::move(name), std::move(prov), std::move(expected), std::move(observed), pass});
  }
  void equal(std::string name, std::string prov, const json& expected, const json& observed) {
    add(std::move(name), std::move(prov), expected, observed, expected == observed);
  }
  void near(std::string name, std::string prov, double expected, double observed, double tol) {
    add(std::move(name), std::move(prov), json{{"value", expected}, {"tol", tol}}, observed,
        std::abs(expected - observed) <= tol);
  }
  void at_most(std::string name, std::string prov, double bound, double observed) {
    add(std::move(name), std::move(prov), json{{"at_most", bound}}, observed, observed <= bound);
  }
  std::vector<ExpectedCheck> take() { return std::move(list_); }

 private:
  std::vector<ExpectedCheck> list_;
};

int int_param(const json& params, const char* key, int fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (!it->is_number_integer())
    throw Error(ErrorCode::ParamOutOfRange, std::string(key) + " must be an integer", json{{"param", key}});
  const long long v = it->get<long long>();
  if (v < -1000000 || v > 1000000) require_range(key, v, -1000000, 1000000);
  return static_cast<int>(v);
}

void allow_params(const json& params, std::initializer_list<const char*> keys) {
  if (!params.is_object()) throw Error(ErrorCode::ParamOutOfRange, "params must be a JSON object");
  for (const auto& item : params.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; }))
      throw Error(ErrorCode::ParamOutOfRange, "unknown parameter '" + item.key() + "'", json{{"param", item.key()}});
}

std::vector<Vertex> intersect(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

json sorted_ids(const FiniteMetricGraph& space, std::vector<Vertex> vs) {
  std::vector<std::string> ids;
  for (Vertex v : vs) ids.push_back(space.id(v));
  std::sort(ids.begin(), ids.end());
  return ids;
}

json sorted_ids(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool has_violation(const ContractionReport& report, Vertex x, Vertex y) {
  return std::any_of(report.violations.begin(), report.violations.end(),
                     [&](const Violation& v) { return v.x == x && v.y == y; });
}

ReproduceReport reproduce_ex22(const json& params) {
  allow_params(params, {"n"});
  const int n = int_param(params, "n", 16);
  const GraphBundle b = build_ex22(n);
  const auto& space = b.space;
  const auto& map = *b.map;
  Checks c;

  c.equal("kappa(0.49)", "stated", 3, kappa(0.49));
  c.equal("kappa(0.51)", "stated", 2, kappa(0.51));
  c.equal("kappa(1/2)", "trivial", 2, kappa(0.5));

  const Vertex f049 = space.index_of(ex22_point_id(true, "0.49"));
  const Vertex g051 = space.index_of(ex22_point_id(false, "0.51"));
  const double lhs = space.dist(map(f049), map(g051));
  const double d = space.dist(f049, g051);
  c.near("|Tf - Tg| at (0.49, 0.51)", "stated", 1.0 + 1.0 / 6.0, lhs, 1e-12);
  c.near("|f - g| at (0.49, 0.51)", "stated", 1.02, d, 1e-12);
  c.equal("|Tf - Tg| > |f - g|", "stated", true, lhs > d);

  const PairGeometry geom = pair_distance(space);
  c.near("d(A,B)", "stated", 1.0, geom.d_ab, 0.0);
  c.equal("sharp proximal", "stated", true, is_sharp_proximal(space, geom).holds);
  c.equal("property UC", "stated", true, has_property_uc(space, geom).holds);
  c.equal("property (*) on A", "stated", true, check_property_star(space, Scope::A).holds);

  const ContractionReport edge = verify_g_cyclic_contraction(space, map, b.phi1, b.phi2);
  c.equal("edge-eligible contraction violations", "stated", 0, edge.violations.size());
  ContractionOptions all;
  all.scope = PairScope::AllPairs;
  const ContractionReport every = verify_g_cyclic_contraction(space, map, b.phi1, b.phi2, all);
  c.equal("all-pairs check flags (f@0.49, g@0.51)", "stated", true, has_violation(every, f049, g051));
  c.near("all-pairs bound at (0.49, 0.51)", "derived", 1.02 - floor_fraction(1.02) + 1.0,
         contraction_bound(b.phi1, b.phi2, d, m_value(space, map, f049, g051), geom.d_ab), 1e-12);
  c.near("floor_fraction(1.02)", "derived", 1.0 + 0.02 / 50.0, floor_fraction(1.02), 1e-15);

  std::vector<std::string> expected_bpp{ex22_point_id(true, "0"), ex22_point_id(true, "1")};
  for (int k = 2; k <= n; ++k) expected_bpp.push_back(ex22_point_id(true, "1/" + std::to_string(k)));
  c.equal("best proximity points", "stated", sorted_ids(expected_bpp), sorted_ids(space, enumerate_bpps(space, map)));

  const CardinalityReport card = check_cardinality(space, map);
  c.add("#BP = #classes meeting A", "stated", json{{"equal", true}},
        json{{"bpp_count", card.bpp_count}, {"component_count", card.component_count}}, card.equal);

  std::vector<std::string> kappa2;
  for (const auto& node : ex22_grid(n))
    if (node.value > 0.0 && node.value < 1.0 && kappa(node.value) == 2) {
      kappa2.push_back(ex22_point_id(true, node.label));
      kappa2.push_back(ex22_point_id(false, node.label));
    }
  c.equal("component of f@1/2", "stated", sorted_ids(kappa2),
          sorted_ids(space, component_of(space, space.index_of(ex22_point_id(true, "1/2")))));

  const auto seeds = x_t2_a_set(space, map);
  c.equal("f@0.49 in X_{T^2}^A", "derived", false, std::binary_search(seeds.begin(), seeds.end(), f049));
  BppOptions bopt;
  bopt.check_hypotheses = false;
  const BppResult r = solve_bpp(space, map, f049, bopt);
  c.equal("even-orbit limit from f@0.49", "derived", ex22_point_id(true, "1/3"), space.id(*r.bpp));

  return ReproduceReport{"ex22_kappa", json{{"n", n}}, c.take()};
}

ReproduceReport reproduce_ex33(const json& params) {
  allow_params(params, {"depth"});
  const int depth = int_param(params, "depth", 12);
  const GraphBundle b = build_ex33(depth);
  const auto& space = b.space;
  const auto& map = *b.map;
  Checks c;

  const PairGeometry geom = pair_distance(space);
  c.near("d(A,B)", "stated", 1.0, geom.d_ab, 0.0);
  c.equal("property UC", "stated", true, has_property_uc(space, geom).holds);
  c.equal("property (*) on A", "stated", true, check_property_star(space, Scope::A).holds);
  c.equal("G-Chebyshev", "stated", true, is_g_chebyshev(space, geom).holds);
  c.equal("A in one class", "stated", true, scope_in_single_class(space, Scope::A));

  const auto as = space.side_a();
  c.equal("X_{T^2}^A = A", "derived", sorted_ids(space, as), sorted_ids(space, x_t2_a_set(space, map)));
  c.equal("best proximity points", "stated", json::array({dyadic_point_id(0, -1)}),
          sorted_ids(space, enumerate_bpps(space, map)));

  std::set<std::string> limits;
  for (Vertex x : as) limits.insert(space.id(*solve_bpp(space, map, x).bpp));
  c.equal("solve_bpp limit from every x in A", "stated", json::array({dyadic_point_id(0, -1)}),
          json(std::vector<std::string>(limits.begin(), limits.end())));

  const OrbitTrace trace = iterate_orbit(space, map, space.index_of(dyadic_point_id(0, 1)));
  bool monotone = true;
  for (std::size_t k = 1; k < trace.gaps.size(); ++k) monotone = monotone && trace.gaps[k] <= trace.gaps[k - 1];
  c.equal("orbit gaps from (0,1/2) non-increasing", "derived", true, monotone);
  c.near("last orbit gap", "derived", 1.0, trace.gaps.back(), 1e-12);
  c.near("first orbit gap", "derived", 1.25, trace.gaps.front(), 0.0);

  const Vertex x = space.index_of(dyadic_point_id(0, 1));
  const Vertex y = space.index_of(dyadic_point_id(1, 2));
  c.near("m((0,1/2), (1,1/4))", "derived", 1.25, m_value(space, map, x, y), 0.0);
  const double d_xy = space.dist(x, y);
  const double spot = 1.0 + 0.5 * (0.5 - 0.25);
  c.near("|Tx - Ty| at n=1, p=1", "stated", spot, space.dist(map(x), map(y)), 1e-15);
  c.near("bound at n=1, p=1", "stated", spot,
         contraction_bound(b.phi1, b.phi2, d_xy, m_value(space, map, x, y), geom.d_ab), 1e-15);

  const ContractionReport report = verify_g_cyclic_contraction(space, map, b.phi1, b.phi2);
  const Vertex floor_a = space.index_of(dyadic_point_id(0, depth));
  const Vertex floor_b = space.index_of(dyadic_point_id(1, depth));
  bool interior_ok = true;
  double excess = 0.0;
  for (const Violation& v : report.violations) {
    if (v.x != floor_a && v.y != floor_b && map(v.y) != floor_a && map(v.x) != floor_b) interior_ok = false;
    excess = std::max(excess, v.lhs - v.rhs);
  }
  c.equal("contraction away from the truncation floor", "stated", true, interior_ok);
  c.near("largest excess at the truncation floor", "derived", std::ldexp(1.0, -(depth + 1)), excess, 1e-15);

  EquivalenceOptions eopt;
  const EquivalenceReport eq = check_equivalence_theorem(space, map, b.phi1, b.phi2, eopt);
  c.equal("clauses (a), (b), (c)", "stated", json({true, true, true}), json({eq.a, eq.b, eq.c}));

  return ReproduceReport{"ex33_dyadic_l1", json{{"depth", depth}}, c.take()};
}

ReproduceReport reproduce_ex35(const json& params) {
  allow_params(params, {"depth"});
  const int depth = int_param(params, "depth", 12);
  const GraphBundle b = build_ex35(depth);
  const auto& space = b.space;
  const auto& map = *b.map;
  Checks c;

  const auto bpps = enumerate_bpps(space, map);
  c.equal("best proximity points", "stated", sorted_ids({dyadic_point_id(0, -1), dyadic_point_id(0, 0)}),
          sorted_ids(space, bpps));
  c.equal("X_{T^2}^A", "stated", sorted_ids({dyadic_point_id(0, -1), dyadic_point_id(0, 0)}),
          sorted_ids(space, x_t2_a_set(space, map)));

  const Vertex half = space.index_of(dyadic_point_id(0, 1));
  const auto comp = component_of(space, half);
  c.equal("class of (0,1/2) meets no best proximity point", "stated", json::array(),
          sorted_ids(space, intersect(comp, bpps)));
  const Vertex origin = space.index_of(dyadic_point_id(0, -1));
  c.equal("(0,0) outside the class of (0,1/2)", "stated", false, std::binary_search(comp.begin(), comp.end(), origin));

  const Vertex b11 = space.index_of(dyadic_point_id(1, 0));
  c.equal("((0,0), T(1,1)) is an edge", "stated", false, space.has_edge(origin, map(b11)));
  ContractionOptions all;
  all.scope = PairScope::AllPairs;
  const ContractionReport every = verify_g_cyclic_contraction(space, map, b.phi1, b.phi2, all);
  c.near("|T(0,0) - T(1,1)|", "stated", 2.0, space.dist(map(origin), map(b11)), 0.0);
  c.near("bound at ((0,0), (1,1))", "stated", 1.5,
         contraction_bound(b.phi1, b.phi2, space.dist(origin, b11), m_value(space, map, origin, b11), 1.0), 0.0);
  c.equal("all-pairs check flags ((0,0), (1,1))", "stated", true, has_violation(every, origin, b11));

  c.equal("property (*) on A", "derived", false, check_property_star(space, Scope::A).holds);

  EquivalenceOptions eopt;
  eopt.check_hypotheses = false;
  const EquivalenceReport eq = check_equivalence_theorem(space, map, b.phi1, b.phi2, eopt);
  c.equal("clauses (a), (c)", "stated", json({false, false}), json({eq.a, eq.c}));

  BppOptions bopt;
  bopt.check_hypotheses = false;
  const BppResult r = solve_bpp(space, map, half, bopt);
  c.equal("even-orbit limit from (0,1/2)", "derived", dyadic_point_id(0, -1), space.id(*r.bpp));

  return ReproduceReport{"ex35_not_bpo", json{{"depth", depth}}, c.take()};
}

ReproduceReport reproduce_ex41(const json& params) {
  allow_params(params, {"levels", "nodes"});
  const int levels = int_param(params, "levels", 24);
  const int nodes = int_param(params, "nodes", 64);
  const GraphBundle b = build_ex41(levels, nodes);
  const auto& space = b.space;
  const auto& pair = *b.pair;
  Checks c;

  c.equal("G-psi-contraction", "stated", true, verify_g_psi_contraction(space, pair, *b.psi).holds);
  PsiOptions strong;
  strong.strengthened = true;
  c.equal("two-point psi-contraction", "derived", true, verify_g_psi_contraction(space, pair, *b.psi, strong).holds);
  c.equal("property (*) on A and B", "stated", true, check_property_star(space, Scope::Union).holds);
  const Vertex seed = space.index_of(b.seed);
  c.equal("(x0, T1 x0) is an edge", "stated", true, space.has_edge(seed, pair.t1(seed)));
  const UniquenessRegime regime = check_uniqueness_regime(space);
  c.equal("weakly connected", "stated", true, regime.weakly_connected);

  const FixedPointResult r = solve_common_fixed_point(space, pair, *b.psi, seed);
  c.equal("common fixed point", "stated", "zero", space.id(r.p));
  c.at_most("sup residual", "stated", 1e-8, std::max(r.residual_t1, r.residual_t2));
  bool under = true;
  bool envelope = true;
  for (std::size_t k = 0; k < r.trace.gaps.size(); ++k) {
    under = under && r.trace.gaps[k] <= r.apriori[k];
    envelope = envelope && r.trace.gaps[k] <= r.envelope[k] + 1e-15;
  }
  c.equal("gaps under psi^n d0 / (1 - psi)", "derived", true, under);
  c.equal("gaps under psi^n d0", "derived", true, envelope);

  const FixedPointResult other = solve_common_fixed_point(space, pair, *b.psi, space.index_of("re:ramp:1/4"));
  c.equal("same point from re:ramp:1/4", "derived", "zero", space.id(other.p));

  return ReproduceReport{"ex41_fixed_point", json{{"levels", levels}, {"nodes", nodes}}, c.take()};
}

ReproduceReport reproduce_ex53(const json& params) {
  allow_params(params, {"n"});
  const int n = int_param(params, "n", 201);
  const PbvpProblem problem = build_ex53(n);
  Checks c;

  c.equal("w = -1 is a lower solution", "stated", true, is_lower_solution(problem.f, problem.w0).holds);
  c.equal("w = +1 is a lower solution", "derived", false,
          is_lower_solution(problem.f, GridFunction::constant(problem.grid, 1.0)).holds);
  std::vector<double> ss;
  for (int k = 0; k <= 20; ++k) ss.push_back(-4.0 + 0.4 * k);
  c.equal("one-sided bound with h = e^2 - e^t", "stated", true,
          verify_one_sided_condition(problem.f, problem.alpha, problem.h, problem.grid.nodes(), ordered_pairs(ss))
              .holds);

  const GreensKernel kernel(problem.alpha, 1.0);
  const IntegralOperator op(kernel, problem.grid);
  const auto mass = op.kernel_mass();
  double mass_err = 0.0;
  for (double m : mass) mass_err = std::max(mass_err, std::abs(m - 1.0 / problem.alpha));
  c.at_most("kernel mass error", "derived", 1e-4, mass_err);
  c.near("F(0)", "stated", 0.0, op.apply(problem.f, GridFunction::constant(problem.grid, 0.0)).sup_norm(), 0.0);

  const PbvpResult r = solve_pbvp(problem);
  const double beta = (problem.alpha - 1.0) / problem.alpha;
  c.near("beta", "stated", beta, r.report.beta, 1e-12);
  c.at_most("|u|_inf", "stated", 1e-6, r.report.sup_norm);
  c.at_most("|u(0) - u(T)|", "derived", 1e-9, r.report.periodicity);
  c.at_most("largest contraction ratio", "derived", beta + 1e-6, r.report.max_ratio);

  return ReproduceReport{"ex53_pbvp", json{{"n", n}}, c.take()};
}

}  // namespace

ReproduceReport reproduce(std::string_view id, const json& params) {
  const json& p = params.is_null() ? json::object() : params;
  if (id == "ex22_kappa") return reproduce_ex22(p);
  if (id == "ex33_dyadic_l1") return reproduce_ex33(p);
  if (id == "ex35_not_bpo") return reproduce_ex35(p);
  if (id == "ex41_fixed_point") return reproduce_ex41(p);
  if (id == "ex53_pbvp") return reproduce_ex53(p);
  throw Error(ErrorCode::ParamOutOfRange, "unknown example id '" + std::string(id) + "'", json{{"id", std::string(id)}});
}

std::map<std::string, json> emit_example(std::string_view id, const json& params) {
  const json& p = params.is_null() ? json::object() : params;
  std::map<std::string, json> files;
  auto graph_files = [&](const GraphBundle& b) {
    files["instance.json"] = space_to_json(b.space);
    if (b.map) {
      files["map.json"] = cyclic_map_to_json(b.space, *b.map);
      files["gauges.json"] = json{{"schema", kSchemaVersion}, {"phi1", gauge_to_json(b.phi1)}, {"phi2", gauge_to_json(b.phi2)}};
    }
    if (b.pair) {
      files["t1.json"] = side_map_to_json(b.space, b.pair->t1_table());
      files["t2.json"] = side_map_to_json(b.space, b.pair->t2_table());
    }
    if (b.psi) {
      json psi = gauge_to_json(*b.psi);
      psi["schema"] = kSchemaVersion;
      files["psi.json"] = std::move(psi);
    }
  };
  if (id == "ex22_kappa") {
    allow_params(p, {"n"});
    graph_files(build_ex22(int_param(p, "n", 16)));
  } else if (id == "ex33_dyadic_l1") {
    allow_params(p, {"depth"});
    graph_files(build_ex33(int_param(p, "depth", 12)));
  } else if (id == "ex35_not_bpo") {
    allow_params(p, {"depth"});
    graph_files(build_ex35(int_param(p, "depth", 12)));
  } else if (id == "ex41_fixed_point") {
    allow_params(p, {"levels", "nodes"});
    graph_files(build_ex41(int_param(p, "levels", 24), int_param(p, "nodes", 64)));
  } else if (id == "ex53_pbvp") {
    allow_params(p, {"n"});
    const int n = int_param(p, "n", 201);
    require_range("n", n, 3, 20001);
    files["problem.json"] = json{{"schema", kSchemaVersion},
                                 {"rhs", {{"kind", "exp_linear"}, {"c", -1.0}}},
                                 {"alpha", std::exp(2.0)},
                                 {"h", {{"kind", "exp_gap"}}},
                                 {"T", 1.0},
                                 {"N", n},
                                 {"w0", "const:-1"}};
  } else {
    throw Error(ErrorCode::ParamOutOfRange, "unknown example id '" + std::string(id) + "'", json{{"id", std::string(id)}});
  }
  return files;
}

}  // namespace gcyc
