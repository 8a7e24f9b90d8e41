#include "gcyc/metric_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "gcyc/error.hpp"

namespace gcyc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::SideMismatch: return "SideMismatch";
    case ErrorCode::NotInA: return "NotInA";
    case ErrorCode::GaugeClassViolation: return "GaugeClassViolation";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SeedNotEligible: return "SeedNotEligible";
    case ErrorCode::InvalidPsi: return "InvalidPsi";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
    case ErrorCode::BetaNotContractive: return "BetaNotContractive";
    case ErrorCode::NotLowerSolution: return "NotLowerSolution";
    case ErrorCode::ConditionIvViolated: return "ConditionIvViolated";
    case ErrorCode::MonotonicityBroken: return "MonotonicityBroken";
  }
  return "Unknown";
}

std::string_view to_string(Side side) noexcept {
  switch (side) {
    case Side::A: return "A";
    case Side::B: return "B";
    case Side::Both: return "AB";
  }
  return "?";
}

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::L1: return "l1";
    case Metric::L2: return "l2";
    case Metric::Sup: return "sup";
    case Metric::Table: return "table";
  }
  return "?";
}

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorCode::InvalidInput, message); }

double coordinate_distance(const std::vector<double>& x, const std::vector<double>& y, Metric metric) {
  double acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double diff = std::abs(x[k] - y[k]);
    switch (metric) {
      case Metric::L1: acc += diff; break;
      case Metric::L2: acc += diff * diff; break;
      case Metric::Sup: acc = std::max(acc, diff); break;
      case Metric::Table: break;
    }
  }
  return metric == Metric::L2 ? std::sqrt(acc) : acc;
}

}  // namespace

FiniteMetricGraph::FiniteMetricGraph(std::vector<Point> points, std::vector<double> dist,
                                     std::vector<Edge> edges, bool auto_loops, Metric metric)
    : points_(std::move(points)), dist_(std::move(dist)), metric_(metric) {
  const std::size_t n = points_.size();
  if (n == 0) invalid("instance has no points");
  if (dist_.size() != n * n) invalid("distance table must be n x n");

  for (Vertex v = 0; v < n; ++v) {
    const auto& id = points_[v].id;
    if (id.empty()) invalid("point " + std::to_string(v) + " has an empty id");
    if (!index_.emplace(id, v).second) invalid("duplicate point id '" + id + "'");
  }

  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      const double dxy = dist_[x * n + y];
      if (!std::isfinite(dxy) || dxy < 0.0)
        invalid("distance between '" + id(x) + "' and '" + id(y) + "' is negative or not finite");
      if (x == y && dxy > kTolTie) invalid("distance from '" + id(x) + "' to itself is not zero");
      if (y > x) {
        const double dyx = dist_[y * n + x];
        if (std::abs(dxy - dyx) > kTolMetric * std::max(1.0, std::max(dxy, dyx)))
          invalid("distance table is not symmetric at ('" + id(x) + "', '" + id(y) + "')");
      }
    }
    dist_[x * n + x] = 0.0;
  }
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y) dist_[y * n + x] = dist_[x * n + y];

  if (metric_ == Metric::Table) {
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = 0; y < n; ++y)
        for (Vertex z = 0; z < n; ++z) {
          const double via = dist_[x * n + y] + dist_[y * n + z];
          if (dist_[x * n + z] > via + kTolMetric * std::max(1.0, via))
            invalid("triangle inequality fails for ('" + id(x) + "', '" + id(y) + "', '" + id(z) + "')");
        }
  }

  adjacency_.assign(n * n, 0);
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) invalid("edge references an unknown vertex");
    auto& slot = adjacency_[e.from * n + e.to];
    if (slot != 0) invalid("parallel edge ('" + id(e.from) + "', '" + id(e.to) + "')");
    slot = 1;
  }
  for (Vertex v = 0; v < n; ++v) {
    auto& loop = adjacency_[v * n + v];
    if (loop == 0 && !auto_loops) invalid("missing trivial loop at '" + id(v) + "'");
    loop = 1;
  }

  undirected_.assign(n, {});
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      if (adjacency_[x * n + y] != 0) {
        edges_.push_back({x, y});
        if (x != y) {
          undirected_[x].push_back(y);
          undirected_[y].push_back(x);
        }
      }
  for (auto& nbrs : undirected_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
}

FiniteMetricGraph FiniteMetricGraph::from_coordinates(std::vector<Point> points, Metric metric,
                                                      std::vector<Edge> edges, bool auto_loops) {
  if (metric == Metric::Table) invalid("coordinate instances need an l1, l2 or sup metric");
  const std::size_t n = points.size();
  if (n == 0) invalid("instance has no points");
  const std::size_t dim = points.front().coords.size();
  for (const auto& p : points) {
    if (p.coords.size() != dim || dim == 0) invalid("point '" + p.id + "' has inconsistent coordinates");
    for (double c : p.coords)
      if (!std::isfinite(c)) invalid("point '" + p.id + "' has a non-finite coordinate");
  }
  std::vector<double> dist(n * n, 0.0);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y)
      dist[x * n + y] = dist[y * n + x] = coordinate_distance(points[x].coords, points[y].coords, metric);
  return FiniteMetricGraph(std::move(points), std::move(dist), std::move(edges), auto_loops, metric);
}

FiniteMetricGraph FiniteMetricGraph::from_table(std::vector<Point> points,
                                                const std::vector<std::vector<double>>& table,
                                                std::vector<Edge> edges, bool auto_loops) {
  const std::size_t n = points.size();
  if (table.size() != n) invalid("distance table must have one row per point");
  std::vector<double> dist;
  dist.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n) invalid("distance table must be square");
    dist.insert(dist.end(), row.begin(), row.end());
  }
  return FiniteMetricGraph(std::move(points), std::move(dist), std::move(edges), auto_loops, Metric::Table);
}

std::optional<Vertex> FiniteMetricGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex FiniteMetricGraph::index_of(std::string_view id) const {
  if (auto v = find(id)) return *v;
  throw Error(ErrorCode::UnknownPoint, "unknown point '" + std::string(id) + "'",
              nlohmann::json{{"id", std::string(id)}});
}

std::vector<Vertex> FiniteMetricGraph::side_a() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < size(); ++v)
    if (points_[v].in_a()) out.push_back(v);
  return out;
}

std::vector<Vertex> FiniteMetricGraph::side_b() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < size(); ++v)
    if (points_[v].in_b()) out.push_back(v);
  return out;
}

PairGeometry pair_distance(const FiniteMetricGraph& space) {
  const auto as = space.side_a();
  const auto bs = space.side_b();
  if (as.empty() || bs.empty()) throw Error(ErrorCode::EmptySide, as.empty() ? "side A is empty" : "side B is empty");

  PairGeometry geom;
  geom.d_ab = std::numeric_limits<double>::infinity();
  for (Vertex a : as)
    for (Vertex b : bs) geom.d_ab = std::min(geom.d_ab, space.dist(a, b));

  std::vector<std::uint8_t> in_b0(space.size(), 0);
  for (Vertex a : as) {
    bool proximal = false;
    for (Vertex b : bs) {
      if (space.dist(a, b) - geom.d_ab <= kTolTie) {
        geom.parallel_pairs.push_back({a, b});
        proximal = true;
        in_b0[b] = 1;
      }
    }
    if (proximal) geom.a0.push_back(a);
  }
  for (Vertex b : bs)
    if (in_b0[b] != 0) geom.b0.push_back(b);
  return geom;
}

namespace {

bool at_gap(const FiniteMetricGraph& space, const PairGeometry& geom, Vertex x, Vertex y) {
  return space.dist(x, y) - geom.d_ab <= kTolTie;
}

}  // namespace

Check is_sharp_proximal(const FiniteMetricGraph& space, const PairGeometry& geom) {
  const auto as = space.side_a();
  const auto bs = space.side_b();
  auto scan = [&](const std::vector<Vertex>& from, const std::vector<Vertex>& to,
                  std::string_view other) -> Check {
    for (Vertex x : from) {
      std::vector<Vertex> partners;
      for (Vertex y : to)
        if (at_gap(space, geom, x, y)) partners.push_back(y);
      if (partners.size() != 1) {
        std::ostringstream note;
        note << "'" << space.id(x) << "' has " << partners.size() << " partners in " << other
             << " at distance d(A,B)";
        partners.insert(partners.begin(), x);
        return Check::fail(std::move(partners), note.str());
      }
    }
    return Check::pass();
  };
  if (auto c = scan(as, bs, "B"); !c) return c;
  return scan(bs, as, "A");
}

Check is_g_chebyshev(const FiniteMetricGraph& space, const PairGeometry& geom) {
  for (const Edge& pair : geom.parallel_pairs)
    if (!space.has_edge(pair.from, pair.to))
      return Check::fail({pair.from, pair.to}, "parallel pair ('" + space.id(pair.from) + "', '" +
                                                   space.id(pair.to) + "') is not an edge");
  return Check::pass();
}

Check has_property_uc(const FiniteMetricGraph& space, const PairGeometry& geom) {
  const auto as = space.side_a();
  for (Vertex y : space.side_b()) {
    std::optional<Vertex> first;
    for (Vertex x : as) {
      if (!at_gap(space, geom, x, y)) continue;
      if (!first) {
        first = x;
      } else {
        return Check::fail({*first, x, y}, "'" + space.id(*first) + "' and '" + space.id(x) +
                                               "' are both at distance d(A,B) from '" + space.id(y) + "'");
      }
    }
  }
  return Check::pass();
}

std::vector<std::size_t> component_labels(const FiniteMetricGraph& space) {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(space.size(), unset);
  std::size_t next = 0;
  for (Vertex root = 0; root < space.size(); ++root) {
    if (label[root] != unset) continue;
    std::queue<Vertex> frontier;
    frontier.push(root);
    label[root] = next;
    while (!frontier.empty()) {
      const Vertex v = frontier.front();
      frontier.pop();
      for (Vertex w : space.undirected_neighbors(v))
        if (label[w] == unset) {
          label[w] = next;
          frontier.push(w);
        }
    }
    ++next;
  }
  return label;
}

std::vector<Vertex> component_of(const FiniteMetricGraph& space, Vertex x) {
  if (x >= space.size()) throw Error(ErrorCode::UnknownPoint, "vertex index out of range");
  std::vector<std::uint8_t> seen(space.size(), 0);
  std::vector<Vertex> stack{x};
  seen[x] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : space.undirected_neighbors(v))
      if (seen[w] == 0) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < space.size(); ++v)
    if (seen[v] != 0) out.push_back(v);
  return out;
}

namespace {

bool in_scope(const FiniteMetricGraph& space, Vertex v, Scope scope) {
  switch (scope) {
    case Scope::A: return space.in_a(v);
    case Scope::B: return space.in_b(v);
    case Scope::Union: return space.in_a(v) || space.in_b(v);
    case Scope::All: return true;
  }
  return false;
}

}  // namespace

Check check_property_star(const FiniteMetricGraph& space, Scope scope) {
  for (const Edge& first : space.edges()) {
    if (first.from == first.to) continue;
    if (!in_scope(space, first.from, scope) || !in_scope(space, first.to, scope)) continue;
    for (Vertex z = 0; z < space.size(); ++z) {
      if (z == first.to || !space.has_edge(first.to, z) || !in_scope(space, z, scope)) continue;
      if (!space.has_edge(first.from, z))
        return Check::fail({first.from, first.to, z},
                           "edges ('" + space.id(first.from) + "', '" + space.id(first.to) + "') and ('" +
                               space.id(first.to) + "', '" + space.id(z) + "') are not closed by ('" +
                               space.id(first.from) + "', '" + space.id(z) + "')");
    }
  }
  return Check::pass();
}

bool scope_in_single_class(const FiniteMetricGraph& space, Scope scope) {
  const auto labels = component_labels(space);
  std::optional<std::size_t> seen;
  for (Vertex v = 0; v < space.size(); ++v) {
    if (!in_scope(space, v, scope)) continue;
    if (seen && *seen != labels[v]) return false;
    seen = labels[v];
  }
  return true;
}

bool induced_weakly_connected(const FiniteMetricGraph& space, Scope scope) {
  std::vector<Vertex> members;
  for (Vertex v = 0; v < space.size(); ++v)
    if (in_scope(space, v, scope)) members.push_back(v);
  if (members.empty()) return true;
  std::vector<std::uint8_t> seen(space.size(), 0);
  std::vector<Vertex> stack{members.front()};
  seen[members.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : space.undirected_neighbors(v))
      if (seen[w] == 0 && in_scope(space, w, scope)) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == members.size();
}

std::size_t classes_meeting_a(const FiniteMetricGraph& space) {
  const auto labels = component_labels(space);
  std::vector<std::size_t> hit;
  for (Vertex v : space.side_a()) hit.push_back(labels[v]);
  std::sort(hit.begin(), hit.end());
  return static_cast<std::size_t>(std::unique(hit.begin(), hit.end()) - hit.begin());
}

}  // namespace gcyc
