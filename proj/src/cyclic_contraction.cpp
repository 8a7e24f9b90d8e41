#include "gcyc/cyclic_contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gcyc/error.hpp"

namespace gcyc {

namespace {

constexpr double kSnap = 1e-12;
// Past this 1/z no longer fits a double's integer range.
constexpr double kKappaCap = 9.0e15;

}  // namespace

std::int64_t kappa(double z) {
  if (!(z > 0.0 && z < 1.0))
    throw Error(ErrorCode::OutOfDomain, "kappa is defined on (0, 1)", nlohmann::json{{"z", z}});
  const double inv = 1.0 / z;
  if (inv >= kKappaCap) throw Error(ErrorCode::OutOfDomain, "argument too small for kappa", nlohmann::json{{"z", z}});
  const double nearest = std::round(inv);
  if (nearest >= 1.0 && std::abs(z - 1.0 / nearest) <= kSnap) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::floor(inv)) + 1;
}

std::int64_t kappa_total(double z) {
  if (z == 0.0) return 0;
  if (z == 1.0) return 1;
  return kappa(z);
}

double floor_fraction(double s) {
  const double whole = std::floor(s);
  const double frac = s - whole;
  if (frac <= 0.0) return whole;
  // frac / kappa(frac) with kappa ~ 1/frac once frac is below double resolution of 1/n
  if (1.0 / frac >= kKappaCap) return whole + frac * frac;
  return whole + frac / static_cast<double>(kappa(frac));
}

std::string_view to_string(GaugeKind kind) noexcept {
  switch (kind) {
    case GaugeKind::Linear: return "linear";
    case GaugeKind::AffineShift: return "affine_shift";
    case GaugeKind::FloorFraction: return "floor_fraction";
    case GaugeKind::Identity: return "identity";
    case GaugeKind::Constant: return "constant";
    case GaugeKind::Table: return "table";
    case GaugeKind::Induced: return "induced";
  }
  return "?";
}

std::string_view to_string(MonotoneClass cls) noexcept {
  switch (cls) {
    case MonotoneClass::Increasing: return "increasing";
    case MonotoneClass::NondecreasingMinusIdentity: return "nondecreasing_minus_identity";
    case MonotoneClass::IntoUnitInterval: return "into_unit_interval";
  }
  return "?";
}

Gauge Gauge::linear(double c) {
  if (!std::isfinite(c) || c <= 0.0) throw Error(ErrorCode::InvalidInput, "linear gauge needs c > 0");
  Gauge g(GaugeKind::Linear, MonotoneClass::Increasing);
  g.param_ = c;
  return g;
}

Gauge Gauge::affine_shift(double c) {
  if (!std::isfinite(c)) throw Error(ErrorCode::InvalidInput, "affine_shift gauge needs a finite c");
  Gauge g(GaugeKind::AffineShift, MonotoneClass::NondecreasingMinusIdentity);
  g.param_ = c;
  return g;
}

Gauge Gauge::floor_fraction() { return Gauge(GaugeKind::FloorFraction, MonotoneClass::Increasing); }

Gauge Gauge::identity() { return Gauge(GaugeKind::Identity, MonotoneClass::Increasing); }

Gauge Gauge::constant(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::InvalidInput, "constant gauge needs a finite value");
  Gauge g(GaugeKind::Constant, MonotoneClass::IntoUnitInterval);
  g.param_ = value;
  return g;
}

Gauge Gauge::table(std::vector<double> s, std::vector<double> values, MonotoneClass cls) {
  if (s.size() < 2 || s.size() != values.size())
    throw Error(ErrorCode::InvalidInput, "table gauge needs at least two (s, value) knots");
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!std::isfinite(s[k]) || !std::isfinite(values[k])) throw Error(ErrorCode::InvalidInput, "table gauge knot is not finite");
    if (k > 0 && !(s[k] > s[k - 1])) throw Error(ErrorCode::InvalidInput, "table gauge knots must be strictly increasing in s");
  }
  Gauge g(GaugeKind::Table, cls);
  g.knot_s_ = std::move(s);
  g.knot_v_ = std::move(values);
  return g;
}

Gauge Gauge::induced(const Gauge& phi, double d_ab) {
  if (!std::isfinite(d_ab) || d_ab < 0.0) throw Error(ErrorCode::InvalidInput, "induced gauge needs d(A,B) >= 0");
  Gauge g(GaugeKind::Induced, MonotoneClass::IntoUnitInterval);
  g.param_ = d_ab;
  g.base_ = std::make_shared<const Gauge>(phi);
  return g;
}

double Gauge::operator()(double s) const {
  switch (kind_) {
    case GaugeKind::Linear: return param_ * s;
    case GaugeKind::AffineShift: return param_ + s;
    case GaugeKind::FloorFraction: return gcyc::floor_fraction(s);
    case GaugeKind::Identity: return s;
    case GaugeKind::Constant: return param_;
    case GaugeKind::Table: {
      const auto it = std::upper_bound(knot_s_.begin(), knot_s_.end(), s);
      std::size_t hi = static_cast<std::size_t>(it - knot_s_.begin());
      hi = std::clamp<std::size_t>(hi, 1, knot_s_.size() - 1);
      const std::size_t lo = hi - 1;
      const double w = (s - knot_s_[lo]) / (knot_s_[hi] - knot_s_[lo]);
      return knot_v_[lo] + w * (knot_v_[hi] - knot_v_[lo]);
    }
    case GaugeKind::Induced: {
      const Gauge& phi = *base_;
      const double d = param_;
      double t = s;
      if (!(t > d)) t = d + std::max(1e-9, 1e-9 * d);
      return 1.0 - (phi(t) - phi(d)) / t;
    }
  }
  return 0.0;
}

std::string Gauge::describe() const {
  std::ostringstream out;
  out << to_string(kind_);
  switch (kind_) {
    case GaugeKind::Linear:
    case GaugeKind::AffineShift:
    case GaugeKind::Constant: out << "(" << param_ << ")"; break;
    case GaugeKind::Table: out << "(" << knot_s_.size() << " knots)"; break;
    case GaugeKind::Induced: out << "(" << base_->describe() << ", d=" << param_ << ")"; break;
    default: break;
  }
  return out.str();
}

SampleCheck verify_gauge_classes(const Gauge& phi1, const Gauge& phi2, const std::vector<double>& grid) {
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double s0 = grid[k];
    const double s1 = grid[k + 1];
    if (!(s1 > s0)) continue;
    const double a0 = phi1(s0);
    const double a1 = phi1(s1);
    if (!(a1 > a0)) return {false, SampleWitness{s0, s1, a0, a1, "phi1 is not strictly increasing"}};
    const double b0 = phi2(s0) - s0;
    const double b1 = phi2(s1) - s1;
    if (b1 < b0 - kTolTie) return {false, SampleWitness{s0, s1, b0, b1, "phi2 - I decreases"}};
  }
  return {};
}

SampleCheck verify_psi_gauge(const Gauge& psi, const std::vector<double>& grid) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = psi(grid[k]);
    if (!(v >= 0.0 && v < 1.0)) return {false, SampleWitness{grid[k], grid[k], v, v, "psi leaves [0, 1)"}};
    if (k > 0 && grid[k] > grid[k - 1]) {
      const double prev = psi(grid[k - 1]);
      if (v < prev - kTolTie) return {false, SampleWitness{grid[k - 1], grid[k], prev, v, "psi decreases"}};
    }
  }
  return {};
}

CyclicMap::CyclicMap(const FiniteMetricGraph& space, std::vector<Vertex> image) : image_(std::move(image)) {
  if (image_.size() != space.size()) throw Error(ErrorCode::InvalidInput, "map must assign an image to every point");
  for (Vertex v = 0; v < image_.size(); ++v) {
    const Vertex w = image_[v];
    if (w >= space.size()) throw Error(ErrorCode::InvalidInput, "map image out of range");
    if (space.in_a(v) && !space.in_b(w))
      throw Error(ErrorCode::InvalidInput, "map sends '" + space.id(v) + "' in A to '" + space.id(w) + "' outside B",
                  nlohmann::json{{"point", space.id(v)}, {"image", space.id(w)}});
    if (space.in_b(v) && !space.in_a(w))
      throw Error(ErrorCode::InvalidInput, "map sends '" + space.id(v) + "' in B to '" + space.id(w) + "' outside A",
                  nlohmann::json{{"point", space.id(v)}, {"image", space.id(w)}});
  }
}

CyclicMap CyclicMap::from_ids(const FiniteMetricGraph& space, const std::map<std::string, std::string>& table) {
  constexpr auto unset = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> image(space.size(), unset);
  for (const auto& [from, to] : table) image[space.index_of(from)] = space.index_of(to);
  for (Vertex v = 0; v < image.size(); ++v)
    if (image[v] == unset)
      throw Error(ErrorCode::InvalidInput, "map has no image for '" + space.id(v) + "'", nlohmann::json{{"point", space.id(v)}});
  return CyclicMap(space, std::move(image));
}

double m_value(const FiniteMetricGraph& space, const CyclicMap& map, Vertex x, Vertex y) {
  if (!space.in_a(x) || !space.in_b(y))
    throw Error(ErrorCode::SideMismatch, "m(x, y) needs x in A and y in B");
  return std::max(space.dist(x, map(x)), space.dist(y, map(y)));
}

Check verify_t2_preserves_edges(const FiniteMetricGraph& space, const CyclicMap& map) {
  for (const Edge& e : space.edges()) {
    if (!space.in_a(e.from) || !space.in_a(e.to)) continue;
    const Vertex u = map.square(e.from);
    const Vertex v = map.square(e.to);
    if (!space.has_edge(u, v))
      return Check::fail({e.from, e.to, u, v}, "edge ('" + space.id(e.from) + "', '" + space.id(e.to) +
                                                   "') goes to non-edge ('" + space.id(u) + "', '" + space.id(v) + "')");
  }
  return Check::pass();
}

double contraction_bound(const Gauge& phi1, const Gauge& phi2, double d, double m, double d_ab) {
  return (d - phi1(d)) + (m - phi2(m)) + (phi1(d_ab) + phi2(d_ab) - d_ab);
}

std::vector<double> default_gauge_grid(const FiniteMetricGraph& space) {
  std::vector<double> grid;
  grid.reserve(space.size() * (space.size() + 1) / 2);
  for (Vertex x = 0; x < space.size(); ++x)
    for (Vertex y = x; y < space.size(); ++y) grid.push_back(space.dist(x, y));
  std::sort(grid.begin(), grid.end());
  // distances equal up to rounding count once
  auto same = [](double a, double b) { return b - a <= kTolTie * std::max(1.0, std::abs(b)); };
  grid.erase(std::unique(grid.begin(), grid.end(), same), grid.end());
  return grid;
}

ContractionReport verify_g_cyclic_contraction(const FiniteMetricGraph& space, const CyclicMap& map,
                                              const Gauge& phi1, const Gauge& phi2,
                                              const ContractionOptions& options) {
  if (options.check_gauges) {
    const auto grid = options.gauge_grid.empty() ? default_gauge_grid(space) : options.gauge_grid;
    if (auto check = verify_gauge_classes(phi1, phi2, grid); !check) {
      const auto& w = *check.witness;
      throw Error(ErrorCode::GaugeClassViolation, w.note,
                  nlohmann::json{{"s0", w.s0}, {"s1", w.s1}, {"v0", w.v0}, {"v1", w.v1}});
    }
  }

  const PairGeometry geom = pair_distance(space);
  ContractionReport report;
  report.d_ab = geom.d_ab;

  const auto as = space.side_a();
  const auto bs = space.side_b();
  for (Vertex x : as) {
    for (Vertex y : bs) {
      const Vertex ty = map(y);
      if (options.scope == PairScope::EdgeEligible &&
          !(space.has_edge(x, y) || space.has_edge(x, ty) || space.has_edge(ty, x)))
        continue;
      ++report.checked_pairs;
      const double lhs = space.dist(map(x), ty);
      const double rhs = contraction_bound(phi1, phi2, space.dist(x, y), m_value(space, map, x, y), geom.d_ab);
      if (lhs <= rhs) continue;
      Violation v{x, y, lhs, rhs, "inequality"};
      if (lhs > rhs + options.tol_ineq || options.strict) {
        report.violations.push_back(std::move(v));
      } else {
        report.marginal.push_back(std::move(v));
      }
    }
  }

  if (auto check = verify_t2_preserves_edges(space, map); !check) {
    report.t2_preserves_edges = false;
    report.t2_witness = check.witness;
    const auto& pts = check.witness->points;
    report.violations.push_back({pts[0], pts[1], 0.0, 0.0, "t2_edge"});
  }

  std::vector<std::uint8_t> in_b0(space.size(), 0);
  for (Vertex b : geom.b0) in_b0[b] = 1;
  for (Vertex a : geom.a0)
    if (in_b0[map(a)] == 0) report.t_maps_a0_into_b0 = false;

  report.holds = report.violations.empty();
  return report;
}

}  // namespace gcyc
