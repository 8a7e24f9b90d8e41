#include "gcyc/fixed_point.hpp"

#include <cmath>
#include <unordered_set>

#include "gcyc/error.hpp"

namespace gcyc {

namespace {

void check_side_table(const FiniteMetricGraph& space, const std::vector<Vertex>& table, bool domain_a,
                      std::string_view name) {
  if (table.size() != space.size()) throw Error(ErrorCode::InvalidInput, std::string(name) + " table has the wrong size");
  for (Vertex v = 0; v < table.size(); ++v) {
    const bool in_domain = domain_a ? space.in_a(v) : space.in_b(v);
    const Vertex w = table[v];
    if (!in_domain) {
      if (w != kNoImage)
        throw Error(ErrorCode::InvalidInput, std::string(name) + " is defined outside its domain at '" + space.id(v) + "'");
      continue;
    }
    if (w == kNoImage)
      throw Error(ErrorCode::InvalidInput, std::string(name) + " has no image for '" + space.id(v) + "'",
                  nlohmann::json{{"point", space.id(v)}});
    if (w >= space.size()) throw Error(ErrorCode::InvalidInput, std::string(name) + " image out of range");
    const bool in_range = domain_a ? space.in_b(w) : space.in_a(w);
    if (!in_range)
      throw Error(ErrorCode::InvalidInput,
                  std::string(name) + " sends '" + space.id(v) + "' to '" + space.id(w) + "' on the wrong side",
                  nlohmann::json{{"point", space.id(v)}, {"image", space.id(w)}});
  }
}

std::vector<Vertex> table_from_ids(const FiniteMetricGraph& space, const std::map<std::string, std::string>& ids) {
  std::vector<Vertex> table(space.size(), kNoImage);
  for (const auto& [from, to] : ids) table[space.index_of(from)] = space.index_of(to);
  return table;
}

}  // namespace

PairMaps::PairMaps(const FiniteMetricGraph& space, std::vector<Vertex> t1, std::vector<Vertex> t2)
    : t1_(std::move(t1)), t2_(std::move(t2)) {
  check_side_table(space, t1_, true, "T1");
  check_side_table(space, t2_, false, "T2");
}

PairMaps PairMaps::from_ids(const FiniteMetricGraph& space, const std::map<std::string, std::string>& t1,
                            const std::map<std::string, std::string>& t2) {
  return PairMaps(space, table_from_ids(space, t1), table_from_ids(space, t2));
}

PairMaps PairMaps::from_cyclic(const FiniteMetricGraph& space, const CyclicMap& map) {
  std::vector<Vertex> t1(space.size(), kNoImage);
  std::vector<Vertex> t2(space.size(), kNoImage);
  for (Vertex v = 0; v < space.size(); ++v) {
    if (space.in_a(v)) t1[v] = map(v);
    if (space.in_b(v)) t2[v] = map(v);
  }
  return PairMaps(space, std::move(t1), std::move(t2));
}

ContractionReport verify_g_psi_contraction(const FiniteMetricGraph& space, const PairMaps& pair, const Gauge& psi,
                                           const PsiOptions& options) {
  if (options.check_gauge) {
    const auto grid = options.gauge_grid.empty() ? default_gauge_grid(space) : options.gauge_grid;
    if (auto check = verify_psi_gauge(psi, grid); !check) {
      const auto& w = *check.witness;
      throw Error(ErrorCode::GaugeClassViolation, w.note,
                  nlohmann::json{{"s0", w.s0}, {"s1", w.s1}, {"v0", w.v0}, {"v1", w.v1}});
    }
  }

  ContractionReport report;
  report.d_ab = pair_distance(space).d_ab;
  auto record = [&](Vertex x, Vertex y, double lhs, double rhs, const char* kind) {
    if (lhs <= rhs + options.tol_ineq) return;
    report.violations.push_back({x, y, lhs, rhs, kind});
  };

  for (int i = 1; i <= 2; ++i) {
    const int j = 3 - i;
    for (Vertex x = 0; x < space.size(); ++x) {
      if (!(i == 1 ? space.in_a(x) : space.in_b(x))) continue;
      const Vertex tx = pair.apply(i, x);
      if (!space.has_edge(x, tx)) continue;
      ++report.checked_pairs;
      const Vertex ttx = pair.apply(j, tx);
      if (!space.has_edge(tx, ttx)) report.violations.push_back({x, tx, 0.0, 0.0, "edge"});
      const double step = space.dist(x, tx);
      record(x, tx, space.dist(tx, ttx), psi(step) * step, "inequality");
    }
  }

  if (options.strengthened) {
    for (int i = 1; i <= 2; ++i) {
      const int j = 3 - i;
      for (Vertex x = 0; x < space.size(); ++x) {
        if (!(i == 1 ? space.in_a(x) : space.in_b(x))) continue;
        for (Vertex y = 0; y < space.size(); ++y) {
          if (!(i == 1 ? space.in_a(y) : space.in_b(y))) continue;
          const Vertex ty = pair.apply(i, y);
          if (!space.has_edge(x, ty)) continue;
          ++report.checked_pairs;
          const Vertex tx = pair.apply(i, x);
          const Vertex tty = pair.apply(j, ty);
          if (!space.has_edge(tx, tty)) report.violations.push_back({x, y, 0.0, 0.0, "edge_pair"});
          const double step = space.dist(x, ty);
          record(x, y, space.dist(tx, tty), psi(step) * step, "inequality_pair");
        }
      }
    }
  }

  report.holds = report.violations.empty();
  return report;
}

double apriori_bound(double d0, double psi_at_d0, std::size_t n) {
  if (!(psi_at_d0 >= 0.0 && psi_at_d0 < 1.0))
    throw Error(ErrorCode::InvalidPsi, "psi(d0) must lie in [0, 1)", nlohmann::json{{"psi", psi_at_d0}});
  return std::pow(psi_at_d0, static_cast<double>(n)) * d0 / (1.0 - psi_at_d0);
}

FixedPointResult solve_common_fixed_point(const FiniteMetricGraph& space, const PairMaps& pair, const Gauge& psi,
                                          Vertex x0, const FixedPointOptions& options) {
  if (x0 >= space.size() || !space.in_a(x0))
    throw Error(ErrorCode::SeedNotEligible, "seed is not in A");
  if (!space.has_edge(x0, pair.t1(x0)))
    throw Error(ErrorCode::SeedNotEligible, "(x0, T1 x0) is not an edge for seed '" + space.id(x0) + "'",
                nlohmann::json{{"x0", space.id(x0)}, {"image", space.id(pair.t1(x0))}});
  if (options.check_star) {
    const Check star = check_property_star(space, Scope::Union);
    if (!star)
      throw Error(ErrorCode::HypothesisViolated, "A union B lacks property (*): " + star.witness->note,
                  nlohmann::json{{"predicate", "property_star_union"}});
  }

  FixedPointResult result;
  result.d0 = space.dist(x0, pair.t1(x0));
  result.psi0 = psi(result.d0);
  if (!(result.psi0 >= 0.0 && result.psi0 < 1.0))
    throw Error(ErrorCode::InvalidPsi, "psi(d0) must lie in [0, 1)", nlohmann::json{{"psi", result.psi0}});
  result.trace.x0 = x0;
  result.trace.points.push_back(x0);

  auto residuals = [&](Vertex p, double& r1, double& r2) {
    if (!space.in_a(p) || !space.in_b(p)) return false;
    r1 = space.dist(p, pair.t1(p));
    r2 = space.dist(p, pair.t2(p));
    return r1 <= options.tol && r2 <= options.tol;
  };

  auto finish = [&](Vertex p) {
    result.p = p;
    result.trace.stop = StopReason::Converged;
    for (std::size_t n = 0; n < result.trace.gaps.size(); ++n) {
      const double env = std::pow(result.psi0, static_cast<double>(n)) * result.d0;
      result.envelope.push_back(env);
      result.apriori.push_back(env / (1.0 - result.psi0));
    }
    return result;
  };

  if (residuals(x0, result.residual_t1, result.residual_t2)) return finish(x0);

  std::unordered_set<Vertex> even_seen{x0};
  Vertex x = x0;
  for (std::size_t n = 0; n < options.max_iter; ++n) {
    const Vertex next = n % 2 == 0 ? pair.t1(x) : pair.t2(x);
    const double gap = space.dist(x, next);
    result.trace.points.push_back(next);
    result.trace.gaps.push_back(gap);
    if (gap <= options.tol && residuals(next, result.residual_t1, result.residual_t2)) return finish(next);
    if (n % 2 == 1 && !even_seen.insert(next).second) {
      result.trace.stop = StopReason::CycleDetected;
      throw Error(ErrorCode::NoConvergence, "alternating orbit cycles without a common fixed point",
                  nlohmann::json{{"x0", space.id(x0)}, {"repeat", space.id(next)}});
    }
    x = next;
  }
  throw Error(ErrorCode::NoConvergence, "alternating orbit did not settle within max_iter",
              nlohmann::json{{"x0", space.id(x0)}, {"max_iter", options.max_iter}});
}

UniquenessRegime check_uniqueness_regime(const FiniteMetricGraph& space) {
  UniquenessRegime regime;
  regime.weakly_connected = scope_in_single_class(space, Scope::A);
  const auto as = space.side_a();
  regime.weak_friendship = true;
  for (std::size_t i = 0; i < as.size() && regime.weak_friendship; ++i) {
    for (std::size_t k = i; k < as.size(); ++k) {
      bool found = false;
      for (Vertex u : as)
        if (space.has_edge(u, as[i]) && space.has_edge(u, as[k])) {
          found = true;
          break;
        }
      if (!found) {
        regime.weak_friendship = false;
        break;
      }
    }
  }
  return regime;
}

Gauge induced_psi(const Gauge& phi, double d_ab) { return Gauge::induced(phi, d_ab); }

}  // namespace gcyc
