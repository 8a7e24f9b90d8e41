#include "gcyc/bpp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "gcyc/error.hpp"

namespace gcyc {

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::Converged: return "converged";
    case StopReason::MaxIter: return "max_iter";
    case StopReason::CycleDetected: return "cycle_detected";
  }
  return "?";
}

std::vector<Vertex> x_t2_a_set(const FiniteMetricGraph& space, const CyclicMap& map) {
  std::vector<Vertex> out;
  for (Vertex x : space.side_a())
    if (space.has_edge(x, map.square(x))) out.push_back(x);
  return out;
}

OrbitTrace iterate_orbit(const FiniteMetricGraph& space, const CyclicMap& map, Vertex x0, const OrbitOptions& options) {
  if (x0 >= space.size() || !space.in_a(x0))
    throw Error(ErrorCode::NotInA, "orbit seed is not in A", nlohmann::json{{"x0", x0 < space.size() ? space.id(x0) : ""}});
  const double d_ab = pair_distance(space).d_ab;

  OrbitTrace trace;
  trace.x0 = x0;
  trace.points.push_back(x0);
  std::unordered_set<Vertex> even_seen{x0};
  Vertex x = x0;
  for (std::size_t n = 0; n < options.max_iter; ++n) {
    const Vertex next = map(x);
    const double gap = space.dist(next, x);
    trace.points.push_back(next);
    trace.gaps.push_back(gap);
    if (options.stop_at_proximal && std::abs(gap - d_ab) <= options.tol) {
      trace.stop = StopReason::Converged;
      return trace;
    }
    if (n % 2 == 1) {
      if (!even_seen.insert(next).second) {
        trace.stop = StopReason::CycleDetected;
        trace.cycle_is_t2_fixed = map.square(next) == next;
        return trace;
      }
    }
    x = next;
  }
  trace.stop = StopReason::MaxIter;
  return trace;
}

namespace {

void require(bool ok, std::string_view predicate, const std::string& message) {
  if (!ok)
    throw Error(ErrorCode::HypothesisViolated, message, nlohmann::json{{"predicate", std::string(predicate)}});
}

std::string witness_note(const Check& check) { return check.witness ? check.witness->note : std::string(); }

struct EvenLimit {
  std::optional<Vertex> point;  // stationary point of T^2, absent on a cycle or timeout
  std::size_t steps = 0;
};

EvenLimit even_limit(const CyclicMap& map, Vertex x0, std::size_t max_iter) {
  std::unordered_set<Vertex> seen{x0};
  Vertex x = x0;
  for (std::size_t k = 0; k < max_iter; ++k) {
    const Vertex next = map.square(x);
    if (next == x) return {x, k};
    if (!seen.insert(next).second) return {std::nullopt, k + 1};
    x = next;
  }
  return {std::nullopt, max_iter};
}

}  // namespace

BppResult solve_bpp(const FiniteMetricGraph& space, const CyclicMap& map, Vertex x0, const BppOptions& options) {
  if (x0 >= space.size() || !space.in_a(x0)) throw Error(ErrorCode::NotInA, "seed is not in A");
  const PairGeometry geom = pair_distance(space);

  if (options.check_hypotheses) {
    require(space.has_edge(x0, map.square(x0)), "seed_in_x_t2_a",
            "seed '" + space.id(x0) + "' is not in X_{T^2}^A");
    const Check star = check_property_star(space, Scope::A);
    require(star.holds, "property_star", "A lacks property (*): " + witness_note(star));
    const Check uc = has_property_uc(space, geom);
    require(uc.holds, "property_uc", "(A, B) lacks property UC: " + witness_note(uc));
  }

  BppResult result;
  result.trace.x0 = x0;
  result.trace.points.push_back(x0);
  std::unordered_set<Vertex> seen{x0};
  Vertex x = x0;
  bool stationary = false;
  for (std::size_t k = 0; k < options.max_iter; ++k) {
    const Vertex mid = map(x);
    const Vertex next = map(mid);
    if (next == x) {
      stationary = true;
      break;
    }
    result.trace.points.push_back(mid);
    result.trace.gaps.push_back(space.dist(mid, x));
    result.trace.points.push_back(next);
    result.trace.gaps.push_back(space.dist(next, mid));
    ++result.iterations;
    if (!seen.insert(next).second) {
      result.trace.stop = StopReason::CycleDetected;
      throw Error(ErrorCode::NoConvergence, "even orbit from '" + space.id(x0) + "' cycles without a fixed point",
                  nlohmann::json{{"x0", space.id(x0)}, {"repeat", space.id(next)}});
    }
    x = next;
  }
  if (!stationary)
    throw Error(ErrorCode::NoConvergence, "even orbit did not settle within max_iter",
                nlohmann::json{{"x0", space.id(x0)}, {"max_iter", options.max_iter}});

  result.achieved_gap = space.dist(x, map(x));
  if (std::abs(result.achieved_gap - geom.d_ab) > options.tol)
    throw Error(ErrorCode::NoConvergence, "even orbit settles at '" + space.id(x) + "' which is not proximal",
                nlohmann::json{{"x0", space.id(x0)}, {"limit", space.id(x)}, {"gap", result.achieved_gap},
                               {"d_ab", geom.d_ab}});
  result.trace.points.push_back(map(x));
  result.trace.gaps.push_back(result.achieved_gap);
  result.trace.stop = StopReason::Converged;
  result.trace.cycle_is_t2_fixed = true;
  result.bpp = x;
  result.component = component_of(space, x0);
  return result;
}

std::vector<Vertex> enumerate_bpps(const FiniteMetricGraph& space, const CyclicMap& map, double tol) {
  const double d_ab = pair_distance(space).d_ab;
  std::vector<Vertex> out;
  for (Vertex x : space.side_a())
    if (std::abs(space.dist(x, map(x)) - d_ab) <= tol) out.push_back(x);
  return out;
}

CardinalityReport check_cardinality(const FiniteMetricGraph& space, const CyclicMap& map, double tol,
                                    bool check_hypotheses) {
  const auto labels = component_labels(space);
  if (check_hypotheses) {
    const PairGeometry geom = pair_distance(space);
    const Check star = check_property_star(space, Scope::A);
    require(star.holds, "property_star", "A lacks property (*): " + witness_note(star));
    const Check uc = has_property_uc(space, geom);
    require(uc.holds, "property_uc", "(A, B) lacks property UC: " + witness_note(uc));
    std::vector<std::uint8_t> has_seed(space.size(), 0);
    for (Vertex s : x_t2_a_set(space, map)) has_seed[labels[s]] = 1;
    for (Vertex a : space.side_a())
      require(has_seed[labels[a]] != 0, "seed_per_class",
              "the class of '" + space.id(a) + "' contains no point of X_{T^2}^A");
  }
  CardinalityReport report;
  report.bpps = enumerate_bpps(space, map, tol);
  report.bpp_count = report.bpps.size();
  report.component_count = classes_meeting_a(space);
  report.equal = report.bpp_count == report.component_count;
  return report;
}

EquivalenceReport check_equivalence_theorem(const FiniteMetricGraph& space, const CyclicMap& map,
                                            const Gauge& phi1, const Gauge& phi2,
                                            const EquivalenceOptions& options) {
  const PairGeometry geom = pair_distance(space);
  const Check sharp = is_sharp_proximal(space, geom);
  const Check uc = has_property_uc(space, geom);
  const Check star = check_property_star(space, Scope::A);
  if (options.check_hypotheses) {
    require(sharp.holds, "sharp_proximal", "(A, B) is not sharp proximal: " + witness_note(sharp));
    require(uc.holds, "property_uc", "(A, B) lacks property UC: " + witness_note(uc));
    require(star.holds, "property_star", "A lacks property (*): " + witness_note(star));
  }

  EquivalenceReport report;
  report.hypotheses_hold = sharp.holds && uc.holds && star.holds;
  ContractionOptions copt = options.contraction;
  copt.check_gauges = false;
  report.contraction_holds = verify_g_cyclic_contraction(space, map, phi1, phi2, copt).holds &&
                             verify_gauge_classes(phi1, phi2, default_gauge_grid(space)).holds;
  const auto as = space.side_a();
  report.all_seeds = x_t2_a_set(space, map).size() == as.size();
  report.theorem_applies = report.hypotheses_hold && report.contraction_holds && report.all_seeds;

  report.a = scope_in_single_class(space, Scope::A);
  report.a_induced = induced_weakly_connected(space, Scope::A);

  report.b = true;
  std::optional<Vertex> common;
  for (Vertex x : as) {
    const auto limit = even_limit(map, x, options.max_iter);
    report.terminals.push_back(limit.point);
    if (!limit.point || (common && *common != *limit.point)) report.b = false;
    if (limit.point && !common) common = limit.point;
  }

  report.bpp_count = enumerate_bpps(space, map, options.tol).size();
  report.c = report.bpp_count <= 1;
  report.agree = report.a == report.b && report.b == report.c;
  report.falsification = report.theorem_applies && !report.agree;
  return report;
}

}  // namespace gcyc
