#pragma once

// Orbit iteration for cyclic maps, best proximity points and the structural
// results tying them to the G̃-classes of A.

#include <optional>
#include <string_view>
#include <vector>

#include "gcyc/cyclic_contraction.hpp"
#include "gcyc/metric_graph.hpp"

namespace gcyc {

enum class StopReason { Converged, MaxIter, CycleDetected };

std::string_view to_string(StopReason reason) noexcept;

struct OrbitTrace {
  Vertex x0 = 0;
  std::vector<Vertex> points;  // x0, Tx0, T^2 x0, ...
  std::vector<double> gaps;    // gaps[n] = d(points[n+1], points[n])
  StopReason stop = StopReason::MaxIter;
  /// Set on a detected cycle when the repeating even point satisfies T^2 x = x.
  bool cycle_is_t2_fixed = false;
};

struct OrbitOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10000;
  /// Stop at the first gap within `tol` of d(A,B).
  bool stop_at_proximal = true;
};

/// {x in A : (x, T^2 x) is an edge}, ascending.
std::vector<Vertex> x_t2_a_set(const FiniteMetricGraph& space, const CyclicMap& map);

/// Throws `Error{NotInA}` if x0 is not in A.
OrbitTrace iterate_orbit(const FiniteMetricGraph& space, const CyclicMap& map, Vertex x0,
                         const OrbitOptions& options = {});

struct BppOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10000;
  /// Pre-check seed membership in X_{T^2}^A, property (*) on A and property UC.
  bool check_hypotheses = true;
};

struct BppResult {
  std::optional<Vertex> bpp;
  double achieved_gap = 0.0;
  /// Applications of T^2.
  std::size_t iterations = 0;
  std::vector<Vertex> component;
  OrbitTrace trace;
};

/// Follows the even orbit x, T^2 x, ... until it is stationary and returns that
/// point once it is proximal. Throws `Error{HypothesisViolated}` (detail names the
/// predicate) or `Error{NoConvergence}`.
BppResult solve_bpp(const FiniteMetricGraph& space, const CyclicMap& map, Vertex x0, const BppOptions& options = {});

/// {x in A : |d(x, Tx) - d(A,B)| <= tol}, ascending.
std::vector<Vertex> enumerate_bpps(const FiniteMetricGraph& space, const CyclicMap& map, double tol = 1e-9);

struct CardinalityReport {
  std::size_t bpp_count = 0;
  std::size_t component_count = 0;
  bool equal = false;
  std::vector<Vertex> bpps;
};

/// Compares the number of best proximity points with the number of G̃-classes
/// meeting A. With `check_hypotheses` it requires property (*) on A, property UC
/// and a point of X_{T^2}^A in every class meeting A.
CardinalityReport check_cardinality(const FiniteMetricGraph& space, const CyclicMap& map, double tol = 1e-9,
                                    bool check_hypotheses = true);

struct EquivalenceOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10000;
  bool check_hypotheses = true;
  ContractionOptions contraction;
};

struct EquivalenceReport {
  /// All of A lies in one G̃-class.
  bool a = false;
  /// The subgraph induced on A is weakly connected on its own.
  bool a_induced = false;
  /// Even orbits from every point of A stop at one common T^2-fixed point.
  bool b = false;
  /// At most one best proximity point.
  bool c = false;
  bool hypotheses_hold = false;
  bool contraction_holds = false;
  /// X_{T^2}^A = A: every point is an admissible seed.
  bool all_seeds = false;
  bool theorem_applies = false;
  bool agree = false;
  /// The theorem applies and the clauses disagree.
  bool falsification = false;
  std::size_t bpp_count = 0;
  std::vector<std::optional<Vertex>> terminals;  // per point of A, in side_a() order
};

/// Evaluates the three equivalent clauses on the instance. With hypothesis
/// checks on it throws `Error{HypothesisViolated}` unless (A,B) is sharp
/// proximal, has property UC and A has property (*).
EquivalenceReport check_equivalence_theorem(const FiniteMetricGraph& space, const CyclicMap& map,
                                            const Gauge& phi1, const Gauge& phi2,
                                            const EquivalenceOptions& options = {});

}  // namespace gcyc
