#pragma once

// Pairs of maps T1: A -> B, T2: B -> A with a psi-contraction along edges, the
// alternating iteration toward a common fixed point and its a-priori bound.

#include <map>
#include <string>
#include <vector>

#include "gcyc/bpp_solver.hpp"
#include "gcyc/cyclic_contraction.hpp"
#include "gcyc/metric_graph.hpp"

namespace gcyc {

inline constexpr Vertex kNoImage = static_cast<Vertex>(-1);

/// T1 is defined on A with values in B, T2 on B with values in A.
class PairMaps {
 public:
  /// Entries for points outside the respective domain must be `kNoImage`.
  PairMaps(const FiniteMetricGraph& space, std::vector<Vertex> t1, std::vector<Vertex> t2);
  static PairMaps from_ids(const FiniteMetricGraph& space, const std::map<std::string, std::string>& t1,
                           const std::map<std::string, std::string>& t2);
  /// T1 = T restricted to A and T2 = T restricted to B.
  static PairMaps from_cyclic(const FiniteMetricGraph& space, const CyclicMap& map);

  Vertex t1(Vertex v) const { return t1_.at(v); }
  Vertex t2(Vertex v) const { return t2_.at(v); }
  /// 1 -> T1, 2 -> T2.
  Vertex apply(int which, Vertex v) const { return which == 1 ? t1(v) : t2(v); }
  const std::vector<Vertex>& t1_table() const noexcept { return t1_; }
  const std::vector<Vertex>& t2_table() const noexcept { return t2_; }

 private:
  std::vector<Vertex> t1_;
  std::vector<Vertex> t2_;
};

struct PsiOptions {
  double tol_ineq = 1e-9;
  /// Also check the two-point variant over (x, y) with (x, T_i y) an edge.
  bool strengthened = false;
  bool check_gauge = true;
  std::vector<double> gauge_grid;  // empty: every distance of the instance
};

/// Violations use x = the base point and y = its image (or the second point in
/// the two-point variant). Kinds: "edge", "inequality", "edge_pair", "inequality_pair".
/// Throws `Error{GaugeClassViolation}` when psi fails its sampled class check.
ContractionReport verify_g_psi_contraction(const FiniteMetricGraph& space, const PairMaps& pair, const Gauge& psi,
                                           const PsiOptions& options = {});

/// psi^n d0 / (1 - psi). Throws `Error{InvalidPsi}` unless 0 <= psi < 1.
double apriori_bound(double d0, double psi_at_d0, std::size_t n);

struct FixedPointOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10000;
  /// Require the transitivity surrogate of property (*) on A union B.
  bool check_star = true;
};

struct FixedPointResult {
  Vertex p = 0;
  OrbitTrace trace;  // x0, T1 x0, T2 T1 x0, ...
  double d0 = 0.0;
  double psi0 = 0.0;
  std::vector<double> envelope;  // psi0^n d0, one per gap
  std::vector<double> apriori;   // psi0^n d0 / (1 - psi0), one per gap
  double residual_t1 = 0.0;
  double residual_t2 = 0.0;
};

/// Alternating iteration x_{2n+1} = T1 x_{2n}, x_{2n+2} = T2 x_{2n+1} from a seed
/// with (x0, T1 x0) an edge. Stops at a point p in A and B with
/// d(p, T1 p), d(p, T2 p) and the last gap all within tol. Throws
/// `Error{SeedNotEligible}`, `Error{HypothesisViolated}` or `Error{NoConvergence}`.
FixedPointResult solve_common_fixed_point(const FiniteMetricGraph& space, const PairMaps& pair, const Gauge& psi,
                                          Vertex x0, const FixedPointOptions& options = {});

struct UniquenessRegime {
  bool weakly_connected = false;
  bool weak_friendship = false;
};

/// weakly_connected: A lies in one G̃-class. weak_friendship: every x, y in A
/// share some u in A with (u,x) and (u,y) edges.
UniquenessRegime check_uniqueness_regime(const FiniteMetricGraph& space);

/// psi with t(1 - psi(t)) = phi(t) - phi(d_ab) on t > d_ab.
Gauge induced_psi(const Gauge& phi, double d_ab);

}  // namespace gcyc
