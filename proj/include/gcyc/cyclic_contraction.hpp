#pragma once

// Gauge functions and the checker for the G-cyclic (phi1, phi2)-contraction
// inequality on a finite instance.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcyc/metric_graph.hpp"

namespace gcyc {

/// Index of the interval 1/(n+1) <= z < 1/n, returned as n+1. Values within
/// 1e-12 of some 1/n are snapped onto it first. Throws `Error{OutOfDomain}`
/// outside (0, 1).
std::int64_t kappa(double z);

/// Same as `kappa`, extended by kappa(0) = 0 and kappa(1) = 1.
std::int64_t kappa_total(double z);

enum class GaugeKind { Linear, AffineShift, FloorFraction, Identity, Constant, Table, Induced };

/// Declared monotonicity; checked on sample grids, never proved.
enum class MonotoneClass { Increasing, NondecreasingMinusIdentity, IntoUnitInterval };

std::string_view to_string(GaugeKind kind) noexcept;
std::string_view to_string(MonotoneClass cls) noexcept;

/// A scalar function on [0, inf) described by a kind and a few parameters.
class Gauge {
 public:
  static Gauge linear(double c);
  static Gauge affine_shift(double c);
  static Gauge floor_fraction();
  static Gauge identity();
  static Gauge constant(double value);
  /// Piecewise-linear through the knots; linear continuation outside them.
  static Gauge table(std::vector<double> s, std::vector<double> values,
                     MonotoneClass cls = MonotoneClass::Increasing);
  /// psi with t(1 - psi(t)) = phi(t) - phi(d_ab) for t > d_ab. Below that the
  /// right limit at d_ab is used.
  static Gauge induced(const Gauge& phi, double d_ab);

  double operator()(double s) const;

  GaugeKind kind() const noexcept { return kind_; }
  MonotoneClass monotone_class() const noexcept { return class_; }
  double param() const noexcept { return param_; }
  const std::vector<double>& knots() const noexcept { return knot_s_; }
  const std::vector<double>& knot_values() const noexcept { return knot_v_; }
  const Gauge* base() const noexcept { return base_.get(); }
  std::string describe() const;

 private:
  Gauge(GaugeKind kind, MonotoneClass cls) : kind_(kind), class_(cls) {}

  GaugeKind kind_;
  MonotoneClass class_;
  double param_ = 0.0;
  std::vector<double> knot_s_;
  std::vector<double> knot_v_;
  std::shared_ptr<const Gauge> base_;
};

double floor_fraction(double s);

/// Failing sample for a gauge property.
struct SampleWitness {
  double s0 = 0.0;
  double s1 = 0.0;
  double v0 = 0.0;
  double v1 = 0.0;
  std::string note;
};

struct SampleCheck {
  bool holds = true;
  std::optional<SampleWitness> witness;
  explicit operator bool() const noexcept { return holds; }
};

/// phi1 strictly increasing and s -> phi2(s) - s non-decreasing on `grid`
/// (sorted ascending).
SampleCheck verify_gauge_classes(const Gauge& phi1, const Gauge& phi2, const std::vector<double>& grid);

/// 0 <= psi < 1 and psi non-decreasing on `grid`.
SampleCheck verify_psi_gauge(const Gauge& psi, const std::vector<double>& grid);

/// Total map on the points of a space with T(A) in B and T(B) in A.
class CyclicMap {
 public:
  /// `image[v]` is T(v). Throws `Error{InvalidInput}` on a side violation.
  CyclicMap(const FiniteMetricGraph& space, std::vector<Vertex> image);
  static CyclicMap from_ids(const FiniteMetricGraph& space, const std::map<std::string, std::string>& table);

  Vertex operator()(Vertex v) const { return image_.at(v); }
  Vertex square(Vertex v) const { return image_.at(image_.at(v)); }
  std::size_t size() const noexcept { return image_.size(); }
  const std::vector<Vertex>& image() const noexcept { return image_; }

 private:
  std::vector<Vertex> image_;
};

/// max{d(x,Tx), d(y,Ty)}. Throws `Error{SideMismatch}` unless x in A and y in B.
double m_value(const FiniteMetricGraph& space, const CyclicMap& map, Vertex x, Vertex y);

/// Every edge (u,v) inside A is carried by T^2 to an edge.
Check verify_t2_preserves_edges(const FiniteMetricGraph& space, const CyclicMap& map);

/// Right-hand side of the contraction inequality for the given distances.
double contraction_bound(const Gauge& phi1, const Gauge& phi2, double d, double m, double d_ab);

struct Violation {
  Vertex x = 0;
  Vertex y = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string kind;
};

struct ContractionReport {
  bool holds = true;
  std::size_t checked_pairs = 0;
  std::vector<Violation> violations;
  /// lhs > rhs by at most the tolerance; violations when the check is strict.
  std::vector<Violation> marginal;
  bool t_maps_a0_into_b0 = true;
  bool t2_preserves_edges = true;
  std::optional<Witness> t2_witness;
  double d_ab = 0.0;
};

enum class PairScope { EdgeEligible, AllPairs };

struct ContractionOptions {
  double tol_ineq = 1e-9;
  PairScope scope = PairScope::EdgeEligible;
  bool strict = false;
  bool check_gauges = true;
  /// Sample grid for the gauge class check; empty means `default_gauge_grid`.
  std::vector<double> gauge_grid;
};

/// Scans pairs (x, y) in A x B in lexicographic order. With the edge-eligible
/// scope only pairs with (x,y), (x,Ty) or (Ty,x) in the edge set are used.
/// Throws `Error{GaugeClassViolation}` when the gauge check is on and fails.
ContractionReport verify_g_cyclic_contraction(const FiniteMetricGraph& space, const CyclicMap& map,
                                              const Gauge& phi1, const Gauge& phi2,
                                              const ContractionOptions& options = {});

/// Sorted pairwise distances of the instance, merged within kTolTie (m-values are among them).
std::vector<double> default_gauge_grid(const FiniteMetricGraph& space);

}  // namespace gcyc
