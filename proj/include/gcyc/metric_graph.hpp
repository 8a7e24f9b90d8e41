#pragma once

// Finite metric spaces carrying a directed graph, together with the
// geometric predicates on a pair of subsets (A, B) that the solvers rely on.
//
// Every vertex carries a side label. A point labelled `Both` belongs to A and
// to B at the same time; the fixed-point machinery needs such points because a
// common fixed point lives in A ∩ B.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gcyc {

using Vertex = std::size_t;

enum class Side : std::uint8_t { A = 1, B = 2, Both = 3 };

enum class Metric { L1, L2, Sup, Table };

std::string_view to_string(Side side) noexcept;
std::string_view to_string(Metric metric) noexcept;

struct Point {
  std::string id;
  std::vector<double> coords;  // empty for abstract (table-metric) points
  Side side = Side::A;

  bool in_a() const noexcept { return (static_cast<unsigned>(side) & 1u) != 0; }
  bool in_b() const noexcept { return (static_cast<unsigned>(side) & 2u) != 0; }
};

struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Relative tolerance for triangle-inequality validation of supplied tables.
inline constexpr double kTolMetric = 1e-9;
/// Absolute tolerance under which two distances count as tied.
inline constexpr double kTolTie = 1e-12;

/// A failed predicate names the points that break it.
struct Witness {
  std::vector<Vertex> points;
  std::string note;
};

struct Check {
  bool holds = true;
  std::optional<Witness> witness;

  explicit operator bool() const noexcept { return holds; }

  static Check pass() { return {}; }
  static Check fail(std::vector<Vertex> points, std::string note) {
    return {false, Witness{std::move(points), std::move(note)}};
  }
};

/// (X, d, G) restricted to finitely many points. Immutable after construction;
/// the constructor validates the metric axioms, the loop invariant and the
/// absence of parallel edges, and throws `Error{InvalidInput}` otherwise.
class FiniteMetricGraph {
 public:
  /// `dist` is the row-major n×n distance table.
  FiniteMetricGraph(std::vector<Point> points, std::vector<double> dist, std::vector<Edge> edges,
                    bool auto_loops, Metric metric = Metric::Table);

  static FiniteMetricGraph from_coordinates(std::vector<Point> points, Metric metric,
                                            std::vector<Edge> edges, bool auto_loops);
  static FiniteMetricGraph from_table(std::vector<Point> points,
                                      const std::vector<std::vector<double>>& table,
                                      std::vector<Edge> edges, bool auto_loops);

  std::size_t size() const noexcept { return points_.size(); }
  std::span<const Point> points() const noexcept { return points_; }
  const Point& point(Vertex v) const { return points_.at(v); }
  const std::string& id(Vertex v) const { return points_.at(v).id; }
  Metric metric() const noexcept { return metric_; }

  double dist(Vertex x, Vertex y) const noexcept { return dist_[x * size() + y]; }
  bool has_edge(Vertex from, Vertex to) const noexcept { return adjacency_[from * size() + to] != 0; }
  /// Sorted lexicographically.
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Neighbours in the symmetrized graph G̃ (sorted, without duplicates).
  std::span<const Vertex> undirected_neighbors(Vertex v) const { return undirected_.at(v); }

  std::optional<Vertex> find(std::string_view id) const;
  /// Throws `Error{UnknownPoint}` when the id is absent.
  Vertex index_of(std::string_view id) const;

  bool in_a(Vertex v) const { return points_.at(v).in_a(); }
  bool in_b(Vertex v) const { return points_.at(v).in_b(); }
  std::vector<Vertex> side_a() const;
  std::vector<Vertex> side_b() const;

 private:
  std::vector<Point> points_;
  std::vector<double> dist_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> undirected_;
  std::unordered_map<std::string, Vertex> index_;
  Metric metric_;
};

/// d(A, B) together with the proximal sets A0, B0 and the parallel pairs.
struct PairGeometry {
  double d_ab = 0.0;
  std::vector<Vertex> a0;
  std::vector<Vertex> b0;
  std::vector<Edge> parallel_pairs;  // (a, b) with a ∈ A, b ∈ B, dist(a,b) = d_ab
};

/// Throws `Error{EmptySide}` if A or B is empty.
PairGeometry pair_distance(const FiniteMetricGraph& space);

Check is_sharp_proximal(const FiniteMetricGraph& space, const PairGeometry& geom);
Check is_g_chebyshev(const FiniteMetricGraph& space, const PairGeometry& geom);

/// Finite form of property UC: for x, u ∈ A and y ∈ B, dist(x,y) = dist(u,y) = d(A,B)
/// forces x = u. A convergent sequence of distances on a finite set is eventually
/// constant, so the sequence definition reduces to this.
Check has_property_uc(const FiniteMetricGraph& space, const PairGeometry& geom);

/// [x]_G̃: every vertex reachable from x in the symmetrized graph. Sorted.
std::vector<Vertex> component_of(const FiniteMetricGraph& space, Vertex x);

/// Label of the G̃-class of every vertex; labels are 0..k-1 in order of the
/// smallest vertex of each class.
std::vector<std::size_t> component_labels(const FiniteMetricGraph& space);

enum class Scope { A, B, Union, All };

/// Quasi-order surrogate of property (*): every chain (x,y), (y,z) of edges with
/// x, y, z inside the scope is closed by (x,z).
Check check_property_star(const FiniteMetricGraph& space, Scope scope = Scope::A);

/// True when all points of the scope lie in one G̃-class.
bool scope_in_single_class(const FiniteMetricGraph& space, Scope scope);

/// True when the subgraph induced on the scope is weakly connected on its own.
bool induced_weakly_connected(const FiniteMetricGraph& space, Scope scope);

/// Number of G̃-classes containing at least one point of A.
std::size_t classes_meeting_a(const FiniteMetricGraph& space);

}  // namespace gcyc
