#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's algorithms; inputs are plain coordinates, index lists and edges.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

enum class Norm { L1, L2, Sup };

inline double coord_dist(const std::vector<double>& a, const std::vector<double>& b, Norm norm) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::abs(a[k] - b[k]);
    if (norm == Norm::L1) acc += d;
    else if (norm == Norm::L2) acc += d * d;
    else acc = std::max(acc, d);
  }
  return norm == Norm::L2 ? std::sqrt(acc) : acc;
}

using Matrix = std::vector<std::vector<double>>;
using Relation = std::vector<std::vector<char>>;

inline Matrix distance_matrix(const std::vector<std::vector<double>>& coords, Norm norm) {
  Matrix d(coords.size(), std::vector<double>(coords.size(), 0.0));
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < coords.size(); ++j) d[i][j] = coord_dist(coords[i], coords[j], norm);
  return d;
}

/// Directed adjacency with every loop added.
inline Relation adjacency(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Relation r(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (auto [u, v] : edges) r[u][v] = 1;
  return r;
}

/// Floyd-Warshall reachability on the symmetrised relation.
inline Relation undirected_closure(const Relation& adj) {
  const std::size_t n = adj.size();
  Relation r(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = adj[i][j] || adj[j][i];
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = 1;
  return r;
}

/// Number of classes of the closure that contain at least one marked vertex.
inline std::size_t classes_meeting(const Relation& closure, const std::vector<char>& marked) {
  const std::size_t n = closure.size();
  std::vector<char> seen(n, 0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    bool hit = false;
    for (std::size_t j = 0; j < n; ++j)
      if (closure[i][j]) {
        seen[j] = 1;
        hit = hit || marked[j];
      }
    count += hit ? 1 : 0;
  }
  return count;
}

inline double min_cross_distance(const Matrix& d, const std::vector<char>& in_a, const std::vector<char>& in_b) {
  double best = INFINITY;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      if (in_a[i] && in_b[j]) best = std::min(best, d[i][j]);
  return best;
}

/// x in A with d(x, Tx) = d(A, B) up to tol, by exhaustive scan.
inline std::vector<std::size_t> brute_bpps(const Matrix& d, const std::vector<char>& in_a,
                                           const std::vector<char>& in_b, const std::vector<std::size_t>& image,
                                           double tol = 1e-9) {
  const double gap = min_cross_distance(d, in_a, in_b);
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < d.size(); ++x)
    if (in_a[x] && std::abs(d[x][image[x]] - gap) <= tol) out.push_back(x);
  return out;
}

/// The point T^{2n} x settles on, if the even orbit becomes stationary.
inline std::optional<std::size_t> even_terminal(const std::vector<std::size_t>& image, std::size_t x) {
  for (std::size_t step = 0; step <= 2 * image.size() + 2; ++step) {
    const std::size_t next = image[image[x]];
    if (next == x) return x;
    x = next;
  }
  return std::nullopt;
}

// Example 2.2 functions, evaluated pointwise; the norm is sup_t (|Re| + |Im|).
struct Complex {
  double re;
  double im;
};

inline Complex f_alpha(double a, double t) { return {0.0, t <= 0.5 ? 2 * a * t : 2 * a * (1 - t)}; }
inline Complex g_alpha(double a, double t) {
  return t <= 0.5 ? Complex{1 + a * (t - 0.5), 2 * a * t} : Complex{1 - a * (t - 0.5), 2 * a * (1 - t)};
}

/// Sampled norm of u - v on `samples` + 1 uniform nodes (includes t = 1/2).
template <typename U, typename V>
double sampled_norm(U u, V v, int samples = 2000) {
  double best = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double t = static_cast<double>(k) / samples;
    const Complex a = u(t);
    const Complex b = v(t);
    best = std::max(best, std::abs(a.re - b.re) + std::abs(a.im - b.im));
  }
  return best;
}

/// Periodic solution of u' = -lambda u + amp cos(2 pi freq t).
inline double cosine_forced_solution(double lambda, double amp, double freq, double t) {
  const double w = 2.0 * std::numbers::pi * freq;
  return amp * (lambda * std::cos(w * t) + w * std::sin(w * t)) / (lambda * lambda + w * w);
}

/// Exact integral of the periodic Green's kernel over one period: 1 / alpha.
inline double kernel_mass(double alpha) { return 1.0 / alpha; }

}  // namespace oracle
