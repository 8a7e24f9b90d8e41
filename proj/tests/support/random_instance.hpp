#pragma once

// Random finite instances for the property tests: A on the line x = 0, B on
// x = 1, both at the same heights, so d(A, B) = 1 is attained exactly at equal
// heights. Points are split into groups; edges stay inside a group except for
// an occasional bridge. The map sends each point one step toward its group root.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gcyc/cyclic_contraction.hpp"
#include "gcyc/metric_graph.hpp"
#include "oracles.hpp"

namespace gen {

struct Instance {
  std::vector<std::vector<double>> coords;
  std::vector<char> in_a;
  std::vector<char> in_b;
  oracle::Norm norm = oracle::Norm::L1;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // loops not listed
  std::vector<std::size_t> image;
  double phi1_slope = 0.5;
  double phi2_shift = 0.0;

  std::size_t size() const { return coords.size(); }

  gcyc::FiniteMetricGraph space() const {
    std::vector<gcyc::Point> pts;
    for (std::size_t i = 0; i < size(); ++i)
      pts.push_back({"p" + std::to_string(i), coords[i], in_a[i] ? gcyc::Side::A : gcyc::Side::B});
    std::vector<gcyc::Edge> es;
    for (auto [u, v] : edges) es.push_back({u, v});
    const gcyc::Metric m = norm == oracle::Norm::L1 ? gcyc::Metric::L1
                           : norm == oracle::Norm::L2 ? gcyc::Metric::L2
                                                      : gcyc::Metric::Sup;
    return gcyc::FiniteMetricGraph::from_coordinates(std::move(pts), m, std::move(es), true);
  }

  gcyc::CyclicMap map(const gcyc::FiniteMetricGraph& s) const {
    return gcyc::CyclicMap(s, std::vector<gcyc::Vertex>(image.begin(), image.end()));
  }
  gcyc::Gauge phi1() const { return gcyc::Gauge::linear(phi1_slope); }
  gcyc::Gauge phi2() const { return gcyc::Gauge::affine_shift(phi2_shift); }
};

inline void transitive_closure(std::vector<std::vector<char>>& r) {
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = 1;
}

/// At most 2 * max_levels points. Each group is a root with a chain above and
/// below it; the steps toward the root halve, so T^2 contracts heights by 1/2
/// (up to the last step) and orbits of several steps survive the filters.
inline Instance random_instance(std::mt19937& rng, int max_levels = 6) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  Instance inst;
  const int m = uniform(1, max_levels);
  const int groups = uniform(1, m);
  inst.norm = chance(0.5) ? oracle::Norm::L1 : oracle::Norm::L2;

  // group sizes: one root each, the rest spread at random
  std::vector<int> size(groups, 1);
  for (int k = groups; k < m; ++k) ++size[uniform(0, groups - 1)];

  std::vector<int> group(m);
  std::vector<int> parent(m);
  std::vector<int> rank(m);  // steps to the root
  std::vector<double> height(m);
  std::vector<int> band(groups);
  std::iota(band.begin(), band.end(), 0);
  std::shuffle(band.begin(), band.end(), rng);
  int next = 0;
  for (int g = 0; g < groups; ++g) {
    const double root_h = 4.0 * band[g] + 2.0;
    const int root = next++;
    group[root] = g;
    parent[root] = root;
    rank[root] = 0;
    height[root] = root_h;
    const int up = uniform(0, size[g] - 1);
    const int lens[2] = {up, size[g] - 1 - up};
    const bool star = chance(0.25);
    for (int side = 0; side < 2; ++side) {
      const int len = lens[side];
      // level k sits at distance 2^-k (1 - 2^-(len-k)) * 2 from the root, k = 0 farthest
      int below = root;
      for (int k = len - 1; k >= 0; --k) {
        const int v = next++;
        group[v] = g;
        parent[v] = star ? root : below;
        rank[v] = len - k;
        const double delta = 2.0 * std::ldexp(1.0, -k) * (1.0 - std::ldexp(1.0, -(len - k)));
        height[v] = root_h + (side == 0 ? delta : -delta);
        below = v;
      }
    }
  }

  for (int side = 0; side < 2; ++side)
    for (int i = 0; i < m; ++i) {
      inst.coords.push_back({static_cast<double>(side), height[i]});
      inst.in_a.push_back(side == 0);
      inst.in_b.push_back(side == 1);
    }
  // occasionally break sharp proximality by moving one B point off its partner
  if (chance(0.1)) inst.coords[m + uniform(0, m - 1)][1] += 1.0 / 32.0;

  auto ancestor = [&](int u, int v) {
    for (int w = u;; w = parent[w]) {
      if (w == v) return true;
      if (parent[w] == w) return false;
    }
  };
  auto side_edges = [&](int offset, bool closed) {
    std::vector<std::vector<char>> r(m, std::vector<char>(m, 0));
    for (int u = 0; u < m; ++u)
      for (int v = 0; v < m; ++v) {
        if (u == v || group[u] != group[v]) continue;
        const bool toward_root = ancestor(u, v);
        if (chance(0.5) ? true : toward_root) r[u][v] = 1;
        if (chance(0.1)) r[u][v] = 1 - r[u][v];
      }
    if (closed) transitive_closure(r);
    for (int u = 0; u < m; ++u)
      for (int v = 0; v < m; ++v)
        if (u != v && r[u][v]) inst.edges.push_back({static_cast<std::size_t>(offset + u), static_cast<std::size_t>(offset + v)});
  };
  side_edges(0, !chance(0.1));
  side_edges(m, true);
  for (int i = 0; i < m; ++i) inst.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(m + i)});
  if (groups > 1 && chance(0.1)) {
    const int u = uniform(0, m - 1);
    const int v = uniform(0, m - 1);
    const std::pair<std::size_t, std::size_t> bridge{static_cast<std::size_t>(u), static_cast<std::size_t>(v)};
    if (u != v && std::find(inst.edges.begin(), inst.edges.end(), bridge) == inst.edges.end()) inst.edges.push_back(bridge);
  }

  inst.image.resize(2 * m);
  for (int i = 0; i < m; ++i) {
    inst.image[i] = m + parent[i];
    inst.image[m + i] = parent[i];
  }

  static const double slopes[] = {0.25, 0.5, 0.75, 1.0};
  inst.phi1_slope = slopes[uniform(0, 3)];
  inst.phi2_shift = chance(0.5) ? 0.0 : 0.5;
  return inst;
}

}  // namespace gen
