#pragma once

// Slow, independent reference implementations used only by the tests. None of
// them call into the library's enumeration, elimination or isomorphism code.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sawlab/graph.hpp"

namespace oracle {

// Z^2 walks over explicit coordinates. h = x for bridges.
inline void z2_walks(int n_max, std::vector<std::uint64_t>& sigma, std::vector<std::uint64_t>& bridges) {
  sigma.assign(n_max + 1, 0);
  bridges.assign(n_max + 1, 0);
  std::set<std::pair<int, int>> seen{{0, 0}};
  const int dx[] = {1, -1, 0, 0};
  const int dy[] = {0, 0, 1, -1};
  std::function<void(int, int, int, bool, int)> go = [&](int x, int y, int len, bool above, int mx) {
    ++sigma[len];
    if (above && x == mx) ++bridges[len];
    if (len == n_max) return;
    for (int k = 0; k < 4; ++k) {
      const std::pair<int, int> next{x + dx[k], y + dy[k]};
      if (seen.count(next)) continue;
      seen.insert(next);
      go(next.first, next.second, len + 1, above && next.first > 0, std::max(mx, next.first));
      seen.erase(next);
    }
  };
  go(0, 0, 0, true, 0);
}

// Generic SAW walker straight on the oracle with an ordered set of vertices.
// With a height, counts walks with h(p0) < h(pi) <= h(pn).
inline std::vector<std::uint64_t> naive_counts(const sawlab::GraphOracle& g, int n_max,
                                               const std::function<std::int64_t(const sawlab::Vertex&)>* h =
                                                   nullptr) {
  std::vector<std::uint64_t> out(n_max + 1, 0);
  std::set<sawlab::Vertex> path;
  const auto root = g.root();
  const std::int64_t h0 = h ? (*h)(root) : 0;
  std::function<void(const sawlab::Vertex&, int, std::int64_t)> go = [&](const sawlab::Vertex& v, int len,
                                                                         std::int64_t mx) {
    if (!h || (*h)(v) == mx) ++out[len];
    if (len == n_max) return;
    for (const auto& arc : g.neighbors(v)) {
      if (path.count(arc.to)) continue;
      std::int64_t next_mx = mx;
      if (h) {
        const auto hv = (*h)(arc.to);
        if (hv <= h0) continue;
        next_mx = std::max(mx, hv);
      }
      path.insert(arc.to);
      go(arc.to, len + 1, next_mx);
      path.erase(arc.to);
    }
  };
  path.insert(root);
  go(root, 0, h0);
  return out;
}

// Fraction-free (Bareiss) rank over Z.
inline std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

// Floating-point rank by partial-pivot elimination, for cross-checking.
inline std::size_t float_rank(std::vector<std::vector<double>> a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    for (std::size_t r = rank; r < rows; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    }
    if (std::fabs(a[p][c]) < 1e-9) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const double f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Plain adjacency-list graph built from an oracle ball, for the naive
// isomorphism check.
struct SmallGraph {
  std::vector<std::set<int>> adj;
  std::vector<int> dist;
};

inline SmallGraph small_ball(const sawlab::GraphOracle& g, int k) {
  std::map<sawlab::Vertex, int> id{{g.root(), 0}};
  std::vector<sawlab::Vertex> order{g.root()};
  SmallGraph out;
  out.dist.push_back(0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (out.dist[i] == k) continue;
    for (const auto& a : g.neighbors(order[i])) {
      if (id.count(a.to)) continue;
      id[a.to] = static_cast<int>(order.size());
      order.push_back(a.to);
      out.dist.push_back(out.dist[i] + 1);
    }
  }
  out.adj.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& a : g.neighbors(order[i])) {
      auto it = id.find(a.to);
      if (it != id.end()) out.adj[i].insert(it->second);
    }
  }
  return out;
}

// Rooted isomorphism by straight backtracking: no refinement, candidates
// filtered only by degree and already-placed adjacencies.
inline bool naive_iso(const SmallGraph& a, const SmallGraph& b) {
  const std::size_t n = a.adj.size();
  if (n != b.adj.size()) return false;
  std::vector<int> f(n, -1), used(n, 0);
  std::function<bool(std::size_t)> place = [&](std::size_t v) -> bool {
    if (v == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || a.adj[v].size() != b.adj[w].size() || (v == 0) != (w == 0)) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) {
        ok = a.adj[v].count(static_cast<int>(u)) == b.adj[w].count(f[u]);
      }
      if (!ok) continue;
      f[v] = static_cast<int>(w);
      used[w] = 1;
      if (place(v + 1)) return true;
      used[w] = 0;
    }
    return false;
  };
  return place(0);
}

// Brick-wall honeycomb: (x, y) is adjacent to (x +- 1, y), and to (x, y + 1)
// when x + y is even, to (x, y - 1) otherwise.
class BrickWall final : public sawlab::GraphOracle {
 public:
  std::string name() const override { return "brick_wall"; }
  sawlab::Vertex root() const override { return {0, 0}; }
  void neighbors(const sawlab::Vertex& v, std::vector<sawlab::Arc>& out) const override {
    out.push_back({{v[0] + 1, v[1]}, 0});
    out.push_back({{v[0] - 1, v[1]}, 0});
    const bool even = ((v[0] + v[1]) % 2 + 2) % 2 == 0;
    out.push_back({{v[0], v[1] + (even ? 1 : -1)}, 0});
  }
  const std::vector<std::string>& labels() const override { return labels_; }

 private:
  std::vector<std::string> labels_{"e"};
};

// Truncated square tiling by geometry: squares of side 1 centred on the
// points of (1 + sqrt 2) Z^2, rotated by 45 degrees; in units of 1/sqrt2 the
// corners of the square at (a, b) sit at c (a, b) + (+-1, 0), (0, +-1) with
// c = 2 + sqrt 2. Exact arithmetic: encode x = p + q sqrt 2 as (p, q).
class SquareOctagonGeometry final : public sawlab::GraphOracle {
 public:
  std::string name() const override { return "square_octagon_geometry"; }
  // Vertex (a, b, k): corner k of the square at lattice point (a, b);
  // k = 0 north, 1 east, 2 south, 3 west.
  sawlab::Vertex root() const override { return {0, 0, 0}; }
  void neighbors(const sawlab::Vertex& v, std::vector<sawlab::Arc>& out) const override {
    // Square edges: consecutive corners.
    out.push_back({{v[0], v[1], (v[2] + 1) % 4}, 0});
    out.push_back({{v[0], v[1], (v[2] + 3) % 4}, 0});
    // Octagon edge: the corner facing the neighbouring square, found by
    // matching points at distance 1 (squared distance 2 in half-diagonal units).
    const auto p = point(v);
    for (int da = -1; da <= 1; ++da) {
      for (int db = -1; db <= 1; ++db) {
        if ((da == 0) == (db == 0) && (da != 0 || db != 0)) continue;
        if (da == 0 && db == 0) continue;
        for (int k = 0; k < 4; ++k) {
          sawlab::Vertex w{v[0] + da, v[1] + db, k};
          if (squared_distance(p, point(w)) == std::pair<long, long>{2, 0}) out.push_back({w, 1});
        }
      }
    }
  }
  const std::vector<std::string>& labels() const override { return labels_; }

 private:
  using Surd = std::pair<long, long>;  // p + q sqrt 2
  static std::pair<Surd, Surd> point(const sawlab::Vertex& v) {
    static const long ox[] = {0, 1, 0, -1};
    static const long oy[] = {1, 0, -1, 0};
    // centre spacing c = 2 + sqrt 2
    return {{2 * v[0] + ox[v[2]], v[0]}, {2 * v[1] + oy[v[2]], v[1]}};
  }
  static Surd square(Surd s) { return {s.first * s.first + 2 * s.second * s.second, 2 * s.first * s.second}; }
  static Surd squared_distance(const std::pair<Surd, Surd>& a, const std::pair<Surd, Surd>& b) {
    const Surd dx{a.first.first - b.first.first, a.first.second - b.first.second};
    const Surd dy{a.second.first - b.second.first, a.second.second - b.second.second};
    const Surd x2 = square(dx), y2 = square(dy);
    return {x2.first + y2.first, x2.second + y2.second};
  }
  std::vector<std::string> labels_{"square", "octagon"};
};

}  // namespace oracle
