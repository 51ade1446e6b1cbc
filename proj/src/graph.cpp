#include "sawlab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sawlab/errors.hpp"

namespace sawlab {

std::size_t VertexHash::operator()(const Vertex& v) const noexcept {
  // FNV-1a over the coordinate words.
  std::uint64_t h = 1469598103934665603ull;
  for (auto x : v) {
    auto u = static_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

std::string canonical_key(const Vertex& v) {
  std::string key;
  key.reserve(v.size() * 8);
  for (auto x : v) {
    auto u = static_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>((u >> (8 * i)) & 0xffu));
  }
  return key;
}

std::string format_vertex(const Vertex& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::size_t Ball::index_of(const Vertex& v) const {
  auto it = index.find(v);
  return it == index.end() ? npos : it->second;
}

Ball ball(const GraphOracle& g, int radius, std::size_t max_vertices, const Vertex* center) {
  if (radius < 0) throw InputError("ball radius must be non-negative");
  const Vertex c = center ? *center : g.root();

  std::vector<Vertex> found{c};
  std::vector<int> dist{0};
  VertexMap<std::uint32_t> seen;
  seen.emplace(c, 0);
  std::vector<Arc> arcs;
  for (std::size_t head = 0; head < found.size(); ++head) {
    if (dist[head] == radius) continue;
    arcs.clear();
    g.neighbors(found[head], arcs);
    for (auto& a : arcs) {
      if (seen.contains(a.to)) continue;
      if (found.size() >= max_vertices) {
        throw BudgetExceeded("ball of radius " + std::to_string(radius) + " in " + g.name() +
                                 " exceeds " + std::to_string(max_vertices) + " vertices",
                             found.size());
      }
      seen.emplace(a.to, static_cast<std::uint32_t>(found.size()));
      found.push_back(a.to);
      dist.push_back(dist[head] + 1);
    }
  }

  std::vector<std::uint32_t> order(found.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return found[a] < found[b];
  });

  Ball out;
  out.center = c;
  out.radius = radius;
  out.vertices.reserve(found.size());
  out.distance.reserve(found.size());
  for (auto i : order) {
    out.index.emplace(found[i], static_cast<std::uint32_t>(out.vertices.size()));
    out.vertices.push_back(std::move(found[i]));
    out.distance.push_back(dist[i]);
  }

  out.adjacency.resize(out.vertices.size());
  for (std::uint32_t i = 0; i < out.vertices.size(); ++i) {
    arcs.clear();
    g.neighbors(out.vertices[i], arcs);
    for (auto& a : arcs) {
      auto it = out.index.find(a.to);
      if (it == out.index.end()) continue;
      out.adjacency[i].push_back(it->second);
      if (i < it->second) out.edges.emplace_back(i, it->second);
    }
    std::sort(out.adjacency[i].begin(), out.adjacency[i].end());
    out.adjacency[i].erase(std::unique(out.adjacency[i].begin(), out.adjacency[i].end()),
                           out.adjacency[i].end());
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

}  // namespace sawlab
