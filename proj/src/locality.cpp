#include "sawlab/locality.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "sawlab/catalog.hpp"
#include "sawlab/errors.hpp"
#include "sawlab/heights.hpp"
#include "sawlab/presets.hpp"

namespace sawlab {

namespace {

// Joint colour refinement of both balls, seeded with (distance, degree).
// Colours are comparable across the two graphs.
std::vector<std::uint32_t> refine(const Ball& a, const Ball& b) {
  const std::size_t na = a.size();
  const std::size_t n = na + b.size();
  auto ball_of = [&](std::size_t v) -> const Ball& { return v < na ? a : b; };
  auto local = [&](std::size_t v) { return v < na ? v : v - na; };
  auto global = [&](std::size_t v, std::uint32_t u) { return v < na ? u : u + na; };

  std::vector<std::uint32_t> colour(n);
  {
    std::map<std::pair<int, std::size_t>, std::uint32_t> ids;
    std::vector<std::pair<int, std::size_t>> keys(n);
    for (std::size_t v = 0; v < n; ++v) {
      const Ball& g = ball_of(v);
      keys[v] = {g.distance[local(v)], g.adjacency[local(v)].size()};
      ids.emplace(keys[v], 0);
    }
    std::uint32_t next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (std::size_t v = 0; v < n; ++v) colour[v] = ids[keys[v]];
  }
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::vector<std::uint32_t>> keys(n);
    for (std::size_t v = 0; v < n; ++v) {
      const Ball& g = ball_of(v);
      auto& key = keys[v];
      key.push_back(colour[v]);
      for (auto u : g.adjacency[local(v)]) key.push_back(colour[global(v, u)]);
      std::sort(key.begin() + 1, key.end());
      ids.emplace(key, 0);
    }
    std::uint32_t next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (std::size_t v = 0; v < n; ++v) colour[v] = ids[keys[v]];
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return colour;
}

bool adjacent(const Ball& g, std::uint32_t u, std::uint32_t v) {
  const auto& adj = g.adjacency[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

}  // namespace

bool rooted_isomorphic(const Ball& a, const Ball& b, std::vector<std::uint32_t>* mapping,
                       std::uint64_t max_nodes) {
  const std::size_t n = a.size();
  if (n != b.size() || a.edges.size() != b.edges.size()) return false;
  const auto colour = refine(a, b);
  {
    std::map<std::uint32_t, long> balance;
    for (std::size_t v = 0; v < n; ++v) {
      ++balance[colour[v]];
      --balance[colour[n + v]];
    }
    for (const auto& [c, k] : balance) {
      if (k != 0) return false;
    }
  }
  if (colour[0] != colour[n]) return false;

  constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> image(n, kNone);
  std::vector<std::uint8_t> used(n, 0);
  image[0] = 0;
  used[0] = 1;
  if (n == 1) {
    if (mapping) *mapping = image;
    return true;
  }

  // Vertices of a are placed in ball order, so each has an earlier neighbour
  // (one step closer to the centre) whose image anchors the candidates.
  std::vector<std::vector<std::uint32_t>> candidates(n);
  std::vector<std::size_t> cursor(n, 0);
  auto build = [&](std::uint32_t v) {
    auto& c = candidates[v];
    c.clear();
    cursor[v] = 0;
    std::uint32_t anchor = kNone;
    std::size_t mapped_nbrs = 0;
    for (auto u : a.adjacency[v]) {
      if (u < v) {
        if (anchor == kNone) anchor = u;
        ++mapped_nbrs;
      }
    }
    for (auto w : b.adjacency[image[anchor]]) {
      if (used[w] || colour[n + w] != colour[v]) continue;
      std::size_t w_mapped = 0;
      for (auto x : b.adjacency[w]) w_mapped += used[x];
      if (w_mapped != mapped_nbrs) continue;
      bool ok = true;
      for (auto u : a.adjacency[v]) {
        if (u < v && !adjacent(b, image[u], w)) {
          ok = false;
          break;
        }
      }
      if (ok) c.push_back(w);
    }
  };

  std::uint64_t steps = 0;
  std::uint32_t v = 1;
  build(v);
  for (;;) {
    if (cursor[v] < candidates[v].size()) {
      if (++steps > max_nodes) {
        throw BudgetExceeded("ball isomorphism search exceeded " + std::to_string(max_nodes) + " steps",
                             steps);
      }
      if (image[v] != kNone) used[image[v]] = 0;
      const auto w = candidates[v][cursor[v]++];
      image[v] = w;
      used[w] = 1;
      if (v + 1 == n) {
        if (mapping) *mapping = image;
        return true;
      }
      ++v;
      build(v);
    } else {
      if (image[v] != kNone) {
        used[image[v]] = 0;
        image[v] = kNone;
      }
      if (--v == 0) return false;
    }
  }
}

BallIsoResult ball_iso(const GraphOracle& a, const GraphOracle& b, int k, std::size_t max_vertices) {
  const Ball ba = ball(a, k, max_vertices);
  const Ball bb = ball(b, k, max_vertices);
  BallIsoResult out;
  std::vector<std::uint32_t> map;
  out.isomorphic = rooted_isomorphic(ba, bb, &map);
  if (out.isomorphic) {
    for (std::size_t i = 0; i < ba.size(); ++i) out.witness.emplace_back(ba.vertices[i], bb.vertices[map[i]]);
  }
  return out;
}

std::string IsoRadiusResult::describe() const {
  if (budget_hit) return "K >= " + std::to_string(K) + " (budget hit at radius " + std::to_string(K + 1) + ")";
  if (reached_bound) return "K >= " + std::to_string(K) + " (bound)";
  return "K = " + std::to_string(K);
}

IsoRadiusResult iso_radius(const GraphOracle& a, const GraphOracle& b, int bound, std::size_t max_vertices) {
  if (bound < 0) throw InputError("iso_radius needs bound >= 0");
  IsoRadiusResult out;
  for (int k = 0; k <= bound; ++k) {
    BallIsoResult r;
    try {
      r = ball_iso(a, b, k, max_vertices);
    } catch (const BudgetExceeded&) {
      out.budget_hit = true;
      return out;
    }
    out.verdicts.push_back(r.isomorphic);
    if (!r.isomorphic) return out;
    out.K = k;
    out.witness = std::move(r.witness);
  }
  out.reached_bound = true;
  return out;
}

std::string table_digest(const CountTable& sigma, const CountTable& bridges) {
  std::uint64_t hash = 1469598103934665603ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      hash ^= c;
      hash *= 1099511628211ULL;
    }
  };
  const int n_max = std::max(sigma.n_max(), bridges.n_max());
  for (int n = 0; n <= n_max; ++n) {
    feed(std::to_string(n) + ",");
    feed(n <= sigma.n_max() ? to_string(sigma.counts[n]) : "");
    feed(",");
    feed(n <= bridges.n_max() ? to_string(bridges.counts[n]) : "");
    feed("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::size_t ScanReport::total_discrepancies() const {
  std::size_t total = 0;
  for (const auto& r : records) total += r.discrepancies.size();
  return total;
}

RankPrecondition rank_precondition(const std::string& presentation) {
  const Presentation p = presentation_preset(presentation);
  RankPrecondition out;
  out.presentation = presentation;
  out.rank = rank_exact(coefficient_matrix(p));
  out.generators = p.generators().size();
  out.satisfied = out.rank + 1 < out.generators;
  return out;
}

ScanReport locality_scan(const std::string& base_model, const std::string& family, int n_max,
                         const std::vector<long>& m_list, const EnumerationOptions& opt) {
  std::string prefix;
  if (family == "cylinder" || family == "cylinder_zd") {
    prefix = "cylinder";
  } else if (family == "ladder" || family == "ladder_dihedral") {
    prefix = "ladder";
  } else {
    throw InputError("unknown family '" + family + "' (cylinder or ladder)");
  }
  if (m_list.empty()) throw InputError("empty m list");

  ScanReport rep;
  rep.base_model = base_model;
  rep.family = prefix;
  rep.n_max = n_max;

  EnumerationOptions eo = opt;
  eo.n_max = n_max;
  const auto base = model(base_model);
  const auto base_h = named_height(*base, base_model, "default");
  rep.base_sigma = count_saws(*base, eo);
  rep.base_bridges = count_bridges(*base, base_h, eo);
  rep.base_bounds = mu_bounds(rep.base_sigma, rep.base_bridges);
  rep.base_d = compute_d(*base, base_h, 2);
  rep.base_r = compute_r(*base, base_h, base->orbit_representatives(), 8);
  if (auto p = presentation_for_model(base_model)) rep.precondition = rank_precondition(*p);

  for (long m : m_list) {
    ScanRecord rec;
    rec.m = m;
    rec.model = prefix + std::to_string(m);
    const auto member = model(rec.model);
    const auto h = named_height(*member, rec.model, "default");
    rec.iso = iso_radius(*base, *member, n_max, opt.max_vertices);
    rec.sigma = count_saws(*member, eo);
    rec.bridges = count_bridges(*member, h, eo);
    rec.table_digest = table_digest(rec.sigma, rec.bridges);
    rec.bounds = mu_bounds(rec.sigma, rec.bridges);
    rec.d = compute_d(*member, h, 2);
    rec.r = compute_r(*member, h, member->orbit_representatives(), 8);

    const int common = std::min({rec.sigma.n_max(), rec.bridges.n_max(), rep.base_sigma.n_max(),
                                 rep.base_bridges.n_max()});
    bool agreeing = true;
    for (int n = 0; n <= common; ++n) {
      const bool same = rec.sigma.counts[n] == rep.base_sigma.counts[n] &&
                        rec.bridges.counts[n] == rep.base_bridges.counts[n];
      if (same && agreeing) rec.agree_up_to = n;
      if (!same) {
        agreeing = false;
        if (n <= rec.iso.K) rec.discrepancies.push_back(n);
      }
    }
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace sawlab
