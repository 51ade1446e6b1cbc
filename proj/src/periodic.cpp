#include "sawlab/periodic.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include <json.hpp>

#include "sawlab/errors.hpp"
#include "sawlab/exact.hpp"

namespace sawlab {

namespace {

Shift negate(const Shift& t) {
  Shift out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = -t[i];
  return out;
}

bool is_zero(const Shift& t) {
  return std::all_of(t.begin(), t.end(), [](auto x) { return x == 0; });
}

// True iff the integer vectors generate all of Z^d (triangularize by
// Euclidean row operations; index = |product of pivots|).
bool generates_full_lattice(std::vector<std::vector<Integer>> rows, std::size_t dim) {
  std::size_t top = 0;
  Integer index = 1;
  for (std::size_t col = 0; col < dim; ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])) best = r;
      }
      if (best == rows.size()) return false;  // rank deficient
      std::swap(rows[top], rows[best]);
      bool reduced = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
        for (std::size_t c = col; c < dim; ++c) rows[r][c] -= q * rows[top][c];
        if (rows[r][col] != 0) reduced = false;
      }
      if (reduced) break;
    }
    index *= abs(rows[top][col]);
    ++top;
  }
  return index == 1;
}

}  // namespace

PeriodicGraph::PeriodicGraph(std::size_t orbits, std::size_t dim, std::vector<VoltageEdge> edges,
                             std::vector<std::string> label_alphabet)
    : orbits_(orbits), dim_(dim), alphabet_(std::move(label_alphabet)) {
  if (orbits_ == 0) throw InputError("periodic graph needs at least one orbit");
  if (dim_ == 0) throw InputError("periodic graph dimension must be positive");

  using Key = std::tuple<std::size_t, std::size_t, Shift>;
  std::map<Key, std::string> directed;
  auto insert = [&](const VoltageEdge& e, bool explicit_edge) {
    Key key{e.from, e.to, e.shift};
    auto [it, fresh] = directed.emplace(key, e.label);
    if (!fresh && it->second != e.label) {
      if (explicit_edge && !it->second.empty() && !e.label.empty()) {
        throw InputError("conflicting labels on a repeated voltage edge");
      }
      if (explicit_edge) it->second = e.label;
    }
  };
  for (const auto& e : edges) {
    if (e.from >= orbits_ || e.to >= orbits_) throw InputError("voltage edge orbit out of range");
    if (e.shift.size() != dim_) throw InputError("voltage edge shift has wrong dimension");
    if (e.from == e.to && is_zero(e.shift)) throw InputError("voltage edge is a loop");
    insert(e, true);
  }
  for (const auto& e : edges) {
    Key rev{e.to, e.from, negate(e.shift)};
    if (!directed.contains(rev)) directed.emplace(rev, e.label);
  }

  for (auto& [key, label] : directed) {
    auto& [from, to, shift] = key;
    if (!alphabet_.empty() &&
        std::find(alphabet_.begin(), alphabet_.end(), label) == alphabet_.end()) {
      throw InputError("voltage edge label '" + label + "' is not in the label alphabet");
    }
    edges_.push_back(VoltageEdge{from, to, shift, label});
  }
  out_.assign(orbits_, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) out_[edges_[i].from].push_back(i);

  // Connectivity of the cover: connected quotient, and the voltages of the
  // fundamental cycles generate Z^d.
  std::vector<std::optional<std::vector<Integer>>> potential(orbits_);
  potential[0] = std::vector<Integer>(dim_, 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const auto o = queue.front();
    queue.pop_front();
    for (auto i : out_[o]) {
      const auto& e = edges_[i];
      if (potential[e.to]) continue;
      std::vector<Integer> p = *potential[o];
      for (std::size_t c = 0; c < dim_; ++c) p[c] += Integer(static_cast<long>(e.shift[c]));
      potential[e.to] = std::move(p);
      queue.push_back(e.to);
    }
  }
  for (const auto& p : potential) {
    if (!p) throw InputError("periodic graph quotient is disconnected");
  }
  std::vector<std::vector<Integer>> cycles;
  for (const auto& e : edges_) {
    std::vector<Integer> v(dim_);
    for (std::size_t c = 0; c < dim_; ++c) {
      v[c] = (*potential[e.from])[c] + Integer(static_cast<long>(e.shift[c])) - (*potential[e.to])[c];
    }
    if (std::any_of(v.begin(), v.end(), [](const Integer& x) { return x != 0; })) {
      cycles.push_back(std::move(v));
    }
  }
  if (!generates_full_lattice(std::move(cycles), dim_)) {
    throw InputError("periodic graph cover is disconnected (cycle voltages do not generate Z^d)");
  }
}

PeriodicGraph PeriodicGraph::parse(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("periodic graph document is not valid JSON: ") + e.what());
  }
  try {
    const auto orbits = doc.at("orbits").get<std::int64_t>();
    const auto dim = doc.at("dim").get<std::int64_t>();
    if (orbits <= 0 || dim <= 0) throw InputError("orbits and dim must be positive");
    std::vector<std::string> alphabet;
    if (doc.contains("labels")) alphabet = doc.at("labels").get<std::vector<std::string>>();

    std::vector<VoltageEdge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() < 3 || e.size() > 5) throw InputError("malformed voltage edge");
      const auto o1 = e[0].get<std::int64_t>();
      const auto o2 = e[1].get<std::int64_t>();
      if (o1 < 1 || o2 < 1 || o1 > orbits || o2 > orbits) {
        throw InputError("voltage edge orbit index out of range (orbits are 1-based)");
      }
      VoltageEdge fwd{static_cast<std::size_t>(o1 - 1), static_cast<std::size_t>(o2 - 1),
                      e[2].get<Shift>(), e.size() > 3 ? e[3].get<std::string>() : ""};
      edges.push_back(fwd);
      if (e.size() == 5) {
        edges.push_back(VoltageEdge{fwd.to, fwd.from, negate(fwd.shift), e[4].get<std::string>()});
      }
    }
    if (alphabet.empty()) {
      for (const auto& e : edges) {
        if (!e.label.empty() && std::find(alphabet.begin(), alphabet.end(), e.label) == alphabet.end()) {
          alphabet.push_back(e.label);
        }
      }
    }
    return PeriodicGraph(static_cast<std::size_t>(orbits), static_cast<std::size_t>(dim),
                         std::move(edges), std::move(alphabet));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed periodic graph document: ") + e.what());
  }
}

std::string PeriodicGraph::to_json() const {
  nlohmann::ordered_json doc;
  doc["orbits"] = orbits_;
  doc["dim"] = dim_;
  if (!alphabet_.empty()) doc["labels"] = alphabet_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : edges_) {
    nlohmann::ordered_json row = {e.from + 1, e.to + 1, e.shift};
    if (!e.label.empty()) row.push_back(e.label);
    arr.push_back(row);
  }
  doc["edges"] = arr;
  return doc.dump();
}

Vertex cover_vertex(const PeriodicGraph& pg, std::size_t orbit, const Shift& x) {
  if (orbit >= pg.orbit_count()) throw InputError("orbit index out of range");
  if (x.size() != pg.dim()) throw InputError("translation has wrong dimension");
  Vertex v;
  v.reserve(x.size() + 1);
  v.push_back(static_cast<std::int64_t>(orbit));
  v.insert(v.end(), x.begin(), x.end());
  return v;
}

PeriodicCover::PeriodicCover(std::string name, PeriodicGraph pg)
    : name_(std::move(name)), pg_(std::move(pg)) {
  if (pg_.labelled()) {
    labels_ = pg_.label_alphabet();
    for (const auto& e : pg_.edges()) {
      auto it = std::find(labels_.begin(), labels_.end(), e.label);
      edge_labels_.push_back(static_cast<int>(it - labels_.begin()));
    }
  } else {
    for (std::size_t i = 0; i < pg_.edges().size(); ++i) {
      labels_.push_back("e" + std::to_string(i));
      edge_labels_.push_back(static_cast<int>(i));
    }
  }
}

Vertex PeriodicCover::root() const { return cover_vertex(pg_, 0, Shift(pg_.dim(), 0)); }

void PeriodicCover::neighbors(const Vertex& v, std::vector<Arc>& out) const {
  const auto o = static_cast<std::size_t>(v.at(0));
  for (auto i : pg_.out_edges(o)) {
    const auto& e = pg_.edges()[i];
    Vertex w(v.size());
    w[0] = static_cast<std::int64_t>(e.to);
    for (std::size_t c = 0; c < pg_.dim(); ++c) w[c + 1] = v[c + 1] + e.shift[c];
    out.push_back(Arc{std::move(w), edge_labels_[i]});
  }
}

std::vector<Vertex> PeriodicCover::orbit_representatives() const {
  std::vector<Vertex> reps;
  for (std::size_t o = 0; o < pg_.orbit_count(); ++o) reps.push_back(cover_vertex(pg_, o, Shift(pg_.dim(), 0)));
  return reps;
}

std::vector<Symmetry> PeriodicCover::symmetries() const {
  std::vector<Symmetry> out;
  for (std::size_t c = 0; c < pg_.dim(); ++c) {
    out.push_back([c](const Vertex& v) {
      Vertex w = v;
      w[c + 1] += 1;
      return w;
    });
  }
  return out;
}

}  // namespace sawlab
