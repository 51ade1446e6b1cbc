#include "sawlab/saw.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>

#include "sawlab/errors.hpp"

namespace sawlab {

namespace {

struct Budget {
  std::uint64_t limit;
  std::atomic<std::uint64_t> used{0};
  std::atomic<bool> tripped{false};

  // Returns false once the shared budget is exhausted.
  bool charge(std::uint64_t nodes) {
    const auto total = used.fetch_add(nodes, std::memory_order_relaxed) + nodes;
    if (total > limit) tripped.store(true, std::memory_order_relaxed);
    return !tripped.load(std::memory_order_relaxed);
  }
};

// Enumeration over an explicit ball. In bridge mode `height` is non-empty and
// only walks staying strictly above the start are followed.
class Enumerator {
 public:
  Enumerator(const Ball& b, std::vector<std::int64_t> height, int n_max, Budget& budget)
      : ball_(b), height_(std::move(height)), n_max_(n_max), budget_(budget) {}

  struct Task {
    std::vector<std::uint32_t> path;  // prefix including the start
    std::int64_t running_max;
  };

  // Prefixes of length `depth` (or shorter dead ends are counted directly).
  std::vector<Task> split(int depth, std::vector<std::uint64_t>& counts) {
    std::vector<Task> tasks;
    std::vector<std::uint8_t> visited(ball_.size(), 0);
    Task t{{0}, bridges() ? height_[0] : 0};
    visited[0] = 1;
    expand_prefix(t, depth, visited, counts, tasks);
    return tasks;
  }

  // Counts walks extending the task prefix, into counts[len].
  bool run(const Task& t, std::vector<std::uint64_t>& counts) {
    std::vector<std::uint8_t> visited(ball_.size(), 0);
    for (auto v : t.path) visited[v] = 1;
    std::uint64_t pending = 0;
    const bool ok = dfs(t.path.back(), static_cast<int>(t.path.size()) - 1, t.running_max, visited, counts, pending);
    return ok && budget_.charge(pending);
  }

 private:
  bool bridges() const { return !height_.empty(); }

  void expand_prefix(Task& t, int depth, std::vector<std::uint8_t>& visited,
                     std::vector<std::uint64_t>& counts, std::vector<Task>& tasks) {
    const int len = static_cast<int>(t.path.size()) - 1;
    if (len == depth || len == n_max_) {
      tasks.push_back(t);
      return;
    }
    if (!bridges() || height_[t.path.back()] == t.running_max) counts[len] += 1;
    for (auto w : ball_.adjacency[t.path.back()]) {
      if (visited[w]) continue;
      std::int64_t mx = t.running_max;
      if (bridges()) {
        if (height_[w] <= height_[0]) continue;
        mx = std::max(mx, height_[w]);
      }
      visited[w] = 1;
      t.path.push_back(w);
      const auto saved = t.running_max;
      t.running_max = mx;
      expand_prefix(t, depth, visited, counts, tasks);
      t.running_max = saved;
      t.path.pop_back();
      visited[w] = 0;
    }
  }

  bool dfs(std::uint32_t v, int len, std::int64_t running_max, std::vector<std::uint8_t>& visited,
           std::vector<std::uint64_t>& counts, std::uint64_t& pending) {
    if (!bridges() || height_[v] == running_max) counts[len] += 1;
    if (++pending >= 1 << 16) {
      if (!budget_.charge(pending)) return false;
      pending = 0;
    }
    if (len == n_max_) return true;
    for (auto w : ball_.adjacency[v]) {
      if (visited[w]) continue;
      std::int64_t mx = running_max;
      if (bridges()) {
        if (height_[w] <= height_[0]) continue;
        mx = std::max(mx, height_[w]);
      }
      visited[w] = 1;
      const bool ok = dfs(w, len + 1, mx, visited, counts, pending);
      visited[w] = 0;
      if (!ok) return false;
    }
    return true;
  }

  const Ball& ball_;
  std::vector<std::int64_t> height_;
  int n_max_;
  Budget& budget_;
};

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// One attempt at a fixed n_max. Returns nullopt if the node budget trips.
std::optional<std::vector<Integer>> enumerate_once(const GraphOracle& g, const HeightFunction* h,
                                                   const EnumerationOptions& opt, int n_max,
                                                   Budget& budget) {
  const Vertex start = opt.start ? *opt.start : g.root();
  const Ball b = ball(g, n_max, opt.max_vertices, &start);

  std::vector<std::int64_t> height;
  if (h) {
    height.reserve(b.size());
    for (const auto& v : b.vertices) height.push_back((*h)(v));
  }
  Enumerator en(b, std::move(height), n_max, budget);

  std::vector<std::uint64_t> head(n_max + 1, 0);
  const auto tasks = en.split(std::max(0, opt.prefix_depth), head);
  std::vector<std::vector<std::uint64_t>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size() || budget.tripped.load()) return;
      results[i].assign(n_max + 1, 0);
      en.run(tasks[i], results[i]);
    }
  };
  const unsigned n_threads = std::min<unsigned>(resolve_threads(opt.threads),
                                                static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (budget.tripped.load()) return std::nullopt;

  // Summation in task order keeps the result independent of scheduling.
  std::vector<Integer> out(n_max + 1);
  for (int n = 0; n <= n_max; ++n) out[n] = Integer(static_cast<unsigned long>(head[n]));
  for (const auto& r : results) {
    for (int n = 0; n <= n_max; ++n) out[n] += Integer(static_cast<unsigned long>(r[n]));
  }
  return out;
}

CountTable enumerate(const GraphOracle& g, const HeightFunction* h, const EnumerationOptions& opt) {
  if (opt.n_max < 0) throw InputError("n_max must be non-negative");
  CountTable t;
  t.model = g.name();
  t.height = h ? h->name : "";
  t.requested_n_max = opt.n_max;
  Budget budget{effective_node_budget(opt)};
  for (int n = opt.n_max; n >= 0; --n) {
    budget.used = 0;
    budget.tripped = false;
    std::optional<std::vector<Integer>> counts;
    try {
      counts = enumerate_once(g, h, opt, n, budget);
    } catch (const BudgetExceeded& e) {
      t.high_water = std::max<std::uint64_t>(t.high_water, e.high_water());
    }
    if (!counts) {
      t.partial = true;
      t.high_water = std::max<std::uint64_t>(t.high_water, budget.used.load());
      continue;
    }
    t.counts = std::move(*counts);
    return t;
  }
  throw BudgetExceeded("budget too small for any enumeration on " + g.name(), t.high_water);
}

}  // namespace

std::uint64_t effective_node_budget(const EnumerationOptions& opt) {
  if (opt.max_nodes > 0) return opt.max_nodes;
  if (const char* env = std::getenv("SAWLAB_BUDGET")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw InputError("SAWLAB_BUDGET must be a positive integer");
  }
  return kDefaultMaxNodes;
}

CountTable count_saws(const GraphOracle& g, const EnumerationOptions& opt) {
  return enumerate(g, nullptr, opt);
}

CountTable count_bridges(const GraphOracle& g, const HeightFunction& h, const EnumerationOptions& opt) {
  return enumerate(g, &h, opt);
}

MultiplicativityReport check_multiplicativity(const CountTable& t, Multiplicativity kind) {
  MultiplicativityReport rep;
  const int n_max = t.n_max();
  for (int m = 1; m <= n_max; ++m) {
    for (int n = m; m + n <= n_max; ++n) {
      const Integer product = t.counts[m] * t.counts[n];
      const Integer& joined = t.counts[m + n];
      ++rep.pairs_checked;
      if (joined == product) ++rep.equalities;
      const bool bad = kind == Multiplicativity::Sub ? joined > product : joined < product;
      if (bad) rep.violations.push_back({m, n});
    }
  }
  return rep;
}

std::optional<int> doubling_violation(const CountTable& bridges) {
  const int n_max = bridges.n_max();
  for (int n = 1; 2 * n <= n_max; ++n) {
    if (bridges.counts[2 * n] < bridges.counts[n] * bridges.counts[n]) return n;
  }
  return std::nullopt;
}

std::string format_scaled(const Integer& v, unsigned digits) {
  const bool negative = v < 0;
  std::string s = Integer(abs(v)).get_str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, 1, '.');
  }
  return negative ? "-" + s : s;
}

BoundsReport mu_bounds(const CountTable& sigma, const CountTable& bridges, unsigned precision) {
  if (precision < 1) throw InputError("precision must be at least 1");
  const int n_max = std::min(sigma.n_max(), bridges.n_max());
  if (n_max < 1) throw InputError("bounds need counts up to n >= 1");
  BoundsReport rep;
  rep.precision = precision;
  for (int n = 1; n <= n_max; ++n) {
    BoundsRow row;
    row.n = n;
    row.sigma = sigma.counts[n];
    row.bridges = bridges.counts[n];
    row.lower_scaled = scaled_nth_root(row.bridges, static_cast<unsigned>(n), precision, Rounding::Down);
    row.upper_scaled = scaled_nth_root(row.sigma, static_cast<unsigned>(n), precision, Rounding::Up);
    row.lower = format_scaled(row.lower_scaled, precision);
    row.upper = format_scaled(row.upper_scaled, precision);
    rep.rows.push_back(std::move(row));
  }
  const BoundsRow* lo = &rep.rows.front();
  const BoundsRow* up = &rep.rows.front();
  for (const auto& r : rep.rows) {
    if (r.lower_scaled > lo->lower_scaled) lo = &r;
    if (r.upper_scaled < up->upper_scaled) up = &r;
  }
  rep.best_lower_n = lo->n;
  rep.best_upper_n = up->n;
  rep.best_lower = lo->lower;
  rep.best_upper = up->upper;
  rep.gap_scaled = up->upper_scaled - lo->lower_scaled;
  rep.gap = format_scaled(rep.gap_scaled, precision);
  return rep;
}

}  // namespace sawlab
