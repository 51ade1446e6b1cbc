#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sawlab/exact.hpp"
#include "sawlab/graph.hpp"
#include "sawlab/heights.hpp"

namespace sawlab {

/// Exact counts c_0..c_{n_max} of SAWs (or bridges) from one start vertex.
struct CountTable {
  std::string model;
  std::string height;  // empty for plain SAW counts
  std::vector<Integer> counts;
  bool partial = false;            // the requested n_max was cut back by a budget
  int requested_n_max = 0;
  std::uint64_t high_water = 0;    // nodes expanded when the budget tripped

  int n_max() const { return static_cast<int>(counts.size()) - 1; }
};

inline constexpr std::uint64_t kDefaultMaxNodes = 4'000'000'000ULL;

struct EnumerationOptions {
  int n_max = 10;
  unsigned threads = 0;      // 0: hardware concurrency
  int prefix_depth = 3;      // split depth for parallel tasks
  std::uint64_t max_nodes = 0;  // 0: SAWLAB_BUDGET or kDefaultMaxNodes
  std::size_t max_vertices = kDefaultMaxVertices;
  std::optional<Vertex> start;  // defaults to the root
};

/// Node budget after applying the SAWLAB_BUDGET override.
std::uint64_t effective_node_budget(const EnumerationOptions& opt);

/// sigma_n for n <= n_max. When a budget trips, n_max is lowered until the
/// run fits and the table is flagged partial; BudgetExceeded is thrown only
/// if not even n = 0 fits.
CountTable count_saws(const GraphOracle& g, const EnumerationOptions& opt);

/// b_n: SAWs with h(p_0) < h(p_i) <= h(p_n) for 0 < i <= n.
CountTable count_bridges(const GraphOracle& g, const HeightFunction& h, const EnumerationOptions& opt);

enum class Multiplicativity { Sub, Super };

struct MultiplicativityViolation {
  int m;
  int n;
};

struct MultiplicativityReport {
  std::size_t pairs_checked = 0;
  std::size_t equalities = 0;
  std::vector<MultiplicativityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Sub: c_{m+n} <= c_m c_n. Super: c_{m+n} >= c_m c_n. Over 1 <= m <= n, m + n <= n_max.
MultiplicativityReport check_multiplicativity(const CountTable& t, Multiplicativity kind);

/// For every start n, b_n^(1/n) <= b_2n^(1/2n) <= b_4n^(1/4n) ... (exact
/// comparison b_2n >= b_n^2). Returns the first failing n, if any.
std::optional<int> doubling_violation(const CountTable& bridges);

struct BoundsRow {
  int n;
  Integer sigma;
  Integer bridges;
  Integer lower_scaled;  // floor(b_n^(1/n) 10^p)
  Integer upper_scaled;  // ceil(sigma_n^(1/n) 10^p)
  std::string lower;
  std::string upper;
};

struct BoundsReport {
  unsigned precision = 10;
  std::vector<BoundsRow> rows;  // n = 1..min(n_max)
  int best_lower_n = 0;         // argmax of the lower roots
  int best_upper_n = 0;         // argmin of the upper roots
  std::string best_lower;
  std::string best_upper;
  Integer gap_scaled;           // best upper minus best lower, scaled by 10^p
  std::string gap;
};

/// Rigorous bounds b_n^(1/n) <= mu <= sigma_n^(1/n) from exact integer roots.
/// Lower values round down, upper values round up.
BoundsReport mu_bounds(const CountTable& sigma, const CountTable& bridges, unsigned precision = 10);

/// Decimal rendering of v / 10^digits.
std::string format_scaled(const Integer& v, unsigned digits);

}  // namespace sawlab
