#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sawlab/graph.hpp"
#include "sawlab/saw.hpp"

namespace sawlab {

inline constexpr std::uint64_t kDefaultIsoNodes = 50'000'000;

/// Rooted isomorphism of two balls (centre to centre). On success `mapping`
/// (if given) receives, for each vertex index of a, its image in b.
/// Throws BudgetExceeded after max_nodes backtracking steps.
bool rooted_isomorphic(const Ball& a, const Ball& b, std::vector<std::uint32_t>* mapping = nullptr,
                       std::uint64_t max_nodes = kDefaultIsoNodes);

struct BallIsoResult {
  bool isomorphic = false;
  std::vector<std::pair<Vertex, Vertex>> witness;  // ball order of the first graph
};

BallIsoResult ball_iso(const GraphOracle& a, const GraphOracle& b, int k,
                       std::size_t max_vertices = kDefaultMaxVertices);

struct IsoRadiusResult {
  int K = 0;                 // largest isomorphic radius found
  bool reached_bound = false;  // K >= bound: every tested radius matched
  bool budget_hit = false;     // K is then only a lower bound
  std::vector<bool> verdicts;  // radius 0, 1, ... as tested
  std::vector<std::pair<Vertex, Vertex>> witness;  // mapping at radius K

  std::string describe() const;
};

/// K(G, G') up to `bound`: increases k until the balls differ.
IsoRadiusResult iso_radius(const GraphOracle& a, const GraphOracle& b, int bound,
                           std::size_t max_vertices = kDefaultMaxVertices);

struct RankPrecondition {
  std::string presentation;
  std::size_t rank = 0;
  std::size_t generators = 0;
  bool satisfied = false;  // rank < |S| - 1
};

struct ScanRecord {
  long m = 0;
  std::string model;
  IsoRadiusResult iso;
  CountTable sigma;
  CountTable bridges;
  std::string table_digest;
  int agree_up_to = -1;          // counts equal for all n <= agree_up_to
  std::vector<int> discrepancies;  // n <= K where counts differ (must be empty)
  BoundsReport bounds;
  std::int64_t d = 0;
  std::optional<int> r;
};

struct ScanReport {
  std::string base_model;
  std::string family;
  int n_max = 0;
  CountTable base_sigma;
  CountTable base_bridges;
  BoundsReport base_bounds;
  std::optional<RankPrecondition> precondition;
  std::int64_t base_d = 0;
  std::optional<int> base_r;
  std::vector<ScanRecord> records;  // in m-list order

  std::size_t total_discrepancies() const;
};

/// FNV-1a digest (hex) of the sigma and bridge columns.
std::string table_digest(const CountTable& sigma, const CountTable& bridges);

/// Compares the base model with family members `family`<m> (cylinder or
/// ladder) for each m: K, exact sigma and bridge tables (bridges for the
/// "x" height), agreement for n <= K, and bound gaps.
ScanReport locality_scan(const std::string& base_model, const std::string& family, int n_max,
                         const std::vector<long>& m_list, const EnumerationOptions& opt);

/// Rank condition rank(C) < |S| - 1 for a presentation preset.
RankPrecondition rank_precondition(const std::string& presentation);

}  // namespace sawlab
