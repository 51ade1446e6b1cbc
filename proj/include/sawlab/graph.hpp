#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sawlab {

/// Normal-form vertex coordinates. Two vectors are equal iff the vertices are.
using Vertex = std::vector<std::int64_t>;

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept;
};

template <class T>
using VertexMap = std::unordered_map<Vertex, T, VertexHash>;

/// Byte-string form of a vertex key (little-endian 64-bit words).
std::string canonical_key(const Vertex& v);

std::string format_vertex(const Vertex& v);

struct Arc {
  Vertex to;
  int label;  // index into GraphOracle::labels()
};

/// An automorphism of the graph, used as a generator of the acting subgroup H.
using Symmetry = std::function<Vertex(const Vertex&)>;

/// An infinite, locally finite, connected graph given by local expansion.
/// Implementations are immutable after construction; all queries are const
/// and may run concurrently.
class GraphOracle {
 public:
  virtual ~GraphOracle() = default;

  virtual std::string name() const = 0;
  virtual Vertex root() const = 0;

  /// Appends the neighbours of v to out, in a fixed label order.
  virtual void neighbors(const Vertex& v, std::vector<Arc>& out) const = 0;

  /// Edge label alphabet. For Cayley models these are the generators of the
  /// matching presentation, in the same order.
  virtual const std::vector<std::string>& labels() const = 0;

  /// Orbits of the acting subgroup H.
  virtual std::size_t orbit_count() const { return 1; }
  virtual std::size_t orbit_of(const Vertex&) const { return 0; }
  virtual std::vector<Vertex> orbit_representatives() const { return {root()}; }

  /// Generators of H, for difference-invariance checks.
  virtual std::vector<Symmetry> symmetries() const { return {}; }

  /// Word of labels leading from the root to v, when the model can spell it.
  virtual std::optional<std::vector<int>> spell(const Vertex&) const { return std::nullopt; }

  std::vector<Arc> neighbors(const Vertex& v) const {
    std::vector<Arc> out;
    neighbors(v, out);
    return out;
  }
};

using OraclePtr = std::shared_ptr<const GraphOracle>;

inline constexpr std::size_t kDefaultMaxVertices = 4'000'000;

/// The subgraph induced by the vertices within distance `radius` of the centre.
/// Vertices are sorted by (distance, canonical key); index 0 is the centre.
struct Ball {
  Vertex center;
  int radius = 0;
  std::vector<Vertex> vertices;
  std::vector<int> distance;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j, each once
  std::vector<std::vector<std::uint32_t>> adjacency;          // sorted

  std::size_t size() const { return vertices.size(); }
  VertexMap<std::uint32_t> index;

  std::size_t index_of(const Vertex& v) const;  // npos if absent
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// BFS ball. Throws BudgetExceeded when more than max_vertices are discovered.
Ball ball(const GraphOracle& g, int radius, std::size_t max_vertices = kDefaultMaxVertices,
          const Vertex* center = nullptr);

}  // namespace sawlab
