#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sawlab/graph.hpp"

namespace sawlab {

using Shift = std::vector<std::int64_t>;

/// Directed quotient edge: (from, x) ~ (to, x + shift) in the cover.
struct VoltageEdge {
  std::size_t from = 0;  // 0-based orbit index
  std::size_t to = 0;
  Shift shift;
  std::string label;  // optional generator symbol, "" when unlabelled
};

/// A finite quotient multigraph with Z^d voltages. The cover has vertices
/// (o, x) in {0..M-1} x Z^d, with the translations x -> x + t acting freely.
class PeriodicGraph {
 public:
  /// Edge list need not be closed under reversal; closure is applied here and
  /// duplicates are collapsed. Throws InputError on loops, bad orbit indices,
  /// wrong shift lengths, or a disconnected cover.
  /// Every directed edge must carry a label from label_alphabet when the
  /// alphabet is non-empty; reversed edges need their own label in that case.
  PeriodicGraph(std::size_t orbits, std::size_t dim, std::vector<VoltageEdge> edges,
                std::vector<std::string> label_alphabet = {});

  /// JSON document {"orbits": M, "dim": d, "edges": [[o1, o2, [t...], label?, reverse_label?]],
  /// "labels": [...]?} with 1-based orbit indices. A single label is reused for
  /// the reversed edge.
  static PeriodicGraph parse(std::string_view json_text);
  std::string to_json() const;

  std::size_t orbit_count() const { return orbits_; }
  std::size_t dim() const { return dim_; }

  /// All directed edges (closed under reversal), sorted.
  const std::vector<VoltageEdge>& edges() const { return edges_; }
  /// Indices into edges() leaving orbit o, in sorted order.
  const std::vector<std::size_t>& out_edges(std::size_t o) const { return out_[o]; }
  std::size_t degree(std::size_t o) const { return out_[o].size(); }
  bool labelled() const { return !alphabet_.empty(); }
  const std::vector<std::string>& label_alphabet() const { return alphabet_; }

 private:
  std::size_t orbits_;
  std::size_t dim_;
  std::vector<VoltageEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::string> alphabet_;
};

/// Cover vertex (o, x) as a Vertex {o, x_1, ..., x_d}.
Vertex cover_vertex(const PeriodicGraph& pg, std::size_t orbit, const Shift& x);

/// The covering graph as an oracle. H is the translation group; its orbits are
/// the quotient vertices.
class PeriodicCover : public GraphOracle {
 public:
  PeriodicCover(std::string name, PeriodicGraph pg);

  std::string name() const override { return name_; }
  Vertex root() const override;
  void neighbors(const Vertex& v, std::vector<Arc>& out) const override;
  const std::vector<std::string>& labels() const override { return labels_; }
  std::size_t orbit_count() const override { return pg_.orbit_count(); }
  std::size_t orbit_of(const Vertex& v) const override { return static_cast<std::size_t>(v.at(0)); }
  std::vector<Vertex> orbit_representatives() const override;
  std::vector<Symmetry> symmetries() const override;

  const PeriodicGraph& periodic() const { return pg_; }
  /// Label index of each directed quotient edge.
  int edge_label(std::size_t edge_index) const { return edge_labels_[edge_index]; }

 private:
  std::string name_;
  PeriodicGraph pg_;
  std::vector<std::string> labels_;
  std::vector<int> edge_labels_;
};

}  // namespace sawlab
