#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freechain/words.hpp"

namespace freechain {

using VertexId = std::uint32_t;

struct LabeledEdge {
  VertexId source = 0;
  VertexId target = 0;
  std::uint16_t label = 0;  // generator index

  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

struct LabelViolation {
  VertexId vertex = 0;
  std::uint16_t label = 0;
  bool outgoing = false;  // true: two edges with this label leave vertex
};

struct ValidationResult {
  std::optional<LabelViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

/// Checks the two uniqueness axioms: per vertex and label, at most one
/// outgoing and at most one incoming edge. Reports the first offender in
/// edge-list order. Loops and parallel edges with distinct labels are fine.
ValidationResult validate_graph(VertexId vertex_count, int rank,
                                std::span<const LabeledEdge> edges);

/// Finite directed graph with generator-labeled edges satisfying the
/// uniqueness axioms; immutable after construction.
class LabeledGraph {
 public:
  /// Throws std::invalid_argument if validation fails or an edge endpoint
  /// or label is out of range.
  LabeledGraph(VertexId vertex_count, int rank, std::vector<LabeledEdge> edges);

  VertexId vertex_count() const { return vertex_count_; }
  int rank() const { return rank_; }
  std::span<const LabeledEdge> edges() const { return edges_; }

  static constexpr std::int64_t kNone = -1;
  std::int64_t out_edge(int label, VertexId v) const { return out_[label][v]; }
  std::int64_t in_edge(int label, VertexId v) const { return in_[label][v]; }

 private:
  VertexId vertex_count_;
  int rank_;
  std::vector<LabeledEdge> edges_;
  std::vector<std::vector<std::int32_t>> out_;  // [label][vertex] -> target or -1
  std::vector<std::vector<std::int32_t>> in_;   // [label][vertex] -> source or -1
};

struct Permutation {
  std::vector<VertexId> images;

  std::size_t size() const { return images.size(); }
  VertexId apply(VertexId v) const { return images[v]; }
  bool is_bijection() const;
  Permutation inverse() const;
  static Permutation identity(std::size_t n);

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// The bijection f_x: components of the x-labeled subgraph are isolated
/// points (fixed), directed circles (step along the edge), or simple paths
/// (step along the edge; the last vertex wraps to the first).
Permutation label_permutation(const LabeledGraph& g, int label);

/// The action homomorphism: points act on the right, letters apply in word
/// order, inverse letters contribute f_x^-1.
Permutation evaluate_action(const LabeledGraph& g, const Word& w);

/// Image of one vertex under the total action of a single letter.
VertexId point_image(const LabeledGraph& g, VertexId v, Letter l);
VertexId point_image(const LabeledGraph& g, VertexId v, const Word& w);

/// Edge-following per the tracing recursion: a positive letter needs an
/// outgoing edge with that label, an inverse letter an incoming one.
/// Returns nullopt when a required edge is missing; when defined the result
/// equals v0 acted on by the word.
std::optional<VertexId> trace_word(const LabeledGraph& g, VertexId v0,
                                   const Word& w);

/// Layout recipe for the i-th gadget: a b-labeled cycle of prime length
/// glued at the root to a path spelling the representative word.
struct ComponentGraphSpec {
  int index = 0;  // 1-based
  Word word;      // must start with plain a
  std::int64_t prime = 0;
};

/// One gadget graph: vertices 0..p-1 are the cycle y_0..y_{p-1} with the
/// root x = y_0 = z_0 at id 0, and p+j-1 is the path vertex z_j (j >= 1).
class ComponentGraph {
 public:
  ComponentGraph(ComponentGraphSpec spec, const Alphabet& ab);

  const LabeledGraph& graph() const { return graph_; }
  int index() const { return spec_.index; }
  std::int64_t prime() const { return spec_.prime; }
  const Word& word() const { return spec_.word; }
  int path_length() const { return static_cast<int>(spec_.word.size()); }

  VertexId root() const { return 0; }
  VertexId cycle_vertex(std::int64_t j) const;
  VertexId path_vertex(int j) const;

  std::string vertex_name(VertexId v) const;
  std::optional<VertexId> parse_vertex(std::string_view name) const;

 private:
  ComponentGraphSpec spec_;
  LabeledGraph graph_;
};

ComponentGraph build_component_graph(const ComponentGraphSpec& spec,
                                     const Alphabet& ab);

/// Deterministic DOT export: one line per edge ordered by (source, label),
/// with `label="<generator name>"` attributes.
std::string to_dot(const LabeledGraph& g, const Alphabet& ab,
                   const std::function<std::string(VertexId)>& vertex_name,
                   const std::string& graph_name = "G");

}  // namespace freechain
