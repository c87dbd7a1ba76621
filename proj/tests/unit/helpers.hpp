#pragma once

// Test-side generators and naive reference implementations. The reference
// code deliberately avoids the library's indexed lookups: actions are
// evaluated by scanning raw edge lists, so the two routes stay independent.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "freechain/labeled_graph.hpp"
#include "freechain/words.hpp"

namespace testutil {

using freechain::Alphabet;
using freechain::LabeledEdge;
using freechain::Letter;
using freechain::VertexId;
using freechain::Word;

inline Word random_reduced_word(std::mt19937& rng, const Alphabet& ab,
                                int max_len, int min_len = 0) {
  std::uniform_int_distribution<int> len_dist(min_len, max_len);
  int len = len_dist(rng);
  std::vector<Letter> letters;
  std::uniform_int_distribution<int> ord_dist(0, 2 * ab.rank() - 1);
  while (static_cast<int>(letters.size()) < len) {
    Letter l = freechain::letter_from_ord(ord_dist(rng), ab);
    if (!letters.empty() && l == letters.back().inverse()) continue;
    letters.push_back(l);
  }
  return Word::reduced(letters);
}

// Random graph satisfying the label axioms: per label, a partial injection
// sampled by restricting a random permutation to a random subset.
inline std::vector<LabeledEdge> random_valid_edges(std::mt19937& rng,
                                                   VertexId vertices, int rank) {
  std::vector<LabeledEdge> edges;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int label = 0; label < rank; ++label) {
    std::vector<VertexId> perm(vertices);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (VertexId v = 0; v < vertices; ++v) {
      if (coin(rng)) {
        edges.push_back({v, perm[v], static_cast<std::uint16_t>(label)});
      }
    }
  }
  return edges;
}

// f_x by direct edge-list scanning, following the component-shape rule.
inline VertexId naive_letter_image(std::span<const LabeledEdge> edges,
                                   VertexId vertex_count, VertexId v, Letter l) {
  auto out_of = [&](VertexId u) -> std::optional<VertexId> {
    for (const LabeledEdge& e : edges) {
      if (e.label == l.gen && e.source == u) return e.target;
    }
    return std::nullopt;
  };
  auto in_of = [&](VertexId u) -> std::optional<VertexId> {
    for (const LabeledEdge& e : edges) {
      if (e.label == l.gen && e.target == u) return e.source;
    }
    return std::nullopt;
  };
  (void)vertex_count;
  if (!l.inverted) {
    if (auto t = out_of(v)) return *t;
    if (!in_of(v)) return v;
    VertexId first = v;
    while (auto s = in_of(first)) first = *s;
    return first;
  }
  if (auto s = in_of(v)) return *s;
  if (!out_of(v)) return v;
  VertexId last = v;
  while (auto t = out_of(last)) last = *t;
  return last;
}

inline VertexId naive_word_image(std::span<const LabeledEdge> edges,
                                 VertexId vertex_count, VertexId v,
                                 const Word& w) {
  for (Letter l : w) v = naive_letter_image(edges, vertex_count, v, l);
  return v;
}

// Brute-force conjugacy: u ~ v iff g u g^-1 = v for some |g| <= bound.
inline bool naive_conjugate(const Alphabet& ab, const Word& u, const Word& v,
                            int bound) {
  bool found = false;
  for (int len = 0; len <= bound && !found; ++len) {
    freechain::for_each_reduced_word(ab, len, [&](const Word& g) {
      if (found) return;
      if (multiply(multiply(g, u), invert(g)) == v) found = true;
    });
  }
  return found;
}

}  // namespace testutil
