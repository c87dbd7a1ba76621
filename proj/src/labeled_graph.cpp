#include "freechain/labeled_graph.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace freechain {

ValidationResult validate_graph(VertexId vertex_count, int rank,
                                std::span<const LabeledEdge> edges) {
  std::vector<std::vector<bool>> out(rank, std::vector<bool>(vertex_count, false));
  std::vector<std::vector<bool>> in(rank, std::vector<bool>(vertex_count, false));
  for (const LabeledEdge& e : edges) {
    if (out[e.label][e.source])
      return {LabelViolation{e.source, e.label, true}};
    if (in[e.label][e.target])
      return {LabelViolation{e.target, e.label, false}};
    out[e.label][e.source] = true;
    in[e.label][e.target] = true;
  }
  return {};
}

LabeledGraph::LabeledGraph(VertexId vertex_count, int rank,
                           std::vector<LabeledEdge> edges)
    : vertex_count_(vertex_count), rank_(rank), edges_(std::move(edges)) {
  if (vertex_count == 0) throw std::invalid_argument("graph needs a vertex");
  for (const LabeledEdge& e : edges_) {
    if (e.source >= vertex_count_ || e.target >= vertex_count_)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.label >= rank_)
      throw std::invalid_argument("edge label out of range");
  }
  ValidationResult res = validate_graph(vertex_count_, rank_, edges_);
  if (!res.ok()) {
    const LabelViolation& v = *res.violation;
    std::ostringstream msg;
    msg << "label uniqueness violated: vertex " << v.vertex << ", label " << v.label
        << (v.outgoing ? " (outgoing)" : " (incoming)");
    throw std::invalid_argument(msg.str());
  }
  out_.assign(rank_, std::vector<std::int32_t>(vertex_count_, -1));
  in_.assign(rank_, std::vector<std::int32_t>(vertex_count_, -1));
  for (const LabeledEdge& e : edges_) {
    out_[e.label][e.source] = static_cast<std::int32_t>(e.target);
    in_[e.label][e.target] = static_cast<std::int32_t>(e.source);
  }
}

bool Permutation::is_bijection() const {
  std::vector<bool> hit(images.size(), false);
  for (VertexId v : images) {
    if (v >= images.size() || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.images.resize(images.size());
  for (VertexId v = 0; v < images.size(); ++v) inv.images[images[v]] = v;
  return inv;
}

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.images.resize(n);
  for (std::size_t v = 0; v < n; ++v) p.images[v] = static_cast<VertexId>(v);
  return p;
}

Permutation label_permutation(const LabeledGraph& g, int label) {
  if (label < 0 || label >= g.rank()) throw std::invalid_argument("bad label");
  Permutation p = Permutation::identity(g.vertex_count());
  std::vector<VertexId> path_ends;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::int64_t t = g.out_edge(label, v);
    if (t != LabeledGraph::kNone) {
      p.images[v] = static_cast<VertexId>(t);
    } else if (g.in_edge(label, v) != LabeledGraph::kNone) {
      path_ends.push_back(v);  // last point of a path; wraps to the first
    }
  }
  for (VertexId end : path_ends) {
    VertexId first = end;
    while (g.in_edge(label, first) != LabeledGraph::kNone) {
      first = static_cast<VertexId>(g.in_edge(label, first));
    }
    p.images[end] = first;
  }
  return p;
}

Permutation evaluate_action(const LabeledGraph& g, const Word& w) {
  Permutation acc = Permutation::identity(g.vertex_count());
  for (Letter l : w) {
    Permutation step = label_permutation(g, l.gen);
    if (l.inverted) step = step.inverse();
    for (VertexId v = 0; v < acc.size(); ++v) {
      acc.images[v] = step.images[acc.images[v]];
    }
  }
  return acc;
}

VertexId point_image(const LabeledGraph& g, VertexId v, Letter l) {
  if (!l.inverted) {
    std::int64_t t = g.out_edge(l.gen, v);
    if (t != LabeledGraph::kNone) return static_cast<VertexId>(t);
    if (g.in_edge(l.gen, v) == LabeledGraph::kNone) return v;  // isolated
    VertexId first = v;  // last point of a path; wrap
    while (g.in_edge(l.gen, first) != LabeledGraph::kNone) {
      first = static_cast<VertexId>(g.in_edge(l.gen, first));
    }
    return first;
  }
  std::int64_t s = g.in_edge(l.gen, v);
  if (s != LabeledGraph::kNone) return static_cast<VertexId>(s);
  if (g.out_edge(l.gen, v) == LabeledGraph::kNone) return v;
  VertexId last = v;  // first point of a path; inverse wraps to the end
  while (g.out_edge(l.gen, last) != LabeledGraph::kNone) {
    last = static_cast<VertexId>(g.out_edge(l.gen, last));
  }
  return last;
}

VertexId point_image(const LabeledGraph& g, VertexId v, const Word& w) {
  for (Letter l : w) v = point_image(g, v, l);
  return v;
}

std::optional<VertexId> trace_word(const LabeledGraph& g, VertexId v0,
                                   const Word& w) {
  VertexId v = v0;
  for (Letter l : w) {
    std::int64_t next =
        l.inverted ? g.in_edge(l.gen, v) : g.out_edge(l.gen, v);
    if (next == LabeledGraph::kNone) return std::nullopt;
    v = static_cast<VertexId>(next);
  }
  return v;
}

ComponentGraph::ComponentGraph(ComponentGraphSpec spec, const Alphabet& ab)
    : spec_(std::move(spec)),
      graph_([&]() -> LabeledGraph {
        const Word& w = spec_.word;
        std::int64_t p = spec_.prime;
        if (w.empty() || w[0] != Letter{0, false})
          throw std::invalid_argument("component word must start with a");
        if (p < 2) throw std::invalid_argument("component prime must be >= 2");
        std::int64_t k = static_cast<std::int64_t>(w.size());
        if (p + k > std::numeric_limits<std::int32_t>::max())
          throw std::invalid_argument("component graph too large");
        std::vector<LabeledEdge> edges;
        edges.reserve(static_cast<std::size_t>(p + k));
        for (std::int64_t j = 0; j < p; ++j) {
          edges.push_back({static_cast<VertexId>(j),
                           static_cast<VertexId>((j + 1) % p), 1});  // label b
        }
        auto zid = [&](std::int64_t j) {
          return static_cast<VertexId>(j == 0 ? 0 : p + j - 1);
        };
        for (std::int64_t j = 0; j < k; ++j) {
          Letter u = w[static_cast<std::size_t>(j)];
          if (!u.inverted) {
            edges.push_back({zid(j), zid(j + 1), u.gen});
          } else {
            edges.push_back({zid(j + 1), zid(j), u.gen});
          }
        }
        return LabeledGraph(static_cast<VertexId>(p + k), ab.rank(),
                            std::move(edges));
      }()) {}

VertexId ComponentGraph::cycle_vertex(std::int64_t j) const {
  std::int64_t p = spec_.prime;
  return static_cast<VertexId>(((j % p) + p) % p);
}

VertexId ComponentGraph::path_vertex(int j) const {
  if (j < 0 || j > path_length()) throw std::out_of_range("path vertex index");
  return j == 0 ? 0
               : static_cast<VertexId>(spec_.prime + j - 1);
}

std::string ComponentGraph::vertex_name(VertexId v) const {
  std::int64_t p = spec_.prime;
  if (v < p) return "y" + std::to_string(index()) + "_" + std::to_string(v);
  return "z" + std::to_string(index()) + "_" + std::to_string(v - p + 1);
}

std::optional<VertexId> ComponentGraph::parse_vertex(std::string_view name) const {
  auto parse_num = [](std::string_view s) -> std::optional<std::int64_t> {
    if (s.empty()) return std::nullopt;
    std::int64_t n = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      n = n * 10 + (c - '0');
      if (n > std::numeric_limits<std::int32_t>::max()) return std::nullopt;
    }
    return n;
  };
  std::string prefix = "x" + std::to_string(index());
  if (name == prefix) return root();
  auto expect = [&](char kind) -> std::optional<VertexId> {
    std::string head = std::string(1, kind) + std::to_string(index()) + "_";
    if (name.substr(0, head.size()) != head) return std::nullopt;
    auto n = parse_num(name.substr(head.size()));
    if (!n) return std::nullopt;
    if (kind == 'y') {
      if (*n >= spec_.prime) return std::nullopt;
      return static_cast<VertexId>(*n);
    }
    if (*n < 1 || *n > path_length()) return std::nullopt;
    return path_vertex(static_cast<int>(*n));
  };
  if (auto v = expect('y')) return v;
  return expect('z');
}

ComponentGraph build_component_graph(const ComponentGraphSpec& spec,
                                     const Alphabet& ab) {
  return ComponentGraph(spec, ab);
}

std::string to_dot(const LabeledGraph& g, const Alphabet& ab,
                   const std::function<std::string(VertexId)>& vertex_name,
                   const std::string& graph_name) {
  std::vector<LabeledEdge> sorted(g.edges().begin(), g.edges().end());
  std::sort(sorted.begin(), sorted.end(),
            [](const LabeledEdge& x, const LabeledEdge& y) {
              if (x.source != y.source) return x.source < y.source;
              if (x.label != y.label) return x.label < y.label;
              return x.target < y.target;
            });
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  for (const LabeledEdge& e : sorted) {
    out << "  " << vertex_name(e.source) << " -> " << vertex_name(e.target)
        << " [label=\"" << ab.name(e.label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace freechain
