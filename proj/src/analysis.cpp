#include "freechain/analysis.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace freechain {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_int(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

ordered_json json_rat(const Rat& q) {
  return ordered_json::array({json_int(numerator(q)), json_int(denominator(q))});
}

}  // namespace

std::vector<LevelBoundRow> verify_alpha_bound(const ChainContext& ctx,
                                              int up_to) {
  Word a = Word::single({0, false});
  std::vector<LevelBoundRow> rows;
  Int bound_num = 1;
  Int bound_den = 1;
  for (int n = 1; n <= up_to; ++n) {
    bound_num *= Int(ctx.plan().primes[n - 1]) - 1;
    bound_den *= Int(ctx.plan().primes[n - 1]) + ctx.plan().lengths[n - 1];
    LevelBoundRow row;
    row.level = n;
    row.orbit_size = Int(ctx.orbit(n).size());
    row.fixed_count_a = ctx.fixed_count(a, n);
    row.fixr_a = Rat(row.fixed_count_a, row.orbit_size);
    row.fixed_region = ctx.fixed_region_size(n);
    row.region_ratio = Rat(row.fixed_region, row.orbit_size);
    row.bound = Rat(bound_num, bound_den);
    if (!(row.fixr_a >= row.region_ratio))
      throw std::logic_error("fixed ratio fell below the fixed-region ratio");
    if (!(row.region_ratio >= row.bound))
      throw std::logic_error("fixed-region ratio fell below the prime bound");
    if (!(row.bound > ctx.alpha()))
      throw std::logic_error("prime bound fell to alpha at level " +
                             std::to_string(n));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<FixrProfile> essential_freeness_report(const ChainContext& ctx,
                                                   const std::vector<Word>& words,
                                                   int up_to) {
  std::vector<FixrProfile> out;
  out.reserve(words.size());
  for (const Word& w : words) {
    FixrProfile profile;
    profile.word = w;
    for (int n = 1; n <= up_to; ++n) {
      profile.values.push_back(ctx.fix_ratio(w, n));
    }
    profile.final_value = profile.values.empty() ? Rat(1) : profile.values.back();
    profile.hits_zero =
        std::any_of(profile.values.begin(), profile.values.end(),
                    [](const Rat& q) { return q == 0; });
    out.push_back(std::move(profile));
  }
  return out;
}

namespace {

// u = g * key * g^-1 for the class key of u; g is conjugator * rotation
// prefix of the cyclic core.
Word conjugator_onto_key(const Word& u, const ConjClassKey& key) {
  CyclicDecomposition dec = cyclic_reduce(u);
  std::size_t len = dec.core.size();
  for (std::size_t j = 0; j < len; ++j) {
    std::vector<Letter> rot;
    rot.reserve(len);
    for (std::size_t t = 0; t < len; ++t) rot.push_back(dec.core[(j + t) % len]);
    if (Word::reduced(rot) == key.key) {
      std::vector<Letter> pref(dec.core.begin(), dec.core.begin() + j);
      return multiply(dec.conjugator, Word::reduced(pref));
    }
  }
  throw std::logic_error("word does not rotate onto the claimed class key");
}

std::optional<std::uint32_t> first_moved_index(const ChainContext& ctx,
                                               const OrbitTable& t,
                                               const Word& w) {
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    if (t.image(idx, w, ctx.alphabet()) != idx) return idx;
  }
  return std::nullopt;
}

Word orbit_reach_word(const OrbitTable& t, std::uint32_t idx,
                      const ChainContext& ctx) {
  // Recover a root-to-state word by breadth-first search from the root;
  // orbit tables are small wherever a scan witness is produced.
  if (idx == t.base_index()) return Word();
  const Alphabet& ab = ctx.alphabet();
  std::vector<std::int32_t> parent(t.size(), -1);
  std::vector<std::uint8_t> via(t.size(), 0);
  std::vector<std::uint32_t> queue = {t.base_index()};
  parent[t.base_index()] = static_cast<std::int32_t>(t.base_index());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t v = queue[head];
    for (int ord = 0; ord < 2 * ab.rank(); ++ord) {
      std::uint32_t u = t.image(v, letter_from_ord(ord, ab), ab);
      if (parent[u] != -1) continue;
      parent[u] = static_cast<std::int32_t>(v);
      via[u] = static_cast<std::uint8_t>(ord);
      if (u == idx) {
        std::vector<Letter> rev;
        for (std::uint32_t c = idx; c != t.base_index();
             c = static_cast<std::uint32_t>(parent[c])) {
          rev.push_back(letter_from_ord(via[c], ab));
        }
        std::reverse(rev.begin(), rev.end());
        return Word::reduced(rev);
      }
      queue.push_back(u);
    }
  }
  throw std::logic_error("orbit state unreachable from the root");
}

}  // namespace

std::optional<MovedStateWitness> acts_nontrivially(const ChainContext& ctx,
                                                   const Word& w) {
  if (w.empty()) throw std::invalid_argument("identity acts trivially");
  const Alphabet& ab = ctx.alphabet();
  ConjClassKey key_w = conjugacy_key(w, ab);
  ConjClassKey key_winv = conjugacy_key(invert(w), ab);
  int m = 0;
  bool matched_inverse = false;
  for (int i = 1; i <= ctx.levels(); ++i) {
    ConjClassKey rep_key = conjugacy_key(ctx.classes().reps[i - 1], ab);
    if (rep_key == key_w || rep_key == key_winv) {
      m = i;
      matched_inverse = !(rep_key == key_w);
      break;
    }
  }
  if (m == 0) return std::nullopt;

  if (ctx.orbit_computed(m) || ctx.ambient_size(m) <= Int(ctx.state_cap())) {
    const OrbitTable& t = ctx.orbit(m);
    std::optional<std::uint32_t> idx = first_moved_index(ctx, t, w);
    if (!idx)
      throw std::logic_error("class-level orbit has no moved state");
    MovedStateWitness witness;
    witness.level = m;
    witness.state = t.state_tuple(*idx);
    witness.orbit_index = *idx;
    witness.reach_word = orbit_reach_word(t, *idx, ctx);
    witness.class_index = m;
    return witness;
  }

  // Orbit too large to enumerate: transport the root by the conjugator
  // taking w (or w^-1) onto the class representative.
  const Word target = matched_inverse ? invert(w) : w;
  ConjClassKey key = matched_inverse ? key_winv : key_w;
  Word g_target = conjugator_onto_key(target, key);
  Word g_rep = conjugator_onto_key(ctx.classes().reps[m - 1], key);
  Word t = multiply(g_rep, invert(g_target));
  MovedStateWitness witness;
  witness.level = m;
  witness.state = ctx.act(ctx.root_state(m), t);
  witness.reach_word = t;
  witness.class_index = m;
  if (ctx.act(witness.state, w) == witness.state)
    throw std::logic_error("transported witness is unexpectedly fixed");
  return witness;
}

std::optional<MovedStateWitness> find_moved_state(const ChainContext& ctx,
                                                  const Word& w) {
  if (w.empty()) throw std::invalid_argument("identity acts trivially");
  for (int n = 1; n <= ctx.levels(); ++n) {
    if (!ctx.orbit_computed(n)) continue;
    const OrbitTable& t = ctx.orbit(n);
    if (auto idx = first_moved_index(ctx, t, w)) {
      MovedStateWitness witness;
      witness.level = n;
      witness.state = t.state_tuple(*idx);
      witness.orbit_index = *idx;
      witness.reach_word = orbit_reach_word(t, *idx, ctx);
      return witness;
    }
  }
  return acts_nontrivially(ctx, w);
}

std::vector<Word> chain_intersection_test(const ChainContext& ctx, int max_len) {
  std::vector<Word> found;
  const Alphabet& ab = ctx.alphabet();
  for (int len = 1; len <= max_len; ++len) {
    for_each_reduced_word(ab, len, [&](const Word& w) {
      for (int n = 1; n <= ctx.levels(); ++n) {
        if (!ctx.stabilizer_contains(w, n)) return;
      }
      found.push_back(w);
    });
  }
  return found;
}

namespace {

bool has_short_stabilizer(const OrbitTable& t, const Alphabet& ab,
                          std::uint32_t start, int max_len) {
  int d = ab.rank();
  // Depth-first walk over all reduced words of length <= max_len; any
  // prefix returning to the start is a stabilizer word.
  struct Frame {
    std::uint32_t state;
    int last_ord;
    int depth;
  };
  std::vector<Frame> stack;
  stack.push_back({start, -1, 0});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.depth == max_len) continue;
    for (int ord = 0; ord < 2 * d; ++ord) {
      if (f.last_ord >= 0 && ord == (f.last_ord + d) % (2 * d)) continue;
      std::uint32_t u = t.image(f.state, letter_from_ord(ord, ab), ab);
      if (u == start) return true;
      stack.push_back({u, ord, f.depth + 1});
    }
  }
  return false;
}

}  // namespace

std::vector<std::uint32_t> free_point_search(const ChainContext& ctx, int level,
                                             int max_len) {
  const OrbitTable& t = ctx.orbit(level);
  std::vector<std::uint32_t> out;
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    if (!has_short_stabilizer(t, ctx.alphabet(), idx, max_len)) {
      out.push_back(idx);
    }
  }
  return out;
}

BallSignature schreier_ball(const ChainContext& ctx, int level,
                            std::uint32_t center, int radius) {
  if (radius < 0) throw std::invalid_argument("negative ball radius");
  const OrbitTable& t = ctx.orbit(level);
  if (center >= t.size()) throw std::invalid_argument("center outside orbit");
  const Alphabet& ab = ctx.alphabet();
  int d = ab.rank();

  std::unordered_map<std::uint32_t, int> dist;
  dist.emplace(center, 0);
  std::vector<std::uint32_t> queue = {center};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t v = queue[head];
    int dv = dist[v];
    if (dv == radius) continue;
    for (int ord = 0; ord < 2 * d; ++ord) {
      std::uint32_t u = t.image(v, letter_from_ord(ord, ab), ab);
      if (dist.emplace(u, dv + 1).second) queue.push_back(u);
    }
  }

  BallSignature ball;
  ball.level = level;
  ball.center = center;
  ball.radius = radius;
  ball.vertices.reserve(dist.size());
  for (const auto& [v, _] : dist) ball.vertices.push_back(v);
  std::sort(ball.vertices.begin(), ball.vertices.end());
  for (std::uint32_t v : ball.vertices) {
    for (int g = 0; g < d; ++g) {
      std::uint32_t u = t.image(v, Letter{static_cast<std::uint16_t>(g), false}, ab);
      if (dist.count(u)) {
        ball.edges.push_back({v, u, static_cast<std::uint16_t>(g)});
      }
    }
  }
  ball.is_tree = ball.edges.size() + 1 == ball.vertices.size();

  // multigraph girth: loops, then parallel edges, then simple cycles
  std::optional<int> girth;
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> pair_count;
  for (const BallEdge& e : ball.edges) {
    if (e.source == e.target) {
      girth = 1;
      break;
    }
    ++pair_count[{std::min(e.source, e.target), std::max(e.source, e.target)}];
  }
  if (!girth) {
    for (const auto& [_, c] : pair_count) {
      if (c >= 2) {
        girth = 2;
        break;
      }
    }
  }
  if (!girth && !ball.is_tree) {
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> adj;
    for (const auto& [pr, _] : pair_count) {
      adj[pr.first].push_back(pr.second);
      adj[pr.second].push_back(pr.first);
    }
    static const std::vector<std::uint32_t> no_neighbours;
    auto neighbours = [&](std::uint32_t v) -> const std::vector<std::uint32_t>& {
      auto it = adj.find(v);
      return it == adj.end() ? no_neighbours : it->second;
    };
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t s : ball.vertices) {
      std::unordered_map<std::uint32_t, int> bd;
      std::unordered_map<std::uint32_t, std::uint32_t> parent;
      bd.emplace(s, 0);
      parent.emplace(s, s);
      std::vector<std::uint32_t> q = {s};
      for (std::size_t head = 0; head < q.size(); ++head) {
        std::uint32_t v = q[head];
        for (std::uint32_t u : neighbours(v)) {
          if (!bd.count(u)) {
            bd[u] = bd[v] + 1;
            parent[u] = v;
            q.push_back(u);
          } else if (parent[v] != u) {
            best = std::min(best, bd[v] + bd[u] + 1);
          }
        }
      }
    }
    if (best != std::numeric_limits<int>::max()) girth = best;
  }
  ball.shortest_cycle_length = girth;
  if (girth && ball.is_tree)
    throw std::logic_error("tree ball reported a cycle");
  return ball;
}

std::string ball_canonical_code(const BallSignature& ball) {
  // Per-label deterministic adjacency in both directions.
  std::map<std::pair<std::uint32_t, std::uint16_t>, std::uint32_t> out, in;
  for (const BallEdge& e : ball.edges) {
    out[{e.source, e.label}] = e.target;
    in[{e.target, e.label}] = e.source;
  }
  int rank = 0;
  for (const BallEdge& e : ball.edges) rank = std::max(rank, e.label + 1);

  std::unordered_map<std::uint32_t, int> canon;
  std::vector<std::uint32_t> order = {ball.center};
  canon.emplace(ball.center, 0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    std::uint32_t v = order[head];
    for (int dir = 0; dir < 2; ++dir) {
      for (int g = 0; g < rank; ++g) {
        const auto& table = dir == 0 ? out : in;
        auto it = table.find({v, static_cast<std::uint16_t>(g)});
        if (it == table.end()) continue;
        if (canon.emplace(it->second, static_cast<int>(order.size())).second) {
          order.push_back(it->second);
        }
      }
    }
  }

  std::ostringstream code;
  code << order.size() << ';';
  for (std::uint32_t v : order) {
    for (int dir = 0; dir < 2; ++dir) {
      for (int g = 0; g < rank; ++g) {
        const auto& table = dir == 0 ? out : in;
        auto it = table.find({v, static_cast<std::uint16_t>(g)});
        if (it == table.end()) {
          code << "-,";
        } else {
          code << canon.at(it->second) << ',';
        }
      }
    }
    code << ';';
  }
  return code.str();
}

bool balls_isomorphic(const BallSignature& x, const BallSignature& y) {
  return ball_canonical_code(x) == ball_canonical_code(y);
}

bool embeds_in_free_cayley(const BallSignature& ball) { return ball.is_tree; }

Int free_cayley_ball_boundary(int rank, int radius) {
  if (radius < 0) throw std::invalid_argument("negative radius");
  if (radius == 0) return 1;
  Int out = 2 * rank;
  for (int i = 1; i < radius; ++i) out *= 2 * rank - 1;
  return out;
}

std::string ball_to_dot(const BallSignature& ball, const ChainContext& ctx,
                        const std::string& graph_name) {
  const Alphabet& ab = ctx.alphabet();
  std::ostringstream outs;
  outs << "digraph " << graph_name << " {\n";
  for (std::uint32_t v : ball.vertices) {
    outs << "  s" << v;
    if (v == ball.center) outs << " [center=true]";
    outs << ";\n";
  }
  for (const BallEdge& e : ball.edges) {
    outs << "  s" << e.source << " -> s" << e.target << " [label=\""
         << ab.name(e.label) << "\"];\n";
  }
  outs << "}\n";
  return outs.str();
}

std::string schreier_to_dot(const ChainContext& ctx, int level,
                            const std::string& graph_name) {
  const OrbitTable& t = ctx.orbit(level);
  const Alphabet& ab = ctx.alphabet();
  std::ostringstream outs;
  outs << "digraph " << graph_name << " {\n";
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    auto s = t.state(idx);
    outs << "  s" << idx << " [label=\"(";
    for (int i = 0; i < level; ++i) {
      if (i) outs << ',';
      outs << ctx.component(i + 1).vertex_name(s[i]);
    }
    outs << ")\"];\n";
  }
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    for (int g = 0; g < ab.rank(); ++g) {
      outs << "  s" << idx << " -> s"
           << t.image(idx, Letter{static_cast<std::uint16_t>(g), false}, ab)
           << " [label=\"" << ab.name(g) << "\"];\n";
    }
  }
  outs << "}\n";
  return outs.str();
}

GnsWitness gns_witness(const ChainContext& ctx, int level, int radius) {
  const OrbitTable& t = ctx.orbit(level);
  const Alphabet& ab = ctx.alphabet();
  Word a = Word::single({0, false});

  GnsWitness out;
  out.orbit_size = t.size();
  std::optional<std::uint32_t> first_a_fixed;
  std::optional<std::uint32_t> best;
  bool best_tree = false;
  int best_girth = 0;
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    BallSignature ball = schreier_ball(ctx, level, idx, radius);
    bool looped = !ball.is_tree;
    if (looped) ++out.looped_count;
    if (!first_a_fixed && t.image(idx, a, ab) == idx) {
      first_a_fixed = idx;
      out.looped_ball = ball;
    }
    int girth = ball.shortest_cycle_length.value_or(std::numeric_limits<int>::max());
    bool better = !best.has_value();
    if (!better && !best_tree) {
      better = ball.is_tree || girth > best_girth;
    }
    if (better) {
      best = idx;
      best_tree = ball.is_tree;
      best_girth = girth;
      out.most_tree_like_ball = ball;
    }
  }
  if (!first_a_fixed)
    throw std::logic_error("no a-fixed orbit state at level " +
                           std::to_string(level));
  if (out.looped_ball.is_tree)
    throw std::logic_error("ball around an a-fixed state has no cycle");
  out.looped_fraction = Rat(Int(out.looped_count), Int(out.orbit_size));
  return out;
}

VerifyOutcome run_verification(const ChainContext& ctx,
                               const VerifyOptions& opts) {
  const Alphabet& ab = ctx.alphabet();
  Word a = Word::single({0, false});

  std::vector<LevelBoundRow> rows = verify_alpha_bound(ctx, opts.levels);
  std::vector<ChainLevelStats> stats = coset_tree_stats(ctx, opts.levels);

  std::vector<Word> fixr_words = {a};
  for (const Word& w : opts.extra_fixr_words) {
    if (std::find(fixr_words.begin(), fixr_words.end(), w) == fixr_words.end())
      fixr_words.push_back(w);
  }
  std::vector<FixrProfile> profiles =
      essential_freeness_report(ctx, fixr_words, opts.levels);

  int faithful_up_to = 0;
  for (int len = 1; len <= opts.faithful_len; ++len) {
    bool all = true;
    for_each_reduced_word(ab, len, [&](const Word& w) {
      if (!all) return;
      if (!find_moved_state(ctx, w)) all = false;
    });
    if (!all) break;
    faithful_up_to = len;
  }

  std::vector<Word> intersection = chain_intersection_test(ctx, opts.intersection_len);

  bool alpha_ok = true;  // verify_alpha_bound would have thrown otherwise
  bool essentially_free_refuted =
      alpha_ok && std::all_of(rows.begin(), rows.end(), [&](const LevelBoundRow& r) {
        return r.fixr_a > ctx.alpha();
      });

  bool intersection_cert = true;
  if (ab.rank() > 2) {
    Word c1 = Word::single({2, false});
    bool pinned = std::find(intersection.begin(), intersection.end(), c1) !=
                  intersection.end();
    bool witnessed = find_moved_state(ctx, c1).has_value();
    intersection_cert = pinned && witnessed;
  }

  ordered_json doc;
  doc["alpha"] = json_rat(ctx.alpha());
  doc["levels"] = ordered_json::array();
  for (int n = 1; n <= opts.levels; ++n) {
    const LevelBoundRow& row = rows[n - 1];
    const ChainLevelStats& st = stats[n - 1];
    ordered_json entry;
    entry["level"] = n;
    entry["index"] = json_int(row.orbit_size);
    if (st.children_count) entry["children"] = json_int(*st.children_count);
    entry["shadow"] = json_rat(st.shadow_measure);
    entry["fixed_a"] = json_int(row.fixed_count_a);
    entry["fixed_region"] = json_int(row.fixed_region);
    entry["bound"] = json_rat(row.bound);
    entry["fixr_a"] = json_rat(row.fixr_a);
    doc["levels"].push_back(std::move(entry));
  }
  doc["fixr"] = ordered_json::object();
  for (const FixrProfile& profile : profiles) {
    ordered_json vals = ordered_json::array();
    for (const Rat& q : profile.values) vals.push_back(json_rat(q));
    doc["fixr"][print_word(profile.word, ab)] = std::move(vals);
  }
  doc["verdicts"] = ordered_json::object();
  doc["verdicts"]["essentially_free_evidence"] =
      essentially_free_refuted ? "refuted" : "not-refuted";
  doc["verdicts"]["faithful_up_to"] = faithful_up_to;
  ordered_json inter = ordered_json::array();
  for (const Word& w : intersection) inter.push_back(print_word(w, ab));
  doc["verdicts"]["intersection_words"] = std::move(inter);

  VerifyOutcome outcome;
  outcome.json = doc.dump(2) + "\n";
  outcome.alpha_certificate = alpha_ok && essentially_free_refuted;
  outcome.faithful_up_to = faithful_up_to;
  outcome.faithfulness_certificate = faithful_up_to == opts.faithful_len;
  outcome.intersection_certificate = intersection_cert;
  outcome.all_certificates = outcome.alpha_certificate &&
                             outcome.faithfulness_certificate &&
                             outcome.intersection_certificate;
  return outcome;
}

}  // namespace freechain
