#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freechain/chain.hpp"

namespace freechain {

/// One level of the fixed-ratio bound chain
///   fixr(a) >= |P_n|/|O_n| >= prod(p_i-1)/prod(p_i+k_i) > alpha,
/// all exact.
struct LevelBoundRow {
  int level = 0;
  Int orbit_size;
  Int fixed_count_a;
  Rat fixr_a;
  Int fixed_region;  // |P_n| = prod(p_i - 1)
  Rat region_ratio;  // |P_n| / |O_n|
  Rat bound;         // prod(p_i-1) / prod(p_i+k_i)
};

/// Checks the bound chain at levels 1..up_to; a violated inequality means a
/// construction bug and throws std::logic_error.
std::vector<LevelBoundRow> verify_alpha_bound(const ChainContext& ctx, int up_to);

struct FixrProfile {
  Word word;
  std::vector<Rat> values;  // fixr at levels 1..N, non-increasing
  bool hits_zero = false;
  Rat final_value;
};

std::vector<FixrProfile> essential_freeness_report(const ChainContext& ctx,
                                                   const std::vector<Word>& words,
                                                   int up_to);

/// A state moved by a word, with enough data to recheck the claim: the
/// state is reach_word applied to the root tuple of its level.
struct MovedStateWitness {
  int level = 0;
  ProductState state;
  std::optional<std::uint32_t> orbit_index;  // set when found by orbit scan
  Word reach_word;                           // root * reach_word = state
  std::optional<int> class_index;            // set by the class-based search
};

/// The class-based faithfulness search: locates the class of w or w^-1
/// among the built representatives, then produces a moved state in that
/// level's orbit - by exhaustive scan when the orbit fits the state cap,
/// otherwise by transporting the root with an explicit conjugator. Returns
/// nullopt when neither class is within the built levels (not a refutation).
std::optional<MovedStateWitness> acts_nontrivially(const ChainContext& ctx,
                                                   const Word& w);

/// Bounded faithfulness certificate: scans already-computed orbits in level
/// order for a moved state and falls back to acts_nontrivially.
std::optional<MovedStateWitness> find_moved_state(const ChainContext& ctx,
                                                  const Word& w);

/// All reduced words of length 1..max_len fixing the root tuple at every
/// built level, in length-lex order.
std::vector<Word> chain_intersection_test(const ChainContext& ctx, int max_len);

/// Orbit states with no nontrivial stabilizer word of length <= max_len.
std::vector<std::uint32_t> free_point_search(const ChainContext& ctx, int level,
                                             int max_len);

struct BallEdge {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::uint16_t label = 0;

  friend bool operator==(const BallEdge&, const BallEdge&) = default;
};

/// Radius-r ball in a level's Schreier graph, as an induced labeled
/// multigraph on orbit indices; loops count as cycles of length 1.
struct BallSignature {
  int level = 0;
  std::uint32_t center = 0;
  int radius = 0;
  std::vector<std::uint32_t> vertices;  // sorted orbit indices
  std::vector<BallEdge> edges;          // one per labeled Schreier edge
  bool is_tree = false;
  std::optional<int> shortest_cycle_length;
};

BallSignature schreier_ball(const ChainContext& ctx, int level,
                            std::uint32_t center, int radius);

/// Canonical code under center-preserving label-respecting isomorphism;
/// balls are deterministic, so a breadth-first relabeling from the center
/// decides isomorphism exactly.
std::string ball_canonical_code(const BallSignature& ball);
bool balls_isomorphic(const BallSignature& x, const BallSignature& y);

/// A connected labeled ball embeds into the Cayley graph of the free group
/// exactly when it is a tree.
bool embeds_in_free_cayley(const BallSignature& ball);

/// Boundary size (2d)(2d-1)^(r-1) of the radius-r ball of the 2d-regular
/// tree, the comparison target for ball signatures.
Int free_cayley_ball_boundary(int rank, int radius);

std::string ball_to_dot(const BallSignature& ball, const ChainContext& ctx,
                        const std::string& graph_name = "ball");

/// The local-contrast witness pair: a ball with a cycle around a state
/// fixed by a, the most tree-like ball found, and the exact fraction of
/// orbit states whose ball contains a cycle. All finite-level quantities.
struct GnsWitness {
  BallSignature looped_ball;
  BallSignature most_tree_like_ball;
  Rat looped_fraction;
  std::size_t looped_count = 0;
  std::size_t orbit_size = 0;
};

GnsWitness gns_witness(const ChainContext& ctx, int level, int radius);

std::string schreier_to_dot(const ChainContext& ctx, int level,
                            const std::string& graph_name = "schreier");

struct VerifyOptions {
  int levels = 1;
  int faithful_len = 3;      // word-length bound for the faithfulness scan
  int intersection_len = 6;  // word-length bound for the intersection scan
  std::vector<Word> extra_fixr_words;
};

struct VerifyOutcome {
  std::string json;  // stable-key-order report
  bool alpha_certificate = false;
  int faithful_up_to = 0;
  bool faithfulness_certificate = false;
  bool intersection_certificate = false;  // rank > 2: c1 pinned and witnessed
  bool all_certificates = false;
};

/// Runs the alpha-bound, faithfulness, and intersection diagnostics and
/// renders the JSON report (keys: alpha, levels, fixr, verdicts).
VerifyOutcome run_verification(const ChainContext& ctx, const VerifyOptions& opts);

}  // namespace freechain
