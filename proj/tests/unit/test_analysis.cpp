#include <doctest.h>

#include <random>

#include "freechain/analysis.hpp"
#include "helpers.hpp"

using namespace freechain;

namespace {

const Alphabet kF2(2);

Word W(const char* text) { return parse_word(text, kF2); }

ChainContext chain2(int levels) {
  ChainConfig cfg;
  cfg.rank = 2;
  cfg.alpha = Rat(1, 2);
  cfg.levels = levels;
  return ChainContext(cfg);
}

ChainContext chain3(int levels, Rat alpha = Rat(1, 2)) {
  ChainConfig cfg;
  cfg.rank = 3;
  cfg.alpha = alpha;
  cfg.levels = levels;
  return ChainContext(cfg);
}

}  // namespace

TEST_CASE("alpha bound rows") {
  ChainContext ctx = chain2(3);
  std::vector<LevelBoundRow> rows = verify_alpha_bound(ctx, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].fixr_a == Rat(3, 4));
  CHECK(rows[0].bound == Rat(3, 4));
  CHECK(rows[1].fixr_a == Rat(12, 19));
  CHECK(rows[1].bound == Rat(12, 19));
  CHECK(rows[2].fixr_a == Rat(148, 247));
  CHECK(rows[2].bound == Rat(144, 247));  // strict slack from the extra z-vertex
  for (const LevelBoundRow& row : rows) {
    CHECK(row.fixr_a >= row.region_ratio);
    CHECK(row.region_ratio >= row.bound);
    CHECK(row.bound > Rat(1, 2));
  }
}

TEST_CASE("essential freeness profiles") {
  ChainContext ctx = chain2(3);
  auto profiles =
      essential_freeness_report(ctx, {Word(), W("a"), W("b")}, 3);
  REQUIRE(profiles.size() == 3);
  CHECK(profiles[0].values == std::vector<Rat>{1, 1, 1});
  CHECK(!profiles[0].hits_zero);
  for (const Rat& q : profiles[1].values) CHECK(q > ctx.alpha());
  CHECK(!profiles[1].hits_zero);
  CHECK(profiles[2].values == std::vector<Rat>{Rat(1, 8), Rat(1, 76), Rat(0)});
  CHECK(profiles[2].hits_zero);
  CHECK(profiles[2].final_value == Rat(0));
}

TEST_CASE("acts_nontrivially by orbit scan at low class levels") {
  ChainContext ctx = chain2(3);
  auto witness = acts_nontrivially(ctx, W("a"));
  REQUIRE(witness.has_value());
  CHECK(witness->level == 1);
  CHECK(witness->class_index == 1);
  CHECK(witness->orbit_index == 0);  // the root tuple itself moves
  CHECK(witness->state == ProductState{{0}});
  CHECK(ctx.act(witness->state, W("a")) != witness->state);

  // class of ab sits at level 3
  auto w3 = acts_nontrivially(ctx, W("b'a'"));  // inverse of ab
  REQUIRE(w3.has_value());
  CHECK(w3->level == 3);
  CHECK(ctx.act(w3->state, W("b'a'")) != w3->state);
  CHECK(ctx.act(ctx.root_state(3), w3->reach_word) == w3->state);
}

TEST_CASE("acts_nontrivially reports a miss beyond the built levels") {
  ChainContext ctx = chain2(3);
  CHECK(!acts_nontrivially(ctx, W("b")).has_value());  // class index 9 > 3
  CHECK_THROWS_AS(acts_nontrivially(ctx, Word()), std::invalid_argument);
}

TEST_CASE("acts_nontrivially transports past enumerable orbits") {
  // the class of b is listed ninth; the level-9 orbit is far beyond the cap
  ChainContext ctx = chain2(9);
  auto witness = acts_nontrivially(ctx, W("b"));
  REQUIRE(witness.has_value());
  CHECK(witness->level == 9);
  CHECK(witness->class_index == 9);
  CHECK(!witness->orbit_index.has_value());
  CHECK(witness->reach_word == W("a"));
  std::vector<VertexId> expected;
  for (std::int64_t p : ctx.plan().primes) expected.push_back(static_cast<VertexId>(p));
  CHECK(witness->state.coords == expected);  // every coordinate is z_{i,1}
  CHECK(witness->state.coords[0] == 7);      // first coordinate in the z-path
  CHECK(ctx.act(witness->state, W("b")) != witness->state);
  CHECK(ctx.act(ctx.root_state(9), witness->reach_word) == witness->state);
}

TEST_CASE("transport and orbit scan agree wherever both are feasible") {
  // A tiny cap forces the transport route; the default cap allows the
  // exhaustive scan. Both must witness the same class level, and the
  // transported state must be genuinely moved and genuinely reachable.
  ChainConfig small;
  small.rank = 2;
  small.alpha = Rat(1, 2);
  small.levels = 3;
  small.state_cap = 4;
  ChainContext tiny(small);
  ChainContext full = chain2(3);
  std::mt19937 rng(41);
  int compared = 0;
  for (int len = 1; len <= 4 && compared < 40; ++len) {
    for_each_reduced_word(kF2, len, [&](const Word& w) {
      auto transported = acts_nontrivially(tiny, w);
      auto scanned = acts_nontrivially(full, w);
      REQUIRE(transported.has_value() == scanned.has_value());
      if (!transported) return;
      ++compared;
      CHECK(transported->level == scanned->level);
      CHECK(!transported->orbit_index.has_value());
      CHECK(scanned->orbit_index.has_value());
      CHECK(tiny.act(transported->state, w) != transported->state);
      CHECK(tiny.act(tiny.root_state(transported->level),
                     transported->reach_word) == transported->state);
      // the transported state is a real orbit member of the full context
      auto idx = full.orbit(transported->level)
                     .find(transported->state.coords);
      CHECK(idx.has_value());
    });
  }
  CHECK(compared >= 20);
}

TEST_CASE("rank 3: c1 fixes every root tuple yet acts nontrivially") {
  ChainContext ctx = chain3(18, Rat(1, 100));
  Alphabet f3(3);
  Word c1 = parse_word("c1", f3);
  for (int n = 1; n <= 18; ++n) CHECK(ctx.stabilizer_contains(c1, n));
  CHECK(print_word(ctx.classes().reps[17], f3) == "ac1a'");

  auto witness = acts_nontrivially(ctx, c1);
  REQUIRE(witness.has_value());
  CHECK(witness->level == 18);
  CHECK(witness->reach_word == parse_word("a", f3));
  std::vector<VertexId> expected;
  for (std::int64_t p : ctx.plan().primes) expected.push_back(static_cast<VertexId>(p));
  CHECK(witness->state.coords == expected);
  CHECK(ctx.act(witness->state, c1) != witness->state);
  CHECK(ctx.act(ctx.root_state(18), witness->reach_word) == witness->state);
}

TEST_CASE("short words with in-range classes always get witnesses") {
  ChainContext ctx = chain2(3);
  ClassEnumerator en(kF2);
  for (int len = 1; len <= 4; ++len) {
    for_each_reduced_word(kF2, len, [&](const Word& w) {
      auto iw = en.extend_until(conjugacy_key(w, kF2), 600);
      auto ii = en.extend_until(conjugacy_key(invert(w), kF2), 600);
      int cls = std::min(iw.value_or(1 << 20), ii.value_or(1 << 20));
      auto witness = acts_nontrivially(ctx, w);
      CHECK(witness.has_value() == (cls <= 3));
      if (witness) {
        CHECK(witness->level == cls);
        CHECK(ctx.act(witness->state, w) != witness->state);
      }
    });
  }
}

TEST_CASE("find_moved_state scans computed orbits first") {
  ChainContext ctx = chain2(3);
  ctx.orbit(1);
  ctx.orbit(2);
  ctx.orbit(3);
  auto wb = find_moved_state(ctx, W("b"));
  REQUIRE(wb.has_value());
  CHECK(wb->level == 1);  // b moves the root tuple already
  auto wa2 = find_moved_state(ctx, W("aa"));
  REQUIRE(wa2.has_value());
  CHECK(wa2->level == 2);  // a^2 is trivial on the first gadget
  auto wa6 = find_moved_state(ctx, power(W("a"), 6));
  CHECK(!wa6.has_value());  // a^6 fixes everything up to level 3
}

TEST_CASE("intersection scan at rank 2") {
  ChainContext ctx = chain2(3);
  std::vector<Word> words = chain_intersection_test(ctx, 6);
  CHECK(words.size() == 66);
  REQUIRE(words.size() >= 4);
  CHECK(print_word(words[0], kF2) == "bab'");
  CHECK(print_word(words[1], kF2) == "ba'b'");
  CHECK(print_word(words[2], kF2) == "b'ab");
  CHECK(print_word(words[3], kF2) == "b'a'b");
  bool has_a6 = false;
  for (const Word& w : words) {
    CHECK(!w.empty());
    CHECK(w.size() <= 6);
    if (w == W("aaaaaa")) has_a6 = true;
    for (int n = 1; n <= 3; ++n) CHECK(ctx.stabilizer_contains(w, n));
  }
  CHECK(has_a6);
  // the conjugate-shaped members still move y-states at level 1
  for (int i = 0; i < 4; ++i) {
    auto witness = find_moved_state(ctx, words[i]);
    REQUIRE(witness.has_value());
    CHECK(witness->level == 1);
  }
}

TEST_CASE("intersection scan at rank 3 pins c1") {
  ChainContext ctx = chain3(4);
  Alphabet f3(3);
  std::vector<Word> words = chain_intersection_test(ctx, 1);
  REQUIRE(words.size() == 2);
  CHECK(print_word(words[0], f3) == "c1");
  CHECK(print_word(words[1], f3) == "c1'");
}

TEST_CASE("free point search") {
  ChainContext ctx = chain2(2);
  CHECK(free_point_search(ctx, 1, 1) == std::vector<std::uint32_t>{0});
  CHECK(free_point_search(ctx, 1, 2).empty());
  CHECK(free_point_search(ctx, 1, 6).empty());
  std::vector<std::uint32_t> level2 = free_point_search(ctx, 2, 3);
  CHECK(level2 == std::vector<std::uint32_t>{9});
  CHECK(ctx.orbit(2).state_tuple(9) == ProductState{{7, 0}});
  CHECK(free_point_search(ctx, 2, 6).empty());

  // the intersection scan found length-3 stabilizer words, so the root
  // tuple cannot be a free point at that bound
  CHECK(!chain_intersection_test(ctx, 3).empty());
  CHECK(std::find(level2.begin(), level2.end(), ctx.orbit(2).base_index()) ==
        level2.end());

  // returned states carry cycle-free balls of radius max_len/2
  for (std::uint32_t idx : level2) {
    BallSignature ball = schreier_ball(ctx, 2, idx, 1);
    CHECK(ball.is_tree);
    CHECK(!ball.shortest_cycle_length.has_value());
  }
  BallSignature b0 = schreier_ball(ctx, 1, 0, 0);
  CHECK(b0.is_tree);  // the unique level-1 free point has no loop on itself
}

TEST_CASE("schreier balls at level 2") {
  ChainContext ctx = chain2(2);
  const OrbitTable& t = ctx.orbit(2);
  // first a-fixed state in discovery order is (y1_1, y2_1) at index 2
  CHECK(t.image(2, W("a"), kF2) == 2);
  CHECK(t.state_tuple(2) == ProductState{{1, 1}});
  BallSignature looped = schreier_ball(ctx, 2, 2, 1);
  CHECK(looped.vertices.size() == 3);
  CHECK(looped.edges.size() == 4);
  CHECK(!looped.is_tree);
  CHECK(looped.shortest_cycle_length == 1);

  BallSignature tree = schreier_ball(ctx, 2, 9, 1);
  CHECK(tree.is_tree);
  CHECK(!tree.shortest_cycle_length.has_value());
  CHECK(!balls_isomorphic(looped, tree));
  CHECK(embeds_in_free_cayley(tree));
  CHECK(!embeds_in_free_cayley(looped));

  CHECK_THROWS_AS(schreier_ball(ctx, 2, 2, -1), std::invalid_argument);
  CHECK_THROWS_AS(schreier_ball(ctx, 2, 100000, 1), std::invalid_argument);
}

TEST_CASE("ball isomorphism is rooted and exact") {
  ChainContext ctx = chain2(2);
  const OrbitTable& t = ctx.orbit(2);
  auto idx22 = t.find(std::vector<VertexId>{2, 2});
  auto idx33 = t.find(std::vector<VertexId>{3, 3});
  auto idx11 = t.find(std::vector<VertexId>{1, 1});
  REQUIRE(idx22.has_value());
  REQUIRE(idx33.has_value());
  REQUIRE(idx11.has_value());
  BallSignature deep1 = schreier_ball(ctx, 2, *idx22, 1);
  BallSignature deep2 = schreier_ball(ctx, 2, *idx33, 1);
  BallSignature near_root = schreier_ball(ctx, 2, *idx11, 1);
  CHECK(balls_isomorphic(deep1, deep2));
  CHECK(!balls_isomorphic(deep1, near_root));  // the root's missing a-loop shows
  CHECK(ball_canonical_code(deep1) == ball_canonical_code(deep2));
}

TEST_CASE("tree ball combinatorics") {
  CHECK(free_cayley_ball_boundary(2, 0) == 1);
  CHECK(free_cayley_ball_boundary(2, 1) == 4);
  CHECK(free_cayley_ball_boundary(2, 2) == 12);
  CHECK(free_cayley_ball_boundary(2, 3) == 36);
  CHECK(free_cayley_ball_boundary(3, 2) == 30);
}

TEST_CASE("gns witness pairs") {
  ChainContext ctx = chain2(2);
  GnsWitness witness = gns_witness(ctx, 2, 1);
  CHECK(witness.orbit_size == 152);
  CHECK(witness.looped_count == 151);
  CHECK(witness.looped_fraction == Rat(151, 152));
  CHECK(witness.looped_ball.center == 2);
  CHECK(!witness.looped_ball.is_tree);
  CHECK(witness.most_tree_like_ball.center == 9);
  CHECK(witness.most_tree_like_ball.is_tree);
  CHECK(!balls_isomorphic(witness.looped_ball, witness.most_tree_like_ball));
  CHECK(witness.looped_fraction >= ctx.fix_ratio(W("a"), 2));

  GnsWitness level1 = gns_witness(ctx, 1, 1);
  CHECK(level1.looped_fraction == Rat(1));
  CHECK(level1.looped_fraction >= ctx.fix_ratio(W("a"), 1));
}

TEST_CASE("verification report") {
  ChainContext ctx = chain2(2);
  VerifyOptions opts;
  opts.levels = 2;
  VerifyOutcome outcome = run_verification(ctx, opts);
  CHECK(outcome.alpha_certificate);
  CHECK(outcome.faithful_up_to == 3);
  CHECK(outcome.faithfulness_certificate);
  CHECK(outcome.intersection_certificate);
  CHECK(outcome.all_certificates);
  CHECK(outcome.json.find("\"essentially_free_evidence\": \"refuted\"") !=
        std::string::npos);
  CHECK(outcome.json.find("\"fixr\"") != std::string::npos);
  CHECK(outcome.json.find("\"alpha\": [\n    1,\n    2\n  ]") !=
        std::string::npos);

  // identical inputs give identical bytes
  ChainContext ctx2 = chain2(2);
  VerifyOutcome outcome2 = run_verification(ctx2, opts);
  CHECK(outcome.json == outcome2.json);
}

TEST_CASE("verification at rank 3 certifies the intersection generator") {
  // the single-letter scan is the feasible bound here: c1 squared already
  // belongs to a class (index 17) whose gadget this build does not reach
  ChainContext ctx = chain3(4);
  VerifyOptions opts;
  opts.levels = 4;
  opts.faithful_len = 1;
  opts.intersection_len = 2;
  VerifyOutcome outcome = run_verification(ctx, opts);
  CHECK(outcome.alpha_certificate);
  CHECK(outcome.faithfulness_certificate);
  CHECK(outcome.intersection_certificate);
  CHECK(outcome.all_certificates);
  CHECK(outcome.json.find("\"c1\"") != std::string::npos);
}
