#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "freechain/classes.hpp"
#include "freechain/labeled_graph.hpp"
#include "freechain/primes.hpp"
#include "freechain/rational.hpp"
#include "freechain/words.hpp"

namespace freechain {

/// A point of the level-n product space: coordinate i-1 is a vertex of the
/// i-th component graph.
struct ProductState {
  std::vector<VertexId> coords;

  std::size_t level() const { return coords.size(); }
  friend bool operator==(const ProductState&, const ProductState&) = default;
};

class StateCapExceeded : public std::runtime_error {
 public:
  StateCapExceeded(std::size_t cap, int level);
  std::size_t cap() const { return cap_; }
  int level() const { return level_; }

 private:
  std::size_t cap_;
  int level_;
};

/// Breadth-first closure of the root tuple under all generators and their
/// inverses, with Schreier edges. State 0 is the root; discovery order is
/// fixed (FIFO queue, letters in ord order), so indices are reproducible.
class OrbitTable {
 public:
  int level() const { return level_; }
  int rank() const { return rank_; }
  std::size_t size() const { return size_; }
  std::uint32_t base_index() const { return 0; }

  std::span<const VertexId> state(std::uint32_t idx) const {
    return {coords_.data() + static_cast<std::size_t>(idx) * level_,
            static_cast<std::size_t>(level_)};
  }
  ProductState state_tuple(std::uint32_t idx) const;

  std::uint32_t image(std::uint32_t idx, Letter l, const Alphabet& ab) const {
    return images_[static_cast<std::size_t>(idx) * 2 * rank_ + letter_ord(l, ab)];
  }
  std::uint32_t image(std::uint32_t idx, const Word& w, const Alphabet& ab) const;

  std::optional<std::uint32_t> find(std::span<const VertexId> coords) const;

 private:
  friend class ChainContext;

  int level_ = 0;
  int rank_ = 0;
  std::size_t size_ = 0;
  std::vector<VertexId> coords_;        // size_ * level_
  std::vector<std::uint32_t> images_;   // size_ * 2*rank_
  std::vector<std::uint32_t> slots_;    // open-addressing index over coords_
};

struct ChainConfig {
  int rank = 2;
  Rat alpha = Rat(1, 2);
  int levels = 1;
  std::size_t state_cap = 5'000'000;
};

/// The built chain: class representatives, primes, the gadget graphs, and
/// lazily computed orbit tables keyed by level. Immutable after
/// construction except for the orbit cache; compute orbits up front if you
/// need concurrent readers.
class ChainContext {
 public:
  explicit ChainContext(const ChainConfig& config);

  const Alphabet& alphabet() const { return alphabet_; }
  const Rat& alpha() const { return config_.alpha; }
  int levels() const { return config_.levels; }
  std::size_t state_cap() const { return config_.state_cap; }
  const ClassList& classes() const { return classes_; }
  const PrimePlan& plan() const { return plan_; }

  /// Component access; gadgets are numbered from 1.
  const ComponentGraph& component(int i) const;

  ProductState root_state(int level) const;
  Int ambient_size(int level) const;        // prod |V_i|
  Int cycle_product_size(int level) const;  // prod p_i
  Int fixed_region_size(int level) const;   // prod (p_i - 1)

  /// Coordinate-wise action; throws on level mismatch.
  ProductState act(const ProductState& s, const Word& w) const;
  VertexId component_image(int i, VertexId v, Letter l) const;

  /// Membership of w in the level-n stabilizer of the root tuple.
  bool stabilizer_contains(const Word& w, int level) const;

  /// Computes (once) and returns the orbit table for a level. Throws
  /// StateCapExceeded when the closure would outgrow the configured cap.
  const OrbitTable& orbit(int level) const;
  bool orbit_computed(int level) const;

  /// Fraction of level-n orbit states fixed by w, as an exact rational.
  Rat fix_ratio(const Word& w, int level) const;
  Int fixed_count(const Word& w, int level) const;

 private:
  void check_level(int level) const;
  void ensure_permutations(int level) const;

  ChainConfig config_;
  Alphabet alphabet_;
  ClassList classes_;
  PrimePlan plan_;
  std::vector<ComponentGraph> components_;
  // letter-indexed total permutations per component, filled on first orbit use
  mutable std::vector<std::vector<Permutation>> perms_;
  mutable std::map<int, OrbitTable> orbits_;
};

ChainContext build_chain(const ChainConfig& config);

struct ChainLevelStats {
  int level = 0;
  Int orbit_size;
  std::optional<Int> children_count;  // |O_{n+1}| / |O_n|, absent at the top level
  Rat shadow_measure;
};

/// Per-level coset-tree data for levels 1..up_to. Verifies that dropping
/// the last coordinate maps O_{n+1} onto O_n with uniform fibers and
/// commutes with every generator; a violation throws std::logic_error.
std::vector<ChainLevelStats> coset_tree_stats(const ChainContext& ctx, int up_to);

/// CSV rows level,index,word,fixr_num,fixr_den,bound_num,bound_den,
/// alpha_num,alpha_den with raw fixed-state counts and the unreduced
/// products prod(p_i-1), prod(p_i+k_i); exact integers only.
void write_fixr_csv(std::ostream& out, const ChainContext& ctx, const Word& w,
                    int up_to);

}  // namespace freechain
