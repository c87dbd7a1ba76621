#include "freechain/chain.hpp"

#include <algorithm>
#include <sstream>

namespace freechain {

namespace {

std::uint64_t hash_coords(std::span<const VertexId> coords) {
  std::uint64_t h = 14695981039346656037ull;
  for (VertexId v : coords) {
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

constexpr std::uint32_t kEmptySlot = 0xffffffffu;

// Open-addressing index over the flat coordinate storage.
class StateIndex {
 public:
  StateIndex(const std::vector<VertexId>& coords, std::size_t width)
      : coords_(coords), width_(width), slots_(64, kEmptySlot) {}

  std::optional<std::uint32_t> find(std::span<const VertexId> key) const {
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash_coords(key) & mask;
    while (slots_[pos] != kEmptySlot) {
      if (equals(slots_[pos], key)) return slots_[pos];
      pos = (pos + 1) & mask;
    }
    return std::nullopt;
  }

  // Key must already be appended to the storage as state `idx`.
  void insert(std::uint32_t idx) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = hash_coords(state(idx)) & mask;
    while (slots_[pos] != kEmptySlot) pos = (pos + 1) & mask;
    slots_[pos] = idx;
    ++count_;
  }

  std::vector<std::uint32_t> take_slots() && { return std::move(slots_); }

 private:
  std::span<const VertexId> state(std::uint32_t idx) const {
    return {coords_.data() + static_cast<std::size_t>(idx) * width_, width_};
  }

  bool equals(std::uint32_t idx, std::span<const VertexId> key) const {
    auto s = state(idx);
    return std::equal(s.begin(), s.end(), key.begin(), key.end());
  }

  void grow() {
    std::vector<std::uint32_t> old = std::move(slots_);
    slots_.assign(old.size() * 2, kEmptySlot);
    std::size_t mask = slots_.size() - 1;
    for (std::uint32_t idx : old) {
      if (idx == kEmptySlot) continue;
      std::size_t pos = hash_coords(state(idx)) & mask;
      while (slots_[pos] != kEmptySlot) pos = (pos + 1) & mask;
      slots_[pos] = idx;
    }
  }

  const std::vector<VertexId>& coords_;
  std::size_t width_;
  std::vector<std::uint32_t> slots_;
  std::size_t count_ = 0;
};

}  // namespace

StateCapExceeded::StateCapExceeded(std::size_t cap, int level)
    : std::runtime_error("state cap of " + std::to_string(cap) +
                         " states exceeded while closing the level-" +
                         std::to_string(level) + " orbit"),
      cap_(cap),
      level_(level) {}

ProductState OrbitTable::state_tuple(std::uint32_t idx) const {
  auto s = state(idx);
  return ProductState{std::vector<VertexId>(s.begin(), s.end())};
}

std::uint32_t OrbitTable::image(std::uint32_t idx, const Word& w,
                                const Alphabet& ab) const {
  for (Letter l : w) idx = image(idx, l, ab);
  return idx;
}

std::optional<std::uint32_t> OrbitTable::find(
    std::span<const VertexId> coords) const {
  if (coords.size() != static_cast<std::size_t>(level_)) return std::nullopt;
  std::size_t mask = slots_.size() - 1;
  std::size_t pos = hash_coords(coords) & mask;
  while (slots_[pos] != kEmptySlot) {
    auto s = state(slots_[pos]);
    if (std::equal(s.begin(), s.end(), coords.begin(), coords.end()))
      return slots_[pos];
    pos = (pos + 1) & mask;
  }
  return std::nullopt;
}

ChainContext::ChainContext(const ChainConfig& config)
    : config_(config),
      alphabet_(config.rank),
      classes_(enumerate_a_class_reps(alphabet_, config.levels)),
      plan_(choose_primes(config.alpha, classes_.lengths)) {
  if (config.levels < 1) throw std::invalid_argument("levels must be >= 1");
  components_.reserve(classes_.reps.size());
  for (std::size_t i = 0; i < classes_.reps.size(); ++i) {
    components_.push_back(build_component_graph(
        {static_cast<int>(i) + 1, classes_.reps[i], plan_.primes[i]},
        alphabet_));
  }
  perms_.resize(components_.size());
}

ChainContext build_chain(const ChainConfig& config) {
  return ChainContext(config);
}

void ChainContext::check_level(int level) const {
  if (level < 1 || level > levels())
    throw std::invalid_argument("level " + std::to_string(level) +
                                " outside built range 1.." +
                                std::to_string(levels()));
}

const ComponentGraph& ChainContext::component(int i) const {
  check_level(i);
  return components_[i - 1];
}

ProductState ChainContext::root_state(int level) const {
  check_level(level);
  return ProductState{std::vector<VertexId>(level, 0)};
}

Int ChainContext::ambient_size(int level) const {
  check_level(level);
  Int prod = 1;
  for (int i = 0; i < level; ++i)
    prod *= Int(plan_.primes[i]) + classes_.lengths[i];
  return prod;
}

Int ChainContext::cycle_product_size(int level) const {
  check_level(level);
  Int prod = 1;
  for (int i = 0; i < level; ++i) prod *= plan_.primes[i];
  return prod;
}

Int ChainContext::fixed_region_size(int level) const {
  check_level(level);
  Int prod = 1;
  for (int i = 0; i < level; ++i) prod *= Int(plan_.primes[i]) - 1;
  return prod;
}

VertexId ChainContext::component_image(int i, VertexId v, Letter l) const {
  return point_image(components_[i - 1].graph(), v, l);
}

ProductState ChainContext::act(const ProductState& s, const Word& w) const {
  int level = static_cast<int>(s.level());
  check_level(level);
  ProductState out = s;
  for (Letter l : w) {
    for (int i = 0; i < level; ++i) {
      out.coords[i] = point_image(components_[i].graph(), out.coords[i], l);
    }
  }
  return out;
}

bool ChainContext::stabilizer_contains(const Word& w, int level) const {
  check_level(level);
  for (int i = 0; i < level; ++i) {
    VertexId v = 0;
    for (Letter l : w) v = point_image(components_[i].graph(), v, l);
    if (v != 0) return false;
  }
  return true;
}

void ChainContext::ensure_permutations(int level) const {
  int d = alphabet_.rank();
  for (int i = 0; i < level; ++i) {
    if (!perms_[i].empty()) continue;
    std::vector<Permutation> ps;
    ps.reserve(2 * d);
    for (int g = 0; g < d; ++g) ps.push_back(label_permutation(components_[i].graph(), g));
    for (int g = 0; g < d; ++g) ps.push_back(ps[g].inverse());
    perms_[i] = std::move(ps);
  }
}

bool ChainContext::orbit_computed(int level) const {
  return orbits_.find(level) != orbits_.end();
}

const OrbitTable& ChainContext::orbit(int level) const {
  check_level(level);
  auto it = orbits_.find(level);
  if (it != orbits_.end()) return it->second;
  if (config_.state_cap >= kEmptySlot)
    throw std::invalid_argument("state cap must fit 32-bit state indices");
  ensure_permutations(level);

  int d = alphabet_.rank();
  OrbitTable table;
  table.level_ = level;
  table.rank_ = d;
  table.coords_.assign(static_cast<std::size_t>(level), 0);  // the root tuple
  table.size_ = 1;
  StateIndex index(table.coords_, static_cast<std::size_t>(level));
  index.insert(0);

  std::vector<VertexId> scratch(static_cast<std::size_t>(level));
  for (std::uint32_t head = 0; head < table.size_; ++head) {
    for (int ord = 0; ord < 2 * d; ++ord) {
      // Re-derive the span each pass: coords_ may have been reallocated.
      const VertexId* src =
          table.coords_.data() + static_cast<std::size_t>(head) * level;
      for (int i = 0; i < level; ++i) {
        scratch[i] = perms_[i][ord].images[src[i]];
      }
      std::optional<std::uint32_t> found = index.find(scratch);
      std::uint32_t target;
      if (found) {
        target = *found;
      } else {
        if (table.size_ >= config_.state_cap)
          throw StateCapExceeded(config_.state_cap, level);
        target = static_cast<std::uint32_t>(table.size_);
        table.coords_.insert(table.coords_.end(), scratch.begin(), scratch.end());
        ++table.size_;
        index.insert(target);
      }
      table.images_.push_back(target);
    }
  }
  table.slots_ = std::move(index).take_slots();
  return orbits_.emplace(level, std::move(table)).first->second;
}

Int ChainContext::fixed_count(const Word& w, int level) const {
  const OrbitTable& t = orbit(level);
  std::size_t count = 0;
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    if (t.image(idx, w, alphabet_) == idx) ++count;
  }
  return Int(count);
}

Rat ChainContext::fix_ratio(const Word& w, int level) const {
  return Rat(fixed_count(w, level), Int(orbit(level).size()));
}

std::vector<ChainLevelStats> coset_tree_stats(const ChainContext& ctx,
                                              int up_to) {
  if (up_to < 1 || up_to > ctx.levels())
    throw std::invalid_argument("stats level out of range");
  const Alphabet& ab = ctx.alphabet();
  std::vector<ChainLevelStats> stats;
  for (int n = 1; n <= up_to; ++n) {
    const OrbitTable& t = ctx.orbit(n);
    ChainLevelStats row;
    row.level = n;
    row.orbit_size = Int(t.size());
    row.shadow_measure = Rat(1, Int(t.size()));
    stats.push_back(std::move(row));
  }
  for (int n = 1; n < up_to; ++n) {
    const OrbitTable& fine = ctx.orbit(n + 1);
    const OrbitTable& coarse = ctx.orbit(n);
    std::vector<std::size_t> fiber(coarse.size(), 0);
    std::vector<std::uint32_t> projected(fine.size());
    for (std::uint32_t idx = 0; idx < fine.size(); ++idx) {
      auto s = fine.state(idx);
      auto parent = coarse.find(s.subspan(0, s.size() - 1));
      if (!parent)
        throw std::logic_error("projection left the coarser orbit");
      projected[idx] = *parent;
      ++fiber[*parent];
    }
    for (std::size_t c : fiber) {
      if (c != fiber[0])
        throw std::logic_error("children counts are not uniform at level " +
                               std::to_string(n));
    }
    // Equivariance: projecting then acting equals acting then projecting.
    for (std::uint32_t idx = 0; idx < fine.size(); ++idx) {
      for (int ord = 0; ord < 2 * ab.rank(); ++ord) {
        Letter l = letter_from_ord(ord, ab);
        if (projected[fine.image(idx, l, ab)] !=
            coarse.image(projected[idx], l, ab))
          throw std::logic_error("projection is not equivariant");
      }
    }
    stats[n - 1].children_count = Int(fiber[0]);
  }
  return stats;
}

void write_fixr_csv(std::ostream& out, const ChainContext& ctx, const Word& w,
                    int up_to) {
  out << "level,index,word,fixr_num,fixr_den,bound_num,bound_den,"
         "alpha_num,alpha_den\n";
  const PrimePlan& plan = ctx.plan();
  Int bound_num = 1;
  Int bound_den = 1;
  for (int n = 1; n <= up_to; ++n) {
    bound_num *= Int(plan.primes[n - 1]) - 1;
    bound_den *= Int(plan.primes[n - 1]) + plan.lengths[n - 1];
    const OrbitTable& t = ctx.orbit(n);
    Int fixed = ctx.fixed_count(w, n);
    out << n << ',' << t.size() << ',' << print_word(w, ctx.alphabet()) << ','
        << fixed.str() << ',' << t.size() << ',' << bound_num.str() << ','
        << bound_den.str() << ',' << numerator(ctx.alpha()).str() << ','
        << denominator(ctx.alpha()).str() << '\n';
  }
}

}  // namespace freechain
