#include "freechain/classes.hpp"

#include <stdexcept>

namespace freechain {

namespace {

int inverse_ord(int ord, int d) { return (ord + d) % (2 * d); }

// Least ord usable at a position whose predecessor has ord `prev`.
int first_ord_after(int prev, int d) { return inverse_ord(prev, d) == 0 ? 1 : 0; }

}  // namespace

ClassEnumerator::ClassEnumerator(const Alphabet& ab) : ab_(ab) {}

bool ClassEnumerator::advance_word() {
  int d = ab_.rank();
  if (current_.empty()) {
    current_ = {0};  // the word "a"
    return true;
  }
  // Odometer step over reduced a-starting words of the current length, then
  // roll over to the shortest word of the next length.
  for (int pos = static_cast<int>(current_.size()) - 1; pos >= 1; --pos) {
    int banned = inverse_ord(current_[pos - 1], d);
    int ord = current_[pos] + 1;
    while (ord < 2 * d && ord == banned) ++ord;
    if (ord < 2 * d) {
      current_[pos] = ord;
      for (std::size_t j = pos + 1; j < current_.size(); ++j) {
        current_[j] = first_ord_after(current_[j - 1], d);
      }
      return true;
    }
  }
  current_.assign(current_.size() + 1, 0);
  for (std::size_t j = 1; j < current_.size(); ++j) {
    current_[j] = first_ord_after(current_[j - 1], d);
  }
  return true;
}

const Word& ClassEnumerator::next() {
  while (true) {
    advance_word();
    std::vector<Letter> letters;
    letters.reserve(current_.size());
    for (int ord : current_) letters.push_back(letter_from_ord(ord, ab_));
    Word w = Word::reduced(letters);
    ConjClassKey key = conjugacy_key(w, ab_);
    std::string bytes = word_bytes(key.key, ab_);
    auto [it, inserted] =
        key_index_.emplace(std::move(bytes), static_cast<int>(reps_.size()) + 1);
    if (inserted) {
      reps_.push_back(std::move(w));
      return reps_.back();
    }
  }
}

std::optional<int> ClassEnumerator::find_class(const ConjClassKey& key) const {
  auto it = key_index_.find(word_bytes(key.key, ab_));
  if (it == key_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> ClassEnumerator::extend_until(const ConjClassKey& key,
                                                 int max_reps) {
  if (auto idx = find_class(key)) return idx;
  while (static_cast<int>(reps_.size()) < max_reps) {
    next();
    if (auto idx = find_class(key)) return idx;
  }
  return std::nullopt;
}

ClassList enumerate_a_class_reps(const Alphabet& ab, int count) {
  if (count < 1) throw std::invalid_argument("class count must be positive");
  ClassEnumerator en(ab);
  ClassList out;
  for (int i = 0; i < count; ++i) {
    const Word& w = en.next();
    out.reps.push_back(w);
    out.lengths.push_back(static_cast<int>(w.size()));
  }
  return out;
}

}  // namespace freechain
