#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "freechain/words.hpp"

namespace freechain {

/// Conjugacy-class representatives w_1, w_2, ... each starting with the
/// plain generator a, listed with non-decreasing lengths k_i = |w_i|.
struct ClassList {
  std::vector<Word> reps;
  std::vector<int> lengths;

  int count() const { return static_cast<int>(reps.size()); }
};

/// Incremental length-lex enumeration of reduced a-starting words, emitting
/// a word exactly when its conjugacy key has not been seen before. Because
/// the scan is by increasing length, emitted lengths are non-decreasing and
/// each emitted word is the least a-starting member of its class.
class ClassEnumerator {
 public:
  explicit ClassEnumerator(const Alphabet& ab);

  /// Emits the next fresh-class representative.
  const Word& next();

  const std::vector<Word>& reps() const { return reps_; }
  const Alphabet& alphabet() const { return ab_; }

  /// 1-based index of the class among emitted reps, if already emitted.
  std::optional<int> find_class(const ConjClassKey& key) const;

  /// Extends the enumeration until the class of `key` is emitted, up to
  /// `max_reps` representatives. Returns its 1-based index.
  std::optional<int> extend_until(const ConjClassKey& key, int max_reps);

 private:
  bool advance_word();

  Alphabet ab_;
  std::vector<Word> reps_;
  std::unordered_map<std::string, int> key_index_;
  std::vector<int> current_;  // letter ords of the current a-starting word
};

ClassList enumerate_a_class_reps(const Alphabet& ab, int count);

}  // namespace freechain
