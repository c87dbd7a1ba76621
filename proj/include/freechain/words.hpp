#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freechain {

/// Generating set a, b, c1, ..., c_{d-2} of the rank-d free group, in that
/// fixed order. Lexicographic comparisons place all plain generators before
/// all inverses: a < b < c1 < ... < a' < b' < c1' < ...
class Alphabet {
 public:
  explicit Alphabet(int rank);

  int rank() const { return rank_; }
  std::string name(int gen) const;
  std::optional<int> find(std::string_view name) const;

 private:
  int rank_;
};

struct Letter {
  std::uint16_t gen = 0;
  bool inverted = false;

  Letter inverse() const { return {gen, !inverted}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

inline int letter_ord(Letter l, const Alphabet& ab) {
  return l.gen + (l.inverted ? ab.rank() : 0);
}

Letter letter_from_ord(int ord, const Alphabet& ab);

/// A freely reduced word; the empty word is the group identity. All factory
/// functions reduce, so a constructed Word is reduced by construction.
class Word {
 public:
  Word() = default;

  /// Free reduction of an arbitrary letter sequence.
  static Word reduced(std::span<const Letter> tokens);
  static Word single(Letter l);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  explicit Word(std::vector<Letter> reduced_letters)
      : letters_(std::move(reduced_letters)) {}

  std::vector<Letter> letters_;

  friend Word invert(const Word&);
};

Word reduce(std::span<const Letter> tokens);
Word invert(const Word& w);
Word multiply(const Word& u, const Word& v);
Word power(const Word& w, int n);

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicDecomposition {
  Word core;
  Word conjugator;
};

CyclicDecomposition cyclic_reduce(const Word& w);

bool is_cyclically_reduced(const Word& w);

/// Canonical conjugacy-class label: the lexicographically least cyclic
/// rotation of the cyclic reduction.
struct ConjClassKey {
  Word key;
  friend bool operator==(const ConjClassKey&, const ConjClassKey&) = default;
};

/// Throws std::invalid_argument for the identity (no conjugacy key).
ConjClassKey conjugacy_key(const Word& w, const Alphabet& ab);

/// Plain lexicographic order on letter ords; a proper prefix sorts first.
bool lex_less(const Word& u, const Word& v, const Alphabet& ab);

/// Shorter words first, ties broken lexicographically.
bool length_lex_less(const Word& u, const Word& v, const Alphabet& ab);

/// Compact byte encoding (one byte per letter ord), usable as a hash key.
std::string word_bytes(const Word& w, const Alphabet& ab);

/// Text grammar: token = name optionally followed by an apostrophe marking
/// the inverse; names are "a", "b", or "c" followed by digits; whitespace
/// between tokens is ignored; empty input is the identity.
Word parse_word(std::string_view text, const Alphabet& ab);
std::string print_word(const Word& w, const Alphabet& ab);

/// Calls fn for every reduced word of exactly the given length, in
/// lexicographic order; optionally restricted to a fixed first letter.
void for_each_reduced_word(const Alphabet& ab, int length,
                           const std::function<void(const Word&)>& fn,
                           std::optional<Letter> first = std::nullopt);

}  // namespace freechain
