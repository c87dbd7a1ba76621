#include "freechain/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace freechain {

Alphabet::Alphabet(int rank) : rank_(rank) {
  if (rank < 2) throw std::invalid_argument("alphabet rank must be at least 2");
}

std::string Alphabet::name(int gen) const {
  if (gen < 0 || gen >= rank_) throw std::out_of_range("generator index");
  if (gen == 0) return "a";
  if (gen == 1) return "b";
  return "c" + std::to_string(gen - 1);
}

std::optional<int> Alphabet::find(std::string_view name) const {
  if (name == "a") return 0;
  if (name == "b") return 1;
  if (name.size() >= 2 && name[0] == 'c') {
    int idx = 0;
    for (char ch : name.substr(1)) {
      if (ch < '0' || ch > '9') return std::nullopt;
      idx = idx * 10 + (ch - '0');
      if (idx > rank_) return std::nullopt;
    }
    if (idx >= 1 && idx <= rank_ - 2) return idx + 1;
  }
  return std::nullopt;
}

Letter letter_from_ord(int ord, const Alphabet& ab) {
  int d = ab.rank();
  if (ord < 0 || ord >= 2 * d) throw std::out_of_range("letter ord");
  return {static_cast<std::uint16_t>(ord % d), ord >= d};
}

Word Word::reduced(std::span<const Letter> tokens) {
  std::vector<Letter> out;
  out.reserve(tokens.size());
  for (Letter l : tokens) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

Word Word::single(Letter l) { return Word(std::vector<Letter>{l}); }

Word reduce(std::span<const Letter> tokens) { return Word::reduced(tokens); }

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(std::move(out));
}

Word multiply(const Word& u, const Word& v) {
  std::vector<Letter> all(u.begin(), u.end());
  all.insert(all.end(), v.begin(), v.end());
  return Word::reduced(all);
}

Word power(const Word& w, int n) {
  Word base = n < 0 ? invert(w) : w;
  Word acc;
  for (int i = 0; i < std::abs(n); ++i) acc = multiply(acc, base);
  return acc;
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || w[0] != w[w.size() - 1].inverse();
}

CyclicDecomposition cyclic_reduce(const Word& w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  std::vector<Letter> conj;
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    conj.push_back(w[lo]);
    ++lo;
    --hi;
  }
  std::vector<Letter> core(w.begin() + lo, w.begin() + hi);
  return {Word::reduced(core), Word::reduced(conj)};
}

ConjClassKey conjugacy_key(const Word& w, const Alphabet& ab) {
  Word core = cyclic_reduce(w).core;
  if (core.empty())
    throw std::invalid_argument("no conjugacy key for identity");
  std::vector<Letter> best(core.begin(), core.end());
  std::vector<Letter> rot = best;
  auto less = [&](const std::vector<Letter>& x, const std::vector<Letter>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      int a = letter_ord(x[i], ab);
      int b = letter_ord(y[i], ab);
      if (a != b) return a < b;
    }
    return false;
  };
  for (std::size_t i = 1; i < core.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (less(rot, best)) best = rot;
  }
  return ConjClassKey{Word::reduced(best)};
}

bool lex_less(const Word& u, const Word& v, const Alphabet& ab) {
  std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) {
    int a = letter_ord(u[i], ab);
    int b = letter_ord(v[i], ab);
    if (a != b) return a < b;
  }
  return u.size() < v.size();
}

bool length_lex_less(const Word& u, const Word& v, const Alphabet& ab) {
  if (u.size() != v.size()) return u.size() < v.size();
  return lex_less(u, v, ab);
}

std::string word_bytes(const Word& w, const Alphabet& ab) {
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(static_cast<char>(letter_ord(l, ab)));
  return out;
}

Word parse_word(std::string_view text, const Alphabet& ab) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    char c = text[i];
    std::string name;
    if (c == 'a' || c == 'b') {
      name = c;
      ++i;
    } else if (c == 'c') {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i + 1)
        throw std::invalid_argument("generator 'c' needs an index at position " +
                                    std::to_string(i));
      name = std::string(text.substr(i, j - i));
      i = j;
    } else {
      throw std::invalid_argument("unexpected character '" + std::string(1, c) +
                                  "' at position " + std::to_string(i));
    }
    auto gen = ab.find(name);
    if (!gen)
      throw std::invalid_argument("unknown generator '" + name + "' for rank " +
                                  std::to_string(ab.rank()));
    bool inv = i < text.size() && text[i] == '\'';
    if (inv) ++i;
    letters.push_back({static_cast<std::uint16_t>(*gen), inv});
  }
  return Word::reduced(letters);
}

std::string print_word(const Word& w, const Alphabet& ab) {
  std::string out;
  for (Letter l : w) {
    out += ab.name(l.gen);
    if (l.inverted) out += '\'';
  }
  return out;
}

namespace {

void enumerate_rec(const Alphabet& ab, std::vector<Letter>& prefix, int length,
                   const std::function<void(const Word&)>& fn) {
  if (static_cast<int>(prefix.size()) == length) {
    fn(Word::reduced(prefix));
    return;
  }
  for (int ord = 0; ord < 2 * ab.rank(); ++ord) {
    Letter l = letter_from_ord(ord, ab);
    if (!prefix.empty() && l == prefix.back().inverse()) continue;
    prefix.push_back(l);
    enumerate_rec(ab, prefix, length, fn);
    prefix.pop_back();
  }
}

}  // namespace

void for_each_reduced_word(const Alphabet& ab, int length,
                           const std::function<void(const Word&)>& fn,
                           std::optional<Letter> first) {
  if (length < 0) throw std::invalid_argument("negative word length");
  std::vector<Letter> prefix;
  if (length == 0) {
    fn(Word());
    return;
  }
  if (first) {
    prefix.push_back(*first);
    enumerate_rec(ab, prefix, length, fn);
  } else {
    enumerate_rec(ab, prefix, length, fn);
  }
}

}  // namespace freechain
