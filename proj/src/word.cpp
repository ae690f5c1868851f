#include "lamina/word.hpp"

#include <algorithm>
#include <cassert>

namespace lamina {

Basis::Basis(int rank) : rank_(rank) {
  if (rank < 2) throw std::invalid_argument("basis rank must be >= 2");
  if (rank > 26) throw std::invalid_argument("basis rank must be <= 26");
  for (int i = 0; i < rank; ++i) names_.push_back(static_cast<char>('a' + i));
}

Basis::Basis(int rank, std::string names) : rank_(rank), names_(std::move(names)) {
  if (rank < 2) throw std::invalid_argument("basis rank must be >= 2");
  if (static_cast<int>(names_.size()) != rank)
    throw std::invalid_argument("basis needs exactly one name per generator");
  for (int i = 0; i < rank; ++i) {
    char c = names_[static_cast<std::size_t>(i)];
    if (c < 'a' || c > 'z')
      throw std::invalid_argument("generator names must be lower case letters");
    for (int j = 0; j < i; ++j)
      if (names_[static_cast<std::size_t>(j)] == c)
        throw std::invalid_argument("generator names must be distinct");
  }
}

Letter Basis::letter_of(char c) const {
  bool positive = (c >= 'a' && c <= 'z');
  char lower = positive ? c : static_cast<char>(c - 'A' + 'a');
  auto pos = names_.find(lower);
  if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) || pos == std::string::npos)
    throw std::invalid_argument(std::string("unknown generator symbol '") + c + "'");
  return Letter(static_cast<int>(pos), positive);
}

char Basis::char_of(Letter l) const {
  char c = names_[static_cast<std::size_t>(l.index())];
  return l.positive() ? c : static_cast<char>(c - 'a' + 'A');
}

ReducedWord::ReducedWord(int rank, std::vector<Letter> letters)
    : rank_(rank), letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].index() >= rank_)
      throw std::invalid_argument("letter index out of rank");
    if (i + 1 < letters_.size() && letters_[i + 1] == letters_[i].inverse())
      throw std::invalid_argument("word is not freely reduced");
  }
}

ReducedWord ReducedWord::reduce(int rank, std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return ReducedWord(rank, std::move(out));
}

ReducedWord ReducedWord::subword(std::size_t pos, std::size_t len) const {
  assert(pos + len <= letters_.size());
  std::vector<Letter> out(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                          letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return ReducedWord(rank_, std::move(out));
}

bool operator<(const ReducedWord& a, const ReducedWord& b) {
  if (a.letters_.size() != b.letters_.size())
    return a.letters_.size() < b.letters_.size();
  for (std::size_t i = 0; i < a.letters_.size(); ++i) {
    if (a.letters_[i] != b.letters_[i]) return a.letters_[i] < b.letters_[i];
  }
  return false;
}

ReducedWord multiply(const ReducedWord& u, const ReducedWord& v, std::size_t budget) {
  if (u.rank() != v.rank() && !u.empty() && !v.empty())
    throw std::invalid_argument("basis mismatch in multiply");
  int rank = u.empty() ? v.rank() : u.rank();
  std::size_t i = u.size();
  std::size_t j = 0;
  while (i > 0 && j < v.size() && u.at(i - 1) == v.at(j).inverse()) {
    --i;
    ++j;
  }
  if (i + (v.size() - j) > budget) throw BudgetError("multiply", budget);
  std::vector<Letter> out;
  out.reserve(i + (v.size() - j));
  for (std::size_t p = 0; p < i; ++p) out.push_back(u.at(p));
  for (std::size_t p = j; p < v.size(); ++p) out.push_back(v.at(p));
  return ReducedWord(rank, std::move(out));
}

ReducedWord invert(const ReducedWord& u) {
  std::vector<Letter> out;
  out.reserve(u.size());
  for (std::size_t i = u.size(); i > 0; --i) out.push_back(u.at(i - 1).inverse());
  return ReducedWord(u.rank(), std::move(out));
}

std::size_t common_prefix(const ReducedWord& u, const ReducedWord& v) {
  std::size_t n = std::min(u.size(), v.size());
  std::size_t i = 0;
  while (i < n && u.at(i) == v.at(i)) ++i;
  return i;
}

namespace {

// Index of the lexicographically least rotation (Booth would be O(n);
// quadratic is fine at desk scale).
std::size_t least_rotation(const ReducedWord& w) {
  std::size_t n = w.size();
  std::size_t best = 0;
  for (std::size_t cand = 1; cand < n; ++cand) {
    for (std::size_t i = 0; i < n; ++i) {
      Letter a = w.at((cand + i) % n);
      Letter b = w.at((best + i) % n);
      if (a < b) {
        best = cand;
        break;
      }
      if (b < a) break;
    }
  }
  return best;
}

bool cyclically_reduced(const ReducedWord& w) {
  return w.empty() || w.at(0) != w.at(w.size() - 1).inverse() || w.size() == 1;
}

}  // namespace

CyclicWord::CyclicWord(const ReducedWord& w) {
  if (w.empty()) throw std::invalid_argument("cyclic word must be nonempty");
  if (!cyclically_reduced(w))
    throw std::invalid_argument("word is not cyclically reduced");
  std::size_t r = least_rotation(w);
  std::vector<Letter> rot;
  rot.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) rot.push_back(w.at((r + i) % w.size()));
  rotation_ = ReducedWord(w.rank(), std::move(rot));
}

CyclicWord CyclicWord::inverse() const { return CyclicWord(invert(rotation_)); }

CyclicNormalForm cyclic_normalize(const ReducedWord& u) {
  if (u.empty()) throw std::invalid_argument("cannot cyclically normalize the identity");
  // Strip matched end pairs: u = g * core * g^-1.
  std::size_t lo = 0;
  std::size_t hi = u.size();
  while (hi - lo >= 2 && u.at(lo) == u.at(hi - 1).inverse()) {
    ++lo;
    --hi;
  }
  ReducedWord g = u.subword(0, lo);
  ReducedWord core = u.subword(lo, hi - lo);
  CyclicWord cyc(core);
  // core = p * rotation * p^-1 where p is the pre-rotation prefix.
  std::size_t r = 0;
  while (r < core.size()) {
    bool match = true;
    for (std::size_t i = 0; i < core.size(); ++i) {
      if (core.at((r + i) % core.size()) != cyc.at(i)) {
        match = false;
        break;
      }
    }
    if (match) break;
    ++r;
  }
  ReducedWord conj = multiply(g, core.subword(0, r));
  return CyclicNormalForm{cyc, conj};
}

std::set<ReducedWord> factors(const CyclicWord& w, int k) {
  if (k < 1) throw std::invalid_argument("factor depth must be >= 1");
  std::size_t n = w.size();
  std::size_t p = static_cast<std::size_t>(k) / n + 3;  // ceil(k/n) + 2 copies
  std::vector<Letter> buf;
  buf.reserve(n * p);
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t i = 0; i < n; ++i) buf.push_back(w.at(i));
  std::set<ReducedWord> out;
  for (std::size_t pos = 0; pos < n; ++pos) {
    for (std::size_t len = 1; len <= static_cast<std::size_t>(k) && pos + len <= buf.size(); ++len) {
      std::vector<Letter> sub(buf.begin() + static_cast<std::ptrdiff_t>(pos),
                              buf.begin() + static_cast<std::ptrdiff_t>(pos + len));
      out.insert(ReducedWord(w.rank(), std::move(sub)));
    }
  }
  return out;
}

ReducedWord parse_word(const Basis& basis, const std::string& text) {
  if (text == "1") return ReducedWord::identity(basis.rank());
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    Letter l = basis.letter_of(text[i]);
    if (!letters.empty() && letters.back() == l.inverse())
      throw std::invalid_argument("word '" + text + "' is not freely reduced (position " +
                                  std::to_string(i + 1) + ")");
    letters.push_back(l);
  }
  return ReducedWord(basis.rank(), std::move(letters));
}

std::string format_word(const Basis& basis, const ReducedWord& w) {
  if (w.empty()) return "1";
  std::string out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(basis.char_of(w.at(i)));
  return out;
}

CyclicWord parse_cyclic(const Basis& basis, const std::string& text) {
  if (text.size() < 3 || text.front() != '[' || text.back() != ']')
    throw std::invalid_argument("cyclic word must be written inside square brackets");
  ReducedWord w = parse_word(basis, text.substr(1, text.size() - 2));
  return cyclic_normalize(w).cyclic;
}

std::string format_cyclic(const Basis& basis, const CyclicWord& w) {
  return "[" + format_word(basis, w.rotation()) + "]";
}

}  // namespace lamina
