// word.hpp
//
// Exact algebra of freely reduced words and cyclic words over a fixed
// basis of the free group F_N.  Letters are generator/inverse symbols,
// words are immutable value types, and every operation returns a freely
// reduced result.

#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lamina {

// Thrown when an operation would produce a word longer than the
// configured length budget.  Iterates of automorphisms grow
// geometrically, so the library fails loudly instead of exhausting
// memory.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::string stage, std::size_t limit)
      : std::runtime_error("length budget of " + std::to_string(limit) +
                           " letters exceeded in " + stage),
        stage_(std::move(stage)),
        limit_(limit) {}
  const std::string& stage() const { return stage_; }
  std::size_t limit() const { return limit_; }

 private:
  std::string stage_;
  std::size_t limit_;
};

constexpr std::size_t kDefaultBudget = 1'000'000;

// A generator or inverse generator.  The packed code orders letters as
// a < a^-1 < b < b^-1 < ..., which is the total order used for
// canonical rotations of cyclic words.
class Letter {
 public:
  Letter() : code_(0) {}
  Letter(int index, bool positive)
      : code_(static_cast<std::uint8_t>((index << 1) | (positive ? 0 : 1))) {}

  static Letter from_code(int code) {
    Letter l;
    l.code_ = static_cast<std::uint8_t>(code);
    return l;
  }

  int index() const { return code_ >> 1; }
  bool positive() const { return (code_ & 1) == 0; }
  int code() const { return code_; }
  Letter inverse() const { return from_code(code_ ^ 1); }

  friend bool operator==(Letter a, Letter b) { return a.code_ == b.code_; }
  friend bool operator!=(Letter a, Letter b) { return a.code_ != b.code_; }
  friend bool operator<(Letter a, Letter b) { return a.code_ < b.code_; }

 private:
  std::uint8_t code_;
};

// Names and rank of the fixed basis.  Generator names are single lower
// case ASCII letters; the inverse of generator `x` is spelled `X`.
class Basis {
 public:
  explicit Basis(int rank);
  Basis(int rank, std::string names);

  int rank() const { return rank_; }
  char name(int index) const { return names_[static_cast<std::size_t>(index)]; }
  // Maps a character to a Letter, or throws std::invalid_argument.
  Letter letter_of(char c) const;
  char char_of(Letter l) const;

  friend bool operator==(const Basis& a, const Basis& b) {
    return a.rank_ == b.rank_ && a.names_ == b.names_;
  }

 private:
  int rank_;
  std::string names_;
};

// A freely reduced word in F_N.  The empty word is the identity.
class ReducedWord {
 public:
  ReducedWord() : rank_(0) {}
  static ReducedWord identity(int rank) { return ReducedWord(rank, {}); }

  // Asserts that `letters` is freely reduced and within rank.
  ReducedWord(int rank, std::vector<Letter> letters);

  // Free reduction of an arbitrary letter sequence.
  static ReducedWord reduce(int rank, std::span<const Letter> letters);

  int rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter at(std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  ReducedWord subword(std::size_t pos, std::size_t len) const;

  friend bool operator==(const ReducedWord& a, const ReducedWord& b) {
    return a.rank_ == b.rank_ && a.letters_ == b.letters_;
  }
  friend bool operator!=(const ReducedWord& a, const ReducedWord& b) {
    return !(a == b);
  }
  // Length-lexicographic order; used for deterministic enumeration and
  // sorted language serialization.
  friend bool operator<(const ReducedWord& a, const ReducedWord& b);

 private:
  int rank_;
  std::vector<Letter> letters_;
};

// Group multiplication: free reduction of the concatenation.  Both
// arguments are already reduced, so cancellation only happens at the
// junction.
ReducedWord multiply(const ReducedWord& u, const ReducedWord& v,
                     std::size_t budget = kDefaultBudget);

ReducedWord invert(const ReducedWord& u);

// Longest common prefix length of two words.
std::size_t common_prefix(const ReducedWord& u, const ReducedWord& v);

// A conjugacy class of F_N: a cyclically reduced word in its canonical
// rotation (lexicographically least over all rotations in the Letter
// order).  Two words are conjugate iff their CyclicWords compare equal.
class CyclicWord {
 public:
  CyclicWord() = default;

  // `w` must be nonempty and cyclically reduced; rotates to canonical form.
  explicit CyclicWord(const ReducedWord& w);

  const ReducedWord& rotation() const { return rotation_; }
  std::size_t size() const { return rotation_.size(); }
  int rank() const { return rotation_.rank(); }
  Letter at(std::size_t i) const { return rotation_.at(i); }

  CyclicWord inverse() const;

  friend bool operator==(const CyclicWord& a, const CyclicWord& b) {
    return a.rotation_ == b.rotation_;
  }
  friend bool operator!=(const CyclicWord& a, const CyclicWord& b) {
    return !(a == b);
  }
  friend bool operator<(const CyclicWord& a, const CyclicWord& b) {
    return a.rotation_ < b.rotation_;
  }

 private:
  ReducedWord rotation_;
};

// Writes u as g * c * g^-1 with c the canonical cyclic word.
struct CyclicNormalForm {
  CyclicWord cyclic;
  ReducedWord conjugator;
};

// Throws std::invalid_argument on the identity word.
CyclicNormalForm cyclic_normalize(const ReducedWord& u);

// All factors of length 1..k of the biinfinite periodic word spelled by
// w, wrap-around included.
std::set<ReducedWord> factors(const CyclicWord& w, int k);

// Word syntax: `a` is a generator, `A` its inverse, `1` the identity.
// parse_word rejects non-reduced input.
ReducedWord parse_word(const Basis& basis, const std::string& text);
std::string format_word(const Basis& basis, const ReducedWord& w);
// CyclicWord serialization: canonical rotation in square brackets.
CyclicWord parse_cyclic(const Basis& basis, const std::string& text);
std::string format_cyclic(const Basis& basis, const CyclicWord& w);

}  // namespace lamina
