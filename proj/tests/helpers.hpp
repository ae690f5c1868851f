// Shared fixtures and independent oracles for the test suites.  The
// oracles deliberately avoid the library's optimized code paths.

#pragma once

#include <random>
#include <vector>

#include "lamina/automorphism.hpp"
#include "lamina/word.hpp"

namespace lamina::testing {

// Naive push-and-cancel reduction over the full concatenation.
inline std::vector<Letter> oracle_reduce(const std::vector<Letter>& letters) {
  std::vector<Letter> stack;
  for (Letter l : letters) {
    if (!stack.empty() && stack.back() == l.inverse())
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return stack;
}

inline ReducedWord oracle_multiply(const ReducedWord& u, const ReducedWord& v) {
  std::vector<Letter> all;
  for (std::size_t i = 0; i < u.size(); ++i) all.push_back(u.at(i));
  for (std::size_t i = 0; i < v.size(); ++i) all.push_back(v.at(i));
  return ReducedWord(u.empty() ? v.rank() : u.rank(), oracle_reduce(all));
}

// Conjugacy of cyclically reduced words by rotation comparison.
inline bool oracle_rotation_conjugate(const ReducedWord& a, const ReducedWord& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool match = true;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.at((r + i) % a.size()) != b.at(i)) {
        match = false;
        break;
      }
    if (match) return true;
  }
  return a.size() == 0;
}

inline ReducedWord random_word(std::mt19937_64& rng, int rank, int len) {
  std::vector<Letter> letters;
  std::uniform_int_distribution<int> first(0, 2 * rank - 1);
  while (static_cast<int>(letters.size()) < len) {
    Letter l = Letter::from_code(first(rng));
    if (!letters.empty() && letters.back() == l.inverse()) continue;
    letters.push_back(l);
  }
  return ReducedWord(rank, std::move(letters));
}

// Arbitrary letter sequence (not necessarily reduced) for oracle tests.
inline std::vector<Letter> random_letters(std::mt19937_64& rng, int rank, int len) {
  std::vector<Letter> letters;
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  for (int i = 0; i < len; ++i) letters.push_back(Letter::from_code(pick(rng)));
  return letters;
}

// The running fixture: a -> ab, b -> ac, c -> a with its inverse
// a -> c, b -> Ca, c -> Cb.
inline Automorphism tribonacci() {
  Basis basis(3);
  std::vector<ReducedWord> images = {parse_word(basis, "ab"), parse_word(basis, "ac"),
                                     parse_word(basis, "a")};
  std::vector<ReducedWord> inverses = {parse_word(basis, "c"), parse_word(basis, "Ca"),
                                       parse_word(basis, "Cb")};
  return Automorphism(3, images, inverses);
}

}  // namespace lamina::testing
