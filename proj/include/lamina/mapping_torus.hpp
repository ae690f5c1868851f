// mapping_torus.hpp
//
// Normal forms w * t^m in the mapping torus group of an automorphism,
// with the rewriting t w t^-1 = Phi(w) driving multiplication.

#pragma once

#include "lamina/automorphism.hpp"
#include "lamina/word.hpp"

namespace lamina {

struct MappingTorusElement {
  ReducedWord w;
  long m = 0;

  friend bool operator==(const MappingTorusElement& a, const MappingTorusElement& b) {
    return a.m == b.m && a.w == b.w;
  }
  friend bool operator!=(const MappingTorusElement& a, const MappingTorusElement& b) {
    return !(a == b);
  }
};

// (u, a) * (v, b) = (u * Phi^a(v), a + b).  Negative exponents need the
// inverse images of phi.
MappingTorusElement mt_multiply(const Automorphism& phi, const MappingTorusElement& g,
                                const MappingTorusElement& h,
                                std::size_t budget = kDefaultBudget);

MappingTorusElement mt_inverse(const Automorphism& phi, const MappingTorusElement& g,
                               std::size_t budget = kDefaultBudget);

MappingTorusElement mt_power(const Automorphism& phi, const MappingTorusElement& g, int n,
                             std::size_t budget = kDefaultBudget);

// The automorphism psi_g = ad_w o Phi^m: x -> w * Phi^m(x) * w^-1.  Its
// boundary dynamics carry the fiber of g^inf.
Automorphism conjugation_automorphism(const Automorphism& phi, const MappingTorusElement& g,
                                      std::size_t budget = kDefaultBudget);

// Bounded conjugacy tests used for grouping search results; heuristic
// in the sense that a negative answer only reflects the bounds.
bool fn_conjugate_bounded(const Automorphism& phi, const MappingTorusElement& g,
                          const MappingTorusElement& h, int conj_len,
                          std::size_t budget = kDefaultBudget);
bool g_conjugate_bounded(const Automorphism& phi, const MappingTorusElement& g,
                         const MappingTorusElement& h, int conj_len, int exp_radius,
                         std::size_t budget = kDefaultBudget);

// Enumerates all reduced words of length 0..max_len in deterministic
// (length, lexicographic) order.
std::vector<ReducedWord> enumerate_words(int rank, int max_len);

}  // namespace lamina
