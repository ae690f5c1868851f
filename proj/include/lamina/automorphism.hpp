// automorphism.hpp
//
// Automorphisms of F_N given by basis images.  Inverses are never
// computed algorithmically: callers supply inverse images and the
// constructor verifies that the two maps compose to the identity on
// all generators.

#pragma once

#include <optional>
#include <vector>

#include "lamina/word.hpp"

namespace lamina {

class Automorphism {
 public:
  // `images[i]` is the image of generator i.  If `inverse_images` is
  // present, both compositions are verified to fix every generator.
  Automorphism(int rank, std::vector<ReducedWord> images,
               std::optional<std::vector<ReducedWord>> inverse_images = std::nullopt);

  static Automorphism identity(int rank);
  // x -> u x u^-1, with inverse images supplied automatically.
  static Automorphism inner(const ReducedWord& u);

  int rank() const { return rank_; }
  const ReducedWord& image(int i) const { return images_[static_cast<std::size_t>(i)]; }
  bool has_inverse() const { return inverse_images_.has_value(); }
  const ReducedWord& inverse_image(int i) const;

  // Homomorphic image of u, freely reduced.
  ReducedWord apply(const ReducedWord& u, std::size_t budget = kDefaultBudget) const;
  // n-fold application; n < 0 uses the supplied inverse images.
  ReducedWord power_apply(int n, const ReducedWord& u,
                          std::size_t budget = kDefaultBudget) const;
  CyclicWord apply_class(const CyclicWord& c, std::size_t budget = kDefaultBudget) const;

  // The inverse automorphism; requires inverse images.
  Automorphism inverted() const;
  // this o other.
  Automorphism compose(const Automorphism& other, std::size_t budget = kDefaultBudget) const;

 private:
  Automorphism() : rank_(0) {}
  int rank_;
  std::vector<ReducedWord> images_;
  std::optional<std::vector<ReducedWord>> inverse_images_;
};

// Bounded heuristic atoroidality scan: every conjugacy class of cyclic
// length <= max_len whose phi^n-image (1 <= n <= max_power) equals the
// class itself.  Empty output is necessary, not sufficient, evidence of
// atoroidality.
struct PeriodicClass {
  CyclicWord word;
  int period;
};
std::vector<PeriodicClass> periodic_class_scan(const Automorphism& phi, int max_len,
                                               int max_power,
                                               std::size_t budget = kDefaultBudget);

// All canonical cyclically reduced words of length 1..max_len, sorted.
std::vector<CyclicWord> enumerate_cyclic_words(int rank, int max_len);

}  // namespace lamina
