// ray.hpp
//
// Boundary points of F_N as coherent prefix generators.  A Ray produces
// the length-n prefix of one infinite reduced word; prefixes of a given
// ray are nested by construction.  Two finite descriptions are
// supported: eventually periodic data u * v^inf (canonically
// normalized, so equality is decidable) and iterated-image data (an
// automorphism iterated on a seed word, with prefixes committed once
// consecutive iterates agree on them).

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "lamina/automorphism.hpp"
#include "lamina/word.hpp"

namespace lamina {

// Canonical form of an eventually periodic infinite word: stem followed
// by repetitions of a primitive period, with no cancellation at any
// junction and the stem as short as possible.
struct PeriodicForm {
  ReducedWord stem;
  ReducedWord period;

  friend bool operator==(const PeriodicForm& a, const PeriodicForm& b) {
    return a.stem == b.stem && a.period == b.period;
  }
};

enum class RayEquality { equal_certified, distinct_certified, undecided };

namespace detail {
class RayImpl;
}

class Ray {
 public:
  // The infinite reduced word of stem * period^inf (both arguments may
  // be arbitrary reduced words; normalization absorbs cancellation).
  // Throws std::invalid_argument when the tail is trivial.
  static Ray periodic(const ReducedWord& stem, const ReducedWord& period);
  // w^inf for a nontrivial word w.
  static Ray power(const ReducedWord& w);
  // Limit of psi^(p*n)(seed) as n grows.  Prefixes are committed when
  // consecutive iterates agree on them; prefix() throws BudgetError if
  // the iteration fails to converge within the caps.
  static Ray iterated(Automorphism psi, int power, ReducedWord seed,
                      std::size_t budget = kDefaultBudget);
  // The translate u * X under the left action of F_N on its boundary.
  static Ray translated(const ReducedWord& u, const Ray& x);

  // First n letters of the infinite word.
  ReducedWord prefix(int n) const;

  std::optional<PeriodicForm> periodic_form() const;
  int rank() const;
  // Human-readable description of the finite tag.
  std::string describe(const Basis& basis) const;

 private:
  explicit Ray(std::shared_ptr<detail::RayImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<detail::RayImpl> impl_;
};

// Three-valued ray equality: decidable for two periodic tags, otherwise
// by prefix comparison to `probe` letters.
RayEquality ray_equal(const Ray& x, const Ray& y, int probe);

// The length-2k central factor of the reduced biinfinite word Y^-1 X.
struct LeafWindow {
  ReducedWord center;  // exactly 2k letters when decided
  int radius = 0;
};

struct WindowResult {
  bool decided = false;
  LeafWindow window;
  std::string note;  // reason when undecided
};

// Computes the window by reducing invert(Y.prefix(n)) * X.prefix(n) for
// growing n until the center is stable; undecided (never an exception)
// when the rays agree to the probe cap or a prefix cannot be produced.
WindowResult leaf_window(const Ray& x, const Ray& y, int k, int probe_cap = 4096);

}  // namespace lamina
