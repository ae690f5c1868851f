#include "lamina/mapping_torus.hpp"

namespace lamina {

MappingTorusElement mt_multiply(const Automorphism& phi, const MappingTorusElement& g,
                                const MappingTorusElement& h, std::size_t budget) {
  ReducedWord shifted = phi.power_apply(static_cast<int>(g.m), h.w, budget);
  return MappingTorusElement{multiply(g.w, shifted, budget), g.m + h.m};
}

MappingTorusElement mt_inverse(const Automorphism& phi, const MappingTorusElement& g,
                               std::size_t budget) {
  return MappingTorusElement{phi.power_apply(static_cast<int>(-g.m), invert(g.w), budget),
                             -g.m};
}

MappingTorusElement mt_power(const Automorphism& phi, const MappingTorusElement& g, int n,
                             std::size_t budget) {
  MappingTorusElement acc{ReducedWord::identity(phi.rank()), 0};
  MappingTorusElement base = n >= 0 ? g : mt_inverse(phi, g, budget);
  for (int i = 0; i < std::abs(n); ++i) acc = mt_multiply(phi, acc, base, budget);
  return acc;
}

Automorphism conjugation_automorphism(const Automorphism& phi, const MappingTorusElement& g,
                                      std::size_t budget) {
  int rank = phi.rank();
  ReducedWord wi = invert(g.w);
  std::vector<ReducedWord> images;
  for (int i = 0; i < rank; ++i) {
    ReducedWord gen(rank, {Letter(i, true)});
    images.push_back(
        multiply(multiply(g.w, phi.power_apply(static_cast<int>(g.m), gen, budget), budget), wi, budget));
  }
  std::optional<std::vector<ReducedWord>> inv;
  if (phi.has_inverse()) {
    inv.emplace();
    for (int i = 0; i < rank; ++i) {
      ReducedWord gen(rank, {Letter(i, true)});
      inv->push_back(
          phi.power_apply(static_cast<int>(-g.m), multiply(multiply(wi, gen), g.w, budget), budget));
    }
  }
  return Automorphism(rank, std::move(images), std::move(inv));
}

std::vector<ReducedWord> enumerate_words(int rank, int max_len) {
  std::vector<ReducedWord> out;
  out.push_back(ReducedWord::identity(rank));
  std::vector<Letter> stack;
  auto backtrack = [&](auto&& self, int len) -> void {
    if (len == max_len) return;
    for (int code = 0; code < 2 * rank; ++code) {
      Letter l = Letter::from_code(code);
      if (!stack.empty() && stack.back() == l.inverse()) continue;
      stack.push_back(l);
      out.emplace_back(rank, stack);
      self(self, len + 1);
      stack.pop_back();
    }
  };
  backtrack(backtrack, 0);
  std::stable_sort(out.begin(), out.end());
  return out;
}

bool fn_conjugate_bounded(const Automorphism& phi, const MappingTorusElement& g,
                          const MappingTorusElement& h, int conj_len, std::size_t budget) {
  if (g.m != h.m) return false;
  for (const ReducedWord& u : enumerate_words(phi.rank(), conj_len)) {
    // (u,0) h (u,0)^-1 = (u * h.w * Phi^m(u^-1), m)
    ReducedWord cand =
        multiply(multiply(u, h.w, budget),
                 phi.power_apply(static_cast<int>(h.m), invert(u), budget), budget);
    if (cand == g.w) return true;
  }
  return false;
}

bool g_conjugate_bounded(const Automorphism& phi, const MappingTorusElement& g,
                         const MappingTorusElement& h, int conj_len, int exp_radius,
                         std::size_t budget) {
  if (g.m != h.m) return false;
  for (int s = -exp_radius; s <= exp_radius; ++s) {
    if (s != 0 && !phi.has_inverse() && s < 0) continue;
    ReducedWord hs = phi.power_apply(s, h.w, budget);
    for (const ReducedWord& u : enumerate_words(phi.rank(), conj_len)) {
      ReducedWord cand = multiply(
          multiply(u, hs, budget),
          phi.power_apply(static_cast<int>(h.m), invert(u), budget), budget);
      if (cand == g.w) return true;
    }
  }
  return false;
}

}  // namespace lamina
