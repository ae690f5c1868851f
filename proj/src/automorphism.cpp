#include "lamina/automorphism.hpp"

#include <algorithm>

namespace lamina {

Automorphism::Automorphism(int rank, std::vector<ReducedWord> images,
                           std::optional<std::vector<ReducedWord>> inverse_images)
    : rank_(rank), images_(std::move(images)), inverse_images_(std::move(inverse_images)) {
  if (static_cast<int>(images_.size()) != rank_)
    throw std::invalid_argument("automorphism needs one image per generator");
  for (const auto& w : images_)
    if (!w.empty() && w.rank() != rank_)
      throw std::invalid_argument("image over wrong basis");
  if (inverse_images_) {
    if (static_cast<int>(inverse_images_->size()) != rank_)
      throw std::invalid_argument("automorphism needs one inverse image per generator");
    Automorphism fwd(rank_, images_);
    Automorphism bwd(rank_, *inverse_images_);
    for (int i = 0; i < rank_; ++i) {
      ReducedWord gen(rank_, {Letter(i, true)});
      if (fwd.apply(bwd.apply(gen)) != gen || bwd.apply(fwd.apply(gen)) != gen)
        throw std::invalid_argument("supplied inverse images do not invert the map");
    }
  }
}

Automorphism Automorphism::identity(int rank) {
  std::vector<ReducedWord> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) images.emplace_back(rank, std::vector<Letter>{Letter(i, true)});
  return Automorphism(rank, images, images);
}

Automorphism Automorphism::inner(const ReducedWord& u) {
  int rank = u.rank();
  if (rank == 0) throw std::invalid_argument("inner automorphism needs a ranked word");
  ReducedWord ui = invert(u);
  std::vector<ReducedWord> images;
  std::vector<ReducedWord> inv_images;
  for (int i = 0; i < rank; ++i) {
    ReducedWord gen(rank, {Letter(i, true)});
    images.push_back(multiply(multiply(u, gen), ui));
    inv_images.push_back(multiply(multiply(ui, gen), u));
  }
  return Automorphism(rank, std::move(images), std::move(inv_images));
}

const ReducedWord& Automorphism::inverse_image(int i) const {
  if (!inverse_images_) throw std::invalid_argument("inverse images not supplied");
  return (*inverse_images_)[static_cast<std::size_t>(i)];
}

namespace {

ReducedWord map_word(int rank, const std::vector<ReducedWord>& images, const ReducedWord& u,
                     std::size_t budget) {
  std::vector<Letter> out;
  for (std::size_t p = 0; p < u.size(); ++p) {
    Letter l = u.at(p);
    if (l.index() >= rank) throw std::invalid_argument("basis mismatch in apply");
    const ReducedWord& im = images[static_cast<std::size_t>(l.index())];
    if (l.positive()) {
      for (std::size_t i = 0; i < im.size(); ++i) {
        Letter x = im.at(i);
        if (!out.empty() && out.back() == x.inverse())
          out.pop_back();
        else
          out.push_back(x);
      }
    } else {
      for (std::size_t i = im.size(); i > 0; --i) {
        Letter x = im.at(i - 1).inverse();
        if (!out.empty() && out.back() == x.inverse())
          out.pop_back();
        else
          out.push_back(x);
      }
    }
    if (out.size() > budget) throw BudgetError("automorphism image", budget);
  }
  return ReducedWord(rank, std::move(out));
}

}  // namespace

ReducedWord Automorphism::apply(const ReducedWord& u, std::size_t budget) const {
  return map_word(rank_, images_, u, budget);
}

ReducedWord Automorphism::power_apply(int n, const ReducedWord& u, std::size_t budget) const {
  if (n < 0 && !inverse_images_)
    throw std::invalid_argument("negative power requires inverse images");
  ReducedWord w = u;
  for (int i = 0; i < std::abs(n); ++i)
    w = map_word(rank_, n > 0 ? images_ : *inverse_images_, w, budget);
  return w;
}

CyclicWord Automorphism::apply_class(const CyclicWord& c, std::size_t budget) const {
  ReducedWord image = apply(c.rotation(), budget);
  return cyclic_normalize(image).cyclic;
}

Automorphism Automorphism::inverted() const {
  if (!inverse_images_) throw std::invalid_argument("inverse images not supplied");
  return Automorphism(rank_, *inverse_images_, images_);
}

Automorphism Automorphism::compose(const Automorphism& other, std::size_t budget) const {
  if (rank_ != other.rank_) throw std::invalid_argument("basis mismatch in compose");
  std::vector<ReducedWord> images;
  for (int i = 0; i < rank_; ++i) images.push_back(apply(other.image(i), budget));
  std::optional<std::vector<ReducedWord>> inv;
  if (inverse_images_ && other.inverse_images_) {
    inv.emplace();
    for (int i = 0; i < rank_; ++i)
      inv->push_back(other.power_apply(-1, power_apply(-1, ReducedWord(rank_, {Letter(i, true)}), budget), budget));
  }
  return Automorphism(rank_, std::move(images), std::move(inv));
}

std::vector<CyclicWord> enumerate_cyclic_words(int rank, int max_len) {
  std::vector<CyclicWord> out;
  std::set<CyclicWord> seen;
  std::vector<Letter> stack;
  // Depth-first enumeration of reduced words in letter-code order.
  auto backtrack = [&](auto&& self, int len) -> void {
    if (len > 0) {
      bool cyc_reduced = stack.front() != stack.back().inverse() || stack.size() == 1;
      if (cyc_reduced) {
        CyclicWord c{ReducedWord(rank, stack)};
        if (seen.insert(c).second) out.push_back(c);
      }
    }
    if (len == max_len) return;
    for (int code = 0; code < 2 * rank; ++code) {
      Letter l = Letter::from_code(code);
      if (!stack.empty() && stack.back() == l.inverse()) continue;
      stack.push_back(l);
      self(self, len + 1);
      stack.pop_back();
    }
  };
  backtrack(backtrack, 0);
  std::sort(out.begin(), out.end(),
            [](const CyclicWord& a, const CyclicWord& b) { return a.rotation() < b.rotation(); });
  return out;
}

std::vector<PeriodicClass> periodic_class_scan(const Automorphism& phi, int max_len,
                                               int max_power, std::size_t budget) {
  if (max_len < 1 || max_power < 1)
    throw std::invalid_argument("scan bounds must be >= 1");
  std::vector<PeriodicClass> found;
  for (const CyclicWord& c : enumerate_cyclic_words(phi.rank(), max_len)) {
    CyclicWord cur = c;
    for (int n = 1; n <= max_power; ++n) {
      bool budget_hit = false;
      try {
        cur = phi.apply_class(cur, budget);
      } catch (const BudgetError&) {
        budget_hit = true;
      }
      if (budget_hit) break;
      if (cur == c) {
        found.push_back(PeriodicClass{c, n});
        break;
      }
    }
  }
  return found;
}

}  // namespace lamina
