#include "lamina/ray.hpp"

#include <algorithm>
#include <mutex>

namespace lamina {
namespace detail {

class RayImpl {
 public:
  virtual ~RayImpl() = default;
  virtual ReducedWord prefix(int n) const = 0;
  virtual std::optional<PeriodicForm> periodic_form() const { return std::nullopt; }
  virtual int rank() const = 0;
  virtual std::string describe(const Basis& basis) const = 0;
};

namespace {

ReducedWord rotate_right(const ReducedWord& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  out.push_back(w.at(w.size() - 1));
  for (std::size_t i = 0; i + 1 < w.size(); ++i) out.push_back(w.at(i));
  return ReducedWord(w.rank(), std::move(out));
}

ReducedWord rotate_left(const ReducedWord& w, std::size_t r) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(w.at((i + r) % w.size()));
  return ReducedWord(w.rank(), std::move(out));
}

ReducedWord primitive_root(const ReducedWord& w) {
  std::size_t n = w.size();
  for (std::size_t d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w.at(i) == w.at(i - d);
    if (ok) return w.subword(0, d);
  }
  return w;
}

// Canonical (stem, period): period cyclically reduced and primitive, no
// junction cancellation, stem of minimal length.
PeriodicForm normalize_periodic(const ReducedWord& stem, const ReducedWord& period) {
  if (period.empty()) throw std::invalid_argument("ray period must be nontrivial");
  CyclicNormalForm nf = cyclic_normalize(period);
  ReducedWord core = nf.cyclic.rotation();
  ReducedWord base = multiply(stem, nf.conjugator);
  // Absorb cancellation between base and core^inf.
  std::size_t q = base.size() / core.size() + 2;
  std::vector<Letter> power;
  power.reserve(core.size() * q);
  for (std::size_t c = 0; c < q; ++c)
    for (std::size_t i = 0; i < core.size(); ++i) power.push_back(core.at(i));
  ReducedWord z = multiply(base, ReducedWord(core.rank(), std::move(power)));
  std::size_t cancelled = (base.size() + core.size() * q - z.size()) / 2;
  ReducedWord new_stem = base.subword(0, base.size() - cancelled);
  ReducedWord new_period = primitive_root(rotate_left(core, cancelled % core.size()));
  // Pull whole period copies out of the stem tail.
  while (!new_stem.empty() &&
         new_stem.at(new_stem.size() - 1) == new_period.at(new_period.size() - 1)) {
    new_stem = new_stem.subword(0, new_stem.size() - 1);
    new_period = rotate_right(new_period);
  }
  return PeriodicForm{new_stem, new_period};
}

class PeriodicRay final : public RayImpl {
 public:
  explicit PeriodicRay(PeriodicForm form) : form_(std::move(form)) {}

  ReducedWord prefix(int n) const override {
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < form_.stem.size() && out.size() < static_cast<std::size_t>(n); ++i)
      out.push_back(form_.stem.at(i));
    while (out.size() < static_cast<std::size_t>(n))
      out.push_back(form_.period.at((out.size() - form_.stem.size()) % form_.period.size()));
    return ReducedWord(rank(), std::move(out));
  }

  std::optional<PeriodicForm> periodic_form() const override { return form_; }
  int rank() const override { return form_.period.rank(); }

  std::string describe(const Basis& basis) const override {
    std::string out = "periodic ";
    if (!form_.stem.empty()) out += format_word(basis, form_.stem) + ".";
    out += "(" + format_word(basis, form_.period) + ")^inf";
    return out;
  }

 private:
  PeriodicForm form_;
};

class TranslatedRay final : public RayImpl {
 public:
  TranslatedRay(ReducedWord u, std::shared_ptr<const RayImpl> inner)
      : u_(std::move(u)), inner_(std::move(inner)) {}

  ReducedWord prefix(int n) const override {
    ReducedWord p = inner_->prefix(n + static_cast<int>(u_.size()));
    ReducedWord z = multiply(u_, p);
    return z.subword(0, static_cast<std::size_t>(n));
  }

  int rank() const override { return inner_->rank(); }

  std::string describe(const Basis& basis) const override {
    return format_word(basis, u_) + " * (" + inner_->describe(basis) + ")";
  }

 private:
  ReducedWord u_;
  std::shared_ptr<const RayImpl> inner_;
};

class IteratedRay final : public RayImpl {
 public:
  IteratedRay(Automorphism psi, int power, ReducedWord seed, std::size_t budget)
      : psi_(std::move(psi)), power_(power), seed_(std::move(seed)), budget_(budget) {
    state_.word = seed_;
  }

  ReducedWord prefix(int n) const override {
    std::scoped_lock lock(mu_);
    ensure(static_cast<std::size_t>(n));
    return state_.committed.subword(0, static_cast<std::size_t>(n));
  }

  int rank() const override { return psi_.rank(); }

  std::string describe(const Basis& basis) const override {
    return "iterated seed=" + format_word(basis, seed_) +
           " power=" + std::to_string(power_);
  }

 private:
  void ensure(std::size_t n) const {
    std::size_t allowed = 16 + 4 * n;
    while (state_.committed.size() < n) {
      if (state_.steps >= allowed)
        throw BudgetError("ray iteration (no convergence)", allowed);
      ReducedWord next = psi_.power_apply(power_, state_.word, budget_);
      ++state_.steps;
      std::size_t agree = common_prefix(state_.word, next);
      if (agree < state_.committed.size())
        throw BudgetError("ray iteration (prefix divergence)", state_.committed.size());
      state_.committed = next.subword(0, agree);
      state_.word = next;
    }
  }

  Automorphism psi_;
  int power_;
  ReducedWord seed_;
  std::size_t budget_;

  struct State {
    ReducedWord word;
    ReducedWord committed;
    std::size_t steps = 0;
  };
  mutable std::mutex mu_;
  mutable State state_;
};

}  // namespace
}  // namespace detail

Ray Ray::periodic(const ReducedWord& stem, const ReducedWord& period) {
  PeriodicForm form = detail::normalize_periodic(stem, period);
  return Ray(std::make_shared<detail::PeriodicRay>(std::move(form)));
}

Ray Ray::power(const ReducedWord& w) {
  if (w.empty()) throw std::invalid_argument("w^inf needs a nontrivial word");
  return periodic(ReducedWord::identity(w.rank()), w);
}

Ray Ray::iterated(Automorphism psi, int power, ReducedWord seed, std::size_t budget) {
  if (seed.empty()) throw std::invalid_argument("iterated ray needs a nontrivial seed");
  return Ray(std::make_shared<detail::IteratedRay>(std::move(psi), power, std::move(seed), budget));
}

Ray Ray::translated(const ReducedWord& u, const Ray& x) {
  if (auto form = x.periodic_form())
    return periodic(multiply(u, form->stem), form->period);
  return Ray(std::make_shared<detail::TranslatedRay>(u, x.impl_));
}

ReducedWord Ray::prefix(int n) const { return impl_->prefix(n); }
std::optional<PeriodicForm> Ray::periodic_form() const { return impl_->periodic_form(); }
int Ray::rank() const { return impl_->rank(); }
std::string Ray::describe(const Basis& basis) const { return impl_->describe(basis); }

RayEquality ray_equal(const Ray& x, const Ray& y, int probe) {
  auto px = x.periodic_form();
  auto py = y.periodic_form();
  if (px && py)
    return *px == *py ? RayEquality::equal_certified : RayEquality::distinct_certified;
  try {
    ReducedWord a = x.prefix(probe);
    ReducedWord b = y.prefix(probe);
    if (a != b) return RayEquality::distinct_certified;
  } catch (const BudgetError&) {
    return RayEquality::undecided;
  }
  return RayEquality::undecided;
}

WindowResult leaf_window(const Ray& x, const Ray& y, int k, int probe_cap) {
  if (k < 1) throw std::invalid_argument("window radius must be >= 1");
  for (int n = std::max(2 * k, 16); n <= probe_cap; n *= 2) {
    ReducedWord px, py;
    try {
      px = x.prefix(n);
      py = y.prefix(n);
    } catch (const BudgetError& e) {
      return WindowResult{false, {}, std::string("prefix unavailable: ") + e.what()};
    }
    std::size_t j = common_prefix(px, py);
    if (j == static_cast<std::size_t>(n)) continue;  // indistinguishable so far
    if (static_cast<std::size_t>(n) - j < static_cast<std::size_t>(k)) continue;
    std::vector<Letter> window;
    window.reserve(2 * static_cast<std::size_t>(k));
    for (std::size_t i = j + static_cast<std::size_t>(k); i > j; --i)
      window.push_back(py.at(i - 1).inverse());
    for (std::size_t i = j; i < j + static_cast<std::size_t>(k); ++i)
      window.push_back(px.at(i));
    return WindowResult{true, LeafWindow{ReducedWord(px.rank(), std::move(window)), k}, ""};
  }
  return WindowResult{false, {}, "rays indistinguishable up to probe cap"};
}

}  // namespace lamina
