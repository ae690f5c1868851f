#include <doctest.h>

#include "helpers.hpp"
#include "lamina/ray.hpp"

using namespace lamina;
using namespace lamina::testing;

namespace {
const Basis kB3(3);
ReducedWord W(const std::string& s) { return parse_word(kB3, s); }
}  // namespace

TEST_CASE("periodic rays normalize to canonical stem and period") {
  // a(ba)^inf = (ab)^inf
  Ray r1 = Ray::periodic(W("a"), W("ba"));
  Ray r2 = Ray::power(W("ab"));
  CHECK(r1.periodic_form() == r2.periodic_form());
  CHECK(r1.prefix(6) == W("ababab"));

  // Periods reduce to primitive roots: (abab)^inf = (ab)^inf.
  CHECK(Ray::power(W("abab")).periodic_form() == Ray::power(W("ab")).periodic_form());

  // Conjugate periods: (bab^-1)^inf = b a^inf as a boundary point.
  Ray r3 = Ray::power(W("baB"));
  auto f = r3.periodic_form();
  REQUIRE(f.has_value());
  CHECK(f->stem == W("b"));
  CHECK(f->period == W("a"));
  CHECK(r3.prefix(4) == W("baaa"));

  // Stems that cancel into the periodic tail.
  Ray r4 = Ray::periodic(W("BA"), W("ab"));
  CHECK(r4.periodic_form() == Ray::power(W("ab")).periodic_form());
}

TEST_CASE("ray coherence: prefixes nest") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    ReducedWord stem = random_word(rng, 3, static_cast<int>(rng() % 5));
    ReducedWord period = random_word(rng, 3, 1 + static_cast<int>(rng() % 5));
    Ray r = Ray::periodic(stem, period);
    int n = 1 + static_cast<int>(rng() % 63);
    int m = n + static_cast<int>(rng() % (65 - static_cast<std::size_t>(n)));
    ReducedWord pn = r.prefix(n);
    ReducedWord pm = r.prefix(m);
    CHECK(common_prefix(pn, pm) == pn.size());
  }

  Automorphism phi = tribonacci();
  Ray it = Ray::iterated(phi, 1, W("a"));
  for (int n : {1, 5, 17, 40, 64}) {
    ReducedWord pn = it.prefix(n);
    ReducedWord p64 = it.prefix(64);
    CHECK(common_prefix(pn, p64) == pn.size());
  }
}

TEST_CASE("iterated ray of the fixture spells the expanding fixed word") {
  Automorphism phi = tribonacci();
  Ray r = Ray::iterated(phi, 1, W("a"));
  // phi^3(a) = abacaba, phi^4(a) = abacabaabacab.
  CHECK(r.prefix(13) == W("abacabaabacab"));
}

TEST_CASE("translated rays realize the boundary action") {
  Ray r = Ray::power(W("ab"));
  Ray t = Ray::translated(W("c"), r);
  CHECK(t.prefix(5) == W("cabab"));
  // Cancelling translate: A * (ab)^inf = b(ab)^inf = (ba)^inf.
  Ray u = Ray::translated(W("A"), r);
  CHECK(u.periodic_form() == Ray::power(W("ba")).periodic_form());

  Automorphism phi = tribonacci();
  Ray it = Ray::iterated(phi, 1, W("a"));
  Ray ti = Ray::translated(W("ba"), it);
  CHECK(ti.prefix(9) == multiply(W("ba"), it.prefix(7)));
  // Coherence survives translation.
  CHECK(common_prefix(ti.prefix(6), ti.prefix(40)) == 6);
}

TEST_CASE("ray equality is three-valued") {
  Ray a1 = Ray::power(W("a"));
  Ray a2 = Ray::periodic(W("aa"), W("a"));
  CHECK(ray_equal(a1, a2, 64) == RayEquality::equal_certified);
  CHECK(ray_equal(a1, Ray::power(W("b")), 64) == RayEquality::distinct_certified);

  Automorphism phi = tribonacci();
  Ray it = Ray::iterated(phi, 1, W("a"));
  CHECK(ray_equal(it, Ray::power(W("ab")), 64) == RayEquality::distinct_certified);
  // An iterated ray compared with itself stays undecided at any probe.
  CHECK(ray_equal(it, Ray::iterated(phi, 1, W("b")), 64) == RayEquality::undecided);
}

TEST_CASE("leaf windows") {
  Ray x = Ray::power(W("a"));
  Ray y = Ray::power(W("b"));
  WindowResult w = leaf_window(x, y, 2);
  REQUIRE(w.decided);
  CHECK(w.window.center == W("BBaa"));

  // Shared prefix: X = a^inf vs Y = a b^inf.
  WindowResult w2 = leaf_window(x, Ray::periodic(W("a"), W("b")), 2);
  REQUIRE(w2.decided);
  CHECK(w2.window.center == W("BBaa"));

  // Equal rays stay undecided.
  WindowResult w3 = leaf_window(x, Ray::periodic(W("aa"), W("a")), 2, 256);
  CHECK_FALSE(w3.decided);

  // Windows have length exactly 2k and are reduced.
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    ReducedWord u = random_word(rng, 3, 1 + static_cast<int>(rng() % 6));
    ReducedWord v = random_word(rng, 3, 1 + static_cast<int>(rng() % 6));
    Ray rx = Ray::power(u);
    Ray ry = Ray::power(v);
    if (ray_equal(rx, ry, 128) == RayEquality::equal_certified) continue;
    WindowResult res = leaf_window(rx, ry, 4);
    REQUIRE(res.decided);
    CHECK(res.window.center.size() == 8);
  }
}
