#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lamina/traintrack.hpp"

using namespace lamina;
using namespace lamina::testing;

namespace {

const Basis kB3(3);
ReducedWord W(const std::string& s) { return parse_word(kB3, s); }

GraphMap rose_map(int rank, const std::vector<std::string>& images) {
  Basis b(rank);
  std::vector<ReducedWord> ws;
  for (const auto& s : images) ws.push_back(parse_word(b, s));
  return GraphMap::from_automorphism(Automorphism(rank, ws));
}

// Independent oracle: bisection root of the characteristic polynomial
// x^3 - x^2 - x - 1 on [1, 2].
double tribonacci_root() {
  auto p = [](double x) { return ((x - 1) * x - 1) * x - 1; };
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (p(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("transition matrix counts occurrences") {
  TransitionMatrix m = transition_matrix(rose_map(3, {"ab", "ac", "a"}));
  long expect[3][3] = {{1, 1, 0}, {1, 0, 1}, {1, 0, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m.at(i, j) == expect[i][j]);

  // Row sums equal image lengths.
  GraphMap g = rose_map(2, {"ab", "Ab"});
  TransitionMatrix m2 = transition_matrix(g);
  for (int i = 0; i < 2; ++i) {
    long sum = 0;
    for (int j = 0; j < 2; ++j) sum += m2.at(i, j);
    CHECK(sum == 2);
  }

  TransitionMatrix id = transition_matrix(rose_map(3, {"a", "b", "c"}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id.at(i, j) == (i == j ? 1 : 0));
}

TEST_CASE("transition matrix of a composed rose map is the matrix square") {
  Automorphism phi = tribonacci();
  TransitionMatrix m = transition_matrix(GraphMap::from_automorphism(phi));
  TransitionMatrix m2 = transition_matrix(GraphMap::from_automorphism(phi.compose(phi)));
  CHECK(m2 == m.times(m));
}

TEST_CASE("Perron-Frobenius eigenvalue") {
  TransitionMatrix m = transition_matrix(rose_map(3, {"ab", "ac", "a"}));
  PerronData pf = pf_eigenvalue(m, 1e-12);
  CHECK(std::abs(pf.value - tribonacci_root()) < 1e-6);
  CHECK(std::abs(pf.value - 1.839287) < 2e-6);
  double sum = 0;
  for (double x : pf.vector) {
    CHECK(x > 0);
    sum += x;
  }
  CHECK(std::abs(sum - 1.0) < 1e-9);

  // Transpose has the same eigenvalue.
  PerronData pft = pf_eigenvalue(m.transpose(), 1e-12);
  CHECK(std::abs(pft.value - pf.value) < 1e-9);

  // Permutation matrix: spectral radius 1.
  TransitionMatrix perm = transition_matrix(rose_map(3, {"b", "c", "a"}));
  CHECK(std::abs(pf_eigenvalue(perm, 1e-12).value - 1.0) < 1e-9);

  // 1x1 matrix [[2]].
  TransitionMatrix two(1);
  two.at(0, 0) = 2;
  CHECK(std::abs(pf_eigenvalue(two, 1e-12).value - 2.0) < 1e-9);

  // Imprimitive irreducible matrix: [[0,1],[2,0]] has radius sqrt(2).
  TransitionMatrix rot(2);
  rot.at(0, 1) = 1;
  rot.at(1, 0) = 2;
  CHECK(std::abs(pf_eigenvalue(rot, 1e-12).value - std::sqrt(2.0)) < 1e-6);

  // Errors: reducible and zero matrices.
  TransitionMatrix red(2);
  red.at(0, 0) = 1;
  CHECK_THROWS_AS(pf_eigenvalue(red, 1e-9), std::invalid_argument);
  TransitionMatrix zero(2);
  CHECK_THROWS_AS(pf_eigenvalue(zero, 1e-9), std::invalid_argument);
}

TEST_CASE("train track validation") {
  // Positive rose maps cross no illegal turns.
  CHECK(validate_train_track(rose_map(3, {"ab", "ac", "a"}), 36).pass);
  CHECK(validate_train_track(rose_map(2, {"ab", "a"}), 16).pass);

  // a -> ab, b -> A: the fourth iterate of a backtracks.
  TrainTrackVerdict v = validate_train_track(rose_map(2, {"ab", "A"}), 16);
  CHECK_FALSE(v.pass);
  CHECK(v.witness.d1 >= 0);
  CHECK(v.witness.d1 < v.witness.d2);
  CHECK(v.witness.d2 < 4);
  CHECK(v.degenerate_at >= 1);

  // Image paths with immediate backtracking are rejected at construction.
  MarkedGraph rose2 = MarkedGraph::rose(2);
  CHECK_THROWS_AS(GraphMap(rose2, {{0, 1, 0}, {2}}, {0}), std::invalid_argument);
}

TEST_CASE("bfh language of the fixture") {
  GraphMap f = GraphMap::from_automorphism(tribonacci());
  LanguageResult r = bfh_language(f, 2, 5);
  CHECK(r.language.stabilized());
  std::set<ReducedWord> expect;
  for (const std::string& s : {"a", "b", "c", "ab", "ba", "ac", "ca", "aa"}) {
    expect.insert(W(s));
    expect.insert(invert(W(s)));
  }
  CHECK(std::set<ReducedWord>(r.language.words().begin(), r.language.words().end()) == expect);

  // k = 1 on an irreducible surjective map gives every letter.
  LanguageResult r1 = bfh_language(f, 1, 3);
  CHECK(r1.language.size() == 6);

  // Identity map stabilizes immediately on single edges.
  LanguageResult rid = bfh_language(rose_map(3, {"a", "b", "c"}), 3, 3);
  CHECK(rid.language.stabilized());
  CHECK(rid.language.size() == 6);
  CHECK(rid.stages == 3);

  // Closure and nesting invariants.
  CHECK(r.language.is_closed());
  LanguageResult r3 = bfh_language(f, 3, 5);
  for (const ReducedWord& w : r.language.words())
    CHECK(r3.language.contains(w));
}

TEST_CASE("bfh stabilizes at depth 6 within 30 stages") {
  LanguageResult r = bfh_language(GraphMap::from_automorphism(tribonacci()), 6, 5);
  CHECK(r.language.stabilized());
  CHECK(r.stages <= 30);
  CHECK(r.language.is_closed());
}
