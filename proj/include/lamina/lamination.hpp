// lamination.hpp
//
// Depth-k factor languages approximating algebraic laminations.  A
// lamination is an infinite object; the finite representation is the
// set of its leaves' bounded-length factors, closed under subwords and
// inversion.  Verdicts derived from these sets are three-valued: a
// missing factor refutes leaf membership (certified NO with witness), a
// full sweep of present factors is consistency at depth, and anything
// the window machinery cannot decide is reported as undecided.

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lamina/automorphism.hpp"
#include "lamina/ray.hpp"
#include "lamina/word.hpp"

namespace lamina {

enum class Provenance { rational, orbit, bfh, ray };

const char* provenance_name(Provenance p);

class FactorLanguage {
 public:
  FactorLanguage() = default;

  // Closes `seed` under subwords and inversion, then indexes it.
  static FactorLanguage build(int rank, int depth, bool stabilized, Provenance prov,
                              const std::set<ReducedWord>& seed);

  int rank() const { return rank_; }
  int depth() const { return depth_; }
  bool stabilized() const { return stabilized_; }
  Provenance provenance() const { return prov_; }
  const std::vector<ReducedWord>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }

  bool contains(const ReducedWord& w) const;
  // Audit of the closure invariants.
  bool is_closed() const;

  // Set union at the smaller depth; stabilized only if both are.
  FactorLanguage merged_with(const FactorLanguage& other) const;
  FactorLanguage with_stabilized(bool flag) const;

  friend bool operator==(const FactorLanguage& a, const FactorLanguage& b) {
    return a.depth_ == b.depth_ && a.words_ == b.words_;
  }

 private:
  int rank_ = 0;
  int depth_ = 0;
  bool stabilized_ = false;
  Provenance prov_ = Provenance::rational;
  std::vector<ReducedWord> words_;   // sorted length-lex
  std::vector<int> trie_;            // flat rows of width 2*rank, -1 = absent
  int trie_width_ = 0;
};

// Serialization: header line `lamlang depth=<k> stabilized=<0|1>
// provenance=<tag>`, then one word per line in sorted order.
std::string serialize_language(const Basis& basis, const FactorLanguage& lang);
FactorLanguage parse_language(const Basis& basis, const std::string& text);

struct LanguageResult {
  FactorLanguage language;
  int stages = 0;     // last iteration index processed
  bool budget_hit = false;
};

// L_w at depth k: factors of the periodic biinfinite word, inversion
// closed.  Exact at every depth.
FactorLanguage rational_language(const CyclicWord& w, int k);

// Union over 0 <= n <= n_max of the depth-k factors of phi^n([h]).
// Stops early when the set is unchanged for `stall` consecutive stages.
LanguageResult orbit_language(const Automorphism& phi, const CyclicWord& h, int k, int n_max,
                              int stall, std::size_t budget = kDefaultBudget);

struct MitraResult {
  FactorLanguage language;
  std::vector<CyclicWord> used;  // ball representatives, one per class and inverse class
};

// Union of orbit languages over all conjugacy classes of cyclic length
// <= ball_radius.
MitraResult mitra_language(const Automorphism& phi, int ball_radius, int k, int n_max,
                           int stall, std::size_t budget = kDefaultBudget,
                           unsigned jobs = 1);

// Factors of X.prefix(probe); the flag records whether doubling the
// probe changes nothing.
FactorLanguage ray_language(const Ray& x, int k, int probe);

struct LeafVerdict {
  enum class Kind { no, consistent, undecided };
  Kind kind = Kind::undecided;
  ReducedWord witness;  // set for NO
  int depth = 0;
  bool stabilized = false;
  std::string note;
};

// Slides every length-k window across the central 2*(k+slack) segment
// of the reduced biinfinite word of (X, Y).  NO against a stabilized
// language is a certified non-leaf verdict at this depth.
LeafVerdict leaf_test(const FactorLanguage& lang, const Ray& x, const Ray& y, int k,
                      int slack, int probe_cap = 4096);

enum class LanguageOrder { equal, subset, superset, incomparable };
LanguageOrder language_compare(const FactorLanguage& l1, const FactorLanguage& l2);
const char* language_order_name(LanguageOrder o);

struct DiagComponents {
  std::vector<std::vector<std::size_t>> components;          // sorted blocks
  std::vector<std::pair<std::size_t, std::size_t>> undecided;  // unresolved pairs
};

// Union-find over pairwise-consistent rays: the diagonal closure
// restricted to the given finite ray set.  Undecided pairs are treated
// as non-edges and reported.
DiagComponents diag_components(const std::vector<Ray>& rays, const FactorLanguage& lang,
                               int k, int slack, int probe_cap = 4096);

}  // namespace lamina
