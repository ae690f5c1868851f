// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Derived expectations are recomputed here with independent oracles
// (push-and-cancel reduction, rotation conjugacy, characteristic
// polynomial bisection, brute-force membership).
//
// Usage: lamina_acceptance [path-to-lamina-cli]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "lamina/ctfiber.hpp"
#include "lamina/io.hpp"
#include "lamina/report.hpp"
#include "lamina/stallings.hpp"
#include "lamina/traintrack.hpp"

using namespace lamina;
using namespace lamina::testing;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_cli_path;

struct Criterion {
  int number;
  std::string label;
  double limit_seconds;
  std::chrono::steady_clock::time_point start;
  bool ok = true;
  std::string detail;

  Criterion(int n, std::string text, double limit)
      : number(n), label(std::move(text)), limit_seconds(limit),
        start(std::chrono::steady_clock::now()) {}

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }

  void finish() {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && limit_seconds > 0 && secs > limit_seconds) {
      ok = false;
      detail = "time limit " + std::to_string(limit_seconds) + "s exceeded";
    }
    std::printf("[%s] criterion %d (%.2fs): %s%s%s\n", ok ? "PASS" : "FAIL", number, secs,
                label.c_str(), ok ? "" : " -- ", ok ? "" : detail.c_str());
    if (!ok) ++g_failures;
  }
};

const Basis kB3(3);
ReducedWord W(const std::string& s) { return parse_word(kB3, s); }

double tribonacci_root() {
  auto p = [](double x) { return ((x - 1) * x - 1) * x - 1; };
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (p(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void criterion1() {
  Criterion c(1, "word algebra agrees with the push-and-cancel oracle (1e5 cases)", 5.0);
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> len(0, 12);
  for (int trial = 0; trial < 100000 && c.ok; ++trial) {
    ReducedWord u = random_word(rng, 3, len(rng));
    ReducedWord v = random_word(rng, 3, len(rng));
    c.require(multiply(u, v) == oracle_multiply(u, v), "multiply mismatch");
    c.require(multiply(u, invert(u)) == ReducedWord::identity(3), "inverse mismatch");
    if (!u.empty()) {
      ReducedWord conj = multiply(multiply(v, u), invert(v));
      if (!conj.empty())
        c.require(cyclic_normalize(u).cyclic == cyclic_normalize(conj).cyclic,
                  "conjugates disagree on canonical cyclic words");
    }
  }
  c.finish();
}

void criterion2() {
  Criterion c(2, "mapping torus relation t w t^-1 = phi(w) (1e4 cases)", 5.0);
  Automorphism phi = tribonacci();
  MappingTorusElement t{ReducedWord::identity(3), 1};
  MappingTorusElement ti{ReducedWord::identity(3), -1};
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<int> len(0, 14);
  for (int trial = 0; trial < 10000 && c.ok; ++trial) {
    ReducedWord w = random_word(rng, 3, len(rng));
    MappingTorusElement lhs = mt_multiply(phi, mt_multiply(phi, t, {w, 0}), ti);
    c.require(lhs == MappingTorusElement{phi.apply(w), 0}, "relation failed");
  }
  c.finish();
}

void criterion3() {
  Criterion c(3, "fixture transition matrix and Perron-Frobenius eigenvalue", 1.0);
  GraphMap f = GraphMap::from_automorphism(tribonacci());
  TransitionMatrix m = transition_matrix(f);
  long expect[3][3] = {{1, 1, 0}, {1, 0, 1}, {1, 0, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c.require(m.at(i, j) == expect[i][j], "transition matrix entry mismatch");
  PerronData pf = pf_eigenvalue(m, 1e-9);
  c.require(std::abs(pf.value - tribonacci_root()) < 1e-6,
            "eigenvalue disagrees with the characteristic-polynomial root");
  c.require(std::abs(pf.value - 1.839287) < 2e-6, "eigenvalue off the reference value");
  c.finish();
}

void criterion4() {
  Criterion c(4, "language stabilization and containment chain", 30.0);
  Automorphism phi = tribonacci();
  LanguageResult bfh = bfh_language(GraphMap::from_automorphism(phi), 6, 5);
  c.require(bfh.language.stabilized(), "bfh language did not stabilize");
  c.require(bfh.stages <= 30, "bfh stabilization needed more than 30 stages");

  CyclicWord h{W("a")};
  LanguageResult orbit = orbit_language(phi, h, 6, 30, 5);
  for (const ReducedWord& w : bfh.language.words())
    c.require(orbit.language.contains(w), "bfh not contained in orbit language");

  MitraResult mitra = mitra_language(phi, 2, 6, 30, 5);
  for (const ReducedWord& w : orbit.language.words())
    c.require(mitra.language.contains(w), "orbit language not contained in mitra language");
  for (const ReducedWord& w : bfh.language.words())
    c.require(mitra.language.contains(w), "bfh not contained in mitra language");
  c.finish();
}

void criterion5() {
  Criterion c(5, "phi and phi^-1 languages are distinct at depth 6", 30.0);
  Automorphism phi = tribonacci();
  FiberConfig cfg;
  FiberLanguages langs = fiber_languages(phi, cfg);
  std::size_t only_plus = 0;
  std::size_t only_minus = 0;
  for (const ReducedWord& w : langs.plus.words())
    if (!langs.minus.contains(w)) ++only_plus;
  for (const ReducedWord& w : langs.minus.words())
    if (!langs.plus.contains(w)) ++only_minus;
  c.require(only_plus + only_minus > 0, "symmetric difference is empty");
  c.finish();
}

SingularSearchResult run_search(const Automorphism& phi, const FiberConfig& cfg) {
  FiberLanguages langs = fiber_languages(phi, cfg);
  return singular_search(phi, langs, cfg);
}

void criterion6_and_8() {
  Criterion c(6, "singular search respects 2N / 2N-2 / 4N-5 / 4N-1 (thresholds 6/4/7/11)",
              600.0);
  Automorphism phi = tribonacci();
  FiberConfig cfg;  // defaults
  SingularSearchResult result = run_search(phi, cfg);
  c.require(result.bounds.two_n == 6 && result.bounds.two_n_minus_2 == 4 &&
                result.bounds.four_n_minus_5 == 7 && result.bounds.four_n_minus_1 == 11,
            "threshold table wrong");
  for (const FiberReport& r : result.reports)
    c.require(r.degree_lower_bound <= 6, "degree lower bound exceeds 2N");
  c.require(result.bounds.per_type_ok, "per-type sums exceed 2N-2");
  c.require(result.bounds.family_count_ok, "family count exceeds 4N-5");
  c.require(result.bounds.pair_ok, "pairwise sum exceeds 4N-1 or types collide");
  c.require(result.bounds.sigma_found >= 1, "no singular witness found at default bounds");
  c.finish();

  Criterion c8(8, "cross-language disjointness over all reports", 0.0);
  c8.require(result.bounds.cross_ok, "a pair was consistent in both languages");
  for (const FiberReport& r : result.reports)
    c8.require(r.cross_violations.empty(), "report carries cross-language violations");
  c8.finish();
}

void criterion7() {
  Criterion c(7, "simplicity of w^inf for 20 random nontrivial words", 120.0);
  Automorphism phi = tribonacci();
  FiberConfig cfg;
  FiberLanguages langs = fiber_languages(phi, cfg);
  std::mt19937_64 rng(107);
  std::uniform_int_distribution<int> len(1, 8);
  for (int trial = 0; trial < 20 && c.ok; ++trial) {
    ReducedWord w = random_word(rng, 3, len(rng));
    SimpleCheck check = simple_point_check(phi, w, langs, cfg);
    c.require(check.verdict == CheckVerdict::pass,
              "not confirmed simple: w = " + format_word(kB3, w) + " (" +
                  check_verdict_name(check.verdict) + (check.detail.empty() ? "" : ": ") +
                  check.detail + ")");
  }
  c.finish();
}

void criterion9() {
  Criterion c(9, "Stallings suite: confluence, membership, not-carried leaves", 60.0);
  std::mt19937_64 rng(109);

  // Folding confluence under 100 generator-order shuffles.
  std::vector<ReducedWord> gens = {W("ab"), W("bca"), W("aCa"), W("bb"), W("cab")};
  SubgroupGraph reference = SubgroupGraph::build(3, gens);
  for (int trial = 0; trial < 100 && c.ok; ++trial) {
    std::vector<ReducedWord> shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    c.require(SubgroupGraph::build(3, shuffled).isomorphic(reference),
              "folding depends on generator order");
  }

  // Membership vs brute force on random small subgroups.
  auto oracle_member = [](const std::vector<ReducedWord>& gs, const ReducedWord& w) {
    std::set<ReducedWord> layer = {ReducedWord::identity(3)};
    if (w.empty()) return true;
    for (int d = 0; d < 3; ++d) {
      std::set<ReducedWord> next;
      for (const ReducedWord& u : layer)
        for (const ReducedWord& g : gs) {
          next.insert(multiply(u, g));
          next.insert(multiply(u, invert(g)));
        }
      layer.insert(next.begin(), next.end());
      if (layer.count(w)) return true;
    }
    return false;
  };
  for (int trial = 0; trial < 40 && c.ok; ++trial) {
    std::vector<ReducedWord> gs;
    int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) gs.push_back(random_word(rng, 3, 1 + static_cast<int>(rng() % 4)));
    SubgroupGraph h = SubgroupGraph::build(3, gs);
    for (int probe = 0; probe < 10; ++probe) {
      ReducedWord w = random_word(rng, 3, static_cast<int>(rng() % 6));
      if (oracle_member(gs, w))
        c.require(h.accepts(w), "graph rejects a brute-force member");
      ReducedWord prod = ReducedWord::identity(3);
      for (int i = 0; i < 3; ++i)
        prod = multiply(prod, rng() % 2 ? gs[rng() % gs.size()] : invert(gs[rng() % gs.size()]));
      c.require(h.accepts(prod), "graph rejects a product of generators");
    }
  }

  // Ten lamination leaves against <a, b>: not carried by depth 12.
  Automorphism phi = tribonacci();
  FiberConfig cfg;
  SubgroupGraph ab = SubgroupGraph::build(3, {W("a"), W("b")});
  std::vector<std::pair<Ray, Ray>> leaves;
  RayFamily fam = attracting_rays(phi, cfg);
  for (std::size_t i = 0; i < fam.rays.size() && leaves.size() < 6; ++i)
    for (std::size_t j = i + 1; j < fam.rays.size() && leaves.size() < 6; ++j)
      leaves.emplace_back(fam.rays[i], fam.rays[j]);
  // Translated leaves of the same lamination fill the sample.
  for (const std::string& u : {"a", "b", "ab", "ca"}) {
    if (leaves.size() >= 10 || fam.rays.size() < 2) break;
    leaves.emplace_back(Ray::translated(W(u), fam.rays[0]),
                        Ray::translated(W(u), fam.rays[1]));
  }
  c.require(leaves.size() == 10, "could not assemble 10 lamination leaves");
  for (auto& [x, y] : leaves) {
    CarryVerdict v = carries_leaf(ab, x, y, 12);
    c.require(v.kind == CarryKind::not_carried, "a lamination leaf was not refuted by depth 12");
  }
  c.finish();
}

int run_cli(const std::string& args, const std::string& log) {
  std::string cmd = "\"" + g_cli_path + "\" " + args + " > " + log + " 2>&1";
  int status = std::system(cmd.c_str());
  return status;
}

void criterion10() {
  Criterion c(10, "jobs=1 and jobs=8 produce byte-identical JSON (analyze, singular-search)",
              0.0);
  if (g_cli_path.empty()) {
    c.require(false, "CLI path not supplied");
    c.finish();
    return;
  }
  fs::path dir = fs::temp_directory_path() / ("lamina-acc-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path fixture = dir / "fixture.auto";
  write_file(fixture.string(),
             "rank 3\na -> ab\nb -> ac\nc -> a\ninverse:\na -> c\nb -> Ca\nc -> Cb\n");
  auto out = [&](const std::string& name) { return (dir / name).string(); };
  bool all_ok = true;
  all_ok &= run_cli("analyze --auto " + fixture.string() + " --jobs 1 --out " + out("a1.json"),
                    out("a1.log")) == 0;
  all_ok &= run_cli("analyze --auto " + fixture.string() + " --jobs 8 --out " + out("a8.json"),
                    out("a8.log")) == 0;
  all_ok &= run_cli("singular-search --auto " + fixture.string() + " --jobs 1 --out " +
                        out("s1.json"),
                    out("s1.log")) == 0;
  all_ok &= run_cli("singular-search --auto " + fixture.string() + " --jobs 8 --out " +
                        out("s8.json"),
                    out("s8.log")) == 0;
  c.require(all_ok, "CLI run failed (logs in " + dir.string() + ")");
  if (all_ok) {
    c.require(read_file(out("a1.json")) == read_file(out("a8.json")),
              "analyze JSON differs across job counts");
    c.require(read_file(out("s1.json")) == read_file(out("s8.json")),
              "singular-search JSON differs across job counts");
  }
  if (c.ok) fs::remove_all(dir);
  c.finish();
}

}  // namespace

void interface_smoke() {
  if (g_cli_path.empty()) return;
  Criterion c(0, "interface smoke: exit codes 0/1 and m=0 routing", 0.0);
  fs::path dir = fs::temp_directory_path() / ("lamina-smoke-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path fixture = dir / "fixture.auto";
  write_file(fixture.string(),
             "rank 3\na -> ab\nb -> ac\nc -> a\ninverse:\na -> c\nb -> Ca\nc -> Cb\n");
  auto log = (dir / "log").string();
  int bad = run_cli("fiber --auto " + fixture.string() + " --element a,x", log);
  c.require(WIFEXITED(bad) && WEXITSTATUS(bad) == 1, "malformed element spec should exit 1");
  int parse = run_cli("analyze --auto " + (dir / "missing.auto").string(), log);
  c.require(WIFEXITED(parse) && WEXITSTATUS(parse) == 1, "missing file should exit 1");
  int simple = run_cli("fiber --auto " + fixture.string() + " --element a,0 --out " +
                           (dir / "s.json").string(),
                       log);
  c.require(WIFEXITED(simple) && WEXITSTATUS(simple) == 0, "m=0 simplicity route should pass");
  if (c.ok) fs::remove_all(dir);
  c.finish();
}

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6_and_8();
  criterion7();
  criterion9();
  criterion10();
  interface_smoke();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
