#include "lamina/ctfiber.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <thread>

namespace lamina {

const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::simple: return "simple";
    case PointClass::regular: return "regular";
    case PointClass::singular: return "singular";
    case PointClass::undetermined: return "undetermined";
  }
  return "?";
}

const char* point_type_name(PointType t) {
  switch (t) {
    case PointType::phi: return "phi";
    case PointType::phi_inverse: return "phi_inverse";
    case PointType::not_applicable: return "not_applicable";
  }
  return "?";
}

const char* check_verdict_name(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::pass: return "PASS";
    case CheckVerdict::fail: return "FAIL";
    case CheckVerdict::undecided: return "UNDECIDED";
  }
  return "?";
}

namespace {

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  unsigned n_threads = std::min<unsigned>(jobs, static_cast<unsigned>(n));
  std::vector<std::thread> threads;
  std::size_t chunk = (n + n_threads - 1) / n_threads;
  for (unsigned t = 0; t < n_threads; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo < hi)
      threads.emplace_back([lo, hi, &body] {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      });
  }
  for (auto& th : threads) th.join();
}

// Cheap convergence screen before constructing the real ray: iterate
// with a small length cap and require a solid stable prefix.
bool converges(const Automorphism& psi, int p, const ReducedWord& seed, int target) {
  std::size_t screen_budget = 4096;
  ReducedWord w = seed;
  std::size_t committed = 0;
  for (int step = 0; step < 96; ++step) {
    ReducedWord next;
    try {
      next = psi.power_apply(p, w, screen_budget);
    } catch (const BudgetError&) {
      return false;
    }
    std::size_t agree = common_prefix(w, next);
    if (agree < committed) return false;
    committed = agree;
    w = next;
    if (committed >= static_cast<std::size_t>(target)) return true;
  }
  return false;
}

}  // namespace

RayFamily attracting_rays(const Automorphism& psi, const FiberConfig& cfg) {
  RayFamily fam;
  std::set<ReducedWord> seen_seeds;
  std::set<ReducedWord> seen_prefixes;
  int screen_target = std::min(cfg.dedupe_prefix, 48);
  Basis basis(psi.rank());

  // Seed pool: letters and inverses, their short conjugates, and short
  // forward images of letters.  The images catch phase-shifted members
  // of periodic ray cycles whose other phases no letter reaches.
  std::vector<ReducedWord> seeds;
  for (const ReducedWord& u : enumerate_words(psi.rank(), cfg.seed_conj_len)) {
    ReducedWord ui = invert(u);
    for (int code = 0; code < 2 * psi.rank(); ++code) {
      ReducedWord gen(psi.rank(), {Letter::from_code(code)});
      seeds.push_back(multiply(multiply(u, gen), ui));
    }
  }
  for (int code = 0; code < 2 * psi.rank(); ++code) {
    ReducedWord w(psi.rank(), {Letter::from_code(code)});
    for (int j = 1; j <= cfg.period_max; ++j) {
      bool too_long = false;
      try {
        w = psi.power_apply(1, w, 64);
      } catch (const BudgetError&) {
        too_long = true;
      }
      if (too_long) break;
      seeds.push_back(w);
    }
  }

  for (const ReducedWord& seed : seeds) {
    {
      if (seed.empty() || !seen_seeds.insert(seed).second) continue;
      bool emitted = false;
      for (int p = 1; p <= cfg.period_max && !emitted; ++p) {
        ReducedWord image;
        try {
          image = psi.power_apply(p, seed, cfg.budget);
        } catch (const BudgetError&) {
          continue;
        }
        if (image == seed) {
          // Letterwise-fixed seed: periodic fallback.
          Ray ray = Ray::power(seed);
          if (seen_prefixes.insert(ray.prefix(cfg.dedupe_prefix)).second)
            fam.rays.push_back(ray);
          emitted = true;
          break;
        }
        if (!converges(psi, p, seed, screen_target)) continue;
        Ray ray = Ray::iterated(psi, p, seed, cfg.budget);
        ReducedWord prefix;
        try {
          prefix = ray.prefix(cfg.dedupe_prefix);
        } catch (const BudgetError&) {
          continue;
        }
        if (seen_prefixes.insert(prefix).second) fam.rays.push_back(ray);
        emitted = true;
      }
      if (!emitted)
        fam.dropped.push_back(format_word(basis, seed));
    }
  }
  return fam;
}

FactorLanguage family_language(const std::vector<Ray>& rays, int k, int probe) {
  if (rays.empty()) throw std::invalid_argument("family_language needs at least one ray");
  auto union_factors = [&](int depth_probe) {
    std::set<ReducedWord> out;
    for (const Ray& r : rays) {
      ReducedWord p = r.prefix(depth_probe);
      for (std::size_t pos = 0; pos < p.size(); ++pos) {
        for (std::size_t len = 1; len <= static_cast<std::size_t>(k) && pos + len <= p.size();
             ++len) {
          ReducedWord sub = p.subword(pos, len);
          out.insert(sub);
          out.insert(invert(sub));
        }
      }
    }
    return out;
  };
  std::set<ReducedWord> base = union_factors(probe);
  bool stabilized = false;
  try {
    stabilized = union_factors(2 * probe) == base;
  } catch (const BudgetError&) {
    stabilized = false;
  }
  return FactorLanguage::build(rays.front().rank(), k, stabilized, Provenance::ray, base);
}

FiberLanguages fiber_languages(const Automorphism& phi, const FiberConfig& cfg) {
  if (!phi.has_inverse())
    throw std::invalid_argument("fiber analysis needs the inverse images of phi");
  auto side = [&](const Automorphism& psi, const char* name) {
    RayFamily fam = attracting_rays(psi, cfg);
    if (fam.rays.empty())
      throw std::invalid_argument(std::string("no attracting rays found for ") + name +
                                  "; cannot approximate its lamination");
    return family_language(fam.rays, cfg.depth, cfg.probe);
  };
  return FiberLanguages{side(phi, "phi"), side(phi.inverted(), "phi^-1")};
}

FiberReport fiber_report(const Automorphism& phi, const MappingTorusElement& g,
                         const FiberLanguages& langs, const FiberConfig& cfg) {
  if (g.m == 0)
    throw std::invalid_argument("m = 0 elements are handled by simple_point_check");
  FiberReport report;
  report.element = g;
  report.depth = cfg.depth;

  Automorphism psi = conjugation_automorphism(phi, g, cfg.budget);
  RayFamily fam = attracting_rays(psi, cfg);
  report.rays = fam.rays;
  for (const std::string& s : fam.dropped)
    report.notes.push_back("seed " + s + " did not converge");
  const FactorLanguage& lang = g.m >= 1 ? langs.plus : langs.minus;
  const FactorLanguage& opposite = g.m >= 1 ? langs.minus : langs.plus;
  report.stabilized = lang.stabilized();

  if (fam.rays.empty()) {
    report.cls = PointClass::undetermined;
    report.notes.push_back("no convergent seed");
    return report;
  }

  report.partition = diag_components(report.rays, lang, cfg.depth, cfg.slack, cfg.probe_cap);
  const std::vector<std::size_t>& primary = report.partition.components.front();
  report.degree_lower_bound = static_cast<int>(primary.size());

  bool primary_undecided = false;
  for (const auto& [i, j] : report.partition.undecided) {
    bool i_in = std::find(primary.begin(), primary.end(), i) != primary.end();
    bool j_in = std::find(primary.begin(), primary.end(), j) != primary.end();
    if (i_in || j_in) primary_undecided = true;
  }
  if (primary_undecided) {
    report.cls = PointClass::undetermined;
    report.notes.push_back("undecided pairs touch the primary component");
  } else if (report.degree_lower_bound == 1) {
    report.cls = PointClass::simple;
  } else if (report.degree_lower_bound == 2) {
    report.cls = PointClass::regular;
  } else {
    report.cls = PointClass::singular;
  }
  if (report.cls == PointClass::regular || report.cls == PointClass::singular)
    report.type = g.m >= 1 ? PointType::phi : PointType::phi_inverse;

  // Identified pairs must be refuted by the opposite side once both
  // language approximations are stabilized.
  if (lang.stabilized() && opposite.stabilized()) {
    for (const auto& comp : report.partition.components) {
      for (std::size_t a = 0; a < comp.size(); ++a) {
        for (std::size_t b = a + 1; b < comp.size(); ++b) {
          LeafVerdict direct = leaf_test(lang, report.rays[comp[a]], report.rays[comp[b]],
                                         cfg.depth, cfg.slack, cfg.probe_cap);
          if (direct.kind != LeafVerdict::Kind::consistent) continue;
          LeafVerdict other = leaf_test(opposite, report.rays[comp[a]], report.rays[comp[b]],
                                        cfg.depth, cfg.slack, cfg.probe_cap);
          if (other.kind != LeafVerdict::Kind::no)
            report.cross_violations.emplace_back(comp[a], comp[b]);
        }
      }
    }
  }

  int two_n = 2 * phi.rank();
  if (report.degree_lower_bound > two_n)
    throw BoundViolation("degree lower bound " + std::to_string(report.degree_lower_bound) +
                             " exceeds 2N = " + std::to_string(two_n),
                         report);
  return report;
}

SimpleCheck simple_point_check(const Automorphism& phi, const ReducedWord& w,
                               const FiberLanguages& langs, const FiberConfig& cfg) {
  if (w.empty()) throw std::invalid_argument("simple_point_check needs a nontrivial word");
  SimpleCheck out;
  Basis basis(phi.rank());
  Ray x = Ray::power(w);

  // Discriminating the periodic side of (w^inf, Y) needs windows long
  // enough that a power of the cyclic core of w exceeds the bounded
  // critical exponent of the lamination words; the test depth therefore
  // scales with the core length.
  int core = static_cast<int>(cyclic_normalize(w).cyclic.size());
  int depth = std::min(std::max(cfg.depth, 4 * core + 8), 64);
  const FiberLanguages* languages = &langs;
  FiberLanguages deep;
  if (langs.plus.depth() < depth || langs.minus.depth() < depth) {
    FiberConfig deep_cfg = cfg;
    deep_cfg.depth = depth;
    deep_cfg.probe = std::max(cfg.probe, 32 * depth);
    deep = fiber_languages(phi, deep_cfg);
    languages = &deep;
  }
  int probe_cap = std::max(cfg.probe_cap, 16 * depth);

  std::vector<Ray> pool;
  for (const CyclicWord& u : enumerate_cyclic_words(phi.rank(), cfg.pool_len))
    pool.push_back(Ray::power(u.rotation()));
  FiberConfig pool_cfg = cfg;
  pool_cfg.seed_conj_len = 0;
  std::vector<MappingTorusElement> nearby;
  for (const ReducedWord& v : enumerate_words(phi.rank(), 1)) {
    nearby.push_back(MappingTorusElement{v, 1});
    if (phi.has_inverse()) nearby.push_back(MappingTorusElement{v, -1});
  }
  for (const MappingTorusElement& g : nearby) {
    Automorphism psi = conjugation_automorphism(phi, g, cfg.budget);
    RayFamily fam = attracting_rays(psi, pool_cfg);
    pool.insert(pool.end(), fam.rays.begin(), fam.rays.end());
  }

  bool undecided = false;
  for (const Ray& y : pool) {
    RayEquality eq = ray_equal(x, y, cfg.probe);
    if (eq == RayEquality::equal_certified) continue;
    if (eq == RayEquality::undecided) {
      undecided = true;
      continue;
    }
    ++out.candidates_tested;
    for (const FactorLanguage* lang : {&languages->plus, &languages->minus}) {
      LeafVerdict v = leaf_test(*lang, x, y, depth, depth, probe_cap);
      if (v.kind == LeafVerdict::Kind::consistent) {
        out.verdict = CheckVerdict::fail;
        out.detail = "candidate " + y.describe(basis) + " consistent with " +
                     format_word(basis, w) + "^inf at depth " + std::to_string(depth);
        return out;
      }
      if (v.kind == LeafVerdict::Kind::undecided) undecided = true;
    }
  }
  if (out.candidates_tested == 0) {
    out.pool_empty = true;
    out.verdict = CheckVerdict::pass;
    out.detail = "vacuous: candidate pool empty";
    return out;
  }
  out.verdict = undecided ? CheckVerdict::undecided : CheckVerdict::pass;
  return out;
}

namespace {

bool is_proper_power(const Automorphism& phi, const MappingTorusElement& g,
                     const std::vector<ReducedWord>& words, std::size_t budget) {
  for (int j = 2; j <= std::abs(static_cast<int>(g.m)); ++j) {
    if (g.m % j != 0) continue;
    for (const ReducedWord& v : words) {
      MappingTorusElement root{v, g.m / j};
      if (mt_power(phi, root, j, budget) == g) return true;
    }
  }
  return false;
}

}  // namespace

SingularSearchResult singular_search(const Automorphism& phi, const FiberLanguages& langs,
                                     const FiberConfig& cfg) {
  if (!phi.has_inverse())
    throw std::invalid_argument("singular search needs the inverse images of phi");
  SingularSearchResult result;
  Basis basis(phi.rank());
  std::vector<ReducedWord> words = enumerate_words(phi.rank(), cfg.word_radius);

  std::vector<MappingTorusElement> kept;
  for (const ReducedWord& w : words) {
    for (int m = -cfg.exp_max; m <= cfg.exp_max; ++m) {
      if (m == 0) continue;
      ++result.candidates_enumerated;
      MappingTorusElement g{w, m};
      if (is_proper_power(phi, g, words, cfg.budget)) continue;
      bool duplicate = false;
      for (const MappingTorusElement& k : kept) {
        if (g_conjugate_bounded(phi, g, k, cfg.word_radius + 2, cfg.exp_max, cfg.budget)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) kept.push_back(g);
    }
  }
  result.candidates_analyzed = static_cast<int>(kept.size());

  std::vector<FiberReport> reports(kept.size());
  std::vector<std::string> errors(kept.size());
  parallel_for(kept.size(), cfg.jobs, [&](std::size_t i) {
    try {
      reports[i] = fiber_report(phi, kept[i], langs, cfg);
    } catch (const BudgetError& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (!errors[i].empty())
      result.diagnostics.push_back("candidate (" + format_word(basis, kept[i].w) + "," +
                                   std::to_string(kept[i].m) + "): " + errors[i]);
    else
      result.reports.push_back(reports[i]);
  }

  // Retain singular reports and group them into F_N-orbit families.
  std::vector<std::size_t> singular_idx;
  for (std::size_t i = 0; i < result.reports.size(); ++i)
    if (result.reports[i].cls == PointClass::singular) singular_idx.push_back(i);

  std::vector<std::size_t> family_of(singular_idx.size());
  for (std::size_t i = 0; i < singular_idx.size(); ++i) family_of[i] = i;
  for (std::size_t i = 0; i < singular_idx.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (family_of[j] != j) continue;
      if (fn_conjugate_bounded(phi, result.reports[singular_idx[i]].element,
                               result.reports[singular_idx[j]].element, cfg.word_radius + 2,
                               cfg.budget)) {
        family_of[i] = j;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < singular_idx.size(); ++i) {
    if (family_of[i] == i) {
      SingularFamily fam;
      fam.representative = result.reports[singular_idx[i]].element;
      fam.report = result.reports[singular_idx[i]];
      for (std::size_t j = 0; j < singular_idx.size(); ++j)
        if (family_of[j] == i) fam.members.push_back(result.reports[singular_idx[j]].element);
      result.families.push_back(std::move(fam));
    }
  }

  // Bound checks over the found families.
  BoundsCheck& bc = result.bounds;
  bc.rank = phi.rank();
  bc.two_n = 2 * bc.rank;
  bc.two_n_minus_2 = 2 * bc.rank - 2;
  bc.four_n_minus_5 = 4 * bc.rank - 5;
  bc.four_n_minus_1 = 4 * bc.rank - 1;
  bc.sigma_found = static_cast<int>(result.families.size());
  for (const FiberReport& r : result.reports) {
    if (r.degree_lower_bound > bc.two_n) bc.per_report_ok = false;
    if (!r.cross_violations.empty()) bc.cross_ok = false;
  }
  for (const SingularFamily& fam : result.families) {
    int excess = fam.report.degree_lower_bound - 2;
    if (fam.report.type == PointType::phi)
      bc.sum_phi += excess;
    else if (fam.report.type == PointType::phi_inverse)
      bc.sum_phi_inverse += excess;
  }
  bc.per_type_ok = bc.sum_phi <= bc.two_n_minus_2 && bc.sum_phi_inverse <= bc.two_n_minus_2 &&
                   bc.sum_phi + bc.sum_phi_inverse <= bc.four_n_minus_5;
  bc.family_count_ok = bc.sigma_found <= bc.four_n_minus_5;
  for (const SingularFamily& fam : result.families) {
    PairDegree pd = pair_degree_check(phi, fam.representative, langs, cfg);
    if (!pd.within_bound) bc.pair_ok = false;
    if (!pd.types_ok) bc.pair_ok = false;
    bc.pair_notes.push_back("(" + format_word(basis, fam.representative.w) + "," +
                            std::to_string(fam.representative.m) +
                            "): deg sum >= " + std::to_string(pd.sum) + " <= " +
                            std::to_string(bc.four_n_minus_1) +
                            (pd.within_bound ? " ok" : " VIOLATION"));
  }
  return result;
}

PairDegree pair_degree_check(const Automorphism& phi, const MappingTorusElement& g,
                             const FiberLanguages& langs, const FiberConfig& cfg) {
  if (g.m == 0) throw std::invalid_argument("pair degree check needs m != 0");
  PairDegree out;
  out.forward = fiber_report(phi, g, langs, cfg);
  out.backward = fiber_report(phi, mt_inverse(phi, g, cfg.budget), langs, cfg);
  out.sum = out.forward.degree_lower_bound + out.backward.degree_lower_bound;
  out.within_bound = out.sum <= 4 * phi.rank() - 1;
  if (out.forward.cls == PointClass::singular && out.backward.cls == PointClass::singular)
    out.types_ok = out.forward.type != out.backward.type;
  return out;
}

}  // namespace lamina
