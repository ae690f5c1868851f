// lamina: batch analysis of Cannon-Thurston fibers for hyperbolic
// free-group automorphisms.  Subcommands: analyze, fiber,
// singular-search, carried, verify-bounds.
//
// Exit codes: 0 ok, 1 usage/parse, 2 invariant violation (bug signal),
// 3 undecided, 4 budget.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lamina/ctfiber.hpp"
#include "lamina/io.hpp"
#include "lamina/report.hpp"
#include "lamina/stallings.hpp"
#include "lamina/traintrack.hpp"

namespace {

using namespace lamina;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitBudget = 4;

struct CommonOpts {
  std::string auto_path;
  std::string out_path;
  FiberConfig cfg;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--auto", opts.auto_path, "automorphism file")->required();
  cmd->add_option("--depth", opts.cfg.depth, "factor-language depth k");
  cmd->add_option("--iter-max", opts.cfg.n_max, "language iteration cap");
  cmd->add_option("--stall", opts.cfg.stall, "stabilization streak");
  cmd->add_option("--ball", opts.cfg.ball_radius, "Mitra ball radius");
  cmd->add_option("--word-radius", opts.cfg.word_radius, "singular search |w| bound");
  cmd->add_option("--exp-max", opts.cfg.exp_max, "singular search |m| bound");
  cmd->add_option("--period-max", opts.cfg.period_max, "attracting-ray period bound");
  cmd->add_option("--budget", opts.cfg.budget, "word length budget");
  cmd->add_option("--tol", opts.cfg.tol, "Perron-Frobenius tolerance");
  cmd->add_option("--jobs", opts.cfg.jobs, "worker threads");
  cmd->add_option("--slack", opts.cfg.slack, "window slack");
  cmd->add_option("--probe", opts.cfg.probe, "ray probe depth");
  cmd->add_option("--out", opts.out_path, "JSON output path (stdout when omitted)");
}

void emit(const CommonOpts& opts, const json& j) {
  std::string text = j.dump(2) + "\n";
  if (opts.out_path.empty())
    std::cout << text;
  else
    write_file(opts.out_path, text);
}

AutomorphismFile load_auto(const CommonOpts& opts) {
  AutomorphismFile f = parse_automorphism_file(read_file(opts.auto_path));
  if (f.basis.rank() == 2)
    std::cout << "warning: rank 2 input; atoroidal iwips require N >= 3\n";
  return f;
}

MappingTorusElement parse_element(const Basis& basis, const std::string& spec) {
  auto comma = spec.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("element spec must be `w,m`");
  ReducedWord w = parse_word(basis, spec.substr(0, comma));
  std::string mtext = spec.substr(comma + 1);
  std::size_t used = 0;
  long m = 0;
  try {
    m = std::stol(mtext, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("element exponent must be an integer");
  }
  if (used != mtext.size()) throw std::invalid_argument("element exponent must be an integer");
  return MappingTorusElement{w, m};
}

Ray parse_ray_spec(const Basis& basis, const std::string& spec) {
  auto comma = spec.find(',');
  ReducedWord stem = ReducedWord::identity(basis.rank());
  std::string period = spec;
  if (comma != std::string::npos) {
    stem = parse_word(basis, spec.substr(0, comma));
    period = spec.substr(comma + 1);
  }
  return Ray::periodic(stem, parse_word(basis, period));
}

int cmd_analyze(CommonOpts& opts, const std::string& tt_path) {
  AutomorphismFile file = load_auto(opts);
  const Basis& basis = file.basis;
  const Automorphism& phi = file.map;
  json j;
  std::ostringstream text;
  j["rank"] = basis.rank();
  if (basis.rank() == 2) j["warnings"] = {"rank 2: atoroidal iwips require N >= 3"};
  else j["warnings"] = json::array();

  json images;
  for (int i = 0; i < basis.rank(); ++i)
    images[std::string(1, basis.name(i))] = format_word(basis, phi.image(i));
  j["images"] = images;
  j["inverse_present"] = phi.has_inverse();
  text << "rank N = " << basis.rank() << "\n";

  // Train-track data: user file wins, otherwise the rose map read off
  // the basis images.
  GraphMap map = GraphMap::from_automorphism(phi);
  std::string tt_source = "basis images (rose)";
  if (!tt_path.empty()) {
    TrainTrackFile tt = parse_traintrack_file(read_file(tt_path));
    map = tt.map;
    tt_source = tt_path;
  }
  int dirs = 2 * map.graph().edges();
  TrainTrackVerdict tt_verdict = validate_train_track(map, dirs * dirs);
  j["train_track"] = {{"source", tt_source},
                      {"pass", tt_verdict.pass},
                      {"max_iter", dirs * dirs}};
  text << "train track (" << tt_source << "): " << (tt_verdict.pass ? "PASS" : "FAIL") << "\n";

  TransitionMatrix m = transition_matrix(map);
  json mat = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.size(); ++k) row.push_back(m.at(i, k));
    mat.push_back(row);
  }
  j["transition_matrix"] = mat;
  text << "transition matrix rows:";
  for (int i = 0; i < m.size(); ++i) {
    text << "  [";
    for (int k = 0; k < m.size(); ++k) text << (k ? " " : "") << m.at(i, k);
    text << "]";
  }
  text << "\n";

  try {
    PerronData pf = pf_eigenvalue(m, opts.cfg.tol);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", pf.value);
    j["pf"] = {{"value", pf.value}, {"vector", pf.vector}, {"iterations", pf.iterations}};
    text << "Perron-Frobenius lambda = " << buf << "\n";
  } catch (const std::invalid_argument& e) {
    j["pf"] = {{"error", e.what()}};
    text << "Perron-Frobenius: " << e.what() << "\n";
  }

  auto scan = periodic_class_scan(phi, 4, 6, opts.cfg.budget);
  json scan_json = json::array();
  for (const PeriodicClass& pc : scan)
    scan_json.push_back({{"word", format_cyclic(basis, pc.word)}, {"period", pc.period}});
  j["periodic_scan"] = {{"max_len", 4}, {"max_power", 6}, {"found", scan_json}};
  text << "periodic-class scan (len<=4, pow<=6): "
       << (scan.empty() ? "none found (necessary evidence of atoroidality)"
                        : std::to_string(scan.size()) + " classes -- NOT atoroidal")
       << "\n";

  json langs_json;
  if (phi.has_inverse()) {
    FiberLanguages langs = fiber_languages(phi, opts.cfg);
    langs_json["phi_rays"] = {{"depth", langs.plus.depth()},
                              {"size", langs.plus.size()},
                              {"stabilized", langs.plus.stabilized()}};
    langs_json["phi_inverse_rays"] = {{"depth", langs.minus.depth()},
                                      {"size", langs.minus.size()},
                                      {"stabilized", langs.minus.stabilized()}};
    bool distinct = !(language_compare(langs.plus, langs.minus) == LanguageOrder::equal);
    langs_json["phi_vs_phi_inverse_distinct"] = distinct;
    text << "lamination languages at k=" << opts.cfg.depth << ": phi " << langs.plus.size()
         << " words, phi^-1 " << langs.minus.size() << " words, distinct "
         << (distinct ? "yes" : "NO") << "\n";

    CyclicWord h{ReducedWord(basis.rank(), {Letter(0, true)})};
    LanguageResult orbit =
        orbit_language(phi, h, opts.cfg.depth, opts.cfg.n_max, opts.cfg.stall, opts.cfg.budget);
    MitraResult mitra = mitra_language(phi, opts.cfg.ball_radius, opts.cfg.depth, opts.cfg.n_max,
                                       opts.cfg.stall, opts.cfg.budget, opts.cfg.jobs);
    langs_json["orbit_a"] = {{"size", orbit.language.size()},
                             {"stabilized", orbit.language.stabilized()},
                             {"stages", orbit.stages}};
    json used = json::array();
    for (const CyclicWord& u : mitra.used) used.push_back(format_cyclic(basis, u));
    langs_json["mitra"] = {{"size", mitra.language.size()},
                           {"stabilized", mitra.language.stabilized()},
                           {"ball", opts.cfg.ball_radius},
                           {"used", used}};
    if (tt_verdict.pass && map.graph().is_rose()) {
      LanguageResult bfh = bfh_language(map, opts.cfg.depth, opts.cfg.stall, opts.cfg.budget);
      langs_json["bfh"] = {{"size", bfh.language.size()},
                           {"stabilized", bfh.language.stabilized()},
                           {"stages", bfh.stages}};
      langs_json["containment"] = {
          {"bfh_in_orbit_a",
           language_order_name(language_compare(bfh.language, orbit.language))},
          {"orbit_a_in_mitra",
           language_order_name(language_compare(orbit.language, mitra.language))},
          {"bfh_in_mitra", language_order_name(language_compare(bfh.language, mitra.language))},
          {"bfh_vs_phi_rays", language_order_name(language_compare(bfh.language, langs.plus))}};
      text << "bfh language: " << bfh.language.size() << " words, stabilized at stage "
           << bfh.stages << "; containment bfh<=orbit[a]<=mitra: "
           << langs_json["containment"]["bfh_in_orbit_a"].get<std::string>() << ", "
           << langs_json["containment"]["orbit_a_in_mitra"].get<std::string>() << "\n";
    }
  } else {
    langs_json["note"] = "inverse images absent; lamination analysis skipped";
    text << "no inverse block: lamination analysis skipped\n";
  }
  j["languages"] = langs_json;
  j["config"] = config_json(opts.cfg);

  std::cout << text.str();
  emit(opts, j);
  return kExitOk;
}

int cmd_fiber(CommonOpts& opts, const std::string& element_spec) {
  AutomorphismFile file = load_auto(opts);
  MappingTorusElement g = parse_element(file.basis, element_spec);
  FiberLanguages langs = fiber_languages(file.map, opts.cfg);
  if (g.m == 0) {
    if (g.w.empty()) throw std::invalid_argument("(1,0) is the identity, not a boundary point");
    SimpleCheck check = simple_point_check(file.map, g.w, langs, opts.cfg);
    std::cout << "simple_point_check " << format_word(file.basis, g.w) << "^inf: "
              << check_verdict_name(check.verdict) << " (" << check.candidates_tested
              << " candidates)" << (check.detail.empty() ? "" : " " + check.detail) << "\n";
    emit(opts, simple_check_json(file.basis, g.w, check, opts.cfg));
    if (check.verdict == CheckVerdict::undecided) return kExitUndecided;
    return check.verdict == CheckVerdict::pass ? kExitOk : kExitUndecided;
  }
  FiberReport report = fiber_report(file.map, g, langs, opts.cfg);
  BoundsCheck bounds =
      threshold_bounds(file.basis.rank(), report.cls == PointClass::singular ? 1 : 0);
  std::cout << "fiber of (" << format_word(file.basis, g.w) << " t^" << g.m << ")^inf: "
            << report.rays.size() << " rays, degree >= " << report.degree_lower_bound << ", "
            << point_class_name(report.cls) << ", type " << point_type_name(report.type) << "\n";
  emit(opts, fiber_report_json(file.basis, report, bounds, opts.cfg));
  if (!report.cross_violations.empty()) return kExitViolation;
  if (report.cls == PointClass::undetermined) return kExitUndecided;
  return kExitOk;
}

int run_singular(CommonOpts& opts, bool verify_mode) {
  AutomorphismFile file = load_auto(opts);
  FiberLanguages langs = fiber_languages(file.map, opts.cfg);
  SingularSearchResult result = singular_search(file.map, langs, opts.cfg);
  const BoundsCheck& bc = result.bounds;
  std::printf("thresholds: 2N=%d  2N-2=%d  4N-5=%d  4N-1=%d\n", bc.two_n, bc.two_n_minus_2,
              bc.four_n_minus_5, bc.four_n_minus_1);
  std::printf("candidates: %d enumerated, %d analyzed\n", result.candidates_enumerated,
              result.candidates_analyzed);
  if (result.families.empty()) {
    std::printf("no singular witnesses at these bounds\n");
  } else {
    for (const SingularFamily& fam : result.families)
      std::printf("family (%s, t^%ld): degree >= %d, type %s, %zu member(s)\n",
                  format_word(file.basis, fam.representative.w).c_str(), fam.representative.m,
                  fam.report.degree_lower_bound, point_type_name(fam.report.type),
                  fam.members.size());
  }
  std::printf("sigma (families found) = %d <= %d : %s\n", bc.sigma_found, bc.four_n_minus_5,
              bc.family_count_ok ? "ok" : "VIOLATION");
  std::printf("per-type sums of (deg-2): phi %d, phi^-1 %d <= %d : %s\n", bc.sum_phi,
              bc.sum_phi_inverse, bc.two_n_minus_2, bc.per_type_ok ? "ok" : "VIOLATION");
  std::printf("per-report degree <= %d : %s\n", bc.two_n, bc.per_report_ok ? "ok" : "VIOLATION");
  std::printf("pairwise deg(g)+deg(g^-1) <= %d : %s\n", bc.four_n_minus_1,
              bc.pair_ok ? "ok" : "VIOLATION");
  std::printf("cross-language disjointness: %s\n", bc.cross_ok ? "ok" : "VIOLATION");
  if (verify_mode)
    std::printf("verify-bounds: %s\n", bc.all_ok() ? "ALL BOUNDS HOLD" : "VIOLATION FOUND");
  emit(opts, singular_search_json(file.basis, result, opts.cfg));
  return bc.all_ok() ? kExitOk : kExitViolation;
}

int cmd_carried(CommonOpts& opts, const std::string& subgroup_path,
                const std::vector<std::string>& ray_specs,
                const std::vector<std::string>& leaf_specs, int lamination_leaves, int depth) {
  AutomorphismFile file = load_auto(opts);
  const Basis& basis = file.basis;
  SubgroupGraph h =
      SubgroupGraph::build(basis.rank(), parse_subgroup_file(basis, read_file(subgroup_path)));
  auto ik = h.index_kind();
  json j;
  j["subgroup"] = {{"vertices", h.vertices()},
                   {"index", ik.finite ? std::to_string(ik.index) : std::string("infinite")}};
  std::cout << "subgroup graph: " << h.vertices() << " vertices, index "
            << (ik.finite ? std::to_string(ik.index) : "infinite") << "\n";
  json verdicts = json::array();
  bool any_undecided = false;
  auto record = [&](const std::string& what, const CarryVerdict& v) {
    const char* name = v.kind == CarryKind::carried        ? "carried"
                       : v.kind == CarryKind::not_carried ? "not-carried"
                                                          : "undecided";
    verdicts.push_back({{"target", what}, {"verdict", name}, {"witness_depth", v.witness_depth}});
    std::cout << what << ": " << name << " (depth " << v.witness_depth << ")\n";
    any_undecided = any_undecided || v.kind == CarryKind::undecided;
  };
  for (const std::string& spec : ray_specs)
    record("ray " + spec, carries_ray(h, parse_ray_spec(basis, spec), depth));
  for (const std::string& spec : leaf_specs) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("leaf spec must be `ray:ray`");
    Ray x = parse_ray_spec(basis, spec.substr(0, colon));
    Ray y = parse_ray_spec(basis, spec.substr(colon + 1));
    record("leaf " + spec, carries_leaf(h, x, y, depth, opts.cfg.probe_cap));
  }
  if (lamination_leaves > 0) {
    RayFamily fam = attracting_rays(file.map, opts.cfg);
    int count = 0;
    for (std::size_t a = 0; a < fam.rays.size() && count < lamination_leaves; ++a)
      for (std::size_t b = a + 1; b < fam.rays.size() && count < lamination_leaves; ++b) {
        record("lamination leaf (" + std::to_string(a) + "," + std::to_string(b) + ")",
               carries_leaf(h, fam.rays[a], fam.rays[b], depth, opts.cfg.probe_cap));
        ++count;
      }
  }
  j["verdicts"] = verdicts;
  j["config"] = config_json(opts.cfg);
  emit(opts, j);
  return any_undecided ? kExitUndecided : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lamina: certified desk-scale analysis of Cannon-Thurston fibers"};
  app.require_subcommand(1);

  CommonOpts analyze_opts, fiber_opts, singular_opts, carried_opts, verify_opts;
  std::string tt_path, element_spec, subgroup_path;
  std::vector<std::string> ray_specs, leaf_specs;
  int lamination_leaves = 0;
  int carried_depth = 12;

  CLI::App* analyze = app.add_subcommand("analyze", "transition data, scan, languages");
  add_common(analyze, analyze_opts);
  analyze->add_option("--tt", tt_path, "train-track file (default: rose from images)");

  CLI::App* fiber = app.add_subcommand("fiber", "fiber report for one element w,m");
  add_common(fiber, fiber_opts);
  fiber->add_option("--element", element_spec, "element `w,m` (m=0 runs the simplicity check)")
      ->required();

  CLI::App* singular = app.add_subcommand("singular-search", "enumerate singular candidates");
  add_common(singular, singular_opts);

  CLI::App* carried = app.add_subcommand("carried", "Stallings-graph carried tests");
  add_common(carried, carried_opts);
  carried->add_option("--subgroup", subgroup_path, "subgroup file")->required();
  carried->add_option("--ray", ray_specs, "periodic ray `stem,period` or `period`");
  carried->add_option("--leaf", leaf_specs, "periodic leaf `ray:ray`");
  carried->add_option("--lamination-leaves", lamination_leaves,
                      "test this many attracting-ray leaf pairs");
  carried->add_option("--carry-depth", carried_depth, "reading depth");

  CLI::App* verify = app.add_subcommand("verify-bounds", "singular search plus bound table");
  add_common(verify, verify_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_opts, tt_path);
    if (fiber->parsed()) return cmd_fiber(fiber_opts, element_spec);
    if (singular->parsed()) return run_singular(singular_opts, false);
    if (verify->parsed()) return run_singular(verify_opts, true);
    if (carried->parsed())
      return cmd_carried(carried_opts, subgroup_path, ray_specs, leaf_specs, lamination_leaves,
                         carried_depth);
  } catch (const BoundViolation& e) {
    std::cerr << "BOUND VIOLATION (bug): " << e.what() << "\n";
    Basis basis(e.report().element.w.rank() >= 2 ? e.report().element.w.rank() : 2);
    std::cerr << "reproducer report:\n"
              << fiber_report_json(basis, e.report(),
                                   threshold_bounds(basis.rank(), 0), FiberConfig{})
                     .dump(2)
              << "\n";
    return kExitViolation;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
