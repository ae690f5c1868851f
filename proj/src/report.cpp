#include "lamina/report.hpp"

namespace lamina {

json config_json(const FiberConfig& cfg) {
  json j;
  j["depth"] = cfg.depth;
  j["slack"] = cfg.slack;
  j["probe"] = cfg.probe;
  j["n_max"] = cfg.n_max;
  j["stall"] = cfg.stall;
  j["ball_radius"] = cfg.ball_radius;
  j["word_radius"] = cfg.word_radius;
  j["exp_max"] = cfg.exp_max;
  j["period_max"] = cfg.period_max;
  j["pool_len"] = cfg.pool_len;
  j["budget"] = cfg.budget;
  j["tol"] = cfg.tol;
  return j;
}

std::string ray_prefix_string(const Basis& basis, const Ray& ray, int len) {
  try {
    return format_word(basis, ray.prefix(len));
  } catch (const BudgetError&) {
    return ray.describe(basis) + " (prefix unavailable)";
  }
}

json bounds_json(const BoundsCheck& bounds) {
  json j;
  j["two_n"] = bounds.two_n;
  j["two_n_minus_2"] = bounds.two_n_minus_2;
  j["four_n_minus_5"] = bounds.four_n_minus_5;
  j["four_n_minus_1"] = bounds.four_n_minus_1;
  j["sigma_found"] = bounds.sigma_found;
  return j;
}

BoundsCheck threshold_bounds(int rank, int sigma_found) {
  BoundsCheck bc;
  bc.rank = rank;
  bc.two_n = 2 * rank;
  bc.two_n_minus_2 = 2 * rank - 2;
  bc.four_n_minus_5 = 4 * rank - 5;
  bc.four_n_minus_1 = 4 * rank - 1;
  bc.sigma_found = sigma_found;
  return bc;
}

json fiber_report_json(const Basis& basis, const FiberReport& report, const BoundsCheck& bounds,
                       const FiberConfig& cfg) {
  json j;
  j["element"] = {{"w", format_word(basis, report.element.w)}, {"m", report.element.m}};
  json rays = json::array();
  for (const Ray& r : report.rays) rays.push_back(ray_prefix_string(basis, r, 32));
  j["rays"] = rays;
  json partition = json::array();
  for (const auto& comp : report.partition.components) partition.push_back(comp);
  j["partition"] = partition;
  j["degree_lower_bound"] = report.degree_lower_bound;
  j["class"] = point_class_name(report.cls);
  j["type"] = point_type_name(report.type);
  j["depth"] = report.depth;
  j["stabilized"] = report.stabilized;
  j["bounds"] = bounds_json(bounds);
  json undecided = json::array();
  for (const auto& [a, b] : report.partition.undecided) undecided.push_back({a, b});
  j["undecided_pairs"] = undecided;
  json cross = json::array();
  for (const auto& [a, b] : report.cross_violations) cross.push_back({a, b});
  j["cross_violations"] = cross;
  j["notes"] = report.notes;
  j["config"] = config_json(cfg);
  return j;
}

json singular_search_json(const Basis& basis, const SingularSearchResult& result,
                          const FiberConfig& cfg) {
  json j;
  j["candidates_enumerated"] = result.candidates_enumerated;
  j["candidates_analyzed"] = result.candidates_analyzed;
  json families = json::array();
  for (const SingularFamily& fam : result.families) {
    json f;
    f["representative"] = {{"w", format_word(basis, fam.representative.w)},
                           {"m", fam.representative.m}};
    json members = json::array();
    for (const MappingTorusElement& g : fam.members)
      members.push_back({{"w", format_word(basis, g.w)}, {"m", g.m}});
    f["members"] = members;
    f["report"] = fiber_report_json(basis, fam.report, result.bounds, cfg);
    families.push_back(f);
  }
  j["families"] = families;
  json reports = json::array();
  for (const FiberReport& r : result.reports) {
    json summary;
    summary["element"] = {{"w", format_word(basis, r.element.w)}, {"m", r.element.m}};
    summary["degree_lower_bound"] = r.degree_lower_bound;
    summary["class"] = point_class_name(r.cls);
    summary["type"] = point_type_name(r.type);
    reports.push_back(summary);
  }
  j["reports"] = reports;
  json bc = bounds_json(result.bounds);
  bc["sum_phi"] = result.bounds.sum_phi;
  bc["sum_phi_inverse"] = result.bounds.sum_phi_inverse;
  bc["per_report_ok"] = result.bounds.per_report_ok;
  bc["per_type_ok"] = result.bounds.per_type_ok;
  bc["family_count_ok"] = result.bounds.family_count_ok;
  bc["pair_ok"] = result.bounds.pair_ok;
  bc["cross_ok"] = result.bounds.cross_ok;
  bc["pair_notes"] = result.bounds.pair_notes;
  j["bounds_check"] = bc;
  j["diagnostics"] = result.diagnostics;
  j["config"] = config_json(cfg);
  return j;
}

json simple_check_json(const Basis& basis, const ReducedWord& w, const SimpleCheck& check,
                       const FiberConfig& cfg) {
  json j;
  j["element"] = {{"w", format_word(basis, w)}, {"m", 0}};
  j["check"] = "simple_point";
  j["verdict"] = check_verdict_name(check.verdict);
  j["candidates_tested"] = check.candidates_tested;
  j["pool_empty"] = check.pool_empty;
  j["detail"] = check.detail;
  j["config"] = config_json(cfg);
  return j;
}

}  // namespace lamina
