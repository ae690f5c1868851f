// report.hpp
//
// JSON assembly for machine-readable reports.  Field order is fixed and
// all values are deterministic, so identical inputs and config produce
// byte-identical documents regardless of the worker count.

#pragma once

#include <string>

#include "lamina/ctfiber.hpp"

#include <json.hpp>

namespace lamina {

using json = nlohmann::ordered_json;

json config_json(const FiberConfig& cfg);
json fiber_report_json(const Basis& basis, const FiberReport& report, const BoundsCheck& bounds,
                       const FiberConfig& cfg);
json bounds_json(const BoundsCheck& bounds);
json singular_search_json(const Basis& basis, const SingularSearchResult& result,
                          const FiberConfig& cfg);
json simple_check_json(const Basis& basis, const ReducedWord& w, const SimpleCheck& check,
                       const FiberConfig& cfg);

// Bounds skeleton (thresholds only) for single fiber reports.
BoundsCheck threshold_bounds(int rank, int sigma_found);

// Ray rendered as a prefix string for reports.
std::string ray_prefix_string(const Basis& basis, const Ray& ray, int len);

}  // namespace lamina
