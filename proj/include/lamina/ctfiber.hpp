// ctfiber.hpp
//
// Fiber analysis of the Cannon-Thurston map at rational boundary
// points.  Candidate fiber members are attracting rays of the
// conjugation automorphism of g = w t^m; identification is tested
// against factor-language approximations of the two lamination sides
// and clustered through the diagonal closure.  Degrees are certified
// lower bounds with depth metadata, never exact claims.

#pragma once

#include <string>
#include <vector>

#include "lamina/automorphism.hpp"
#include "lamina/lamination.hpp"
#include "lamina/mapping_torus.hpp"
#include "lamina/ray.hpp"

namespace lamina {

struct FiberConfig {
  int depth = 6;         // language/window depth k
  int slack = 6;         // extra window travel around the junction
  int probe = 512;       // ray-language probe and ray-equality depth
  int probe_cap = 4096;  // leaf_window retry cap
  int n_max = 30;        // language iteration cap
  int stall = 5;         // stabilization streak
  int ball_radius = 2;   // Mitra ball
  int word_radius = 2;   // singular search |w| bound
  int exp_max = 2;       // singular search |m| bound
  int period_max = 6;    // attracting-ray period bound
  int seed_conj_len = 2; // conjugated seed pool bound
  int dedupe_prefix = 64;
  int pool_len = 2;      // periodic candidate pool for simplicity checks
  std::size_t budget = 1'000'000;
  double tol = 1e-9;
  unsigned jobs = 1;
};

struct RayFamily {
  std::vector<Ray> rays;
  std::vector<std::string> dropped;  // non-converging seed tags
};

// Fixed rays of the boundary action of psi: for each seed (letters,
// inverses, and their short conjugates) and each p <= period_max,
// iterate psi^p until prefixes of consecutive iterates stabilize.
// Seeds fixed as words fall back to the periodic ray seed^inf.
RayFamily attracting_rays(const Automorphism& psi, const FiberConfig& cfg);

struct FiberLanguages {
  FactorLanguage plus;   // approximates the phi-side lamination language
  FactorLanguage minus;  // approximates the phi^-1 side
};

// Union factor language of a ray family, with the stabilization flag
// from one probe doubling of the whole union.
FactorLanguage family_language(const std::vector<Ray>& rays, int k, int probe);

// Factor languages of the attracting rays of phi and phi^-1.  A half
// leaf of a minimal lamination generates the whole lamination, so the
// ray languages approximate the leaf languages directly.
FiberLanguages fiber_languages(const Automorphism& phi, const FiberConfig& cfg);

enum class PointClass { simple, regular, singular, undetermined };
enum class PointType { phi, phi_inverse, not_applicable };
const char* point_class_name(PointClass c);
const char* point_type_name(PointType t);

struct FiberReport {
  MappingTorusElement element;
  std::vector<Ray> rays;
  DiagComponents partition;
  int degree_lower_bound = 0;
  PointClass cls = PointClass::undetermined;
  PointType type = PointType::not_applicable;
  int depth = 0;
  bool stabilized = false;
  // Pairs consistent in the selected language that failed to produce a
  // NO in the opposite one (both languages stabilized).
  std::vector<std::pair<std::size_t, std::size_t>> cross_violations;
  std::vector<std::string> notes;
};

// Raised when a report exceeds a proven upper bound: witnesses only
// establish lower bounds, so this always indicates a bug.
class BoundViolation : public std::runtime_error {
 public:
  BoundViolation(std::string msg, FiberReport report)
      : std::runtime_error(std::move(msg)), report_(std::move(report)) {}
  const FiberReport& report() const { return report_; }

 private:
  FiberReport report_;
};

// Requires m != 0; m = 0 points are handled by simple_point_check.
FiberReport fiber_report(const Automorphism& phi, const MappingTorusElement& g,
                         const FiberLanguages& langs, const FiberConfig& cfg);

enum class CheckVerdict { pass, fail, undecided };
const char* check_verdict_name(CheckVerdict v);

struct SimpleCheck {
  CheckVerdict verdict = CheckVerdict::undecided;
  int candidates_tested = 0;
  bool pool_empty = false;
  std::string detail;
};

// Confirms that no candidate ray is consistent-identified with w^inf in
// either language.
SimpleCheck simple_point_check(const Automorphism& phi, const ReducedWord& w,
                               const FiberLanguages& langs, const FiberConfig& cfg);

struct BoundsCheck {
  int rank = 0;
  int two_n = 0;
  int two_n_minus_2 = 0;
  int four_n_minus_5 = 0;
  int four_n_minus_1 = 0;
  int sigma_found = 0;
  int sum_phi = 0;          // sum of (deg - 2) over phi-type families
  int sum_phi_inverse = 0;
  bool per_report_ok = true;
  bool per_type_ok = true;
  bool family_count_ok = true;
  bool pair_ok = true;
  bool cross_ok = true;  // no cross-language violations anywhere
  std::vector<std::string> pair_notes;

  bool all_ok() const {
    return per_report_ok && per_type_ok && family_count_ok && pair_ok && cross_ok;
  }
};

struct SingularFamily {
  MappingTorusElement representative;
  std::vector<MappingTorusElement> members;
  FiberReport report;
};

struct SingularSearchResult {
  std::vector<SingularFamily> families;
  std::vector<FiberReport> reports;  // all analyzed candidates, candidate order
  BoundsCheck bounds;
  int candidates_enumerated = 0;
  int candidates_analyzed = 0;
  std::vector<std::string> diagnostics;
};

// Enumerates g = (w, m) with |w| <= word_radius, 1 <= |m| <= exp_max,
// skipping proper powers and bounded-conjugate duplicates; retains
// degree >= 3 reports grouped into F_N-orbit families.
SingularSearchResult singular_search(const Automorphism& phi, const FiberLanguages& langs,
                                     const FiberConfig& cfg);

struct PairDegree {
  FiberReport forward;
  FiberReport backward;
  int sum = 0;
  bool within_bound = false;
  bool types_ok = true;  // when both singular, their types differ
};

PairDegree pair_degree_check(const Automorphism& phi, const MappingTorusElement& g,
                             const FiberLanguages& langs, const FiberConfig& cfg);

}  // namespace lamina
