#include <doctest.h>

#include "helpers.hpp"
#include "lamina/io.hpp"
#include "lamina/report.hpp"

using namespace lamina;
using namespace lamina::testing;

namespace {
const char* kFixtureFile =
    "# the running fixture\n"
    "rank 3\n"
    "a -> ab\n"
    "b -> ac\n"
    "c -> a\n"
    "inverse:\n"
    "a -> c\n"
    "b -> Ca\n"
    "c -> Cb\n";
}

TEST_CASE("automorphism files parse with comments and inverse blocks") {
  AutomorphismFile f = parse_automorphism_file(kFixtureFile);
  CHECK(f.basis.rank() == 3);
  CHECK(f.map.has_inverse());
  CHECK(f.map.image(0) == parse_word(f.basis, "ab"));
  CHECK(f.map.inverse_image(2) == parse_word(f.basis, "Cb"));
}

TEST_CASE("automorphism file errors carry line numbers") {
  try {
    parse_automorphism_file("rank 3\na -> ab\nb -> \nc -> a\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  CHECK_THROWS_AS(parse_automorphism_file("rank 3\na -> ab\nb -> ac\n"), ParseError);
  CHECK_THROWS_AS(parse_automorphism_file("rank 1\na -> a\n"), ParseError);
  // Wrong inverse data is rejected by verification.
  CHECK_THROWS_AS(parse_automorphism_file("rank 3\na -> ab\nb -> ac\nc -> a\n"
                                          "inverse:\na -> c\nb -> Ca\nc -> Ba\n"),
                  ParseError);
}

TEST_CASE("train track files") {
  TrainTrackFile tt = parse_traintrack_file(
      "graph rose 3\nmap a -> ab\nmap b -> ac\nmap c -> a\n");
  CHECK(tt.rose);
  CHECK(tt.map.graph().edges() == 3);
  CHECK(validate_train_track(tt.map, 36).pass);

  // Explicit graphs: a theta-like graph with two vertices.
  TrainTrackFile theta = parse_traintrack_file(
      "vertex u\nvertex v\nedge a u v\nedge b v u\nmap a -> a\nmap b -> b\n");
  CHECK_FALSE(theta.rose);
  CHECK(theta.map.graph().vertices() == 2);
  CHECK(transition_matrix(theta.map).at(0, 0) == 1);
  // Basis-coordinate languages are rose-only.
  CHECK_THROWS_AS(bfh_language(theta.map, 2, 3), std::invalid_argument);

  CHECK_THROWS_AS(parse_traintrack_file("graph rose 2\nmap a -> ab\n"), ParseError);
  CHECK_THROWS_AS(parse_traintrack_file("graph rose 2\nmap a -> ax\nmap b -> a\n"), ParseError);
}

TEST_CASE("subgroup files") {
  Basis b(3);
  auto gens = parse_subgroup_file(b, "# generators\nab\na\n\n");
  REQUIRE(gens.size() == 2);
  CHECK(gens[0] == parse_word(b, "ab"));
}

TEST_CASE("golden fiber report is byte-stable under the default config") {
  Automorphism phi = tribonacci();
  Basis basis(3);
  FiberConfig cfg;  // defaults, matching the CLI
  FiberLanguages langs = fiber_languages(phi, cfg);
  FiberReport report = fiber_report(phi, {ReducedWord::identity(3), 1}, langs, cfg);
  json j = fiber_report_json(basis, report, threshold_bounds(3, 1), cfg);
  std::string golden = read_file(std::string(LAMINA_SOURCE_DIR) + "/tests/golden/fiber_t.json");
  CHECK(j.dump(2) + "\n" == golden);
}

TEST_CASE("fiber report JSON is deterministic and frozen") {
  Automorphism phi = tribonacci();
  Basis basis(3);
  FiberConfig cfg;
  cfg.seed_conj_len = 1;
  cfg.probe = 512;
  FiberLanguages langs = fiber_languages(phi, cfg);
  FiberReport report = fiber_report(phi, {ReducedWord::identity(3), 1}, langs, cfg);
  json j = fiber_report_json(basis, report, threshold_bounds(3, 1), cfg);
  CHECK(j["element"]["w"] == "1");
  CHECK(j["element"]["m"] == 1);
  CHECK(j["class"] == "singular");
  CHECK(j["type"] == "phi");
  CHECK(j["depth"] == 6);
  CHECK(j["bounds"]["two_n"] == 6);
  CHECK(j["bounds"]["two_n_minus_2"] == 4);
  CHECK(j["bounds"]["four_n_minus_5"] == 7);
  CHECK(j["bounds"]["four_n_minus_1"] == 11);
  // Byte-identical across repeated runs.
  FiberReport again = fiber_report(phi, {ReducedWord::identity(3), 1}, langs, cfg);
  CHECK(fiber_report_json(basis, again, threshold_bounds(3, 1), cfg).dump(2) == j.dump(2));
}
