// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algc/fixture_io.hpp"
#include "test_util.hpp"

using namespace algc;
using algc::testutil::fixtures_dir;

namespace {

const char* kMinimal = R"({
  "name": "mini",
  "base_dim": 1,
  "rank": 2,
  "coords": ["t"],
  "domain": {"lower": [-1.0], "upper": [1.0]},
  "anchor": [["1", "0"]],
  "structure": []
})";

std::string with_patch(const std::string& base, const std::string& needle,
                       const std::string& replacement) {
  std::string out = base;
  const auto pos = out.find(needle);
  REQUIRE(pos != std::string::npos);
  out.replace(pos, needle.size(), replacement);
  return out;
}

}  // namespace

TEST_CASE("bundled fixture files load and validate") {
  for (const char* name :
       {"euclid2", "hyperbolic", "so3", "kahler-flat", "twisted-j", "corrupted-gamma"}) {
    const Fixture data = load_fixture_file(fixtures_dir() + "/" + std::string(name) + ".json");
    CHECK(data.name == name);
    CHECK(data.metric.has_value());
  }
  const Fixture tw = load_fixture_file(fixtures_dir() + "/twisted-j.json");
  CHECK(tw.complex_structure.has_value());
  CHECK(tw.torsion_form.has_value());
  const Fixture cg = load_fixture_file(fixtures_dir() + "/corrupted-gamma.json");
  CHECK(cg.declared_connection.has_value());
}

TEST_CASE("load-save-load reproduces identical validated structures") {
  for (const char* name :
       {"euclid2", "hyperbolic", "so3", "kahler-flat", "twisted-j", "corrupted-gamma"}) {
    const Fixture first = load_fixture_file(fixtures_dir() + "/" + std::string(name) + ".json");
    const Fixture second = load_fixture_text(save_fixture_text(first));
    CHECK_MESSAGE(fixture_equivalent(first, second), name);
    // serialization is stable from the first save on
    CHECK(save_fixture_text(first) == save_fixture_text(second));
  }
}

TEST_CASE("sparse structure completion") {
  const std::string sparse = with_patch(
      kMinimal, "\"structure\": []",
      "\"structure\": [{\"k\": 0, \"i\": 0, \"j\": 1, \"expr\": \"t\"}]");
  const Fixture data = load_fixture_text(sparse);
  EvalCache cache(std::vector<double>{0.5});
  CHECK(cache.value(data.alg->c(0, 0, 1)) == doctest::Approx(0.5));
  CHECK(cache.value(data.alg->c(0, 1, 0)) == doctest::Approx(-0.5));

  // conflicting duplicates are a schema error
  const std::string dup = with_patch(
      kMinimal, "\"structure\": []",
      "\"structure\": [{\"k\": 0, \"i\": 0, \"j\": 1, \"expr\": \"t\"},"
      " {\"k\": 0, \"i\": 1, \"j\": 0, \"expr\": \"1\"}]");
  CHECK_THROWS_AS(load_fixture_text(dup), SchemaError);

  // diagonal entries are a schema error
  const std::string diag = with_patch(
      kMinimal, "\"structure\": []",
      "\"structure\": [{\"k\": 0, \"i\": 1, \"j\": 1, \"expr\": \"t\"}]");
  CHECK_THROWS_AS(load_fixture_text(diag), SchemaError);
}

TEST_CASE("schema violations") {
  CHECK_THROWS_AS(load_fixture_text("{}"), SchemaError);
  CHECK_THROWS_AS(load_fixture_text("[1,2,3]"), SchemaError);
  CHECK_THROWS_AS(load_fixture_text("not json at all"), SchemaError);

  // anchor shape mismatch
  CHECK_THROWS_AS(load_fixture_text(with_patch(kMinimal, "[[\"1\", \"0\"]]", "[[\"1\"]]")),
                  SchemaError);
  // empty domain interval
  CHECK_THROWS_AS(
      load_fixture_text(with_patch(kMinimal, "\"lower\": [-1.0]", "\"lower\": [2.0]")),
      SchemaError);
  // malformed expression surfaces as a parse error with a byte offset
  CHECK_THROWS_AS(load_fixture_text(with_patch(kMinimal, "[[\"1\", \"0\"]]",
                                            "[[\"t+*t\", \"0\"]]")),
                  ParseError);
  // unknown identifier in an expression
  CHECK_THROWS_AS(load_fixture_text(with_patch(kMinimal, "[[\"1\", \"0\"]]",
                                            "[[\"q\", \"0\"]]")),
                  ParseError);
  // non-skew dense structure is rejected by the algebroid constructor
  const std::string dense = with_patch(
      kMinimal, "\"structure\": []",
      "\"structure\": [[[\"0\", \"1\"], [\"1\", \"0\"]], [[\"0\", \"0\"], [\"0\", \"0\"]]]");
  CHECK_THROWS_AS(load_fixture_text(dense), Error);

  CHECK_THROWS_AS(load_fixture_file("/nonexistent/path.json"), Error);
}

TEST_CASE("torsion 3-form completion is alternating") {
  const Fixture f3 = load_fixture_file(fixtures_dir() + "/so3.json");
  REQUIRE(f3.torsion_form.has_value());
  const CoTensor& h = *f3.torsion_form;
  EvalCache cache(std::vector<double>{0.0});
  const int i012[3] = {0, 1, 2}, i102[3] = {1, 0, 2}, i120[3] = {1, 2, 0}, i001[3] = {0, 0, 1};
  CHECK(cache.value(h.comp(i012)) == 1.0);
  CHECK(cache.value(h.comp(i102)) == -1.0);
  CHECK(cache.value(h.comp(i120)) == 1.0);
  CHECK(cache.value(h.comp(i001)) == 0.0);

  // repeated slots in an entry are rejected
  const std::string repeated = with_patch(
      kMinimal, "\"structure\": []",
      "\"structure\": [], \"torsion3form\": [{\"i\": 0, \"j\": 0, \"k\": 1, \"expr\": \"1\"}]");
  CHECK_THROWS_AS(load_fixture_text(repeated), SchemaError);
}

TEST_CASE("loaded sections are bound to the loaded algebroid") {
  const Fixture data = load_fixture_file(fixtures_dir() + "/euclid2.json");
  const auto it = data.sections.find("X");
  REQUIRE(it != data.sections.end());
  CHECK(it->second.algebroid() == data.alg);
  const Section b = bracket(it->second, data.sections.at("Y"));
  EvalCache cache(std::vector<double>{1.0, 1.0});
  CHECK(cache.value(b.comp(0)) == doctest::Approx(-1.0));
  CHECK(cache.value(b.comp(1)) == doctest::Approx(1.0));
}
