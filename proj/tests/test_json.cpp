#include <catch2/catch.hpp>

#include "nhom/json_io.hpp"
#include "nhom/random_gen.hpp"
#include "nhom/suites.hpp"

using namespace nhom;

TEST_CASE("integers round-trip through JSON, switching to strings past 64 bits") {
  Int small(-123456789);
  REQUIRE(int_to_json(small).is_number_integer());
  REQUIRE(json_to_int(int_to_json(small), "t") == small);
  Int huge("123456789012345678901234567890123456789");
  Json encoded = int_to_json(huge);
  REQUIRE(encoded.is_string());
  REQUIRE(json_to_int(encoded, "t") == huge);
  REQUIRE(json_to_int(Json("42"), "t") == 42);  // strings accepted for small values too
  REQUIRE_THROWS_AS(json_to_int(Json("4x2"), "t"), Error);
  REQUIRE_THROWS_AS(json_to_int(Json(1.5), "t"), Error);
}

TEST_CASE("complex files round-trip matrix-exactly") {
  Rng rng(127);
  SequenceParams p = suites::default_params();
  for (int k = 0; k < 40; ++k) {
    Sequence c = random_sequence(rng, p);
    ComplexFile parsed = parse_complex(complex_to_json(c, 3));
    REQUIRE(parsed.sequence == c);
    REQUIRE(parsed.declared_n == 3);
    // emit -> parse -> emit is a fixed point
    REQUIRE(complex_to_json(parsed.sequence, 3) == complex_to_json(c, 3));
  }
  SECTION("the empty sequence survives") {
    ComplexFile parsed = parse_complex(complex_to_json(Sequence()));
    REQUIRE(parsed.sequence.empty());
  }
}

TEST_CASE("huge entries survive the string encoding") {
  Int big("98765432109876543210987654321");
  IntMatrix rel(1, 1);
  rel.at(0, 0) = big;
  Sequence c = Sequence::make(0, {PresentedGroup(1, rel)}, {});
  ComplexFile parsed = parse_complex(complex_to_json(c));
  REQUIRE(parsed.sequence == c);
  REQUIRE(parsed.sequence.object_at(0).relations.at(0, 0) == big);
}

TEST_CASE("morphism files round-trip semantically") {
  Rng rng(131);
  SequenceParams p = suites::default_params();
  for (int k = 0; k < 25; ++k) {
    SeqMorphism f = random_seq_morphism(rng, p);
    SeqMorphism parsed = parse_morphism(morphism_to_json(f));
    REQUIRE(parsed.source() == f.source());
    REQUIRE(parsed.target() == f.target());
    REQUIRE(seq_morphism_equal(parsed, f));
  }
}

TEST_CASE("schema violations carry positional messages") {
  Json good = complex_to_json(Sequence::make(
      0, {PresentedGroup::cyclic(Int(8)), PresentedGroup::cyclic(Int(8))},
      {IntMatrix::from_rows({{2}})}));
  SECTION("window and object count must agree") {
    Json bad = good;
    bad["window"]["hi"] = 5;
    REQUIRE_THROWS_WITH(parse_complex(bad), Catch::Contains("objects"));
  }
  SECTION("relation vectors must match the generator count") {
    Json bad = good;
    bad["objects"][0]["relations"][0] = Json::array({1, 2});
    REQUIRE_THROWS_WITH(parse_complex(bad), Catch::Contains("objects[0]"));
  }
  SECTION("differential shapes are enforced") {
    Json bad = good;
    bad["differentials"][0] = Json::array({Json::array({1, 2})});
    REQUIRE_THROWS_WITH(parse_complex(bad), Catch::Contains("differentials[0]"));
  }
  SECTION("ill-defined differentials are rejected on load") {
    Json bad = good;
    bad["objects"][1]["relations"][0][0] = 3;
    REQUIRE_THROWS_WITH(parse_complex(bad), Catch::Contains("not well-defined"));
  }
}

TEST_CASE("morphism files accept file references") {
  std::string dir = std::filesystem::temp_directory_path().string();
  std::string cpath = dir + "/nhom_test_source.json";
  Sequence c = pad_window(Sequence::make(0, {PresentedGroup::cyclic(Int(4))}, {}), 1, 1);
  write_json_file(cpath, complex_to_json(c));
  Json mor{{"source", Json{{"file", "nhom_test_source.json"}}},
           {"target", complex_to_json(c)},
           {"components", Json::array({Json{{"position", 0}, {"matrix", Json::array({Json::array({3})})}}})}};
  SeqMorphism f = parse_morphism(mor, dir);
  REQUIRE(f.source() == c);
  REQUIRE(f.component_matrix_at(0) == IntMatrix::from_rows({{3}}));
}
