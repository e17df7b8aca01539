#include <gtest/gtest.h>

#include "rinfty/classifier.hpp"
#include "rinfty/constants.hpp"
#include "rinfty/errors.hpp"
#include "rinfty/json_io.hpp"

using namespace rinfty;
using json_io::json;

TEST(JsonIo, IntegersSmallAndLarge) {
  EXPECT_EQ(json_io::to_json(Integer(-7)), json(-7));
  const Integer big("123456789012345678901234567890");
  EXPECT_TRUE(json_io::to_json(big).is_string());
  EXPECT_EQ(json_io::integer_from_json(json_io::to_json(big)), big);
  EXPECT_EQ(json_io::integer_from_json(json("-42")), -42);
  EXPECT_THROW(json_io::integer_from_json(json("4x")), ParseError);
  EXPECT_THROW(json_io::integer_from_json(json(1.5)), ParseError);
}

TEST(JsonIo, Matrices) {
  EXPECT_EQ(json_io::parse_matrix("[[0,1],[-1,-1]]"), constants::m2());
  EXPECT_EQ(json_io::to_json(constants::m2()).dump(), "[[0,1],[-1,-1]]");
  for (const char* bad : {"[[1,2],[3]]", "[]", "[[]]", "[1,2]", "{\"a\":1}", "[[1,2],", "[[1,\"z\"]]"})
    EXPECT_THROW(json_io::parse_matrix(bad), ParseError) << bad;
}

TEST(JsonIo, WitnessRoundTrip) {
  for (const auto& [group, k] : std::vector<std::pair<const char*, std::size_t>>{
           {"2^1:3,5^1:1", 2}, {"2^1:2,3^1:1", 4}, {"2^2:7,3^2:2", 6}}) {
    const auto cls = classify(parse_group(group), k);
    ASSERT_TRUE(cls.witness) << group;
    const json j = json_io::to_json(*cls.witness);
    const auto back = json_io::witness_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.base, cls.witness->base);
    EXPECT_EQ(back.lamp_action.blocks, cls.witness->lamp_action.blocks);
    EXPECT_EQ(json_io::to_json(back), j);
  }
}

TEST(JsonIo, WitnessSchemaErrors) {
  const json good = json::parse(R"({"k":2,"M":[[0,1],[-1,-1]],"components":[{"p":5,"r":1,"d":1,"m":2}]})");
  EXPECT_NO_THROW(json_io::witness_from_json(good));

  const auto broken = [&](auto edit) {
    json j = good;
    edit(j);
    return j;
  };
  const std::vector<json> bad{
      json::array(),
      broken([](json& j) { j.erase("k"); }),
      broken([](json& j) { j["k"] = 3; }),
      broken([](json& j) { j["k"] = -2; }),
      broken([](json& j) { j.erase("components"); }),
      broken([](json& j) { j["components"] = json::array(); }),
      broken([](json& j) { j["M"] = json::parse("[[2,0],[0,1]]"); }),
      broken([](json& j) { j["components"][0]["m"] = 5; }),
      broken([](json& j) { j["components"][0]["p"] = 4; }),
      broken([](json& j) { j["components"][0]["F"] = json::parse("[[1]]"); }),
      broken([](json& j) { j["components"][0].erase("m"); }),
      broken([](json& j) { j["components"][0]["d"] = 0; }),
      broken([](json& j) {
        j["components"] = json::parse(R"([{"p":2,"r":1,"d":2,"F":[[1,1],[1,1]]}])");
      }),
      broken([](json& j) {
        j["components"] = json::parse(R"([{"p":2,"r":1,"d":3,"F":[[0,1],[1,1]]}])");
      }),
  };
  for (const auto& j : bad) EXPECT_THROW(json_io::witness_from_json(j), ParseError) << j.dump();
}

TEST(JsonIo, CertificateFields) {
  const auto phi = build_witness(parse_group("2^1:3,5^1:1"), 2, CaseTag::Case4);
  const json j = json_io::to_json(phi, certify_finite_reidemeister(phi));
  EXPECT_EQ(j.at("R"), json(3));
  EXPECT_EQ(j.at("order"), json(3));
  EXPECT_EQ(j.at("divisors"), json::parse("[1,3]"));
  EXPECT_EQ(j.at("checks").size(), 4u);
  EXPECT_FALSE(j.contains("failure"));

  const WreathAutomorphism bad(constants::m2(), BlockAutomorphism{{ComponentAction::scalar(5, 1, 1, 1)}});
  const json f = json_io::to_json(bad, certify_finite_reidemeister(bad));
  EXPECT_TRUE(f.at("R").is_null());
  EXPECT_TRUE(f.at("failure").is_string());
}

TEST(JsonIo, ClassificationShape) {
  const json j = json_io::to_json(classify(parse_group("3^1:1"), 2));
  EXPECT_EQ(j.at("verdict"), "not_r_infinity");
  EXPECT_EQ(j.at("case"), "case2");
  EXPECT_TRUE(j.at("witness").is_null());
  EXPECT_EQ(j.at("witness_available"), false);
  const json u = json_io::to_json(classify(parse_group("3^1:1,2^1:2"), 2));
  EXPECT_EQ(u.at("verdict"), "unknown");
  EXPECT_EQ(u.at("case"), "none");
}
