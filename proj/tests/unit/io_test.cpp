#include <gtest/gtest.h>

#include "dqkit/io/json_io.hpp"

using namespace dqkit;
using io::json;

namespace {

std::string where_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const io::InputError& e) {
    return e.where();
  }
  return "no error";
}

}  // namespace

TEST(JsonIo, TrigPolyRoundTrip) {
  Rng rng(5);
  TrigPoly f = random_trig_poly(rng, 4, 2, 5);
  EXPECT_EQ(io::trig_poly_from(io::to_json(f), 4, ""), f);
  json j = json::parse(R"([{"freq": [1, -1], "re": "1/2", "im": 3}, {"freq": [1, -1], "re": "1/2"}])");
  EXPECT_EQ(io::trig_poly_from(j, 2, "").coefficient(make_frequency(std::vector<int>{1, -1})),
            Gaussian(Rational(1), Rational(3)));
}

TEST(JsonIo, ConnectionSymmetryCompletion) {
  json j = json::parse(R"({"m": 1, "gamma": [
    {"index": [1, 0, 0], "value": [{"freq": [0, 0], "re": "2/3"}]},
    {"index": [0, 1, 0], "value": [{"freq": [0, 0], "re": "2/3"}]}]})");
  auto c = io::connection_from(j, "");
  for (auto ix : {std::array{0, 0, 1}, std::array{0, 1, 0}, std::array{1, 0, 0}})
    EXPECT_EQ(c.gamma(ix[0], ix[1], ix[2]), TrigPoly::constant(2, Gaussian(Rational(2, 3))));
  EXPECT_TRUE(c.gamma(1, 1, 1).is_zero());
  auto back = io::connection_from(io::to_json(c.structure, c.gamma), "");
  EXPECT_EQ(back.gamma(0, 0, 1), c.gamma(0, 0, 1));

  j["gamma"][1]["value"][0]["re"] = "1/3";
  EXPECT_EQ(where_of([&] { io::connection_from(j, "/connection"); }), "/connection/gamma/1");
}

TEST(JsonIo, DiagnosticsCarryLocations) {
  EXPECT_EQ(where_of([] { io::parse_document("{\n \"a\": [1,,2]}", "job"); }), "job:2:10 (byte 11)");
  json d = json::parse(R"({"m": 1, "samples": [[1, 2, "1"], [2, 3, "x/y"]]})");
  EXPECT_EQ(where_of([&] { io::hilbert_data_from(d, ""); }), "/samples/1/2");
  EXPECT_EQ(where_of([] { io::hilbert_data_from(json::parse(R"({"samples": []})"), ""); }), "/");
  EXPECT_EQ(where_of([] { io::profile_from(json::parse(R"({"psi_coeffs": ["1", "1/2"]})"), "/profile"); }),
            "/profile");
}

TEST(JsonIo, ProfilesAndModes) {
  auto p = io::profile_from(json::parse(R"({"correction": ["1/5", "1/4"]})"), "");
  auto q = io::profile_from(io::to_json(p), "");
  EXPECT_EQ(p.psi(), q.psi());
  auto f = io::mode_function_from(json::parse(R"([{"n": 1, "re": ["1/2"]}, {"n": -1, "re": ["1/2"]}])"), "");
  EXPECT_NEAR(f(0.0, 0.0).real(), 1.0, 1e-15);
  EXPECT_NEAR(f(0.6, 0.0).real(), 0.8, 1e-15);
}
