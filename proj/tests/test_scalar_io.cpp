#include <doctest.h>

#include <cstdio>
#include <limits>
#include <sstream>

#include "aeq/io.hpp"
#include "aeq/scalar.hpp"

using namespace aeq;

TEST_SUITE("scalar") {
  TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("-1.5e-2") == Rational(-3, 200));
    CHECK(parse_rational("2E3") == Rational(2000));
    CHECK(parse_rational(" 1/3 ") == Rational(1, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), InputError);
  }

  TEST_CASE("rational printing round-trips") {
    for (const char* s : {"0", "5", "-5", "1/3", "-22/7"}) CHECK(to_string(parse_rational(s)) == s);
  }

  TEST_CASE("tolerance validation") {
    CHECK_NOTHROW(Tolerance::floating().validate(false));
    CHECK_NOTHROW(Tolerance::exact().validate(true));
    CHECK_THROWS_AS(Tolerance::floating().validate(true), InputError);
    CHECK_THROWS_AS(Tolerance::exact().validate(false), InputError);
    CHECK_THROWS_AS((Tolerance{-1.0, 1e-8}).validate(false), InputError);
  }

  TEST_CASE("point set shape checks") {
    CHECK_THROWS_AS(PointSet(0, {{}}), InputError);
    CHECK_THROWS_AS(PointSet(2, std::vector<std::vector<double>>{}), InputError);
    CHECK_THROWS_AS(PointSet(2, {{0.0, 0.0}, {1.0}}), InputError);
    CHECK_THROWS_AS(PointSet(2, 2, {0.0, 1.0, 2.0}), InputError);
    const PointSet s(2, {{0.5, 1.0}, {0.25, -3.0}});
    const auto e = to_exact(s);
    CHECK(e[0][0] == Rational(1, 2));
    CHECK(e[1][1] == Rational(-3));
    CHECK(to_floating(e)[1][0] == 0.25);
  }
}

TEST_SUITE("io") {
  TEST_CASE("floating JSON point set") {
    std::istringstream in(R"({"dim": 2, "mode": "float", "points": [[0, 0], [1, 0], [0.5, 0.8660254037844386]]})");
    const auto any = read_point_set(in);
    REQUIRE(std::holds_alternative<PointSet>(any));
    const auto& s = std::get<PointSet>(any);
    CHECK(s.size() == 3);
    CHECK(s[2][1] == 0.8660254037844386);
  }

  TEST_CASE("exact JSON point set") {
    std::istringstream in(R"({"dim": 2, "mode": "exact", "points": [[0, 0], ["1/2", 1], [1, "-3/7"]]})");
    const auto any = read_point_set(in);
    REQUIRE(std::holds_alternative<ExactPointSet>(any));
    CHECK(std::get<ExactPointSet>(any)[2][1] == Rational(-3, 7));
  }

  TEST_CASE("exact mode rejects binary floats") {
    std::istringstream in(R"({"dim": 1, "points": [[0.1]]})");
    CHECK_THROWS_AS(read_point_set(in, InputFormat::automatic, true), InputError);
  }

  TEST_CASE("malformed inputs") {
    for (const char* text : {"", "   ", "{\"points\": []}", "{\"dim\": 3, \"points\": [[0, 0]]}", "{\"points\": [[0], [1, 2]]}",
                             "{\"points\": [[0, \"x\"]]}", "{\"nothing\": 1}", "{\"points\": [[0]", "[[]]"}) {
      std::istringstream in(text);
      CHECK_THROWS_AS(read_point_set(in), InputError);
    }
  }

  TEST_CASE("CSV input, comments and exact cells") {
    std::istringstream in("# unit segment\n0, 0\n1, 0\n\n");
    const auto s = std::get<PointSet>(read_point_set(in));
    CHECK(s.size() == 2);
    std::istringstream ex("1/2,1/3\n0,0\n");
    const auto e = std::get<ExactPointSet>(read_point_set(ex, InputFormat::csv, true));
    CHECK(e[0][1] == Rational(1, 3));
    std::istringstream ragged("0,0\n1\n");
    CHECK_THROWS_AS(read_point_set(ragged), InputError);
  }

  TEST_CASE("wrapped run reports are accepted") {
    std::istringstream in(R"({"command": "construct", "payload": {"point_set": {"dim": 1, "mode": "float", "points": [[0], [1]]}}})");
    CHECK(std::get<PointSet>(read_point_set(in)).size() == 2);
    std::istringstream search(R"({"payload": {"best_points": {"dim": 1, "points": [[0], [1], [2]]}}})");
    CHECK(std::get<PointSet>(read_point_set(search)).size() == 3);
  }

  TEST_CASE("JSON writer prints 17 significant digits and round-trips") {
    const double values[] = {0.1, 1.0 / 3.0, 6.02214076e23, -2.2250738585072014e-308, 0.70710678118654757};
    for (double v : values) {
      const std::string text = dump_json(Json{{"x", v}}, -1);
      char expect[40];
      std::snprintf(expect, sizeof expect, "{\"x\":%.17g}", v);
      CHECK(text == expect);
      CHECK(Json::parse(text)["x"].get<double>() == v);
    }
    CHECK(dump_json(Json{{"x", std::numeric_limits<double>::infinity()}}, -1) == "{\"x\":null}");
  }

  TEST_CASE("point set JSON round trip") {
    const PointSet s(3, {{0.1, 0.2, 0.3}, {1.0 / 3.0, -1e-300, 7.0}});
    std::istringstream in(dump_json(to_json(s)));
    const auto back = std::get<PointSet>(read_point_set(in));
    for (std::size_t i = 0; i < s.coords().size(); ++i) CHECK(back.coords()[i] == s.coords()[i]);

    const ExactPointSet e(2, {{Rational(1, 3), Rational(-2)}});
    std::istringstream ein(dump_json(to_json(e)));
    CHECK(std::get<ExactPointSet>(read_point_set(ein))[0][0] == Rational(1, 3));
  }

  TEST_CASE("matrix reader") {
    std::istringstream csv("1,2\n2,1\n");
    CHECK(read_matrix(csv)[1][0] == 2.0);
    std::istringstream js(R"({"matrix": [[0, 1], [1, 0]]})");
    CHECK(read_matrix(js)[0][1] == 1.0);
    std::istringstream bad("1,2,3\n4,5,6\n");
    CHECK_THROWS_AS(read_matrix(bad), InputError);
  }
}
