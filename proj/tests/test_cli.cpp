#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "aeq/cli.hpp"
#include "aeq/io.hpp"

using namespace aeq;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "aeq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const char* square = R"({"dim": 2, "mode": "exact", "points": [[0, 0], [1, 0], [0, 1], [1, 1]]})";
const char* bad = R"({"dim": 3, "mode": "exact", "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify reports pass and fail") {
    const auto ok = run({"verify", "--input", "-"}, square);
    CHECK(ok.code == 0);
    const auto j = ok.json();
    CHECK(j["command"] == "verify");
    CHECK(j["outcome"] == "pass");
    CHECK(j["payload"]["mode"] == "exact");
    CHECK(j["payload"]["almost_equidistant"] == true);

    const auto no = run({"verify", "--input", "-"}, bad);
    CHECK(no.code == 1);
    const auto k = no.json();
    CHECK(k["outcome"] == "fail");
    CHECK(k["payload"]["witness"]["triple"] == Json::array({0, 1, 2}));
  }

  TEST_CASE("input errors exit with code 2") {
    CHECK(run({"verify", "--input", "-"}, "{\"dim\": 2, \"points\": []}").code == 2);
    CHECK(run({"verify", "--input", "-"}, "not json or csv").code == 2);
    CHECK(run({"construct", "--dim", "3"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"construct", "--kind", "simplex", "--dim", "3", "--exact"}).code == 2);
    const auto e = run({"construct", "--kind", "cube", "--dim", "3"});
    CHECK(e.code == 2);
    CHECK(e.json()["outcome"] == "error");
  }

  TEST_CASE("construct output verifies and certifies") {
    const auto c = run({"construct", "--kind", "two_simplices", "--dim", "3"});
    REQUIRE(c.code == 0);
    const auto j = c.json();
    CHECK(j["payload"]["n"] == 8);
    const auto points = dump_json(j["payload"]["point_set"]);
    const auto v = run({"verify", "--input", "-"}, points);
    CHECK(v.code == 0);
    const auto cert = run({"certify", "--input", "-"}, c.out);
    CHECK(cert.code == 0);
    CHECK(cert.json()["payload"]["count_eq_one"] == 4);
  }

  TEST_CASE("bounds calculators") {
    const auto d = run({"bounds", "--theorem", "diameter", "--dim", "7"});
    CHECK(d.code == 0);
    CHECK(d.json()["payload"]["bound"] == 18);
    const auto b = run({"bounds", "--theorem", "ball", "--dim", "2", "--c0", "0.25"});
    CHECK(b.json()["payload"]["bound"] == 10);
  }

  TEST_CASE("pipeline over a construction") {
    const auto c = run({"construct", "--kind", "rosenfeld", "--dim", "4"});
    const auto p = run({"pipeline", "--input", "-"}, c.out);
    CHECK(p.code == 0);
    CHECK(p.json()["outcome"] == "pass");
  }

  TEST_CASE("search reports infeasible with exit 1") {
    const auto s = run({"search", "--dim", "2", "--n", "8", "--restarts", "8"});
    CHECK(s.code == 1);
    CHECK(s.json()["outcome"] == "infeasible");
  }

  TEST_CASE("tdrank csv table") {
    const auto t = run({"--format", "csv", "tdrank", "--n", "5", "--graphs", std::string(AEQ_TEST_DATA) + "/triangle_free_le8.txt"});
    CHECK(t.code == 0);
    CHECK(t.out.rfind("index,lambda2,multiplicity,rank,lambda2_positive", 0) == 0);
  }

  TEST_CASE("matrix helpers") {
    const auto g = run({"gershgorin", "--matrix", "-"}, "[[0, 1], [1, 0]]");
    CHECK(g.code == 0);
    const auto p = run({"perron", "--matrix", "-"}, "[[1, 1], [1, 1]]");
    CHECK(p.code == 0);
    CHECK(p.json()["payload"]["rho"].get<double>() == doctest::Approx(2.0));
  }

  TEST_CASE("help exits 0") { CHECK(run({"--help"}).code == 0); }
}
