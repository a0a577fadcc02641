#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "shiftpred/cli.hpp"
#include "shiftpred/config.hpp"
#include "shiftpred/errors.hpp"

using namespace shiftpred;

TEST_CASE("entries and sets parse") {
  const FinSeq a = parse_entries("(0, 1/2, 0) (3, -2, 0)");
  CHECK(a == (FinSeq{{0, Scalar::rational(1, 2)}, {3, Scalar(-2)}}));
  CHECK_FALSE(parse_entries("(1, 0.5, 0.25)").is_exact());
  CHECK(parse_set("powers 3").describe() == "powers(3)");
  CHECK(parse_set("explicit 1 -4 9").enumerate(100) == std::vector<Index>{-4, 1, 9});
  CHECK_THROWS_AS(parse_entries("(1, 2"), ParseError);
  CHECK_THROWS_AS(parse_set("primes"), ParseError);
}

TEST_CASE("default config") {
  const Config c = load_config("default");
  REQUIRE(c.spec.has_value());
  CHECK(c.spec->k() == 1);
  CHECK(c.spec->images[0] == (FinSeq{{0, Scalar::rational(1, 2)}, {1, Scalar::rational(1, 2)}}));
  REQUIRE(c.families.size() == 1);
  CHECK(c.families[0].first == "shifted");
  CHECK(c.families[0].second.approximants.size() == 2);
}

TEST_CASE("config with a split set and comments") {
  std::istringstream in(R"(# two pieces of the factorials
[projection]
k = 2
search_bound = 40320
[image 1]
entries = (0, 1/2, 0) (1, 1/2, 0)
[image 2]
entries = (0, 1, 0)
[set 1]
generator = factorials
split = 2 0
[set 2]
generator = factorials
split = 2 1
)");
  const Config c = parse_config(in);
  REQUIRE(c.spec.has_value());
  CHECK(c.spec->k() == 2);
  CHECK_FALSE(c.spec->family.overlap(40320).has_value());
  CHECK(c.spec->search_bound == 40320);
}

TEST_CASE("malformed config") {
  std::istringstream bad("[projection]\nk = two\n");
  CHECK_THROWS_AS(parse_config(bad), ParseError);
  std::istringstream missing("[projection]\nk = 2\n[image 1]\nentries = (0, 1, 0)\n[set 1]\ngenerator = powers 2\n");
  CHECK_THROWS_AS(parse_config(missing), ParseError);
  CHECK_THROWS(load_config("/nonexistent/file.cfg"));
}

namespace {

int cli(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream o;
  std::ostringstream e;
  const int code = run(args, o, e);
  out = o.str();
  return code;
}

}  // namespace

TEST_CASE("cli smoke") {
  std::string out;
  CHECK(cli({"verify-xzero", "--lambda", "2", "--window", "256"}, out) == 0);
  CHECK(out.find("\"status\":\"fail\"") == std::string::npos);
  CHECK(out.find("\"values\":[\"1\",\"1/2\",\"1/2\",\"1/4\",\"1/2\",\"1/4\",\"1/4\",\"1/8\",\"1/2\"]") !=
        std::string::npos);
  CHECK(cli({"bogus"}, out) == 2);
  CHECK(cli({"verify-xzero", "--lambda", "1/2"}, out) == 2);
  CHECK(cli({"suite", "--config", "/nonexistent/file.cfg"}, out) == 3);
  CHECK(cli({"sparse-check", "--set", "explicit 1 2 3 4 5 6 7 8", "--bound", "8", "--t-range", "2"}, out) == 1);
}

TEST_CASE("cli output is deterministic across worker counts") {
  std::string one;
  std::string four;
  REQUIRE(cli({"extend", "--seed", "3", "--window", "512"}, one) == 0);
  REQUIRE(cli({"extend", "--seed", "3", "--window", "512", "--workers", "4"}, four) == 0);
  CHECK(one == four);
  std::string again;
  cli({"extend", "--seed", "3", "--window", "512"}, again);
  CHECK(one == again);
}

TEST_CASE("power-table writes the csv") {
  const std::string path = "power_table_test.csv";
  std::string out;
  CHECK(cli({"power-table", "--element", "binomial", "--max-m", "16", "--csv", path}, out) == 0);
  std::ifstream f(path);
  std::string line;
  int lines = 0;
  while (std::getline(f, line)) ++lines;
  CHECK(lines == 17);
  std::remove(path.c_str());
}
