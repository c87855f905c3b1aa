#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "chord/json_io.hpp"
#include "chord/report.hpp"
#include "doctest.h"

using namespace chord;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string cli_path() { return CHORD_CLI_PATH; }

int run(const std::string& args) {
  return std::system((cli_path() + " " + args + " > /dev/null 2>&1").c_str());
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("json round trips") {
    const Field& f4 = Field::get(2, 2);
    auto j = field_to_json(f4);
    CHECK(&field_from_json(j) == &f4);
    std::vector<uint32_t> coeffs(20, 0);
    coeffs[0] = f4.one();
    coeffs[19] = f4.from_coeffs(std::vector<uint32_t>{0, 1});
    auto F = CubicForm::make(f4, 3, coeffs);
    auto F2 = form_from_json(form_to_json(F));
    CHECK(F == F2);
    auto P = AbstractCubic::from_triples(
        4, std::vector<std::array<int, 3>>{{0, 1, 2}, {1, 2, 3}},
        std::vector<std::array<int, 2>>{{0, 1}});
    auto P2 = cubic_from_json(cubic_to_json(P));
    CHECK(P == P2);
    CHECK(word_from_json(word_to_json(Word{3, 1, 2})) == Word{3, 1, 2});
  }

  TEST_CASE("config hash is stable") {
    Json c1{{"a", 1}, {"b", "x"}};
    Json c2{{"b", "x"}, {"a", 1}};
    CHECK(config_hash(c1) == config_hash(c2));  // key order canonicalized
    Json c3{{"a", 2}, {"b", "x"}};
    CHECK(config_hash(c1) != config_hash(c3));
  }

  TEST_CASE("cli runs and reports deterministically") {
    std::string form = "/tmp/chord_test_fermat2.json";
    {
      const Field& f2 = Field::get(2, 1);
      std::vector<uint32_t> c(20, 0);
      c[0] = c[10] = c[16] = c[19] = 1;
      std::ofstream out(form);
      out << form_to_json(CubicForm::make(f2, 3, c)).dump();
    }
    CHECK(run("uequiv --in " + form + " --trace --out /tmp/chord_r1.json") == 0);
    CHECK(run("uequiv --in " + form + " --trace --out /tmp/chord_r2.json") == 0);
    CHECK(slurp("/tmp/chord_r1.json") == slurp("/tmp/chord_r2.json"));
    Json rep = Json::parse(slurp("/tmp/chord_r1.json"));
    CHECK(rep.at("config_hash").get<std::string>() == config_hash(rep.at("config")));
    CHECK(rep.at("timings").is_null());

    CHECK(run("word nf --in " + form + " --word 0,0") == 0);
    CHECK(run("generate --in " + form + " --rule distinct --seed-points 0,1") == 0);
  }

  TEST_CASE("exit codes") {
    CHECK(run("collinearity --in /tmp/does_not_exist.json") == 3 * 256);
    std::string form = "/tmp/chord_test_fermat2.json";
    int rc = std::system((cli_path() + " word eq --in " + form +
                          " --word 0,1,2,3,4,5,6,0,1,2,3,4,5,6 --word2 0 --budget 3 "
                          "> /dev/null 2>&1")
                             .c_str());
    CHECK(rc == 2 * 256);
  }
}
