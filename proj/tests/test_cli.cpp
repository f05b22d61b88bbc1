#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qdist/config.hpp"
#include "qdist/errors.hpp"
#include "qdist/suites.hpp"

using namespace qdist;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::string temp_path(const std::string& name) { return "qdist_test_" + name; }

}  // namespace

TEST_CASE("report serialization") {
  CheckReport r("demo", make_field(3, 1), 2);
  r.input("size", std::int64_t{4});
  r.lhs = Cx(1.5, -0.25);
  r.rhs = BigRational(12, 729);
  r.settle_margin(0.1, 1e-10);
  r.extra("flag", true).extra("name", std::string("a\"b"));
  const std::string line = to_jsonl(r);
  CHECK(line ==
        "{\"check\":\"demo\",\"p\":3,\"ell\":1,\"q\":3,\"d\":2,\"inputs\":{\"size\":4},\"lhs\":[1.5,-0.25],"
        "\"rhs\":\"4/243\",\"margin\":0.10000000000000001,\"tolerance\":1e-10,\"pass\":true,"
        "\"extras\":{\"flag\":true,\"name\":\"a\\\"b\"}}");
  CHECK(emit_report(r, ReportFormat::Jsonl) == line);
  r.no_claim(Measure::Residual, 2.0);
  CHECK(to_jsonl(r).find("\"pass\":\"no-claim\"") != std::string::npos);
  r.settle_residual(2.0, 1.0);
  CHECK(to_jsonl(r).find("\"pass\":false") != std::string::npos);
  CHECK(to_jsonl(r) == to_jsonl(r));
  CHECK(csv_header() == "check,p,ell,q,d,inputs,lhs_re,lhs_im,rhs_re,rhs_im,measure,value,tolerance,pass");
  CHECK(to_csv(r).rfind("demo,3,1,3,2,", 0) == 0);
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(0.0) == "0");
  CHECK(format_rational(BigRational(6, 3)) == "2");
  CHECK(verdict_name(Verdict::NoClaim) == "no-claim");
}

TEST_CASE("config parsing") {
  std::vector<std::string> pos;
  const KeyValues kv = parse_args({"p=3", "--ell", "1", "--d=3", "check=lemma2.3"}, pos);
  const RunConfig cfg = build_config("check", kv, pos);
  REQUIRE(cfg.targets == std::vector<std::string>{"sphere-ft"});
  CHECK(cfg.fields.size() == 1);
  CHECK(cfg.dims == std::vector<int>{3});

  CHECK(parse_prime_list("p", "3..13") == std::vector<std::uint32_t>{3, 5, 7, 11, 13});
  CHECK(parse_uint_list("size", "1,4..6") == std::vector<std::uint64_t>{1, 4, 5, 6});
  CHECK_THROWS_AS(parse_prime_list("p", "4"), ConfigError);
  CHECK_THROWS_AS(parse_prime_list("p", "2"), ConfigError);
  CHECK_THROWS_AS(parse_uint_list("d", "x"), ConfigError);
  CHECK_THROWS_AS(parse_uint_list("d", "5..3"), ConfigError);
  CHECK_THROWS_AS(build_config("check", {{"p", "3"}, {"check", "lemma33"}}, {}), ConfigError);  // seed missing
  CHECK_THROWS_AS(build_config("check", {{"p", "3"}, {"colour", "red"}}, {"gauss"}), ConfigError);
  CHECK_THROWS_AS(build_config("check", {{"p", "3"}}, {"bogus"}), ConfigError);
  CHECK_THROWS_AS(build_config("check", {{"p", "3"}, {"q", "9"}}, {"gauss"}), ConfigError);
  CHECK_THROWS_AS(build_config("frobnicate", {}, {}), ConfigError);
  CHECK_THROWS_AS(build_config("check", {{"p", "3"}, {"ell", "4"}}, {"gauss"}), ConfigError);
  CHECK_THROWS_AS(build_config("check", {{"q", "12"}}, {"gauss"}), ConfigError);
  CHECK_THROWS_AS(build_config("sweep", {{"p", "3"}, {"d", "2"}, {"size", "2"}}, {}), ConfigError);
  const RunConfig q = build_config("check", {{"q", "9,27"}}, {"gauss"});
  CHECK(q.fields.size() == 2);
  CHECK(q.fields[1].ell == 3);

  const KeyValues file = parse_config_text("# comment\np = 5\n\nsizes_e = 2,3  # trailing\n");
  REQUIRE(file.size() == 2);
  CHECK(file[1].second == "2,3");
  CHECK_THROWS_AS(parse_config_text("p 5"), ConfigError);
}

TEST_CASE("check exit codes") {
  Run g = run({"check", "gauss", "--p", "3..13", "--ell", "1..3"});
  CHECK(g.code == 0);
  CHECK(lines(g.out) == 15);
  CHECK(g.err.find("15 passed") != std::string::npos);

  CHECK(run({"check", "sphere-ft", "--d", "3", "--p", "3"}).code == 0);
  CHECK(run({"check", "p=3", "ell=1", "d=3", "check=lemma2.3"}).code == 0);
  CHECK(run({"check", "gauss", "--p", "4"}).code == kExitConfig);
  CHECK(run({"check", "lemma33", "--p", "3"}).code == kExitConfig);
  CHECK(run({"check", "gauss", "--p", "3", "--bogus", "1"}).code == kExitConfig);
  CHECK(run({"check", "gauss", "--p", "10007"}).code == kExitCap);
  CHECK(run({"check", "isotropic", "--p", "3", "--d", "2"}).code == kExitConfig);
  CHECK(run({}).code == kExitConfig);
  CHECK(run({"--help"}).code == kExitPass);

  // Over-cap cells are named on stderr and give status 2.
  const Run cap = run({"check", "lemma33", "--p", "5", "--d", "3", "--trials", "2", "--seed", "1"});
  CHECK(cap.code == kExitCap);
  CHECK(cap.err.find("suite=lemma33 p=5 ell=1 d=3") != std::string::npos);

  const Run nc = run({"check", "iosevich-rudnev", "--p", "3", "--seed", "1"});
  CHECK(nc.code == 0);
  CHECK(nc.out.find("\"pass\":\"no-claim\"") != std::string::npos);
}

TEST_CASE("randomized suites are reproducible") {
  const std::vector<std::string> args = {"check", "prop41", "--p", "3,5", "--d", "1,2", "--trials", "7", "--seed", "11"};
  const Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(lines(a.out) == 28);
  CHECK(a.out == b.out);
  const Run c = run({"check", "prop41", "--p", "3,5", "--d", "1,2", "--trials", "7", "--seed", "12"});
  CHECK(c.out != a.out);

  const Run sized = run({"check", "shparlinski", "--p", "5", "--d", "2", "--size_e", "2,3", "--size_f", "20", "--trials", "3", "--seed", "2"});
  CHECK(sized.code == 0);
  CHECK(lines(sized.out) == 6);
  CHECK(run({"check", "shparlinski", "--p", "5", "--d", "2", "--size", "26", "--seed", "2"}).code == kExitConfig);
}

TEST_CASE("csv output") {
  const Run r = run({"check", "gauss", "--p", "3,5", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind(csv_header() + "\n", 0) == 0);
  CHECK(lines(r.out) == 3);
}

TEST_CASE("construct isotropic") {
  const Run r = run({"construct", "isotropic", "--p", "5", "--d", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("5 5 1 2 5\n", 0) == 0);
  CHECK(lines(r.out) == 6);
  CHECK(run({"construct", "isotropic", "--p", "3", "--d", "2"}).code == kExitConfig);
  CHECK(run({"construct", "sphere", "--p", "3", "--d", "2"}).code == kExitConfig);
}

TEST_CASE("dft subcommand") {
  const Run s = run({"dft", "--p", "3", "--d", "2", "--j", "1"});
  CHECK(s.code == 0);
  CHECK(lines(s.out) == 10);
  const Run r = run({"dft", "--p", "5", "--d", "2", "--size", "7", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 26);
  CHECK(run({"dft", "--p", "5", "--size", "7"}).code == kExitConfig);

  const std::string path = temp_path("set.txt");
  {
    const Run c = run({"construct", "isotropic", "--p", "13", "--d", "2", "--out", path});
    REQUIRE(c.code == 0);
  }
  const Run f = run({"dft", path});
  CHECK(f.code == 0);
  CHECK(lines(f.out) == 170);
  std::remove(path.c_str());
}

TEST_CASE("sweep writes JSON lines and a CSV summary") {
  const std::string cfg_path = temp_path("sweep.cfg");
  const std::string out_path = temp_path("sweep.jsonl");
  {
    std::ofstream cfg(cfg_path);
    cfg << "p = 3,5\nd = 2\nsizes_e = 2,5\nsizes_f = 3\ntrials = 2\nseed = 9\nchecks = sumset\n";
  }
  const Run a = run({"sweep", "--config", cfg_path, "--out", out_path});
  CHECK(a.code == 0);
  std::ifstream jin(out_path), cin(out_path + ".csv");
  std::stringstream js, cs;
  js << jin.rdbuf();
  cs << cin.rdbuf();
  CHECK(lines(js.str()) == 4 + 8);
  CHECK(lines(cs.str()) == 5);
  const Run b = run({"sweep", "--config", cfg_path});
  CHECK(b.out == js.str());
  const Run csv = run({"sweep", "--config", cfg_path, "--format", "csv"});
  CHECK(lines(csv.out) == 5);
  // An over-cap cell is reported and gives status 2.
  const Run cap = run({"sweep", "--config", cfg_path, "--d", "3", "--checks", "lemma33"});
  CHECK(cap.code == kExitCap);
  CHECK(cap.out.find("\"cap_exceeded\":true") != std::string::npos);
  CHECK(run({"sweep", "--config", cfg_path, "--checks", "gauss"}).code == kExitConfig);
  CHECK(run({"sweep", "--config", "/nonexistent/file.cfg"}).code == kExitConfig);
  std::remove(cfg_path.c_str());
  std::remove(out_path.c_str());
  std::remove((out_path + ".csv").c_str());
}
