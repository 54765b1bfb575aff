#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "json.hpp"
#include "quadwalk/cli.hpp"

using namespace quadwalk;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("alpha grammar") {
  CHECK(cli::parse_alpha("phi") == QuadIrrational::make(1, 1, 2, 5));
  CHECK(cli::parse_alpha("quad:19,3,26,69") == QuadIrrational::make(19, 3, 26, 69));
  CHECK(cli::parse_alpha("sqrt30") == QuadIrrational::make(0, 1, 1, 30));
  CHECK(cli::parse_alpha("poly:1,-1,-1,+") == QuadIrrational::make(1, 1, 2, 5));
  CHECK(cli::parse_alpha("poly:13,-19,-5,+") == QuadIrrational::make(19, 3, 26, 69));
  CHECK_THROWS_AS(cli::parse_alpha("nope"), parse_error);
  CHECK_THROWS_AS(cli::parse_alpha("quad:1,2,3"), parse_error);
  CHECK_THROWS_AS(cli::parse_alpha("quad:1,0,2,5"), rational_input_error);
  CHECK_THROWS_AS(cli::parse_alpha("sqrt12"), invalid_field_error);
}

TEST_CASE("law grammar") {
  StepLaw law = cli::parse_law("-1:1/2,1:1/2");
  CHECK(law.support.size() == 2);
  CHECK(law.mean() == 0);
  StepLaw lazy = cli::parse_law("-1:1/4,0:1/2,1:1/4");
  CHECK(lazy.second_moment() == Rat(1, 2));
  CHECK_THROWS_AS(cli::parse_law("-1:1/2,1:1/3"), precondition_error);
  CHECK_THROWS_AS(cli::parse_law("1:x"), parse_error);
}

TEST_CASE("pell and classno subcommands") {
  Run r = run({"pell", "--D", "621"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["t0"] == "25");
  CHECK(j["u0"] == "1");

  Run h = run({"classno", "--D", "120"});
  json jh = json::parse(h.out);
  CHECK(jh["h"] == 4);
  CHECK(jh["representatives"].size() == 4);

  Run bad = run({"pell", "--D", "7"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("invalid-discriminant") != std::string::npos);
}

TEST_CASE("zeta subcommands emit exact rationals") {
  Run r = run({"zeta", "module", "--alpha", "quad:19,3,26,69", "--k", "1"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["value"] == "5/3");
  CHECK(j["terms"][0] == "19/48");
  CHECK(j["terms"][4] == "7/20");

  Run r3 = run({"zeta", "module", "--alpha", "quad:19,3,26,69", "--k", "3"});
  CHECK(json::parse(r3.out)["value"] == "1997/6");

  Run d = run({"zeta", "dedekind", "--d", "5", "--s", "2"});
  json jd = json::parse(d.out);
  CHECK(jd["coeff"] == "2/375");
  CHECK(jd["d"] == 5);
  CHECK(jd["pi_power"] == 4);
}

TEST_CASE("cf subcommand") {
  Run r = run({"cf", "--alpha", "quad:19,3,26,69", "--kind", "backward"});
  json j = json::parse(r.out);
  CHECK(j["kind"] == "backward");
  CHECK(j["b0"] == "2");
  CHECK(j["period"] == json::array({"4", "2", "2", "2", "3"}));
  Run reg = run({"cf", "--alpha", "sqrt3", "--kind", "regular"});
  json jr = json::parse(reg.out);
  CHECK(jr["period"] == json::array({"1", "2"}));
}

TEST_CASE("constants subcommand round-trips exact rationals") {
  Run r = run({"constants", "--alpha", "phi"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["c1"]["coeff"] == "1/75");
  CHECK(j["c2"]["coeff"] == "1/3375");
  CHECK(j["c1"]["eps"]["t0"] == "3");
  // round-trip: parse back "num/den"
  std::string c = j["c1"]["coeff"];
  size_t slash = c.find('/');
  Rat parsed = make_rat(Int(c.substr(0, slash)), Int(c.substr(slash + 1)));
  CHECK(parsed == Rat(1, 75));
}

TEST_CASE("dispatch determinism and exit codes") {
  Run a = run({"tables", "--which", "epsilon"});
  Run b = run({"tables", "--which", "epsilon"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  Run bad = run({"frobnicate"});
  CHECK(bad.code == 2);
  Run none = run({});
  CHECK(none.code == 2);
}

TEST_CASE("tables emit csv and aligned text") {
  Run c = run({"tables", "--which", "zeta", "--format", "csv"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("d,zeta2_coeff", 0) == 0);
  CHECK(c.out.find("2,1/96,4,11/138240,8") != std::string::npos);
  Run t = run({"tables", "--which", "epsilon", "--format", "table"});
  CHECK(t.code == 0);
  CHECK(t.out.rfind("D", 0) == 0);
}

TEST_CASE("tables golden spot checks") {
  json eps = json::parse(run({"tables", "--which", "epsilon"}).out);
  bool saw20 = false;
  for (auto& row : eps["rows"]) {
    if (row["D"] == 20) {
      saw20 = true;
      CHECK(row["t0"] == "18");
      CHECK(row["u0"] == "4");
    }
  }
  CHECK(saw20);

  json zt = json::parse(run({"tables", "--which", "zeta"}).out);
  CHECK(zt["rows"][0]["d"] == 2);
  CHECK(zt["rows"][0]["zeta2"]["coeff"] == "1/96");

  json cc = json::parse(run({"tables", "--which", "c1c2"}).out);
  CHECK(cc["rows"][0]["alpha"] == "phi");
  CHECK(cc["rows"][0]["c1"]["coeff"] == "1/75");
}

TEST_CASE("walk subcommand csv and json") {
  Run r = run({"--threads", "2", "walk", "--alpha", "phi", "--law", "-1:1/2,1:1/2",
               "--ngrid", "256:1024:x2", "--trials", "200", "--seed", "5"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["L"] == 1);
  CHECK(j["per_n"].size() == 3);
  CHECK(j["prediction"]["c1_Lalpha"]["coeff"] == "1/75");

  Run c = run({"--format", "csv", "--threads", "2", "walk", "--alpha", "phi", "--law",
               "-1:1/2,1:1/2", "--ngrid", "256,512", "--trials", "50", "--seed", "5"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("N,mean,var", 0) == 0);
}

TEST_CASE("dsum subcommand") {
  Run r = run({"dsum", "--alpha", "phi", "--theta", "2", "--M", "5000"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["checkpoints"].size() >= 3);
  Run s = run({"dsum", "--alpha", "phi", "--theta", "2", "--M", "1000",
               "--slope", "100,1000"});
  CHECK(s.code == 0);
  CHECK(json::parse(s.out).contains("slope"));
}

TEST_CASE("beck subcommand") {
  Run r = run({"beck", "--a", "10", "--rho", "2", "--kmax", "2", "--budget", "2000"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["checkpoints"].size() >= 3);
}
