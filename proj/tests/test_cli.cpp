#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "algdyn/cli.hpp"

using nlohmann::json;

namespace {

  struct Outcome {
    int         code;
    std::string out;
    std::string err;

    json report() const {
      return json::parse(out);
    }
  };

  Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = algdyn::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
  }

}  // namespace

TEST_CASE("cli: identity map has no image steps") {
  auto const r = run({"analyze-map", R"({"N":4,"table":[0,1,2,3]})"});
  REQUIRE(r.code == 0);
  auto const j = r.report();
  CHECK(j["result"]["N_image"] == 0);
  CHECK(j["command"] == "analyze-map");
  CHECK(j["input_sha256"].get<std::string>().size() == 64);
  CHECK(j["versions"].contains("cyclic_semigroup"));
}

TEST_CASE("cli: shift construction") {
  auto const r = run({"construct-shift", R"({"p":2,"h_order":3,"base_size":2})"});
  REQUIRE(r.code == 0);
  auto const res = r.report()["result"];
  CHECK(res["index"] == 2);
  CHECK(res["period"] == 3);
  CHECK(res["order"] == 4);
  CHECK(res["state_count"] == 12);
}

TEST_CASE("cli: GL2 witness") {
  auto const r = run({"witness-gl2", "--nmax", "5"});
  REQUIRE(r.code == 0);
  auto const res = r.report()["result"];
  CHECK(res["fg_power_nmax"] == json::parse(R"([["1","5"],["0","1"]])"));
  CHECK(res["f_squared"] == json::parse(R"([["1","0"],["0","1"]])"));
  CHECK(res["g_squared"] == json::parse(R"([["1","0"],["0","1"]])"));
}

TEST_CASE("cli: output is deterministic") {
  std::vector<std::string> args{"analyze-matrix", R"({"n":3,"entries":[[0,1,"1/2"],[0,0,1],[0,0,0]],"field":"Q"})"};
  auto const               a = run(args);
  auto const               b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.report()["result"]["fitting"]["m"] == 3);
}

TEST_CASE("cli: matrices over Q and F_p") {
  auto const q = run({"analyze-matrix", R"({"n":2,"entries":[[0,-1],[1,0]],"field":"Q"})"});
  REQUIRE(q.code == 0);
  CHECK(q.report()["result"]["torsion"]["order"] == 4);
  CHECK(q.report()["result"]["decomposition"]["orbit"]["period"] == 4);

  auto const u = run({"analyze-matrix", R"({"n":2,"entries":[[1,1],[0,1]],"field":"Q"})"});
  REQUIRE(u.code == 0);
  CHECK(u.report()["result"]["torsion"]["finite_order"] == false);
  CHECK(u.report()["result"]["decomposition"].is_null());

  auto const p = run({"analyze-matrix", R"({"n":2,"entries":[[1,1],[0,1]],"field":{"Fp":5}})"});
  REQUIRE(p.code == 0);
  CHECK(p.report()["result"]["decomposition"]["orbit"]["period"] == 5);

  auto const tight = run({"analyze-matrix", "--budget", "4", R"({"n":2,"entries":[[1,1],[0,1]],"field":{"Fp":5}})"});
  CHECK(tight.code == 3);
  CHECK(json::parse(tight.err)["error"] == "OrderExceedsBudget");
}

TEST_CASE("cli: cones") {
  auto const ext = run({"cone", "extremal",
                        R"({"cone":{"d":2,"generators":[[1,0],[0,1]]},"subcone":{"d":2,"generators":[[1,1]]}})"});
  REQUIRE(ext.code == 0);
  auto const res = ext.report()["result"];
  CHECK(res["extremal"] == false);
  CHECK(res["witness"]["a"] == json::parse(R"(["1","0"])"));

  auto const sp = run({"cone", "span", R"({"d":3,"generators":[[1,0,0],[0,1,0]]})"});
  REQUIRE(sp.code == 0);
  CHECK(sp.report()["result"]["dim"] == 2);
  CHECK(sp.report()["result"]["faces"].size() == 4);

  auto const rel = run({"cone", "relative-chain", "--nmax", "4",
                        R"({"cone":{"d":2,"generators":[[1,0],[0,1]]},"matrix":{"n":2,"entries":[[0,1],[0,0]]}})"});
  REQUIRE(rel.code == 0);
  CHECK(rel.report()["result"]["kernel_dims"] == json::parse("[1,2,2,2]"));

  auto const bad = run({"cone", "chain",
                        R"({"cone":{"d":2,"generators":[[1,0],[0,1]]},"chain":[{"d":2,"generators":[[1,1]]}]})"});
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.err)["error"] == "NotExtremal");

  CHECK(run({"cone", "bogus", R"({"d":1,"generators":[[1]]})"}).code == 1);
}

TEST_CASE("cli: elliptic verbs") {
  auto const order = run({"elliptic", "order", R"({"field":"Q","a":0,"b":1,"point":[2,3]})"});
  REQUIRE(order.code == 0);
  CHECK(order.report()["result"]["order"] == 6);

  auto const decide = run({"elliptic", "decide",
                           R"({"field":"Q","a":-1,"b":0,"fibers":[["O",[0,0],[1,0],[-1,0]]]})"});
  REQUIRE(decide.code == 0);
  CHECK(decide.report()["result"]["yes"] == true);
  CHECK(decide.report()["result"]["n"] == 2);

  auto const fp = run({"elliptic", "decide", R"({"field":{"Fp":11},"a":1,"b":6,"fibers":[[[2,4],[3,5]]]})"});
  REQUIRE(fp.code == 0);
  CHECK(fp.report()["result"]["yes"] == true);

  auto const deg = run({"elliptic", "degree-check", R"({"field":{"Fp":5},"a":-1,"b":0,"n":2})"});
  REQUIRE(deg.code == 0);
  CHECK(deg.report()["result"]["kernel_size"] == 4);

  auto const fix = run({"elliptic", "fixed-point", R"({"field":{"Fp":11},"a":1,"b":6,"k":0,"z0":[2,4]})"});
  REQUIRE(fix.code == 0);
  CHECK(fix.report()["result"]["fixed_point"] == json::parse("[2,4]"));

  auto const off = run({"elliptic", "order", R"({"field":"Q","a":0,"b":1,"point":[1,1]})"});
  CHECK(off.code == 1);
  CHECK(json::parse(off.err)["error"] == "PointNotOnCurve");
  CHECK(run({"elliptic", "degree-check", R"({"field":"Q","a":0,"b":1,"n":2})"}).code == 1);
}

TEST_CASE("cli: polynomial maps and DOT") {
  auto const r = run({"analyze-map", "--emit-dot", R"({"p":3,"n":1,"polys":["x0^2","x1^2"],"space":"projective"})"});
  REQUIRE(r.code == 0);
  auto const j = r.report();
  CHECK(j["result"]["table"] == json::parse("[0,1,1,3]"));
  CHECK(j["dot"].get<std::string>().find("2 -> 1;") != std::string::npos);
}

TEST_CASE("cli: product construction") {
  auto const r = run({"construct-product", R"({"nu":[0,1,1],"h":[0,2],"j":[0,1],"B":2})"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["result"]["psi_image"] == json::parse("[0,5]"));
  CHECK(r.report()["result"]["N_image"] == 1);
}

TEST_CASE("cli: input errors") {
  auto const malformed = run({"analyze-map", "{oops"});
  CHECK(malformed.code == 1);
  CHECK(json::parse(malformed.err)["error"] == "InvalidInput");

  CHECK(run({"analyze-map"}).code == 1);
  CHECK(run({"no-such-command"}).code == 1);
  CHECK(run({"analyze-map", "--budget", "0", R"({"N":1,"table":[0]})"}).code == 1);
  CHECK(run({"analyze-map", R"({"N":2,"table":[0,2]})"}).code == 1);
  CHECK(run({"analyze-matrix", R"({"n":2,"entries":[[1.5,0],[0,1]]})"}).code == 1);
  CHECK(run({"analyze-matrix", R"({"n":2,"entries":[[1,0],[0,1]],"field":{"Fp":4}})"}).code == 1);
  CHECK(run({"construct-shift", R"({"p":2,"h_order":3,"base_size":1})"}).code == 1);
  CHECK(json::parse(run({"construct-shift", R"({"p":2,"h_order":3,"base_size":1})"}).err)["error"]
        == "BaseTooSmall");
  CHECK(run({"analyze-map", "--input", R"({"N":1,"table":[0]})", R"({"N":1,"table":[0]})"}).code == 1);
}

TEST_CASE("cli: input from a file and report to a file") {
  std::string const in  = "cli_test_input.json";
  std::string const out = "cli_test_output.json";
  {
    std::ofstream f(in);
    f << R"({"N":3,"table":[1,2,2]})";
  }
  auto const r = run({"analyze-map", "--input", in, "--output", out, "--emit-dot"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  json          j = json::parse(f);
  CHECK(j["result"]["N_image"] == 2);
  std::ifstream dot(out + ".dot");
  CHECK(dot.good());
  std::remove(in.c_str());
  std::remove(out.c_str());
  std::remove((out + ".dot").c_str());
}
