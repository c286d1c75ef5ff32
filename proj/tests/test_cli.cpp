#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "nie/chain_ring.hpp"
#include "nie/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int rc = 0;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.rc = nie::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json out_json(const RunResult& r) { return json::parse(r.out); }
json err_json(const RunResult& r) { return json::parse(r.err); }

}  // namespace

TEST_CASE("code-repr reports the canonical tuple") {
  auto r = run({"code-repr", "--algebra", "Z(8);n=2;lambda=2", "--gens",
                "[0,1]"});
  REQUIRE(r.rc == 0);
  json doc = out_json(r);
  CHECK(doc["schema"] == 1);
  CHECK(doc["command"] == "code-repr");
  CHECK(doc["algebra"] == "Z(8);n=2;lambda=2");
  CHECK(doc["cardinality"] == "32");
  CHECK(doc["torsional_degrees"] == json::array({1, 0, 0}));
  json want = json::array({json::array({0, 1}), json::array({2, 0}),
                           json::array({4, 0})});
  CHECK(doc["representation"] == want);

  // No generators means the zero code.
  auto z = run({"code-repr", "--algebra", "Z(8);n=2;lambda=2"});
  REQUIRE(z.rc == 0);
  json zdoc = out_json(z);
  CHECK(zdoc["cardinality"] == "1");
  CHECK(zdoc["torsional_degrees"] == json::array({2, 2, 2}));
}

TEST_CASE("code-distance reports the witness when one exists") {
  auto r = run({"code-distance", "--algebra", "Z(8);n=2;lambda=2", "--gens",
                "[0,1]"});
  REQUIRE(r.rc == 0);
  json doc = out_json(r);
  CHECK(doc["distance"] == 1);
  REQUIRE(doc.contains("witness"));
  std::size_t weight = 0;
  for (const auto& c : doc["witness"]) weight += (c.get<int>() != 0);
  CHECK(weight == 1);

  auto z = run({"code-distance", "--algebra", "Z(8);n=2;lambda=2"});
  REQUIRE(z.rc == 0);
  json zdoc = out_json(z);
  CHECK(zdoc["distance"] == 3);  // zero code: n + 1 by convention
  CHECK(!zdoc.contains("witness"));
}

TEST_CASE("code-dual emits the verdict in both directions") {
  auto no = run({"code-dual", "--algebra", "Z(4);n=2;lambda=2", "--gens",
                 "[0,1]"});
  REQUIRE(no.rc == 0);
  json ndoc = out_json(no);
  CHECK(ndoc["cardinality"] == "8");
  CHECK(ndoc["dual_cardinality"] == "2");
  CHECK(ndoc["dual_torsion_profile"] == json::array({2, 1}));
  CHECK(ndoc["verdict"] == json({{"no", json::array({2, 0})}}));

  auto yes = run({"code-dual", "--algebra", "Z(4);n=2;lambda=2", "--gens",
                  "[1]"});
  REQUIRE(yes.rc == 0);
  CHECK(out_json(yes)["verdict"] == json({{"yes", 0}}));

  auto zero = run({"code-dual", "--algebra", "Z(4);n=2;lambda=2"});
  REQUIRE(zero.rc == 0);
  CHECK(out_json(zero)["verdict"] == json({{"yes", 2}}));
}

TEST_CASE("ring-info and algebra-classify report structure") {
  auto r = run({"ring-info", "--ring", "Z(4)"});
  REQUIRE(r.rc == 0);
  json ring = out_json(r)["ring"];
  CHECK(ring["p"] == 2);
  CHECK(ring["m"] == 1);
  CHECK(ring["e"] == 2);
  CHECK(ring["q"] == 2);
  CHECK(ring["size"] == 4);
  CHECK(ring["gamma"] == 2);
  CHECK(ring["units"] == 2);
  CHECK(ring["teichmuller"] == json::array({0, 1}));

  auto a = run({"algebra-classify", "--algebra", "Z(4);n=2;lambda=2"});
  REQUIRE(a.rc == 0);
  json alg = out_json(a)["algebra"];
  CHECK(alg["nie"] == true);
  CHECK(alg["class"] == "ChainViaX");
  CHECK(alg["nilpotency"] == 4);
  CHECK(alg["size"] == "16");

  auto u = run({"algebra-classify", "--algebra", "Z(4);n=2;lambda=1"});
  REQUIRE(u.rc == 0);
  json ualg = out_json(u)["algebra"];
  CHECK(ualg["nie"] == false);
  CHECK(ualg["class"].is_null());
}

TEST_CASE("pir-build and pir-distance work componentwise") {
  auto b = run({"pir-build", "--pir", "Z(4) x F(5)", "--n", "2", "--lambdas",
                "2,1", "--gens", "1:[0,1]"});
  REQUIRE(b.rc == 0);
  json doc = out_json(b);
  CHECK(doc["pir"] == "Z(4) x F(5)");
  CHECK(doc["cardinality"] == "8");
  CHECK(doc["components"][0]["cardinality"] == "8");
  CHECK(doc["components"][1]["cardinality"] == "1");
  CHECK(doc["components"][1]["basis"] == json::array());

  auto d = run({"pir-distance", "--pir", "Z(4) x F(5)", "--n", "2",
                "--lambdas", "2,1", "--gens", "1:[0,1]", "--gens", "2:[1]"});
  REQUIRE(d.rc == 0);
  json ddoc = out_json(d);
  CHECK(ddoc["cardinality"] == "200");
  CHECK(ddoc["distance"] == 1);
  CHECK(ddoc["nie_check"]["component"] == 1);

  // A unit shift on every component leaves the check inapplicable.
  auto ok = run({"pir-distance", "--pir", "F(3) x F(5)", "--n", "2",
                 "--lambdas", "1,1", "--gens", "1:[1]", "--gens", "2:[1]"});
  REQUIRE(ok.rc == 0);
  CHECK(out_json(ok)["nie_check"].is_null());

  // Repeated --gens for one component accumulate generators.
  auto two = run({"pir-build", "--pir", "Z(4) x F(5)", "--n", "2",
                  "--lambdas", "2,1", "--gens", "1:[2,0]", "--gens",
                  "1:[0,2]"});
  REQUIRE(two.rc == 0);
  CHECK(out_json(two)["components"][0]["cardinality"] == "4");
}

TEST_CASE("pir-optimal certificates match the known constructions") {
  auto rs = run({"pir-optimal", "--kind", "rs", "--q", "5", "--k", "1", "--s",
                 "2"});
  REQUIRE(rs.rc == 0);
  json cert = out_json(rs)["certificate"];
  CHECK(cert["n"] == 4);
  CHECK(cert["cardinality"] == "5");
  CHECK(cert["distance"] == 4);
  CHECK(cert["bound"] == "9/2");
  CHECK(cert["optimal"] == true);
  CHECK(out_json(rs)["pir"] == "F(5) x F(5)");
  CHECK(out_json(rs)["lambdas"] == json::array({1, 0}));

  auto gm = run({"pir-optimal", "--kind", "gmds", "--p", "2", "--t", "2",
                 "--m", "2", "--n", "3", "--k", "1", "--s", "2"});
  REQUIRE(gm.rc == 0);
  json gcert = out_json(gm)["certificate"];
  CHECK(gcert["cardinality"] == "16");
  CHECK(gcert["distance"] == 3);
  CHECK(gcert["bound"] == "7/2");
  CHECK(gcert["optimal"] == true);
}

TEST_CASE("verify runs a suite and reports the pass table") {
  auto r = run({"verify", "--suite", "optimal"});
  REQUIRE(r.rc == 0);
  json doc = out_json(r);
  CHECK(doc["passed"] == true);
  REQUIRE(doc["checks"].size() == 2);
  CHECK(doc["checks"][0]["name"] == "optimal.certificates");
  CHECK(doc["checks"][1]["name"] == "optimal.nie_component_distance");
  for (const auto& c : doc["checks"]) {
    CHECK(c["failures"] == 0);
    CHECK(c["cases"].get<int>() > 0);
  }

  auto t = run({"verify", "--suite", "torsion"});
  REQUIRE(t.rc == 0);
  CHECK(out_json(t)["passed"] == true);

  auto bad = run({"verify", "--suite", "nonsense"});
  CHECK(bad.rc == 2);
}

TEST_CASE("csv output is the flattened report, byte for byte") {
  auto r = run({"pir-optimal", "--kind", "rs", "--q", "5", "--k", "1", "--s",
                "2", "--format", "csv"});
  REQUIRE(r.rc == 0);
  CHECK(r.out ==
        "key,value\n"
        "schema,1\n"
        "command,pir-optimal\n"
        "kind,rs\n"
        "pir,F(5) x F(5)\n"
        "lambdas.0,1\n"
        "lambdas.1,0\n"
        "certificate.n,4\n"
        "certificate.cardinality,5\n"
        "certificate.distance,4\n"
        "certificate.bound,9/2\n"
        "certificate.optimal,true\n");
}

TEST_CASE("reports are deterministic and --out writes the same bytes") {
  std::vector<std::string> args = {"code-dual", "--algebra",
                                   "Z(8);n=2;lambda=2", "--gens", "[0,1]"};
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.rc == 0);
  CHECK(a.out == b.out);

  auto path = std::filesystem::temp_directory_path() / "nie_cli_out.json";
  std::vector<std::string> with_out = args;
  with_out.push_back("--out");
  with_out.push_back(path.string());
  auto c = run(with_out);
  REQUIRE(c.rc == 0);
  CHECK(c.out.empty());
  std::ifstream file(path);
  std::stringstream buf;
  buf << file.rdbuf();
  CHECK(buf.str() == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit 2 with a message") {
  CHECK(run({}).rc == 2);
  CHECK(run({"bogus-sub"}).rc == 2);
  CHECK(run({"code-repr"}).rc == 2);  // missing required --algebra
  CHECK(run({"ring-info", "--ring", "Z(4)", "--format", "xml"}).rc == 2);
  auto r = run({"pir-optimal", "--kind", "rs", "--k", "1", "--s", "2"});
  CHECK(r.rc == 2);
  CHECK(r.err.find("--q") != std::string::npos);
  auto g = run({"pir-optimal", "--kind", "gmds", "--q", "5"});
  CHECK(g.rc == 2);
}

TEST_CASE("domain errors exit 1 with a machine-readable report") {
  auto r = run({"ring-info", "--ring", "Z(6)"});
  CHECK(r.rc == 1);
  CHECK(r.out.empty());
  CHECK(err_json(r)["error"]["kind"] == "non_prime");

  auto u = run({"code-repr", "--algebra", "Z(8);n=2;lambda=3", "--gens",
                "[0,1]"});
  CHECK(u.rc == 1);
  CHECK(err_json(u)["error"]["kind"] == "not_nie");

  auto m = run({"pir-build", "--pir", "Z(4) x F(5)", "--n", "2", "--lambdas",
                "2", "--gens", "1:[0,1]"});
  CHECK(m.rc == 1);
  CHECK(err_json(m)["error"]["kind"] == "component_mismatch");

  auto bad_gen = run({"pir-build", "--pir", "Z(4) x F(5)", "--n", "2",
                      "--lambdas", "2,1", "--gens", "[0,1]"});
  CHECK(bad_gen.rc == 1);
  CHECK(err_json(bad_gen)["error"]["kind"] == "parse_error");

  auto oob = run({"pir-build", "--pir", "Z(4) x F(5)", "--n", "2",
                  "--lambdas", "2,1", "--gens", "3:[0,1]"});
  CHECK(oob.rc == 1);
  CHECK(err_json(oob)["error"]["kind"] == "index_out_of_range");
}

TEST_CASE("help exits 0 and prints usage") {
  auto top = run({"--help"});
  CHECK(top.rc == 0);
  CHECK(top.out.find("Usage: nie") != std::string::npos);

  auto sub = run({"code-repr", "--help"});
  CHECK(sub.rc == 0);
  CHECK(sub.out.find("code-repr") != std::string::npos);
}

TEST_CASE("the enumeration-cap override is honored") {
  setenv("NIE_MAX_ENUM", "4", 1);
  auto r = run({"code-distance", "--algebra", "Z(8);n=2;lambda=2", "--gens",
                "[0,1]"});
  CHECK(r.rc == 1);
  CHECK(err_json(r)["error"]["kind"] == "too_large");

  setenv("NIE_MAX_ENUM", "junk", 1);
  auto bad = run({"ring-info", "--ring", "Z(4)"});
  CHECK(bad.rc == 2);

  unsetenv("NIE_MAX_ENUM");
  nie::set_enumeration_cap(std::size_t{1} << 20);
  auto ok = run({"code-distance", "--algebra", "Z(8);n=2;lambda=2", "--gens",
                 "[0,1]"});
  CHECK(ok.rc == 0);
}
