#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "clonekit/action_models.hpp"
#include "clonekit/cli.hpp"
#include "clonekit/model_io.hpp"

using namespace clonekit;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_model(const FiniteModel& m, const std::string& name) {
  const std::string path = "clonekit_test_" + name + ".model";
  std::ofstream(path) << format_model(m);
  return path;
}

}  // namespace

TEST_CASE("theory verify") {
  const Result r = run({"theory", "verify", "--ring", "bool:2", "--flavor", "hyperaffine", "--max-arity", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.rfind("# theory verify ring=bool:2 flavor=hyperaffine max-arity=3 enum-cap=1000000", 0) == 0);
  CHECK(r.out == run({"theory", "verify", "--ring", "bool:2", "--flavor", "hyperaffine", "--max-arity", "3"}).out);
}

TEST_CASE("theory roundtrip") {
  const Result r = run({"theory", "roundtrip", "--ring", "zmod:4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("iso 2 -> [2,3]@A(zmod:4)") != std::string::npos);
  CHECK(r.out.find("PASS embedding-ring-isomorphism") != std::string::npos);
}

TEST_CASE("ite") {
  const Result e = run({"ite", "equiv", "--ring", "bool:2", "--arity", "4", "ite({s},ite({s},x1,x2),ite({s},x3,x4))",
                        "ite({s},x1,x4)"});
  CHECK(e.code == 0);
  CHECK(e.out.find("\nEQUIV\n") != std::string::npos);
  const Result ne = run({"ite", "equiv", "--ring", "bool:2", "--arity", "2", "x1", "x2"});
  CHECK(ne.code == 1);
  CHECK(ne.out.find("NOT-EQUIV at x1") != std::string::npos);
  const Result n = run({"ite", "normalize", "--ring", "bool:2", "ite({s}, x1, ite({s}, x2, x3))"});
  CHECK(n.code == 0);
  CHECK(n.out.find("\nite({s}, x1, x3)\n") != std::string::npos);
  CHECK(run({"ite", "normalize", "--ring", "bool:2", "ite({u}, x1, x2)"}).code == 2);
}

TEST_CASE("malcev search") {
  const Result z3 = run({"malcev", "search", "--ring", "zmod:3"});
  CHECK(z3.code == 0);
  CHECK(z3.out.find("verdict found") != std::string::npos);
  CHECK(run({"malcev", "search", "--ring", "zmod:2"}).out.find("verdict exhausted") != std::string::npos);
}

TEST_CASE("ring info and nba check") {
  const Result r = run({"ring", "info", "--ring", "bool:2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS ring-axioms") != std::string::npos);
  const Result n = run({"nba", "check", "--ring", "bool:1", "--dim", "2"});
  CHECK(n.code == 0);
  CHECK(n.out.find("psi=ok") != std::string::npos);
}

TEST_CASE("model commands") {
  const std::string good = temp_model(canonical_bset({make_powerset_boolean(2), {2, 3}, std::nullopt}), "good");
  const Result c = run({"model", "check", good});
  CHECK(c.code == 0);
  CHECK(c.out.find("PASS B5") != std::string::npos);
  const Result d = run({"model", "decompose", good});
  CHECK(d.code == 0);
  CHECK(d.out.find("stalk {s} size=2") != std::string::npos);
  CHECK(d.out.find("stalk {t} size=3") != std::string::npos);

  FiniteModel broken = canonical_bset({make_powerset_boolean(2), {2, 3}, std::nullopt});
  broken.action[1][0] = 1;
  const std::string bad = temp_model(broken, "bad");
  const Result f = run({"model", "check", bad});
  CHECK(f.code == 1);
  CHECK(f.out.find("FAIL B1 at") != std::string::npos);
  CHECK(run({"model", "decompose", bad}).code == 1);

  const std::string reg = temp_model(regular_model(make_powerset_boolean(2)), "reg");
  const Result v = run({"model", "decompose", reg, "--o", "0"});
  CHECK(v.code == 0);
  CHECK(v.out.find("PASS group-isomorphism") != std::string::npos);
  const Result s = run({"model", "check", reg, "--suite", "vect", "--o", "0"});
  CHECK(s.code == 0);
  CHECK(s.out.find("PASS comb") != std::string::npos);

  std::ofstream("clonekit_test_ragged.model") << "model 2 over bool:1\naction 0 : 0 1\n";
  const Result p = run({"model", "check", "clonekit_test_ragged.model"});
  CHECK(p.code == 2);
  CHECK(p.err.find("line 2") != std::string::npos);
  for (const char* path : {"clonekit_test_good.model", "clonekit_test_bad.model", "clonekit_test_reg.model",
                           "clonekit_test_ragged.model"})
    std::remove(path);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"theory"}).code == 2);
  CHECK(run({"theory", "verify", "--bogus"}).code == 2);
  CHECK(run({"theory", "verify", "--ring", "bool:4"}).code == 2);
  CHECK(run({"theory", "verify", "--ring", "bool:4", "--max-ring-size", "16", "--max-arity", "1"}).code == 0);
  CHECK(run({"theory", "verify", "--ring", "zmod:"}).code == 2);
  CHECK(run({"theory", "verify", "--flavor", "weird"}).code == 2);
  CHECK(run({"theory", "verify", "--enum-cap", "abc"}).code == 2);
  CHECK(run({"model", "check", "/nonexistent.model"}).code == 2);
  const Result h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("theory") != std::string::npos);
}

TEST_CASE("enum cap is respected and echoed") {
  const Result r = run({"theory", "verify", "--ring", "zmod:4", "--flavor", "affine", "--max-arity", "2",
                        "--enum-cap", "1e3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("enum-cap=1000 ") != std::string::npos);
  CHECK(run({"theory", "verify", "--ring", "zmod:4", "--enum-cap", "3"}).code == 2);
}
