#include <doctest.h>

#include "clonekit/error.hpp"
#include "clonekit/ite.hpp"
#include "support/oracles.hpp"

using namespace clonekit;

namespace {

const BooleanView& b2() {
  static const BooleanView v = boolean_view(make_powerset_boolean(2));
  return v;
}

Expr p(const std::string& s, std::size_t n = 4) { return parse_expr(s, b2(), n); }

ErrorCode code_of(const std::string& s, std::size_t n = 4) {
  try {
    p(s, n);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << s);
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("parse") {
  const Expr e = p("ite({s}, x1, x2)");
  REQUIRE(e.kind() == Expr::Kind::Ite);
  CHECK(e.guard() == 0b01);
  CHECK(e.then_branch() == Expr::var(1));
  CHECK(e.else_branch() == Expr::var(2));
  CHECK(p("ite({s,t}, x1, x2)").guard() == 0b11);
  CHECK(p("ite({t,s}, x1, x2)").guard() == 0b11);
  CHECK(p("ite({}, x1, x2)").guard() == 0);
  CHECK(p("ite(#2, x1, x2)").guard() == 0b10);
  CHECK(p("ite(1, x1, x2)").guard() == 0b11);
  CHECK(p("ite(0,x1,x2)").guard() == 0);
  CHECK(p("ite({s}, x1, ite({s}, x2, x3))") ==
        Expr::ite(0b01, Expr::var(1), Expr::ite(0b01, Expr::var(2), Expr::var(3))));
  CHECK(p("  x3 ") == Expr::var(3));
}

TEST_CASE("parse errors") {
  CHECK(code_of("ite({u}, x1, x2)") == ErrorCode::UnknownAtom);
  CHECK(code_of("ite(#4, x1, x2)") == ErrorCode::UnknownAtom);
  CHECK(code_of("x5") == ErrorCode::VarOutOfRange);
  CHECK(code_of("x0") == ErrorCode::VarOutOfRange);
  CHECK(code_of("ite({s}, x1)") == ErrorCode::ParseError);
  CHECK(code_of("ite({s} x1, x2)") == ErrorCode::ParseError);
  CHECK(code_of("x1 x2") == ErrorCode::ParseError);
  CHECK(code_of("y1") == ErrorCode::ParseError);
  CHECK(code_of("") == ErrorCode::ParseError);
  CHECK(code_of("q({s},{s}; x1, x2)") == ErrorCode::NotPartitionOfUnity);
  CHECK(code_of("q({s}; x1)") == ErrorCode::NotPartitionOfUnity);
  CHECK(code_of("q({s},{t}; x1)") == ErrorCode::ParseError);
  try {
    p("ite({s}, x1 x2)");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("column 13") != std::string::npos);
  }
}

TEST_CASE("q selectors desugar to chains") {
  const Expr e = p("q({s},{t},{}; x1, x2, x3)", 3);
  CHECK(e == Expr::ite(0b01, Expr::var(1), Expr::ite(0b11, Expr::var(2), Expr::var(3))));
  CHECK(eval_to_operation(e, b2(), 3).coeffs == std::vector<Elem>{0b01, 0b10, 0});
  CHECK(p("q(1; x2)") == Expr::var(2));
}

TEST_CASE("eval_to_operation") {
  CHECK(eval_to_operation(p("ite({s}, x1, ite({s}, x2, x3))", 3), b2(), 3).coeffs ==
        std::vector<Elem>{0b01, 0, 0b10});
  CHECK(eval_to_operation(p("x2", 3), b2(), 3).coeffs == std::vector<Elem>{0, 0b11, 0});
  CHECK(eval_to_operation(p("ite(1, x1, x2)", 2), b2(), 2).coeffs == std::vector<Elem>{0b11, 0});
  CHECK_THROWS_AS(eval_to_operation(Expr::var(3), b2(), 2), Error);
}

TEST_CASE("normalize") {
  const Expr n = normalize(p("ite({s}, x1, ite({s}, x2, x3))", 3), b2(), 3);
  CHECK(print_expr(n, b2()) == "ite({s}, x1, x3)");
  for (std::size_t i = 1; i <= 4; ++i) CHECK(normalize(Expr::var(i), b2(), 4) == Expr::var(i));
  CHECK(normalize(p("ite({}, x1, x2)"), b2(), 2) == Expr::var(2));
  CHECK(print_expr(normalize(p("q({s},{},{t}; x3, x1, x2)", 3), b2(), 3), b2()) == "ite({t}, x2, x3)");
}

TEST_CASE("equiv") {
  CHECK(equiv(p("ite({s}, ite({t},x1,x2), ite({t},x3,x4))"), p("ite({t}, ite({s},x1,x3), ite({s},x2,x4))"), b2(), 4));
  CHECK(equiv(p("ite({s}, ite({s},x1,x2), ite({s},x3,x4))"), p("ite({s},x1,x4)"), b2(), 4));
  CHECK(!equiv(p("x1", 2), p("x2", 2), b2(), 2));
}

TEST_CASE("commutation and splitting over all guard pairs") {
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      const std::string ga = guard_literal(a, b2()), gb = guard_literal(b, b2());
      CHECK(equiv(p("ite(" + ga + ", ite(" + gb + ",x1,x2), ite(" + gb + ",x3,x4))"),
                  p("ite(" + gb + ", ite(" + ga + ",x1,x3), ite(" + ga + ",x2,x4))"), b2(), 4));
    }
}

TEST_CASE("Dicker axioms") {
  for (unsigned k = 0; k <= 3; ++k) {
    const Report r = check_dicker_axioms(boolean_view(make_powerset_boolean(k)));
    CHECK(r.ok());
    CHECK(r.lines().size() == 6);
  }
}

TEST_CASE("corpus properties") {
  SplitMix64 rng(2024);
  for (unsigned atoms = 1; atoms <= 3; ++atoms) {
    const BooleanView v = boolean_view(make_powerset_boolean(atoms));
    for (int i = 0; i < 150; ++i) {
      const std::size_t arity = 1 + rng.below(4);
      const Expr e = oracle::random_expr(rng, atoms, arity, 6);
      const NormalForm nf = eval_to_operation(e, v, arity);
      Elem sum = 0;
      for (std::size_t a = 0; a < arity; ++a) {
        for (std::size_t b = a + 1; b < arity; ++b) CHECK((nf.coeffs[a] & nf.coeffs[b]) == 0);
        sum ^= nf.coeffs[a];
      }
      CHECK(sum == v.ring().one());
      const Expr n = normalize(e, v, arity);
      CHECK(eval_to_operation(n, v, arity) == nf);
      CHECK(normalize(n, v, arity) == n);
      CHECK(parse_expr(print_expr(n, v), v, arity) == n);
      CHECK(parse_expr(print_expr(e, v), v, arity) == e);
      CHECK(oracle::semantically_equal(e, n, atoms, arity));
      // chain shape: increasing variables, nonzero guards
      std::size_t last = 0;
      const Expr* cur = &n;
      while (cur->kind() == Expr::Kind::Ite) {
        CHECK(cur->guard() != 0);
        CHECK(cur->then_branch().kind() == Expr::Kind::Var);
        CHECK(cur->then_branch().index() > last);
        last = cur->then_branch().index();
        cur = &cur->else_branch();
      }
      CHECK(cur->index() > last);
    }
  }
}

TEST_CASE("equiv agrees with the semantic oracle") {
  SplitMix64 rng(5);
  const BooleanView v = boolean_view(make_powerset_boolean(2));
  int equal = 0;
  for (int i = 0; i < 400; ++i) {
    const Expr a = oracle::random_expr(rng, 2, 2, 3);
    const Expr b = oracle::random_expr(rng, 2, 2, 3);
    const bool e = equiv(a, b, v, 2);
    equal += e;
    CHECK(e == oracle::semantically_equal(a, b, 2, 2));
  }
  CHECK(equal > 0);
}
