#include <doctest.h>

#include "clonekit/action_models.hpp"
#include "clonekit/error.hpp"
#include "clonekit/model_io.hpp"

using namespace clonekit;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  FAIL("no error");
  return {};
}

}  // namespace

TEST_CASE("round trip") {
  const FiniteModel a = canonical_bset({make_powerset_boolean(2), {2, 3}, std::nullopt});
  CHECK(same_tables(parse_model(format_model(a)), a));
  FiniteModel r = regular_model(make_powerset_boolean(2));
  r.o = 0;
  const FiniteModel back = parse_model(format_model(r));
  CHECK(same_tables(back, r));
  CHECK(back.o == Elem{0});
  CHECK(format_model(back) == format_model(r));
  const FiniteModel z = regular_model(make_zmod(3));
  CHECK(same_tables(parse_model(format_model(z)), z));
}

TEST_CASE("comments and blank lines") {
  const FiniteModel m = parse_model(
      "# a one-element model\n"
      "\n"
      "model 1 over bool:1   # header\n"
      "action 1 : 0\n"
      "action 0 : 0\n");
  CHECK(m.size == 1);
  CHECK(m.action.size() == 2);
}

TEST_CASE("diagnostics carry line and column") {
  CHECK(parse_error("model 2 over bool:1\naction 0 : 0 1 0\naction 1 : 0 0 1 1\n").find("line 2, column 17") !=
        std::string::npos);
  CHECK(parse_error("model 2 over bool:1\naction 0 : 0 1 0 1 1\n").find("line 2, column 20") != std::string::npos);
  CHECK(parse_error("mdl 2 over bool:1\n").find("line 1, column 1") != std::string::npos);
  CHECK(parse_error("model 2 over bool:1\naction 0 : 0 1 0 1\n").find("missing action") != std::string::npos);
  CHECK(parse_error("model 2 over bool:1\naction 0 : 0 1 0 1\naction 0 : 0 1 0 1\n").find("duplicate") !=
        std::string::npos);
  CHECK(parse_error("model 2 over bool:1\nfoo : 1\n").find("unknown directive") != std::string::npos);
  CHECK(parse_error("model 2 over bool:1\naction 0 : 0 1 0 7\n").find("outside carrier") != std::string::npos);
  CHECK(parse_error("model 2 over bool:1\naction 0 0 1 0 1\n").find("expected ':'") != std::string::npos);
  CHECK(parse_error("model 2 over nope:1\n").find("line 1, column 14") != std::string::npos);
  CHECK(parse_error("").find("missing 'model' header") != std::string::npos);
}
