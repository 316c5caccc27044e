#include <doctest.h>

#include "clonekit/error.hpp"
#include "clonekit/nba.hpp"
#include "clonekit/random.hpp"

using namespace clonekit;

namespace {

TheoryNBA h_nba(unsigned k, std::size_t n) { return nba_from_theory(Theory::hyperaffine(make_powerset_boolean(k)), n); }

Elem index_of(const TheoryNBA& tn, const std::vector<Elem>& coeffs) {
  for (Elem i = 0; i < tn.carrier.size(); ++i) {
    const auto c = tn.carrier[i].coeffs();
    if (std::equal(c.begin(), c.end(), coeffs.begin(), coeffs.end())) return i;
  }
  FAIL("not in carrier");
  return 0;
}

}  // namespace

TEST_CASE("T(3) of H(bool:2) as a 3BA") {
  const TheoryNBA tn = h_nba(2, 3);
  const NBA& a = tn.nba;
  CHECK(a.size() == 9);
  CHECK(a.dimension() == 3);
  CHECK(a.dense());
  CHECK(a.table().size() == 9 * 9 * 9 * 9);
  for (std::size_t i = 1; i <= 3; ++i) CHECK(tn.carrier[a.e(i)] == projection(tn.theory, 3, i));
  const Report r = check_axioms(a);
  INFO(r.render());
  CHECK(r.ok());
  CHECK(r.lines().size() == 5);
  // q is composition
  for (Elem x = 0; x < 9; ++x)
    for (Elem y = 0; y < 9; ++y) {
      const std::vector<Elem> bs{y, x, y};
      const std::vector<Operation> gs{tn.carrier[y], tn.carrier[x], tn.carrier[y]};
      CHECK(tn.carrier[a.q(x, bs)] == compose(tn.carrier[x], gs));
    }
}

TEST_CASE("H1 and H5 by direct evaluation") {
  const NBA a = h_nba(2, 3).nba;
  for (Elem y = 0; y < a.size(); ++y) CHECK(a.q(y, {a.e(1), a.e(2), a.e(3)}) == y);
  for (Elem x1 = 0; x1 < a.size(); ++x1)
    for (Elem x2 = 0; x2 < a.size(); ++x2)
      for (std::size_t i = 1; i <= 3; ++i) {
        const std::vector<Elem> xs{x1, x2, x1};
        CHECK(a.q(a.e(i), xs) == xs[i - 1]);
      }
}

TEST_CASE("every single-entry mutation of a small table is caught") {
  const NBA a = h_nba(1, 2).nba;  // 2 elements, 8 entries
  REQUIRE(a.dense());
  for (std::size_t idx = 0; idx < a.table().size(); ++idx) {
    const Elem v = a.table()[idx];
    const NBA m = a.with_entry(idx, v ^ 1);
    CHECK(!check_axioms(m).ok());
  }
}

TEST_CASE("seeded mutations of T(3) are caught") {
  const NBA a = h_nba(2, 3).nba;
  SplitMix64 rng(42);
  for (int i = 0; i < 10; ++i) {
    const std::size_t idx = rng.below(a.table().size());
    const Elem old = a.table()[idx];
    const Elem v = static_cast<Elem>((old + 1 + rng.below(a.size() - 1)) % a.size());
    CHECK(!check_axioms(a.with_entry(idx, v)).ok());
  }
}

TEST_CASE("sampling tag when the scan is too large") {
  const NBA a = h_nba(2, 3).nba;
  const Report r = check_axioms(a, NbaCheckOptions{1000, 500, 9});
  CHECK(r.ok());
  CHECK(r.find("H4[sampled:500,seed:9]") != nullptr);
}

TEST_CASE("virtual NBA") {
  const TheoryNBA tn = h_nba(3, 3);
  CHECK(tn.nba.size() == 27);
  CHECK(!tn.nba.dense());
  CHECK_THROWS_AS(tn.nba.with_entry(0, 0), Error);
}

TEST_CASE("coordinates") {
  const TheoryNBA tn = h_nba(2, 3);
  const NBA& a = tn.nba;
  for (std::size_t i = 1; i <= 3; ++i) {
    const auto c = coordinates(a, a.e(i));
    for (std::size_t j = 0; j < 3; ++j) CHECK(c[j] == (j + 1 == i ? a.e(1) : a.e(2)));
  }
  const Elem f = index_of(tn, {0b01, 0b10, 0});
  const auto c = coordinates(a, f);
  // coordinate 1 of ({s},{t},{}) is ({s}, not {s}) lifted to T(3)
  CHECK(tn.carrier[c[0]] == Operation(tn.theory, {0b01, 0b10, 0}));
  const CoordinateAlgebra ca = coordinate_algebra(a);
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y : coordinates(a, x)) CHECK(ca.index_of(y).has_value());
}

TEST_CASE("coordinate algebra") {
  const CoordinateAlgebra ca = coordinate_algebra(h_nba(2, 3).nba);
  CHECK(ca.elements.size() == 4);
  REQUIRE(ca.ring.has_value());
  CHECK(ca.checks.ok());
  CHECK(coordinate_isomorphism(ca, make_powerset_boolean(2)).has_value());
  CHECK(!coordinate_isomorphism(ca, make_powerset_boolean(1)).has_value());

  const CoordinateAlgebra c1 = coordinate_algebra(h_nba(1, 2).nba);
  REQUIRE(c1.ring.has_value());
  const auto iso = coordinate_isomorphism(c1, make_powerset_boolean(1));
  REQUIRE(iso.has_value());
  CHECK(is_ring_isomorphism(*c1.ring, make_powerset_boolean(1), *iso));

  const NBA one = NBA::from_table(1, 2, {0}, {0, 0});
  const CoordinateAlgebra c0 = coordinate_algebra(one);
  CHECK(c0.elements.size() == 1);
  CHECK(check_axioms(one).ok());
}

TEST_CASE("psi") {
  const TheoryNBA tn = h_nba(2, 3);
  const PsiResult psi = psi_reconstruct(tn.nba, tn.theory);
  CHECK(psi.verdict == PsiResult::Verdict::Ok);
  CHECK(psi.report.ok());
  REQUIRE(psi.image.size() == 9);
  for (Elem x = 0; x < 9; ++x) CHECK(psi.image[x] == tn.carrier[x]);
  for (std::size_t i = 1; i <= 3; ++i) CHECK(psi.image[tn.nba.e(i)] == projection(tn.theory, 3, i));

  const PsiResult wrong = psi_reconstruct(tn.nba, Theory::hyperaffine(make_powerset_boolean(1)));
  CHECK(wrong.verdict == PsiResult::Verdict::NotIsomorphic);

  const NBA mutated = tn.nba.with_entry(tn.nba.table_index(3, std::vector<Elem>{4, 5, 6}), 0);
  const PsiResult bad = psi_reconstruct(mutated, tn.theory);
  CHECK(bad.verdict != PsiResult::Verdict::Ok);
  CHECK(!bad.counterexample.empty());
}

TEST_CASE("transport") {
  const TheoryNBA tn = h_nba(2, 3);
  const Report r = transport_axioms(tn.nba, tn.theory);
  CHECK(r.ok());
  CHECK(r.passed("H4[free-model:6561]"));
  CHECK(transport_axioms(h_nba(3, 3).nba, Theory::hyperaffine(make_powerset_boolean(3))).ok());
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(NBA::from_table(2, 2, {0, 1}, {0, 1}), Error);
  CHECK_THROWS_AS(NBA::from_table(2, 2, std::vector<Elem>(8, 2), {0, 1}), Error);
  CHECK_THROWS_AS(NBA::from_table(2, 2, std::vector<Elem>(8, 0), {0, 5}), Error);
  CHECK(format_nba(h_nba(1, 2).nba) == format_nba(h_nba(1, 2).nba));
}
