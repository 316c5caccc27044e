#include <doctest.h>

#include "clonekit/error.hpp"
#include "clonekit/finite_ring.hpp"
#include "support/oracles.hpp"

using namespace clonekit;

namespace {

bool scan_ok(const FiniteRing& r) {
  return ring_axiom_violations(r.size(), r.add_table(), r.mul_table(), r.zero(), r.one()).empty();
}

std::vector<FiniteRing> sample_rings() {
  std::vector<FiniteRing> out;
  for (unsigned n = 1; n <= 8; ++n) out.push_back(make_zmod(n));
  for (unsigned k = 0; k <= 4; ++k) out.push_back(make_powerset_boolean(k));
  out.push_back(product_ring(make_zmod(2), make_zmod(3)));
  out.push_back(product_ring(make_zmod(2), make_zmod(2)));
  out.push_back(product_ring(make_powerset_boolean(1), make_zmod(4)));
  return out;
}

}  // namespace

TEST_CASE("zmod arithmetic against the modular oracle") {
  for (unsigned n = 1; n <= 8; ++n) {
    const FiniteRing r = make_zmod(n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        CHECK(r.add(a, b) == oracle::mod(a + b, n));
        CHECK(r.mul(a, b) == oracle::mod(static_cast<long long>(a) * b, n));
      }
  }
  const FiniteRing z4 = make_zmod(4);
  CHECK(z4.add(2, 3) == 1);
  CHECK(z4.mul(2, 3) == 2);
  CHECK(make_zmod(1).is_degenerate());
  CHECK(!make_zmod(2).is_degenerate());
}

TEST_CASE("powerset Boolean rings") {
  CHECK(make_powerset_boolean(0).is_degenerate());
  const FiniteRing b2 = make_powerset_boolean(2);
  CHECK(b2.size() == 4);
  CHECK(b2.add(0b01, 0b10) == 0b11);
  CHECK(b2.mul(0b01, 0b10) == 0);
  for (Elem r = 0; r < 4; ++r) CHECK(b2.mul(r, r) == r);
  CHECK(b2.kind() == RingKind::PowersetBoolean);
  CHECK(b2.kind_param() == 2);
}

TEST_CASE("products") {
  const FiniteRing z2 = make_zmod(2);
  const FiniteRing p = product_ring(z2, z2);
  CHECK(p.size() == 4);
  // (x, y) -> mask with bit 0 = x, bit 1 = y
  std::vector<Elem> pairing(4);
  for (Elem e = 0; e < 4; ++e) pairing[e] = (e / 2) | ((e % 2) << 1);
  CHECK(is_ring_isomorphism(p, make_powerset_boolean(2), pairing));
  CHECK(product_ring(make_zmod(2), make_zmod(3)).size() == 6);
  const FiniteRing z3 = make_zmod(3);
  const FiniteRing with_trivial = product_ring(z3, make_zmod(1));
  CHECK(is_ring_isomorphism(with_trivial, z3, std::vector<Elem>{0, 1, 2}));
}

TEST_CASE("predicates") {
  CHECK(is_boolean(make_powerset_boolean(3)));
  CHECK(!is_boolean(make_zmod(4)));
  CHECK(is_commutative(make_zmod(6)));
  CHECK(is_boolean(make_zmod(2)));
  CHECK(!is_boolean(make_zmod(3)));
}

TEST_CASE("constructor postcondition: full axiom scan") {
  for (const FiniteRing& r : sample_rings()) {
    INFO(r.spec());
    CHECK(scan_ok(r));
  }
}

TEST_CASE("from_tables rejects broken tables") {
  std::vector<Elem> add{0, 1, 1, 0};
  std::vector<Elem> mul{0, 0, 0, 0};  // 1 * 1 = 0
  CHECK_THROWS_AS(FiniteRing::from_tables(2, add, mul, 0, 1), Error);
  const auto bad = ring_axiom_violations(2, add, mul, 0, 1);
  CHECK(!bad.empty());
}

TEST_CASE("boolean view") {
  const BooleanView v = boolean_view(make_powerset_boolean(2));
  REQUIRE(v.atoms().size() == 2);
  CHECK(v.atoms()[0] == 0b01);
  CHECK(v.atoms()[1] == 0b10);
  CHECK(v.join(0b01, 0b10) == 0b11);
  CHECK(v.negate(0b01) == 0b10);
  CHECK(v.negate(0b01) == (0b01 ^ 0b11));
  CHECK_THROWS_AS(boolean_view(make_zmod(4)), Error);
  try {
    boolean_view(make_zmod(3));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotBoolean);
  }
}

TEST_CASE("boolean laws on derived tables") {
  for (unsigned k = 0; k <= 3; ++k) {
    const BooleanView v = boolean_view(make_powerset_boolean(k));
    const FiniteRing& r = v.ring();
    const Elem n = static_cast<Elem>(r.size());
    for (Elem a = 0; a < n; ++a) {
      CHECK(v.negate(v.negate(a)) == a);
      CHECK(v.join(a, v.negate(a)) == r.one());
      CHECK(v.meet(a, v.negate(a)) == r.zero());
      for (Elem b = 0; b < n; ++b) {
        CHECK(v.meet(a, b) == v.meet(b, a));
        CHECK(v.join(a, b) == v.join(b, a));
        CHECK(v.meet(a, v.join(a, b)) == a);
        CHECK(v.negate(v.meet(a, b)) == v.join(v.negate(a), v.negate(b)));
        if (r.mul(a, b) == r.zero()) CHECK(r.add(a, b) == v.join(a, b));
        for (Elem c = 0; c < n; ++c) CHECK(v.meet(a, v.join(b, c)) == v.join(v.meet(a, b), v.meet(a, c)));
      }
    }
  }
}

TEST_CASE("atoms decompose every element") {
  for (const FiniteRing& r : {make_powerset_boolean(3), product_ring(make_zmod(2), make_powerset_boolean(2))}) {
    const BooleanView v = boolean_view(r);
    const std::size_t k = v.atoms().size();
    CHECK((std::size_t{1} << k) == r.size());
    std::vector<bool> hit(r.size(), false);
    for (Elem e = 0; e < r.size(); ++e) {
      const std::uint64_t mask = v.atoms_below(e);
      CHECK(mask < (std::uint64_t{1} << k));
      CHECK(!hit[mask]);
      hit[mask] = true;
      CHECK(v.from_atom_mask(mask) == e);
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j) CHECK(v.meet(v.atoms()[i], v.atoms()[j]) == r.zero());
  }
}

TEST_CASE("homs to F2") {
  CHECK(homs_to_f2(make_zmod(3)).empty());
  const auto z2 = homs_to_f2(make_zmod(2));
  REQUIRE(z2.size() == 1);
  CHECK(z2[0] == HomToF2{0, 1});
  CHECK(homs_to_f2(make_powerset_boolean(2)).size() == 2);
  CHECK(homs_to_f2(make_zmod(1)).empty());
  for (unsigned k = 1; k <= 3; ++k) CHECK(homs_to_f2(make_powerset_boolean(k)).size() == k);
  CHECK(homs_to_f2(make_zmod(6)).size() == 1);
  CHECK(homs_to_f2(make_zmod(4)).size() == 1);
  CHECK_THROWS_AS(homs_to_f2(make_zmod(17)), Error);
}

TEST_CASE("ring specs") {
  CHECK(parse_ring_spec("zmod:4").size() == 4);
  CHECK(parse_ring_spec("bool:3").size() == 8);
  CHECK(parse_ring_spec("prod(zmod:2,zmod:3)").size() == 6);
  CHECK(parse_ring_spec("prod(bool:1,prod(zmod:2,zmod:2))").size() == 8);
  for (const char* bad : {"", "zmod:", "zmod:0", "bool:x", "ring:3", "prod(zmod:2)", "prod(zmod:2,zmod:3"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_ring_spec(bad), Error);
  }
}

TEST_CASE("format is stable") {
  const std::string a = format_ring(make_powerset_boolean(2));
  CHECK(a == format_ring(make_powerset_boolean(2)));
  CHECK(a.find("atoms") != std::string::npos);
  CHECK(format_ring(make_zmod(3)).find("atoms") == std::string::npos);
}
