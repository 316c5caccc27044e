#pragma once

// Finite sets with a binary action b(x,y) of a ring, optionally with a
// ternary p, a base point o and an addition table, plus the axiom suites
// that separate models of H_B from models of A_B.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clonekit/finite_ring.hpp"
#include "clonekit/report.hpp"
#include "clonekit/theory.hpp"

namespace clonekit {

struct FiniteModel {
  FiniteRing ring;
  std::size_t size = 0;
  std::vector<std::vector<Elem>> action;  // action[b][x * size + y]
  std::optional<std::vector<Elem>> p;     // p[(x * size + y) * size + z]
  std::optional<Elem> o;
  std::optional<std::vector<Elem>> add;   // add[x * size + y]

  Elem act(Elem b, Elem x, Elem y) const { return action[b][x * size + y]; }
  Elem p3(Elem x, Elem y, Elem z) const { return (*p)[(x * size + y) * size + z]; }
  Elem plus(Elem x, Elem y) const { return (*add)[x * size + y]; }

  // Table shapes and ranges (InvalidArgument / IndexOutOfRange).
  void validate() const;
};

bool same_tables(const FiniteModel& a, const FiniteModel& b);

// Per-atom stalks. With `group` set, stalk s carries an exponent-2 group
// given by group[s][u * |S_s| + v] with zero 0.
struct SheafData {
  FiniteRing ring;
  std::vector<std::size_t> stalks;
  std::optional<std::vector<std::vector<Elem>>> group;
};

// B1..B5, Boolean rings only.
Report check_b_axioms(const FiniteModel& m);
// R1..R4, and R5 when asked.
Report check_r_axioms(const FiniteModel& m, bool include_r5);
// A1..A4 (A2 is split into p-self and p-action).
Report check_a_axioms(const FiniteModel& m);
Report check_l1(const FiniteModel& m);
// (X, +, o) an abelian group with x + x = o.
Report check_group(const FiniteModel& m, Elem o);
// b(x,y) = b(x,o) + (1-b)(y,o)
Report check_comb(const FiniteModel& m, Elem o);

// Carrier = product of stalks in mixed radix, first atom most significant.
// Atom s coordinate of b(x,y) is x_s when s <= b, else y_s. Group stalks add
// the componentwise sum, o = 0 and p = x + y + z.
FiniteModel canonical_bset(const SheafData& s);

// Mixed-radix helpers for canonical carriers.
std::vector<Elem> stalk_coordinates(const SheafData& s, Elem x);
Elem stalk_index(const SheafData& s, const std::vector<Elem>& coords);

struct Decomposition {
  SheafData sheaf;
  std::vector<std::vector<Elem>> classes;  // classes[atom][x]
  std::vector<Elem> iso;                   // x -> element of canonical_bset(sheaf)
  Report checks;
};

// Stalk at atom s: X modulo x ~ y iff s(x,y) = y, classes labeled by first
// appearance (starting from `first` when given).
Decomposition decompose_to_stalks(const FiniteModel& m, std::optional<Elem> first = std::nullopt);

// X = R acting on itself: a(x,y) = ax + (1-a)y, p(x,y,z) = x - y + z and
// + the ring addition. No base point.
FiniteModel regular_model(const FiniteRing& r);

// X = T(m) acting through composition: b(x,y) = (b,1-b) o (x,y), and p the
// Mal'cev operation when the theory is affine.
FiniteModel free_model(const Theory& t, std::size_t m, std::uint64_t cap = kDefaultEnumerationCap);

// x + y = p(x, o, y). Needs R1..R4 and A1..A4 (SuiteFailed).
FiniteModel vector_space_from_affine_model(const FiniteModel& m, Elem o);
// p(x,y,z) = x + y + z. Needs the group laws, R1..R4 and L1 (SuiteFailed).
FiniteModel affine_model_from_vector_space(const FiniteModel& m);

struct VectDecomposition {
  Decomposition decomposition;  // sheaf carries group stalks
  Report checks;
};
// Suites of the vector-space characterization, then comb, R5, the stalk
// decomposition and a group structure on each stalk.
VectDecomposition vect_sheaf_decompose(const FiniteModel& m, Elem o);

struct ProbeResult {
  Report report;
  std::size_t models = 0;
  std::size_t both_pass = 0;
  std::size_t both_fail = 0;
  std::size_t disagreements = 0;
};
// B1..B5 against R1..R5 on every canonical model with at most carrier_size
// elements and on `samples` seeded tables: a third uniformly random, a third
// with 1, 0 and the diagonal fixed, a third single-entry mutations of
// canonical models.
ProbeResult axiom_equivalence_probe(const FiniteRing& ring, std::size_t carrier_size,
                                    std::size_t samples, std::uint64_t seed);

}  // namespace clonekit
