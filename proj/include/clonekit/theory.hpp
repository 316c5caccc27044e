#pragma once

// Algebraic theories over a finite ring, with operations stored as
// coefficient vectors and composition as matrix multiplication:
//
//   f o (g_1, ..., g_n) = (sum_i g_i[1] f[i], ..., sum_i g_i[m] f[i])
//
// Identities are decided in the free model: T(k) is the free model on k
// generators, so an identity in variables x_1..x_k holds iff both sides,
// built by composing against the projections of T(k), are equal vectors.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clonekit/finite_ring.hpp"
#include "clonekit/report.hpp"

namespace clonekit {

enum class Flavor { FullModule, Affine, Hyperaffine, DegenerateU, DegenerateUPrime };

std::string_view flavor_name(Flavor f) noexcept;

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

class Theory {
 public:
  // Affine/FullModule need a commutative ring; Hyperaffine a Boolean one.
  static Theory full_module(FiniteRing ring);
  static Theory affine(FiniteRing ring);
  static Theory hyperaffine(FiniteRing ring);
  // The terminal theory U (one operation per arity) and its subtheory U'
  // (empty at arity 0). Both are carried by the degenerate ring.
  static Theory degenerate_u();
  static Theory degenerate_u_prime();

  const FiniteRing& ring() const noexcept { return ring_; }
  Flavor flavor() const noexcept { return flavor_; }

  // Degenerate when the coefficient ring is (so H_B for degenerate B is U).
  bool is_degenerate() const noexcept { return ring_.is_degenerate(); }

  // Membership constraint of T(n) for a coefficient vector.
  bool contains(std::span<const Elem> coeffs) const;

  // H(bool:2), A(zmod:4), T(zmod:4), U, U'
  std::string name() const;

  friend bool operator==(const Theory& a, const Theory& b) noexcept {
    return a.flavor_ == b.flavor_ && a.ring_.same_tables(b.ring_);
  }

 private:
  Theory(FiniteRing ring, Flavor flavor) : ring_(std::move(ring)), flavor_(flavor) {}

  FiniteRing ring_;
  Flavor flavor_;
};

class Operation {
 public:
  // Throws NotMember when the vector violates the theory's constraint.
  Operation(Theory theory, std::vector<Elem> coeffs);

  std::size_t arity() const noexcept { return coeffs_.size(); }
  std::span<const Elem> coeffs() const noexcept { return coeffs_; }
  Elem operator[](std::size_t i) const noexcept { return coeffs_[i]; }
  const Theory& theory() const noexcept { return theory_; }

  friend bool operator==(const Operation& a, const Operation& b) noexcept {
    return a.coeffs_ == b.coeffs_ && a.theory_ == b.theory_;
  }
  // Lexicographic in coefficient index; only meaningful within one theory.
  friend std::strong_ordering operator<=>(const Operation& a, const Operation& b) noexcept {
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() <=> b.coeffs_.size();
    return a.coeffs_ <=> b.coeffs_;
  }

 private:
  struct Unchecked {};
  Operation(Theory theory, std::vector<Elem> coeffs, Unchecked)
      : theory_(std::move(theory)), coeffs_(std::move(coeffs)) {}
  friend Operation compose(const Operation&, std::span<const Operation>, std::size_t);

  Theory theory_;
  std::vector<Elem> coeffs_;
};

// [c1,c2,...]@<theory>, coefficients printed with ring labels.
std::string to_string(const Operation& op);

// pi^n_i; i is 1-based.
Operation projection(const Theory& t, std::size_t n, std::size_t i);
std::vector<Operation> projections(const Theory& t, std::size_t n);

// f o (g_1..g_n) into T(m). With gs empty the target arity is `m`;
// otherwise m must match the arity of every g (ArityMismatch).
// The composite is re-checked against the membership constraint.
Operation compose(const Operation& f, std::span<const Operation> gs, std::size_t m);
Operation compose(const Operation& f, std::span<const Operation> gs);
inline Operation compose(const Operation& f, std::initializer_list<Operation> gs) {
  return compose(f, std::span<const Operation>(gs.begin(), gs.size()));
}

// |T(n)|, saturating at UINT64_MAX.
std::uint64_t count_operations(const Theory& t, std::size_t n);

// Every member of T(n) once, ascending lexicographically; EnumerationTooLarge past cap.
std::vector<Operation> enumerate(const Theory& t, std::size_t n,
                                 std::uint64_t cap = kDefaultEnumerationCap);

bool is_idempotent(const Operation& f);
bool splits(const Operation& f);
bool commute(const Operation& f, const Operation& g);
bool is_malcev(const Operation& p);

// (1, -1, 1) in T(3).
Operation malcev_operation(const Theory& t);
std::vector<Operation> malcev_operations(const Theory& t);

// One instance of the distributive identity
//   f(g_1..g_k) o (f(x^1_1..x^k_1), ..., f(x^1_n..x^k_n)) = f(g_1(x^1_.), ..., g_k(x^k_.))
// with every g of arity n, evaluated in the free model T(k*n).
bool c5_instance_holds(const Operation& f, std::span<const Operation> gs, std::size_t n);

enum class C5Route { Auto, Generic, Packed };

// All f of arity k <= max_arity against all tuples in T(n)^k, n <= max_arity.
// One line per (k, n); a FAIL line carries the lexicographically first
// violating instance. Packed scans powerset rings with the bitmask kernels;
// Generic composes operation vectors.
Report check_c5(const Theory& t, std::size_t max_arity, C5Route route = C5Route::Auto,
                std::uint64_t cap = kDefaultEnumerationCap);
// Whether the identity holds for this f against all tuples of arity n.
bool c5_holds_for(const Operation& f, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap);
bool packed_c5_applicable(const Theory& t, std::size_t max_arity);

// M1 on five generators and M2 on three.
Report check_m1_m2(const Theory& t, const Operation& p);

// f[i](x,y) = f(y,..,x,..,y) with x in slot i (1-based).
Operation coefficient(const Operation& f, std::size_t i);
std::vector<Operation> coefficients(const Operation& f);

// (r, 1-r) in T(2), and back.
Operation binary_of(const Theory& t, Elem r);
Elem element_of(const Operation& binary);

// Builds f with f[i] = (b_i, 1-b_i) by induction on n:
//   f(x_1..x_n) = b_1(x_1, g(x_2..x_n)), g with coefficients (b_1 + b_2, b_3, ..., b_n).
Operation reconstruct_hyperaffine(const Theory& t, std::span<const Elem> coeffs);
// Builds f with f[i] = (r_i, 1-r_i) by induction on n using the Mal'cev p:
//   f(x_1..x_n) = p(r_2(x_2,x_1), x_1, g(x_1, x_3..x_n)), g with (r_1 + r_2, r_3, ..., r_n).
Operation reconstruct_affine(const Theory& t, std::span<const Elem> coeffs);

// The ring carried by T(2). Affine: (a+b)(x,y) = p(a(x,y), y, b(x,y)),
// (a.b)(x,y) = a(b(x,y), y). Hyperaffine: the Boolean algebra
// a^b = a(b(x,y),y), avb = a(x,b(x,y)), ~a = a(y,x), read as a Boolean ring.
struct BinaryRing {
  FiniteRing ring;                 // carrier indices are positions in `carrier`
  std::vector<Operation> carrier;  // T(2), lexicographic
  std::vector<Elem> embedding;     // base element r -> index of (r, 1-r)
  Report verification;             // embedding checked as a ring isomorphism
};
BinaryRing ring_on_binary(const Theory& t);

// phi(f o gs) == phi(f)(phi(g_1), ..., phi(g_n)) for all f of arity <= max_n
// and gs of arity <= max_m, phi(f) = (f[1], ..., f[n]) computed in the ring T(2).
Report verify_phi_morphism(const Theory& t, std::size_t max_n, std::size_t max_m,
                           std::uint64_t cap = kDefaultEnumerationCap);

// Property suite for one theory: closure, unit laws, idempotence,
// commutation, and the flavor-specific checks, at arity <= max_arity.
Report verify_theory(const Theory& t, std::size_t max_arity,
                     std::uint64_t cap = kDefaultEnumerationCap);

// Round-trip suite: ring_on_binary isomorphism, coefficient/reconstruct
// inverses at arity <= max_arity, and verify_phi_morphism.
Report theory_roundtrip(const Theory& t, std::size_t max_arity,
                        std::uint64_t cap = kDefaultEnumerationCap);

struct MalcevSearch {
  enum class Verdict { Found, Exhausted, DepthCapReached };
  Verdict verdict = Verdict::DepthCapReached;
  std::string witness;      // term over x, y, z and binary operations r(-,-)
  unsigned depth = 0;       // depth of the witness, or depth at which the closure stabilized
  std::size_t closure_size = 0;
  std::size_t homs_to_f2 = 0;
  bool consistent = true;   // a witness may only exist when there is no hom to F2
};

std::string_view verdict_name(MalcevSearch::Verdict v) noexcept;

// Iterative deepening over terms built from x, y, z with the binary
// operations (r, 1-r), looking for (1, -1, 1) in A_R(3).
MalcevSearch malcev_binary_expressibility(const FiniteRing& r, unsigned depth_cap);

}  // namespace clonekit
