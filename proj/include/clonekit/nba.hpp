#pragma once

// Boolean algebras of dimension n: a carrier with constants e_1..e_n and an
// (n+1)-ary operation q satisfying H1..H5.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clonekit/finite_ring.hpp"
#include "clonekit/report.hpp"
#include "clonekit/theory.hpp"

namespace clonekit {

class NBA {
 public:
  using QFunction = std::function<Elem(Elem, std::span<const Elem>)>;

  // Dense table, row-major in (a, b_1, ..., b_n). Constants are e_1..e_n.
  static NBA from_table(std::size_t carrier, std::size_t n, std::vector<Elem> q,
                        std::vector<Elem> constants, std::vector<std::string> labels = {});
  // Computed on demand; materialized into a table when n+1 <= 4 and carrier <= 16.
  static NBA from_function(std::size_t carrier, std::size_t n, QFunction q,
                           std::vector<Elem> constants, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return size_; }
  std::size_t dimension() const noexcept { return n_; }
  // e_i, 1-based.
  Elem e(std::size_t i) const { return constants_.at(i - 1); }
  std::span<const Elem> constants() const noexcept { return constants_; }
  std::string label(Elem x) const;

  Elem q(Elem a, std::span<const Elem> bs) const;
  Elem q(Elem a, std::initializer_list<Elem> bs) const {
    return q(a, std::span<const Elem>(bs.begin(), bs.size()));
  }

  bool dense() const noexcept { return !table_.empty(); }
  std::span<const Elem> table() const noexcept { return table_; }
  std::size_t table_index(Elem a, std::span<const Elem> bs) const;

  // Copy with one entry replaced; dense NBAs only.
  NBA with_entry(std::size_t index, Elem value) const;

 private:
  NBA() = default;
  void validate() const;

  std::size_t size_ = 0;
  std::size_t n_ = 0;
  std::vector<Elem> table_;
  QFunction fn_;
  std::vector<Elem> constants_;
  std::vector<std::string> labels_;
};

// Dense storage limit.
inline constexpr std::size_t kDenseMaxArity = 4;  // n + 1
inline constexpr std::size_t kDenseMaxCarrier = 16;

// T(n) of a nondegenerate hyperaffine theory with q = composition and e_i = pi^n_i.
struct TheoryNBA {
  NBA nba;
  Theory theory;
  std::vector<Operation> carrier;  // element index -> operation
};
TheoryNBA nba_from_theory(const Theory& t, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap);

struct NbaCheckOptions {
  std::uint64_t exhaustive_cap = 1'000'000;  // assignments per axiom
  std::size_t samples = 20'000;
  std::uint64_t seed = 42;
};

// One line per axiom H1..H5. H3 is decided exactly by splitting its rows;
// H4 is exhaustive within the cap and otherwise sampled, and its identity
// then reads H4[sampled:<count>,seed:<seed>].
Report check_axioms(const NBA& a, const NbaCheckOptions& opts = {});

// a[i] = q(a, e_2, .., e_1, .., e_2) with e_1 in slot i.
std::vector<Elem> coordinates(const NBA& a, Elem x);

// B_A = {a : t(a,b,b) = b} with t(a,b,c) = q(a,b,c,e_3..e_n), read as a
// Boolean ring: ab = t(a,b,e_2), a+b = t(a,t(b,e_2,e_1),b), 1 = e_1, 0 = e_2.
struct CoordinateAlgebra {
  std::vector<Elem> elements;       // parent indices, ascending
  std::optional<FiniteRing> ring;   // indices are positions in `elements`
  Report checks;                    // closure under t and the six Dicker identities
  std::optional<Elem> index_of(Elem parent) const;
};
CoordinateAlgebra coordinate_algebra(const NBA& a);

// Ring isomorphism B_A -> target found over atom permutations, verified by table.
std::optional<std::vector<Elem>> coordinate_isomorphism(const CoordinateAlgebra& ca,
                                                        const FiniteRing& target);

struct PsiResult {
  enum class Verdict { Ok, NotIsomorphic, NotBijective, NotHomomorphic };
  Verdict verdict = Verdict::Ok;
  std::vector<Operation> image;  // element -> psi(element)
  std::string counterexample;
  Report report;
};
std::string_view verdict_name(PsiResult::Verdict v) noexcept;

// psi(a) = (a[1], ..., a[n]) read in the target theory through B_A ~ B,
// checked bijective with psi(e_i) = pi_i and psi(q(a,bs)) = psi(a) o psi(bs).
PsiResult psi_reconstruct(const NBA& a, const Theory& target,
                          std::uint64_t cap = kDefaultEnumerationCap);

// H1..H5 certified through psi: once psi is a bijective homomorphism onto
// H_B(n), each axiom is decided in the free model with the x variables as
// projections of T(n^2) and y, z ranging over all of T(n).
Report transport_axioms(const NBA& a, const Theory& target,
                        std::uint64_t cap = kDefaultEnumerationCap);

// dimension, carrier, constants, and the q table when dense.
std::string format_nba(const NBA& a);

}  // namespace clonekit
