#pragma once

// Exact arithmetic for finite rings given by full operation tables.
//
// Elements are dense indices 0..size-1. A ring built by
// make_powerset_boolean(k) additionally reads its indices as bitmasks over
// k atoms: + is symmetric difference (xor), * is intersection (and).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clonekit {

using Elem = std::uint32_t;

enum class RingKind { ZMod, PowersetBoolean, Product, TableGiven };

// Largest carrier accepted by the table constructors.
inline constexpr std::size_t kMaxRingSize = 4096;

class FiniteRing {
 public:
  // Validates the ring axioms by full table scan (throws InvalidRing).
  // Multiplication need not be commutative; see is_commutative().
  static FiniteRing from_tables(std::size_t size, std::vector<Elem> add,
                                std::vector<Elem> mul, Elem zero, Elem one,
                                std::vector<std::string> labels = {},
                                std::string spec = "table");

  std::size_t size() const noexcept { return data_->size; }
  Elem zero() const noexcept { return data_->zero; }
  Elem one() const noexcept { return data_->one; }
  bool is_degenerate() const noexcept { return data_->zero == data_->one; }

  Elem add(Elem a, Elem b) const noexcept { return data_->add[a * data_->size + b]; }
  Elem mul(Elem a, Elem b) const noexcept { return data_->mul[a * data_->size + b]; }
  Elem neg(Elem a) const noexcept { return data_->neg[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  // 1 - a
  Elem complement(Elem a) const noexcept { return sub(one(), a); }

  RingKind kind() const noexcept { return data_->kind; }
  // n for ZMod(n), k for PowersetBoolean(k), 0 otherwise.
  unsigned kind_param() const noexcept { return data_->kind_param; }
  const std::string& spec() const noexcept { return data_->spec; }

  const std::string& label(Elem e) const { return data_->labels.at(e); }
  std::optional<Elem> find(std::string_view label) const;

  std::span<const Elem> add_table() const noexcept { return data_->add; }
  std::span<const Elem> mul_table() const noexcept { return data_->mul; }

  // Same underlying tables and units (labels and spec ignored).
  bool same_tables(const FiniteRing& other) const noexcept;
  bool same_handle(const FiniteRing& other) const noexcept { return data_ == other.data_; }

 private:
  struct Data {
    std::size_t size = 0;
    std::vector<Elem> add, mul, neg;
    Elem zero = 0, one = 0;
    RingKind kind = RingKind::TableGiven;
    unsigned kind_param = 0;
    std::string spec;
    std::vector<std::string> labels;
  };

  explicit FiniteRing(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  static FiniteRing build(Data data, bool validate);

  friend FiniteRing make_zmod(unsigned n);
  friend FiniteRing make_powerset_boolean(unsigned k);
  friend FiniteRing product_ring(const FiniteRing& r1, const FiniteRing& r2);

  std::shared_ptr<const Data> data_;
};

FiniteRing make_zmod(unsigned n);
FiniteRing make_powerset_boolean(unsigned k);
FiniteRing product_ring(const FiniteRing& r1, const FiniteRing& r2);

// Ring spec grammar: zmod:<n> | bool:<k> | prod(<spec>,<spec>)
FiniteRing parse_ring_spec(std::string_view spec);

// Full-scan list of violated ring axioms; empty when the tables form a ring.
std::vector<std::string> ring_axiom_violations(std::size_t size, std::span<const Elem> add,
                                               std::span<const Elem> mul, Elem zero, Elem one);

bool is_boolean(const FiniteRing& r);
bool is_commutative(const FiniteRing& r);

// Name of atom i in guard and label syntax: s, t, u, v, w, then a5, a6, ...
std::string atom_name(std::size_t i);

// Lattice reading of a Boolean ring:
//   meet(a,b) = ab, join(a,b) = a + (1-a)b, not(a) = 1 - a, a <= b iff ab = a.
class BooleanView {
 public:
  explicit BooleanView(FiniteRing ring);  // throws NotBoolean

  const FiniteRing& ring() const noexcept { return ring_; }
  std::size_t size() const noexcept { return ring_.size(); }

  Elem meet(Elem a, Elem b) const noexcept { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const noexcept { return join_[a * size() + b]; }
  Elem negate(Elem a) const noexcept { return not_[a]; }
  bool leq(Elem a, Elem b) const noexcept { return ring_.mul(a, b) == a; }

  // Minimal nonzero elements, ascending by index.
  std::span<const Elem> atoms() const noexcept { return atoms_; }
  // Bit i set iff atom i lies below e.
  std::uint64_t atoms_below(Elem e) const noexcept { return below_[e]; }
  // Inverse of atoms_below: the join of the selected atoms.
  Elem from_atom_mask(std::uint64_t mask) const;

  std::span<const Elem> meet_table() const noexcept { return meet_; }
  std::span<const Elem> join_table() const noexcept { return join_; }
  std::span<const Elem> not_table() const noexcept { return not_; }

 private:
  FiniteRing ring_;
  std::vector<Elem> meet_, join_, not_;
  std::vector<Elem> atoms_;
  std::vector<std::uint64_t> below_;
  std::vector<Elem> by_mask_;
};

BooleanView boolean_view(const FiniteRing& r);

// A unital ring map R -> F2, as the image (0 or 1) of every element.
using HomToF2 = std::vector<Elem>;

inline constexpr std::size_t kDefaultHomSearchCap = 16;

// Exhaustive search over all 2^|R| maps; throws CarrierTooLarge past `cap`.
std::vector<HomToF2> homs_to_f2(const FiniteRing& r, std::size_t cap = kDefaultHomSearchCap);

// True iff `map` (indexed by elements of `from`) is a bijective unital ring
// homomorphism onto `to`, by full table comparison.
bool is_ring_isomorphism(const FiniteRing& from, const FiniteRing& to, std::span<const Elem> map);

// Isomorphism between finite Boolean rings, searched over atom bijections only.
std::optional<std::vector<Elem>> boolean_isomorphism(const BooleanView& from, const BooleanView& to);

// Stable text layout: header, element list, add/mul tables and, for Boolean
// rings, atoms and meet/join/not tables.
std::string format_ring(const FiniteRing& r);

}  // namespace clonekit
