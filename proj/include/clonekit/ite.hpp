#pragma once

// If-then-else expressions with constant guards from a finite Boolean ring.
//
//   expr  := var | "ite(" guard "," expr "," expr ")" | "q(" guard ("," guard)* ";" expr ("," expr)* ")"
//   var   := "x" digits                  (1-based)
//   guard := "{" [atom ("," atom)*] "}" | "#" hex | "0" | "1"
//
// q(b_1..b_m; e_1..e_m) needs a partition of unity and is expanded while
// parsing into ite(b_1, e_1, q(b_1 + b_2, b_3..; e_2..)).

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "clonekit/finite_ring.hpp"
#include "clonekit/report.hpp"

namespace clonekit {

class Expr {
 public:
  enum class Kind { Var, Ite };

  static Expr var(std::size_t index);  // 1-based
  static Expr ite(Elem guard, Expr then_branch, Expr else_branch);

  Kind kind() const noexcept { return kind_; }
  std::size_t index() const noexcept { return index_; }
  Elem guard() const noexcept { return guard_; }
  const Expr& then_branch() const { return *then_; }
  const Expr& else_branch() const { return *else_; }

  std::size_t depth() const noexcept;
  // Largest variable index used.
  std::size_t max_var() const noexcept;

  friend bool operator==(const Expr& a, const Expr& b) noexcept;

 private:
  Expr() = default;

  Kind kind_ = Kind::Var;
  std::size_t index_ = 0;
  Elem guard_ = 0;
  std::shared_ptr<const Expr> then_, else_;
};

// ParseError (with column), UnknownAtom, VarOutOfRange (index 0 or > arity),
// NotPartitionOfUnity for a bad q selector.
Expr parse_expr(std::string_view text, const BooleanView& ring, std::size_t arity);

// Guards printed as atom sets; the output parses back to the same tree.
std::string print_expr(const Expr& e, const BooleanView& ring);
std::string guard_literal(Elem g, const BooleanView& ring);

// Coefficient per variable; always a partition of unity.
struct NormalForm {
  std::vector<Elem> coeffs;
  std::size_t arity() const noexcept { return coeffs.size(); }
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

// Var(i) is the i-th basis vector, Ite(b, e1, e2) is b.[e1] + (1-b).[e2].
NormalForm eval_to_operation(const Expr& e, const BooleanView& ring, std::size_t arity);

// Right-nested chain over the nonzero coefficients in increasing variable
// order, the last variable bare: ite(b_i, x_i, ite(b_j, x_j, x_k)).
Expr chain_of(const NormalForm& nf, const BooleanView& ring);
Expr normalize(const Expr& e, const BooleanView& ring, std::size_t arity);

bool equiv(const Expr& a, const Expr& b, const BooleanView& ring, std::size_t arity);

// Recovery, units, guard composition, idempotence, commutation and splitting
// of conditional disjunction, each over every choice of guards.
Report check_dicker_axioms(const BooleanView& ring);

}  // namespace clonekit
