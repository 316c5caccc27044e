#include "clonekit/ite.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "clonekit/error.hpp"

namespace clonekit {

Expr Expr::var(std::size_t index) {
  Expr e;
  e.kind_ = Kind::Var;
  e.index_ = index;
  return e;
}

Expr Expr::ite(Elem guard, Expr then_branch, Expr else_branch) {
  Expr e;
  e.kind_ = Kind::Ite;
  e.guard_ = guard;
  e.then_ = std::make_shared<const Expr>(std::move(then_branch));
  e.else_ = std::make_shared<const Expr>(std::move(else_branch));
  return e;
}

std::size_t Expr::depth() const noexcept {
  if (kind_ == Kind::Var) return 0;
  return 1 + std::max(then_->depth(), else_->depth());
}

std::size_t Expr::max_var() const noexcept {
  if (kind_ == Kind::Var) return index_;
  return std::max(then_->max_var(), else_->max_var());
}

bool operator==(const Expr& a, const Expr& b) noexcept {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == Expr::Kind::Var) return a.index_ == b.index_;
  return a.guard_ == b.guard_ && *a.then_ == *b.then_ && *a.else_ == *b.else_;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const BooleanView& ring, std::size_t arity)
      : text_(text), ring_(ring), arity_(arity) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
    throw Error(ErrorCode::ParseError, "column " + std::to_string(pos + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string word() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr expr() {
    skip();
    const std::size_t start = pos_;
    const std::string w = word();
    if (w.empty()) fail("expected an expression");
    if (w == "ite") {
      expect('(');
      const Elem g = guard();
      expect(',');
      Expr a = expr();
      expect(',');
      Expr b = expr();
      expect(')');
      return Expr::ite(g, std::move(a), std::move(b));
    }
    if (w == "q") return selector(start);
    if (w[0] == 'x' && w.size() > 1 &&
        std::all_of(w.begin() + 1, w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      if (w.size() > 10) throw Error(ErrorCode::VarOutOfRange, w + " at column " + std::to_string(start + 1));
      const std::size_t i = std::stoul(w.substr(1));
      if (i == 0 || i > arity_) {
        throw Error(ErrorCode::VarOutOfRange, w + " at column " + std::to_string(start + 1) +
                                                  " (arity " + std::to_string(arity_) + ")");
      }
      return Expr::var(i);
    }
    fail_at(start, "unexpected '" + w + "'");
  }

  Expr selector(std::size_t start) {
    expect('(');
    std::vector<Elem> gs{guard()};
    while (peek(',')) {
      ++pos_;
      gs.push_back(guard());
    }
    expect(';');
    std::vector<Expr> es{expr()};
    while (peek(',')) {
      ++pos_;
      es.push_back(expr());
    }
    expect(')');
    if (gs.size() != es.size()) fail_at(start, "q needs one guard per branch");
    const FiniteRing& r = ring_.ring();
    Elem sum = r.zero();
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = i + 1; j < gs.size(); ++j) {
        if (r.mul(gs[i], gs[j]) != r.zero()) {
          throw Error(ErrorCode::NotPartitionOfUnity,
                      "q at column " + std::to_string(start + 1) + ": guards " + std::to_string(i + 1) +
                          " and " + std::to_string(j + 1) + " overlap");
        }
      }
      sum = r.add(sum, gs[i]);
    }
    if (sum != r.one()) {
      throw Error(ErrorCode::NotPartitionOfUnity, "q at column " + std::to_string(start + 1) + ": guards do not cover 1");
    }
    return expand(gs, es, 0, gs[0]);
  }

  // branch i onward, with `head` the accumulated guard of branch i
  Expr expand(const std::vector<Elem>& gs, const std::vector<Expr>& es, std::size_t i, Elem head) {
    if (i + 1 == es.size()) return es[i];
    const Elem next = ring_.ring().add(head, gs[i + 1]);
    return Expr::ite(head, es[i], expand(gs, es, i + 1, next));
  }

  Elem guard() {
    skip();
    if (pos_ >= text_.size()) fail("expected a guard");
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '0' || c == '1') {
      ++pos_;
      return c == '0' ? ring_.ring().zero() : ring_.ring().one();
    }
    if (c == '#') {
      ++pos_;
      const std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isxdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == digits) fail("expected hex digits");
      if (pos_ - digits > 16) throw Error(ErrorCode::UnknownAtom, "mask at column " + std::to_string(start + 1));
      const std::uint64_t mask = std::stoull(std::string(text_.substr(digits, pos_ - digits)), nullptr, 16);
      const std::size_t k = ring_.atoms().size();
      if (k < 64 && (mask >> k) != 0) {
        throw Error(ErrorCode::UnknownAtom, "mask at column " + std::to_string(start + 1) + " names atoms beyond " +
                                                std::to_string(k));
      }
      return ring_.from_atom_mask(mask);
    }
    if (c != '{') fail("expected a guard");
    ++pos_;
    std::uint64_t mask = 0;
    if (peek('}')) {
      ++pos_;
      return ring_.from_atom_mask(0);
    }
    for (;;) {
      skip();
      const std::size_t at = pos_;
      const std::string name = word();
      if (name.empty()) fail("expected an atom name");
      std::size_t i = 0;
      while (i < ring_.atoms().size() && atom_name(i) != name) ++i;
      if (i == ring_.atoms().size()) throw Error(ErrorCode::UnknownAtom, name + " at column " + std::to_string(at + 1));
      mask |= std::uint64_t{1} << i;
      if (peek(',')) {
        ++pos_;
        continue;
      }
      expect('}');
      return ring_.from_atom_mask(mask);
    }
  }

  std::string_view text_;
  const BooleanView& ring_;
  std::size_t arity_;
  std::size_t pos_ = 0;
};

void print_into(std::string& out, const Expr& e, const BooleanView& ring) {
  if (e.kind() == Expr::Kind::Var) {
    out += "x" + std::to_string(e.index());
    return;
  }
  out += "ite(" + guard_literal(e.guard(), ring) + ", ";
  print_into(out, e.then_branch(), ring);
  out += ", ";
  print_into(out, e.else_branch(), ring);
  out += ")";
}

}  // namespace

Expr parse_expr(std::string_view text, const BooleanView& ring, std::size_t arity) {
  return Parser(text, ring, arity).run();
}

std::string guard_literal(Elem g, const BooleanView& ring) {
  std::string out = "{";
  const std::uint64_t mask = ring.atoms_below(g);
  bool first = true;
  for (std::size_t i = 0; i < ring.atoms().size(); ++i) {
    if (!((mask >> i) & 1)) continue;
    if (!first) out += ",";
    out += atom_name(i);
    first = false;
  }
  return out + "}";
}

std::string print_expr(const Expr& e, const BooleanView& ring) {
  std::string out;
  print_into(out, e, ring);
  return out;
}

NormalForm eval_to_operation(const Expr& e, const BooleanView& ring, std::size_t arity) {
  const FiniteRing& r = ring.ring();
  if (e.kind() == Expr::Kind::Var) {
    if (e.index() == 0 || e.index() > arity) {
      throw Error(ErrorCode::VarOutOfRange, "x" + std::to_string(e.index()) + " (arity " + std::to_string(arity) + ")");
    }
    NormalForm nf{std::vector<Elem>(arity, r.zero())};
    nf.coeffs[e.index() - 1] = r.one();
    return nf;
  }
  const NormalForm a = eval_to_operation(e.then_branch(), ring, arity);
  const NormalForm b = eval_to_operation(e.else_branch(), ring, arity);
  const Elem g = e.guard();
  const Elem ng = r.complement(g);
  NormalForm nf{std::vector<Elem>(arity)};
  for (std::size_t i = 0; i < arity; ++i) nf.coeffs[i] = r.add(r.mul(g, a.coeffs[i]), r.mul(ng, b.coeffs[i]));
  return nf;
}

Expr chain_of(const NormalForm& nf, const BooleanView& ring) {
  const Elem zero = ring.ring().zero();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < nf.arity(); ++i) {
    if (nf.coeffs[i] != zero) support.push_back(i);
  }
  // degenerate ring: every coefficient is 0 = 1 and all operations agree
  if (support.empty()) return Expr::var(1);
  Expr out = Expr::var(support.back() + 1);
  for (std::size_t k = support.size() - 1; k-- > 0;) {
    out = Expr::ite(nf.coeffs[support[k]], Expr::var(support[k] + 1), std::move(out));
  }
  return out;
}

Expr normalize(const Expr& e, const BooleanView& ring, std::size_t arity) {
  return chain_of(eval_to_operation(e, ring, arity), ring);
}

bool equiv(const Expr& a, const Expr& b, const BooleanView& ring, std::size_t arity) {
  return eval_to_operation(a, ring, arity) == eval_to_operation(b, ring, arity);
}

Report check_dicker_axioms(const BooleanView& ring) {
  const FiniteRing& r = ring.ring();
  const std::size_t N = r.size();
  const Elem one = r.one();
  const Elem zero = r.zero();
  auto x = [](std::size_t i) { return Expr::var(i); };
  auto ite = [](Elem g, Expr a, Expr b) { return Expr::ite(g, std::move(a), std::move(b)); };
  auto lit = [&](Elem g) { return guard_literal(g, ring); };
  Report rep;

  auto scan = [&](const std::string& name, std::size_t guards, std::size_t arity,
                  const std::function<std::pair<Expr, Expr>(const std::vector<Elem>&)>& sides) {
    std::vector<Elem> g(guards, 0);
    for (;;) {
      auto [lhs, rhs] = sides(g);
      if (!equiv(lhs, rhs, ring, arity)) {
        rep.fail(name, print_expr(lhs, ring) + " vs " + print_expr(rhs, ring));
        return;
      }
      std::size_t k = guards;
      while (k > 0 && ++g[k - 1] == N) g[--k] = 0;
      if (k == 0) break;
    }
    rep.pass(name);
  };

  // q(a,1,0) = a read in T(2): the first coefficient of ite(a, x1, x2) is a
  {
    bool ok = true;
    std::string at;
    for (Elem a = 0; a < N && ok; ++a) {
      const NormalForm nf = eval_to_operation(ite(a, x(1), x(2)), ring, 2);
      if (nf.coeffs[0] != a) {
        ok = false;
        at = "a=" + lit(a);
      }
    }
    rep.record("dicker:recovery", ok, at);
  }
  if (!equiv(ite(one, x(1), x(2)), x(1), ring, 2)) {
    rep.fail("dicker:units", "ite(" + lit(one) + ", x1, x2) vs x1");
  } else if (!equiv(ite(zero, x(1), x(2)), x(2), ring, 2)) {
    rep.fail("dicker:units", "ite(" + lit(zero) + ", x1, x2) vs x2");
  } else {
    rep.pass("dicker:units");
  }
  scan("dicker:guard-composition", 3, 2, [&](const std::vector<Elem>& g) {
    const Elem q = r.add(r.mul(g[0], g[1]), r.mul(r.complement(g[0]), g[2]));
    return std::pair{ite(g[0], ite(g[1], x(1), x(2)), ite(g[2], x(1), x(2))), ite(q, x(1), x(2))};
  });
  scan("dicker:idempotence", 1, 1, [&](const std::vector<Elem>& g) {
    return std::pair{ite(g[0], x(1), x(1)), x(1)};
  });
  scan("dicker:commutation", 2, 4, [&](const std::vector<Elem>& g) {
    return std::pair{ite(g[0], ite(g[1], x(1), x(2)), ite(g[1], x(3), x(4))),
                     ite(g[1], ite(g[0], x(1), x(3)), ite(g[0], x(2), x(4)))};
  });
  scan("dicker:splitting", 1, 4, [&](const std::vector<Elem>& g) {
    return std::pair{ite(g[0], ite(g[0], x(1), x(2)), ite(g[0], x(3), x(4))), ite(g[0], x(1), x(4))};
  });
  return rep;
}

}  // namespace clonekit
