#pragma once

// Reference implementations that avoid the library's composition code:
// hyperaffine operations over bool:k are read as coordinate pickers on
// tokens, affine ones over Z_n as integer linear forms.

#include <cstdint>
#include <functional>
#include <vector>

#include "clonekit/ite.hpp"
#include "clonekit/random.hpp"

namespace oracle {

using Mask = std::uint32_t;

// Slot chosen by f at atom a (f is a partition of unity of atom masks).
inline std::size_t slot_at(const std::vector<Mask>& f, unsigned a) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if ((f[i] >> a) & 1) return i;
  }
  return f.size();
}

// f o gs by following slots atom by atom.
inline std::vector<Mask> pick_compose(const std::vector<Mask>& f, const std::vector<std::vector<Mask>>& gs,
                                      unsigned atoms, std::size_t m) {
  std::vector<Mask> out(m, 0);
  for (unsigned a = 0; a < atoms; ++a) {
    const std::size_t i = slot_at(f, a);
    const std::size_t j = slot_at(gs[i], a);
    out[j] |= Mask{1} << a;
  }
  return out;
}

// Every partition of unity of `atoms` atoms into n slots.
inline std::vector<std::vector<Mask>> all_partitions(unsigned atoms, std::size_t n) {
  std::vector<std::vector<Mask>> out;
  std::vector<std::size_t> slot(atoms, 0);
  if (n == 0) return out;
  for (;;) {
    std::vector<Mask> f(n, 0);
    for (unsigned a = 0; a < atoms; ++a) f[slot[a]] |= Mask{1} << a;
    out.push_back(f);
    unsigned a = 0;
    while (a < atoms && ++slot[a] == n) slot[a++] = 0;
    if (a == atoms) break;
  }
  return out;
}

inline long long mod(long long v, long long n) { return ((v % n) + n) % n; }

// f(x_1..x_n) = sum f_i x_i over Z_n on integer inputs.
inline long long linear_eval(const std::vector<long long>& f, const std::vector<long long>& x, long long n) {
  long long s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * x[i];
  return mod(s, n);
}

// Mal'cev triples in A_{Z_n}(3) by checking p(x,y,y) = x and p(x,x,y) = y at every numeric point.
inline std::vector<std::vector<long long>> malcev_triples(long long n) {
  std::vector<std::vector<long long>> out;
  for (long long a = 0; a < n; ++a)
    for (long long b = 0; b < n; ++b)
      for (long long c = 0; c < n; ++c) {
        if (mod(a + b + c, n) != 1 % n) continue;
        bool ok = true;
        for (long long x = 0; x < n && ok; ++x)
          for (long long y = 0; y < n && ok; ++y) {
            ok = linear_eval({a, b, c}, {x, y, y}, n) == x && linear_eval({a, b, c}, {x, x, y}, n) == y;
          }
        if (ok) out.push_back({a, b, c});
      }
  return out;
}

// Coordinate-pick semantics of an ite tree over bool:k: at atom a follow
// then-branches whose guard contains a; the result is the variable reached.
inline std::size_t pick_var(const clonekit::Expr& e, unsigned a) {
  if (e.kind() == clonekit::Expr::Kind::Var) return e.index();
  return ((e.guard() >> a) & 1) ? pick_var(e.then_branch(), a) : pick_var(e.else_branch(), a);
}

// Evaluate on the canonical B-set with 2-element stalks: an assignment gives
// every (atom, variable) a bit; the tree's value is the tuple of picked bits.
inline bool semantically_equal(const clonekit::Expr& l, const clonekit::Expr& r, unsigned atoms, std::size_t arity) {
  const std::size_t bits = atoms * arity;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
    for (unsigned a = 0; a < atoms; ++a) {
      const std::size_t i = pick_var(l, a) - 1;
      const std::size_t j = pick_var(r, a) - 1;
      if (((v >> (a * arity + i)) & 1) != ((v >> (a * arity + j)) & 1)) return false;
    }
  }
  return true;
}

inline clonekit::Expr random_expr(clonekit::SplitMix64& rng, unsigned atoms, std::size_t arity, std::size_t depth) {
  if (depth == 0 || rng.below(4) == 0) return clonekit::Expr::var(1 + rng.below(arity));
  const auto g = static_cast<clonekit::Elem>(rng.below(std::uint64_t{1} << atoms));
  auto a = random_expr(rng, atoms, arity, depth - 1);
  auto b = random_expr(rng, atoms, arity, depth - 1);
  return clonekit::Expr::ite(g, std::move(a), std::move(b));
}

}  // namespace oracle
