#include "clonekit/theory.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "clonekit/error.hpp"
#include "clonekit/kernels.hpp"
#include "clonekit/random.hpp"
#include "tuples.hpp"

namespace clonekit {

namespace {

using detail::for_each_tuple;
using detail::kSaturated;
using detail::sat_mul;
using detail::sat_pow;

// [c1,c2,...] with ring labels, no theory suffix.
std::string vec(const Operation& op) {
  std::string out = "[";
  const FiniteRing& r = op.theory().ring();
  for (std::size_t i = 0; i < op.arity(); ++i) {
    if (i) out += ',';
    out += r.label(op[i]);
  }
  return out + "]";
}

std::string vec_list(std::span<const Operation> ops) {
  std::string out = "(";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) out += ',';
    out += vec(ops[i]);
  }
  return out + ")";
}

std::vector<Operation> pick(std::span<const Operation> pool, std::span<const std::size_t> idx) {
  std::vector<Operation> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(pool[i]);
  return out;
}

void require_same_theory(const Operation& a, const Operation& b) {
  if (!(a.theory() == b.theory())) {
    throw Error(ErrorCode::TheoryMismatch, a.theory().name() + " vs " + b.theory().name());
  }
}

Elem ring_sum(const FiniteRing& r, std::span<const Elem> xs) {
  Elem s = r.zero();
  for (Elem x : xs) s = r.add(s, x);
  return s;
}

// Budget for exhaustive tuple scans inside the property suite; bigger
// spaces are sampled at a fixed seed.
constexpr std::uint64_t kExhaustiveBudget = 4096;
constexpr std::size_t kSuiteSamples = 512;
constexpr std::uint64_t kSuiteSeed = 0x5eed;

// Exhaustive scan when the tuple space fits the budget, otherwise sampled.
// Returns the identity label suffix (e.g. ",sampled:512").
std::string scan_tuples(std::size_t base, std::size_t len, SplitMix64& rng,
                        const std::function<bool(std::span<const std::size_t>)>& fn) {
  if (sat_pow(base, len) <= kExhaustiveBudget) {
    for_each_tuple(base, len, fn);
    return "";
  }
  std::vector<std::size_t> idx(len);
  for (std::size_t s = 0; s < kSuiteSamples; ++s) {
    for (auto& i : idx) i = static_cast<std::size_t>(rng.below(base));
    if (!fn(idx)) break;
  }
  return ",sampled:" + std::to_string(kSuiteSamples);
}

}  // namespace

std::string_view flavor_name(Flavor f) noexcept {
  switch (f) {
    case Flavor::FullModule: return "full";
    case Flavor::Affine: return "affine";
    case Flavor::Hyperaffine: return "hyperaffine";
    case Flavor::DegenerateU: return "U";
    case Flavor::DegenerateUPrime: return "U'";
  }
  return "?";
}

// ---- Theory ---------------------------------------------------------------

Theory Theory::full_module(FiniteRing ring) {
  if (!is_commutative(ring)) throw Error(ErrorCode::InvalidRing, ring.spec() + " is not commutative");
  return Theory(std::move(ring), Flavor::FullModule);
}

Theory Theory::affine(FiniteRing ring) {
  if (!is_commutative(ring)) throw Error(ErrorCode::InvalidRing, ring.spec() + " is not commutative");
  return Theory(std::move(ring), Flavor::Affine);
}

Theory Theory::hyperaffine(FiniteRing ring) {
  if (!is_boolean(ring)) throw Error(ErrorCode::NotBoolean, ring.spec() + " is not Boolean");
  return Theory(std::move(ring), Flavor::Hyperaffine);
}

Theory Theory::degenerate_u() { return Theory(make_zmod(1), Flavor::DegenerateU); }
Theory Theory::degenerate_u_prime() { return Theory(make_zmod(1), Flavor::DegenerateUPrime); }

bool Theory::contains(std::span<const Elem> coeffs) const {
  for (Elem c : coeffs) {
    if (c >= ring_.size()) return false;
  }
  switch (flavor_) {
    case Flavor::FullModule:
      return true;
    case Flavor::Affine:
      return ring_sum(ring_, coeffs) == ring_.one();
    case Flavor::Hyperaffine:
      if (ring_sum(ring_, coeffs) != ring_.one()) return false;
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (std::size_t j = i + 1; j < coeffs.size(); ++j) {
          if (ring_.mul(coeffs[i], coeffs[j]) != ring_.zero()) return false;
        }
      }
      return true;
    case Flavor::DegenerateU:
      return true;
    case Flavor::DegenerateUPrime:
      return !coeffs.empty();
  }
  return false;
}

std::string Theory::name() const {
  switch (flavor_) {
    case Flavor::FullModule: return "T(" + ring_.spec() + ")";
    case Flavor::Affine: return "A(" + ring_.spec() + ")";
    case Flavor::Hyperaffine: return "H(" + ring_.spec() + ")";
    case Flavor::DegenerateU: return "U";
    case Flavor::DegenerateUPrime: return "U'";
  }
  return "?";
}

// ---- Operation ------------------------------------------------------------

Operation::Operation(Theory theory, std::vector<Elem> coeffs)
    : theory_(std::move(theory)), coeffs_(std::move(coeffs)) {
  if (!theory_.contains(coeffs_)) {
    std::string v = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) v += ',';
      v += std::to_string(coeffs_[i]);
    }
    throw Error(ErrorCode::NotMember, v + "] not in " + theory_.name());
  }
}

std::string to_string(const Operation& op) { return vec(op) + "@" + op.theory().name(); }

Operation projection(const Theory& t, std::size_t n, std::size_t i) {
  if (i < 1 || i > n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "projection " + std::to_string(i) + " of arity " + std::to_string(n));
  }
  std::vector<Elem> c(n, t.ring().zero());
  c[i - 1] = t.ring().one();
  return Operation(t, std::move(c));
}

std::vector<Operation> projections(const Theory& t, std::size_t n) {
  std::vector<Operation> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(projection(t, n, i));
  return out;
}

Operation compose(const Operation& f, std::span<const Operation> gs, std::size_t m) {
  if (gs.size() != f.arity()) {
    throw Error(ErrorCode::ArityMismatch, "operation of arity " + std::to_string(f.arity()) +
                                              " applied to " + std::to_string(gs.size()) +
                                              " arguments");
  }
  for (const Operation& g : gs) {
    require_same_theory(f, g);
    if (g.arity() != m) {
      throw Error(ErrorCode::ArityMismatch, "argument of arity " + std::to_string(g.arity()) +
                                                " where " + std::to_string(m) + " expected");
    }
  }
  const FiniteRing& r = f.theory().ring();
  std::vector<Elem> out(m, r.zero());
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const Elem fi = f[i];
    if (fi == r.zero()) continue;
    for (std::size_t j = 0; j < m; ++j) out[j] = r.add(out[j], r.mul(gs[i][j], fi));
  }
  if (!f.theory().contains(out)) {
    throw Error(ErrorCode::ClosureViolated, "composite of " + to_string(f) + " left the theory");
  }
  return Operation(f.theory(), std::move(out), Operation::Unchecked{});
}

Operation compose(const Operation& f, std::span<const Operation> gs) {
  return compose(f, gs, gs.empty() ? 0 : gs.front().arity());
}

// ---- Enumeration ----------------------------------------------------------

std::uint64_t count_operations(const Theory& t, std::size_t n) {
  const std::uint64_t size = t.ring().size();
  switch (t.flavor()) {
    case Flavor::FullModule:
      return sat_pow(size, n);
    case Flavor::Affine:
      if (n == 0) return t.is_degenerate() ? 1 : 0;
      return sat_pow(size, n - 1);
    case Flavor::Hyperaffine: {
      if (t.is_degenerate()) return 1;
      const std::size_t atoms = boolean_view(t.ring()).atoms().size();
      return sat_pow(n, atoms);
    }
    case Flavor::DegenerateU:
      return 1;
    case Flavor::DegenerateUPrime:
      return n == 0 ? 0 : 1;
  }
  return 0;
}

std::vector<Operation> enumerate(const Theory& t, std::size_t n, std::uint64_t cap) {
  const std::uint64_t count = count_operations(t, n);
  if (count > cap) {
    throw Error(ErrorCode::EnumerationTooLarge, t.name() + "(" + std::to_string(n) + ") has " +
                                                    (count == kSaturated ? std::string("too many")
                                                                         : std::to_string(count)) +
                                                    " operations, cap " + std::to_string(cap));
  }
  std::vector<Operation> out;
  out.reserve(count);
  const FiniteRing& r = t.ring();
  switch (t.flavor()) {
    case Flavor::FullModule:
      for_each_tuple(r.size(), n, [&](std::span<const std::size_t> idx) {
        out.emplace_back(t, std::vector<Elem>(idx.begin(), idx.end()));
        return true;
      });
      break;
    case Flavor::Affine:
      if (n == 0) {
        if (t.is_degenerate()) out.emplace_back(t, std::vector<Elem>{});
        break;
      }
      for_each_tuple(r.size(), n - 1, [&](std::span<const std::size_t> idx) {
        std::vector<Elem> c(idx.begin(), idx.end());
        c.push_back(r.sub(r.one(), ring_sum(r, c)));
        out.emplace_back(t, std::move(c));
        return true;
      });
      break;
    case Flavor::Hyperaffine: {
      if (t.is_degenerate()) {
        out.emplace_back(t, std::vector<Elem>(n, r.zero()));
        break;
      }
      const BooleanView view = boolean_view(r);
      const std::size_t atoms = view.atoms().size();
      // Each atom chooses the slot that carries it.
      for_each_tuple(n, atoms, [&](std::span<const std::size_t> slot) {
        std::vector<std::uint64_t> masks(n, 0);
        for (std::size_t a = 0; a < atoms; ++a) masks[slot[a]] |= std::uint64_t{1} << a;
        std::vector<Elem> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = view.from_atom_mask(masks[i]);
        out.emplace_back(t, std::move(c));
        return true;
      });
      std::sort(out.begin(), out.end());
      break;
    }
    case Flavor::DegenerateU:
    case Flavor::DegenerateUPrime:
      if (count == 1) out.emplace_back(t, std::vector<Elem>(n, r.zero()));
      break;
  }
  return out;
}

// ---- Identities -----------------------------------------------------------

bool is_idempotent(const Operation& f) {
  const Theory& t = f.theory();
  const Operation x = projection(t, 1, 1);
  const std::vector<Operation> args(f.arity(), x);
  return compose(f, args, 1) == x;
}

bool splits(const Operation& f) {
  const Theory& t = f.theory();
  const std::size_t n = f.arity();
  const std::vector<Operation> xs = projections(t, n * n);
  std::vector<Operation> rows;
  std::vector<Operation> diag;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Operation> row(xs.begin() + static_cast<std::ptrdiff_t>(i * n),
                               xs.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
    rows.push_back(compose(f, row, n * n));
    diag.push_back(xs[i * n + i]);
  }
  return compose(f, rows, n * n) == compose(f, diag, n * n);
}

bool commute(const Operation& f, const Operation& g) {
  require_same_theory(f, g);
  const Theory& t = f.theory();
  const std::size_t n = f.arity();
  const std::size_t m = g.arity();
  const std::size_t vars = n * m;
  const std::vector<Operation> xs = projections(t, vars);
  // f(g(row 1), ..., g(row n)) against g(f(col 1), ..., f(col m)).
  std::vector<Operation> g_rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Operation> row(xs.begin() + static_cast<std::ptrdiff_t>(i * m),
                               xs.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
    g_rows.push_back(compose(g, row, vars));
  }
  std::vector<Operation> f_cols;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Operation> col;
    for (std::size_t i = 0; i < n; ++i) col.push_back(xs[i * m + j]);
    f_cols.push_back(compose(f, col, vars));
  }
  return compose(f, g_rows, vars) == compose(g, f_cols, vars);
}

bool is_malcev(const Operation& p) {
  if (p.arity() != 3) {
    throw Error(ErrorCode::ArityMismatch, "Mal'cev candidate of arity " + std::to_string(p.arity()));
  }
  const Theory& t = p.theory();
  const Operation x = projection(t, 2, 1);
  const Operation y = projection(t, 2, 2);
  return compose(p, {x, y, y}) == x && compose(p, {x, x, y}) == y;
}

Operation malcev_operation(const Theory& t) {
  const FiniteRing& r = t.ring();
  return Operation(t, {r.one(), r.neg(r.one()), r.one()});
}

std::vector<Operation> malcev_operations(const Theory& t) {
  std::vector<Operation> out;
  for (const Operation& p : enumerate(t, 3)) {
    if (is_malcev(p)) out.push_back(p);
  }
  return out;
}

// ---- Distributivity -------------------------------------------------------

bool c5_instance_holds(const Operation& f, std::span<const Operation> gs, std::size_t n) {
  const std::size_t k = f.arity();
  if (gs.size() != k) throw Error(ErrorCode::ArityMismatch, "c5 needs one g per argument of f");
  const Theory& t = f.theory();
  const std::size_t vars = k * n;
  const std::vector<Operation> xs = projections(t, vars);
  const Operation h = compose(f, gs, n);

  std::vector<Operation> fs;  // F_j = f(x^1_j, ..., x^k_j)
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Operation> col;
    for (std::size_t i = 0; i < k; ++i) col.push_back(xs[i * n + j]);
    fs.push_back(compose(f, col, vars));
  }
  std::vector<Operation> gx;  // G_i = g_i(x^i_1, ..., x^i_n)
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Operation> row(xs.begin() + static_cast<std::ptrdiff_t>(i * n),
                               xs.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
    gx.push_back(compose(gs[i], row, vars));
  }
  return compose(h, fs, vars) == compose(f, gx, vars);
}

bool packed_c5_applicable(const Theory& t, std::size_t max_arity) {
  return t.ring().kind() == RingKind::PowersetBoolean && !t.is_degenerate() &&
         t.ring().kind_param() <= kernels::kMaxPackedAtoms &&
         max_arity <= kernels::kMaxPackedArity;
}

namespace {

// First violating tuple index (in odometer order) for a fixed f, or nullopt.
std::optional<std::vector<std::size_t>> c5_scan_generic(const Operation& f,
                                                        std::span<const Operation> pool,
                                                        std::size_t n) {
  std::optional<std::vector<std::size_t>> hit;
  for_each_tuple(pool.size(), f.arity(), [&](std::span<const std::size_t> idx) {
    const std::vector<Operation> gs = pick(pool, idx);
    if (!c5_instance_holds(f, gs, n)) {
      hit.emplace(idx.begin(), idx.end());
      return false;
    }
    return true;
  });
  return hit;
}

std::optional<std::vector<std::size_t>> c5_scan_packed(const Operation& f,
                                                       std::span<const std::uint32_t> pool) {
  const std::size_t k = f.arity();
  kernels::C5Block block;
  block.prefix = k - 1;
  block.last = kernels::broadcast(f[k - 1]);
  for (std::size_t i = 0; i + 1 < k; ++i) block.coeff[i] = kernels::broadcast(f[i]);
  std::optional<std::vector<std::size_t>> hit;
  for_each_tuple(pool.size(), k - 1, [&](std::span<const std::size_t> idx) {
    block.partial = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      block.fixed[i] = block.coeff[i] & pool[idx[i]];
      block.partial ^= block.fixed[i];
    }
    const std::size_t c = kernels::c5_first_violation(block, pool);
    if (c != kernels::kNoViolation) {
      std::vector<std::size_t> v(idx.begin(), idx.end());
      v.push_back(c);
      hit = std::move(v);
      return false;
    }
    return true;
  });
  return hit;
}

std::vector<std::uint32_t> pack_all(std::span<const Operation> ops) {
  std::vector<std::uint32_t> out;
  out.reserve(ops.size());
  for (const Operation& op : ops) out.push_back(kernels::pack(op.coeffs()));
  return out;
}

}  // namespace

Report check_c5(const Theory& t, std::size_t max_arity, C5Route route, std::uint64_t cap) {
  const bool packable = packed_c5_applicable(t, max_arity);
  if (route == C5Route::Packed && !packable) {
    throw Error(ErrorCode::InvalidArgument,
                "packed c5 route needs a powerset ring with at most 8 atoms and arity at most 4");
  }
  Report report;
  std::vector<std::vector<Operation>> levels;
  for (std::size_t a = 0; a <= max_arity; ++a) levels.push_back(enumerate(t, a, cap));

  for (std::size_t k = 0; k <= max_arity; ++k) {
    for (std::size_t n = 0; n <= max_arity; ++n) {
      const std::string id = "c5[k=" + std::to_string(k) + ",n=" + std::to_string(n) + "]";
      const auto& fs = levels[k];
      const auto& pool = levels[n];
      const bool packed = k > 0 && n > 0 &&
                          (route == C5Route::Packed || (route == C5Route::Auto && packable));
      if (!packed) {
        const std::uint64_t instances = sat_mul(fs.size(), sat_pow(pool.size(), k));
        if (instances > cap) {
          throw Error(ErrorCode::EnumerationTooLarge,
                      id + " needs " + std::to_string(instances) + " generic instances, cap " +
                          std::to_string(cap));
        }
      }
      const std::vector<std::uint32_t> packed_pool = packed ? pack_all(pool) : std::vector<std::uint32_t>{};
      std::string instance;
      for (const Operation& f : fs) {
        const auto hit = packed ? c5_scan_packed(f, packed_pool) : c5_scan_generic(f, pool, n);
        if (hit) {
          instance = "f=" + vec(f) + " gs=" + vec_list(pick(pool, *hit));
          break;
        }
      }
      report.record(id, instance.empty(), instance);
    }
  }
  return report;
}

bool c5_holds_for(const Operation& f, std::size_t n, std::uint64_t cap) {
  const Theory& t = f.theory();
  const std::vector<Operation> pool = enumerate(t, n, cap);
  if (f.arity() > 0 && n > 0 && packed_c5_applicable(t, std::max(f.arity(), n))) {
    return !c5_scan_packed(f, pack_all(pool));
  }
  return !c5_scan_generic(f, pool, n);
}

Report check_m1_m2(const Theory& t, const Operation& p) {
  if (!(p.theory() == t)) throw Error(ErrorCode::TheoryMismatch, "p is not in " + t.name());
  if (p.arity() != 3) throw Error(ErrorCode::ArityMismatch, "p must be ternary");
  Report report;
  {
    const std::vector<Operation> v = projections(t, 5);  // x y t u v
    const Operation lhs = compose(p, {v[0], v[1], compose(p, {v[2], v[3], v[4]})});
    const Operation rhs = compose(p, {compose(p, {v[0], v[1], v[2]}), v[3], v[4]});
    report.record("M1", lhs == rhs, "p=" + vec(p) + " lhs=" + vec(lhs) + " rhs=" + vec(rhs));
  }
  {
    const std::vector<Operation> v = projections(t, 3);
    const Operation lhs = compose(p, {v[0], v[1], v[2]});
    const Operation rhs = compose(p, {v[2], v[1], v[0]});
    report.record("M2", lhs == rhs, "p=" + vec(p) + " lhs=" + vec(lhs) + " rhs=" + vec(rhs));
  }
  return report;
}

// ---- Coefficients and reconstruction --------------------------------------

Operation coefficient(const Operation& f, std::size_t i) {
  const std::size_t n = f.arity();
  if (i < 1 || i > n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "coefficient " + std::to_string(i) + " of arity " + std::to_string(n));
  }
  const Theory& t = f.theory();
  const Operation x = projection(t, 2, 1);
  const Operation y = projection(t, 2, 2);
  std::vector<Operation> args(n, y);
  args[i - 1] = x;
  return compose(f, args, 2);
}

std::vector<Operation> coefficients(const Operation& f) {
  std::vector<Operation> out;
  for (std::size_t i = 1; i <= f.arity(); ++i) out.push_back(coefficient(f, i));
  return out;
}

Operation binary_of(const Theory& t, Elem r) {
  if (r >= t.ring().size()) throw Error(ErrorCode::IndexOutOfRange, "ring element " + std::to_string(r));
  return Operation(t, {r, t.ring().complement(r)});
}

Elem element_of(const Operation& binary) {
  if (binary.arity() != 2) {
    throw Error(ErrorCode::ArityMismatch, "expected a binary operation, got arity " +
                                              std::to_string(binary.arity()));
  }
  return binary[0];
}

Operation reconstruct_hyperaffine(const Theory& t, std::span<const Elem> coeffs) {
  if (t.flavor() != Flavor::Hyperaffine) throw Error(ErrorCode::TheoryMismatch, t.name() + " is not hyperaffine");
  const FiniteRing& r = t.ring();
  bool partition = ring_sum(r, coeffs) == r.one();
  for (std::size_t i = 0; partition && i < coeffs.size(); ++i) {
    if (coeffs[i] >= r.size()) partition = false;
    for (std::size_t j = i + 1; partition && j < coeffs.size(); ++j) {
      if (r.mul(coeffs[i], coeffs[j]) != r.zero()) partition = false;
    }
  }
  if (!partition) throw Error(ErrorCode::NotPartitionOfUnity, "coefficients are not a partition of unity");

  const std::size_t n = coeffs.size();
  if (n == 0) return Operation(t, {});
  if (n == 1) return projection(t, 1, 1);
  // f(x_1..x_n) = b_1(x_1, g(x_2..x_n))
  std::vector<Elem> rest{r.add(coeffs[0], coeffs[1])};
  rest.insert(rest.end(), coeffs.begin() + 2, coeffs.end());
  const Operation g = reconstruct_hyperaffine(t, rest);
  const std::vector<Operation> xs = projections(t, n);
  const Operation gx = compose(g, std::span<const Operation>(xs).subspan(1), n);
  return compose(binary_of(t, coeffs[0]), {xs[0], gx});
}

Operation reconstruct_affine(const Theory& t, std::span<const Elem> coeffs) {
  if (t.flavor() != Flavor::Affine) throw Error(ErrorCode::TheoryMismatch, t.name() + " is not affine");
  const FiniteRing& r = t.ring();
  for (Elem c : coeffs) {
    if (c >= r.size()) throw Error(ErrorCode::IndexOutOfRange, "ring element " + std::to_string(c));
  }
  if (ring_sum(r, coeffs) != r.one()) throw Error(ErrorCode::SumNotOne, "coefficients do not sum to 1");

  const std::size_t n = coeffs.size();
  if (n == 0) return Operation(t, {});
  if (n == 1) return projection(t, 1, 1);
  // f(x_1..x_n) = p(r_2(x_2,x_1), x_1, g(x_1, x_3..x_n))
  std::vector<Elem> rest{r.add(coeffs[0], coeffs[1])};
  rest.insert(rest.end(), coeffs.begin() + 2, coeffs.end());
  const Operation g = reconstruct_affine(t, rest);
  const std::vector<Operation> xs = projections(t, n);
  std::vector<Operation> g_args{xs[0]};
  g_args.insert(g_args.end(), xs.begin() + 2, xs.end());
  const Operation r2 = compose(binary_of(t, coeffs[1]), {xs[1], xs[0]});
  const Operation gx = compose(g, g_args, n);
  return compose(malcev_operation(t), {r2, xs[0], gx});
}

// ---- The ring on T(2) -----------------------------------------------------

BinaryRing ring_on_binary(const Theory& t) {
  if (t.flavor() == Flavor::DegenerateU || t.flavor() == Flavor::DegenerateUPrime || t.is_degenerate()) {
    throw Error(ErrorCode::DegenerateTheory, t.name() + " is degenerate");
  }
  if (t.flavor() == Flavor::FullModule) {
    throw Error(ErrorCode::TheoryMismatch, "ring_on_binary needs an affine or hyperaffine theory");
  }
  const FiniteRing& base = t.ring();
  BinaryRing out{base, enumerate(t, 2), {}, {}};
  const std::size_t size = out.carrier.size();
  std::map<std::vector<Elem>, Elem> index;
  for (std::size_t i = 0; i < size; ++i) {
    const auto c = out.carrier[i].coeffs();
    index.emplace(std::vector<Elem>(c.begin(), c.end()), static_cast<Elem>(i));
  }
  auto idx = [&](const Operation& op) {
    const auto c = op.coeffs();
    return index.at(std::vector<Elem>(c.begin(), c.end()));
  };
  const Operation x = projection(t, 2, 1);
  const Operation y = projection(t, 2, 2);
  const auto& ops = out.carrier;

  std::vector<Elem> add(size * size), mul(size * size);
  const bool hyper = t.flavor() == Flavor::Hyperaffine;
  if (hyper) {
    std::vector<Elem> meet(size * size), join(size * size), neg(size);
    for (std::size_t a = 0; a < size; ++a) {
      neg[a] = idx(compose(ops[a], {y, x}));
      for (std::size_t b = 0; b < size; ++b) {
        meet[a * size + b] = idx(compose(ops[a], {ops[b], y}));
        join[a * size + b] = idx(compose(ops[a], {x, ops[b]}));
      }
    }
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        const Elem l = meet[a * size + neg[b]];
        const Elem r = meet[neg[a] * size + b];
        add[a * size + b] = join[l * size + r];
        mul[a * size + b] = meet[a * size + b];
      }
    }
  } else {
    const Operation p = malcev_operation(t);
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        add[a * size + b] = idx(compose(p, {ops[a], y, ops[b]}));
        mul[a * size + b] = idx(compose(ops[a], {ops[b], y}));
      }
    }
  }
  const Elem zero = idx(y);
  const Elem one = idx(x);

  Report& ver = out.verification;
  const auto violations = ring_axiom_violations(size, add, mul, zero, one);
  ver.record("T(2)-ring-axioms", violations.empty(), violations.empty() ? "" : violations.front());
  if (!violations.empty()) {
    throw Error(ErrorCode::InvalidRing, "T(2) of " + t.name() + ": " + violations.front());
  }
  std::vector<std::string> labels;
  for (const Operation& op : ops) labels.push_back(vec(op));
  out.ring = FiniteRing::from_tables(size, std::move(add), std::move(mul), zero, one,
                                     std::move(labels), "T2(" + t.name() + ")");
  ver.record("T(2)-commutative", is_commutative(out.ring), "multiplication is not commutative");
  if (hyper) ver.record("T(2)-boolean", is_boolean(out.ring), "some a.a != a");

  out.embedding.resize(base.size());
  for (Elem r = 0; r < base.size(); ++r) out.embedding[r] = idx(binary_of(t, r));
  ver.record("embedding-ring-isomorphism", is_ring_isomorphism(base, out.ring, out.embedding),
             "r -> (r,1-r) is not a bijective ring homomorphism");

  if (hyper) {
    const BooleanView bv = boolean_view(base);
    const BooleanView tv = boolean_view(out.ring);
    std::string bad;
    for (Elem a = 0; a < base.size() && bad.empty(); ++a) {
      if (tv.negate(out.embedding[a]) != out.embedding[bv.negate(a)]) bad = "not " + base.label(a);
      for (Elem b = 0; b < base.size() && bad.empty(); ++b) {
        if (tv.join(out.embedding[a], out.embedding[b]) != out.embedding[bv.join(a, b)] ||
            tv.meet(out.embedding[a], out.embedding[b]) != out.embedding[bv.meet(a, b)]) {
          bad = "a=" + base.label(a) + " b=" + base.label(b);
        }
      }
    }
    ver.record("embedding-lattice", bad.empty(), bad);
  } else {
    const Operation p = malcev_operation(t);
    std::string bad;
    for (Elem a = 0; a < base.size() && bad.empty(); ++a) {
      // -a = p(y, a, y)
      const Elem lhs = idx(compose(p, {y, binary_of(t, a), y}));
      if (lhs != out.ring.neg(out.embedding[a])) bad = "a=" + base.label(a);
    }
    ver.record("embedding-negation", bad.empty(), bad);
  }
  return out;
}

Report verify_phi_morphism(const Theory& t, std::size_t max_n, std::size_t max_m, std::uint64_t cap) {
  const BinaryRing br = ring_on_binary(t);
  const FiniteRing& T2 = br.ring;
  std::map<std::vector<Elem>, Elem> index;
  for (std::size_t i = 0; i < br.carrier.size(); ++i) {
    const auto c = br.carrier[i].coeffs();
    index.emplace(std::vector<Elem>(c.begin(), c.end()), static_cast<Elem>(i));
  }
  auto phi = [&](const Operation& f) {
    std::vector<Elem> out;
    for (const Operation& c : coefficients(f)) {
      const auto v = c.coeffs();
      out.push_back(index.at(std::vector<Elem>(v.begin(), v.end())));
    }
    return out;
  };
  const bool hyper = t.flavor() == Flavor::Hyperaffine;

  Report report;
  for (std::size_t m = 1; m <= max_m; ++m) {
    // phi lands in the constrained vectors of the T(2) ring.
    std::string bad;
    for (const Operation& g : enumerate(t, m, cap)) {
      const std::vector<Elem> v = phi(g);
      bool ok = ring_sum(T2, v) == T2.one();
      for (std::size_t i = 0; ok && hyper && i < v.size(); ++i) {
        for (std::size_t j = i + 1; ok && j < v.size(); ++j) ok = T2.mul(v[i], v[j]) == T2.zero();
      }
      if (!ok) {
        bad = "f=" + vec(g);
        break;
      }
    }
    report.record("phi-constraint[n=" + std::to_string(m) + "]", bad.empty(), bad);
  }
  for (std::size_t n = 1; n <= max_n; ++n) {
    const std::vector<Operation> fs = enumerate(t, n, cap);
    for (std::size_t m = 1; m <= max_m; ++m) {
      const std::vector<Operation> gs = enumerate(t, m, cap);
      const std::uint64_t instances = sat_mul(fs.size(), sat_pow(gs.size(), n));
      const std::string id = "phi[n=" + std::to_string(n) + ",m=" + std::to_string(m) + "]";
      if (instances > cap) {
        throw Error(ErrorCode::EnumerationTooLarge,
                    id + " needs " + std::to_string(instances) + " instances, cap " + std::to_string(cap));
      }
      std::vector<std::vector<Elem>> phi_g;
      for (const Operation& g : gs) phi_g.push_back(phi(g));
      std::string bad;
      for (const Operation& f : fs) {
        const std::vector<Elem> pf = phi(f);
        const bool done = for_each_tuple(gs.size(), n, [&](std::span<const std::size_t> idx) {
          const std::vector<Operation> args = pick(gs, idx);
          const std::vector<Elem> lhs = phi(compose(f, args, m));
          for (std::size_t j = 0; j < m; ++j) {
            Elem rhs = T2.zero();
            for (std::size_t i = 0; i < n; ++i) rhs = T2.add(rhs, T2.mul(phi_g[idx[i]][j], pf[i]));
            if (lhs[j] != rhs) {
              bad = "f=" + vec(f) + " gs=" + vec_list(args) + " coefficient " + std::to_string(j + 1);
              return false;
            }
          }
          return true;
        });
        if (!done) break;
      }
      report.record(id, bad.empty(), bad);
    }
  }
  return report;
}

// ---- Suites ---------------------------------------------------------------

Report verify_theory(const Theory& t, std::size_t max_arity, std::uint64_t cap) {
  Report report;
  std::vector<std::vector<Operation>> levels;
  for (std::size_t n = 0; n <= max_arity; ++n) {
    levels.push_back(enumerate(t, n, cap));
    const bool ok = levels.back().size() == count_operations(t, n) &&
                    std::adjacent_find(levels.back().begin(), levels.back().end(),
                                       [](const Operation& a, const Operation& b) { return !(a < b); }) ==
                        levels.back().end();
    report.record("enumerate[n=" + std::to_string(n) + "]", ok,
                  std::to_string(levels.back().size()) + " operations, expected " +
                      std::to_string(count_operations(t, n)));
  }
  const std::string nstr = "[n<=" + std::to_string(max_arity) + "]";
  SplitMix64 rng(kSuiteSeed);

  {
    std::string bad;
    for (std::size_t n = 0; n <= max_arity && bad.empty(); ++n) {
      const std::vector<Operation> ps = projections(t, n);
      for (const Operation& f : levels[n]) {
        if (!(compose(f, ps, n) == f)) {
          bad = "f=" + vec(f);
          break;
        }
      }
    }
    report.record("unit-right" + nstr, bad.empty(), bad);
  }
  for (std::size_t n = 1; n <= max_arity; ++n) {
    std::string bad;
    std::string tag;
    for (std::size_t m = 0; m <= max_arity && bad.empty(); ++m) {
      const auto& pool = levels[m];
      if (pool.empty()) continue;
      tag = scan_tuples(pool.size(), n, rng, [&](std::span<const std::size_t> idx) {
        const std::vector<Operation> gs = pick(pool, idx);
        for (std::size_t i = 1; i <= n; ++i) {
          if (!(compose(projection(t, n, i), gs, m) == gs[i - 1])) {
            bad = "pi=" + std::to_string(i) + "/" + std::to_string(n) + " gs=" + vec_list(gs);
            return false;
          }
        }
        return true;
      });
    }
    report.record("unit-left[n=" + std::to_string(n) + tag + "]", bad.empty(), bad);
  }
  // f o (g_i o hs) = (f o gs) o hs
  for (std::size_t n = 1; n <= max_arity; ++n) {
    for (std::size_t m = 1; m <= max_arity; ++m) {
      for (std::size_t l = 1; l <= max_arity; ++l) {
        const auto& fs = levels[n];
        const auto& gp = levels[m];
        const auto& hp = levels[l];
        if (fs.empty() || gp.empty() || hp.empty()) continue;
        std::string bad;
        const std::uint64_t space = sat_mul(sat_mul(fs.size(), sat_pow(gp.size(), n)), sat_pow(hp.size(), m));
        auto check = [&](std::size_t fi, std::span<const std::size_t> gi, std::span<const std::size_t> hi) {
          const std::vector<Operation> gs = pick(gp, gi);
          const std::vector<Operation> hs = pick(hp, hi);
          std::vector<Operation> inner;
          for (const Operation& g : gs) inner.push_back(compose(g, hs, l));
          const Operation lhs = compose(fs[fi], inner, l);
          const Operation rhs = compose(compose(fs[fi], gs, m), hs, l);
          if (!(lhs == rhs)) {
            bad = "f=" + vec(fs[fi]) + " gs=" + vec_list(gs) + " hs=" + vec_list(hs);
            return false;
          }
          return true;
        };
        std::string tag;
        if (space <= kExhaustiveBudget) {
          for (std::size_t fi = 0; fi < fs.size() && bad.empty(); ++fi) {
            for_each_tuple(gp.size(), n, [&](std::span<const std::size_t> gi) {
              return for_each_tuple(hp.size(), m, [&](std::span<const std::size_t> hi) {
                return check(fi, gi, hi);
              });
            });
          }
        } else {
          std::vector<std::size_t> gi(n), hi(m);
          for (std::size_t s = 0; s < kSuiteSamples && bad.empty(); ++s) {
            const std::size_t fi = static_cast<std::size_t>(rng.below(fs.size()));
            for (auto& i : gi) i = static_cast<std::size_t>(rng.below(gp.size()));
            for (auto& i : hi) i = static_cast<std::size_t>(rng.below(hp.size()));
            check(fi, gi, hi);
          }
          tag = ",sampled:" + std::to_string(kSuiteSamples);
        }
        report.record("assoc[n=" + std::to_string(n) + ",m=" + std::to_string(m) + ",l=" +
                          std::to_string(l) + tag + "]",
                      bad.empty(), bad);
      }
    }
  }

  for (std::size_t n = 0; n <= max_arity && t.flavor() != Flavor::FullModule; ++n) {
    std::string bad;
    for (const Operation& f : levels[n]) {
      if (!is_idempotent(f)) {
        bad = "f=" + vec(f);
        break;
      }
    }
    report.record("idempotent[n=" + std::to_string(n) + "]", bad.empty(), bad);
  }
  for (std::size_t n = 1; n <= max_arity; ++n) {
    for (std::size_t m = 1; m <= max_arity; ++m) {
      std::string bad;
      for (const Operation& f : levels[n]) {
        for (const Operation& g : levels[m]) {
          if (!commute(f, g)) {
            bad = "f=" + vec(f) + " g=" + vec(g);
            break;
          }
        }
        if (!bad.empty()) break;
      }
      report.record("commute[n=" + std::to_string(n) + ",m=" + std::to_string(m) + "]", bad.empty(), bad);
    }
  }

  switch (t.flavor()) {
    case Flavor::Hyperaffine:
    case Flavor::DegenerateU:
    case Flavor::DegenerateUPrime: {
      for (std::size_t n = 0; n <= max_arity; ++n) {
        std::string bad;
        for (const Operation& f : levels[n]) {
          if (!splits(f)) {
            bad = "f=" + vec(f);
            break;
          }
        }
        report.record("splits[n=" + std::to_string(n) + "]", bad.empty(), bad);
      }
      if (t.flavor() == Flavor::Hyperaffine) report.append(check_c5(t, max_arity, C5Route::Auto, cap));
      if (!t.is_degenerate() && max_arity >= 3) {
        const std::vector<Operation> found = malcev_operations(t);
        report.record("no-malcev[n=3]", found.empty(), found.empty() ? "" : "p=" + vec(found.front()));
      }
      break;
    }
    case Flavor::Affine: {
      const Operation p = malcev_operation(t);
      report.record("malcev", is_malcev(p), "p=" + vec(p));
      report.append(check_m1_m2(t, p));
      const std::vector<Operation> found = malcev_operations(t);
      report.record("malcev-unique[n=3]", found.size() == 1 && found.front() == p,
                    std::to_string(found.size()) + " Mal'cev operations");
      if (!t.is_degenerate()) report.record("malcev-does-not-split", !splits(p), "p=" + vec(p));
      break;
    }
    case Flavor::FullModule:
      break;
  }
  return report;
}

Report theory_roundtrip(const Theory& t, std::size_t max_arity, std::uint64_t cap) {
  const BinaryRing br = ring_on_binary(t);
  Report report;
  report.append(br.verification);
  const bool hyper = t.flavor() == Flavor::Hyperaffine;
  for (std::size_t n = 1; n <= max_arity; ++n) {
    std::string bad_rc, bad_cr;
    for (const Operation& f : enumerate(t, n, cap)) {
      std::vector<Elem> coeffs;
      for (const Operation& c : coefficients(f)) coeffs.push_back(element_of(c));
      const Operation back = hyper ? reconstruct_hyperaffine(t, coeffs) : reconstruct_affine(t, coeffs);
      if (bad_rc.empty() && !(back == f)) bad_rc = "f=" + vec(f);
      // Enumerated operations are exactly the constrained vectors, so the
      // same loop covers coefficient o reconstruct on every input.
      const Operation built = hyper ? reconstruct_hyperaffine(t, f.coeffs()) : reconstruct_affine(t, f.coeffs());
      std::vector<Elem> again;
      for (const Operation& c : coefficients(built)) again.push_back(element_of(c));
      if (bad_cr.empty() && !std::equal(again.begin(), again.end(), f.coeffs().begin(), f.coeffs().end())) {
        bad_cr = "coeffs=" + vec(f);
      }
    }
    report.record("reconstruct-of-coefficients[n=" + std::to_string(n) + "]", bad_rc.empty(), bad_rc);
    report.record("coefficients-of-reconstruct[n=" + std::to_string(n) + "]", bad_cr.empty(), bad_cr);
  }
  report.append(verify_phi_morphism(t, max_arity, max_arity, cap));
  return report;
}

// ---- Mal'cev expressibility -----------------------------------------------

std::string_view verdict_name(MalcevSearch::Verdict v) noexcept {
  switch (v) {
    case MalcevSearch::Verdict::Found: return "found";
    case MalcevSearch::Verdict::Exhausted: return "exhausted";
    case MalcevSearch::Verdict::DepthCapReached: return "depth-cap-reached";
  }
  return "?";
}

MalcevSearch malcev_binary_expressibility(const FiniteRing& r, unsigned depth_cap) {
  const Theory t = Theory::affine(r);
  MalcevSearch out;
  out.homs_to_f2 = homs_to_f2(r).size();

  struct Node {
    Operation op;
    std::string term;
    unsigned depth;
  };
  std::vector<Node> nodes;
  std::map<std::vector<Elem>, std::size_t> seen;
  const Operation target = malcev_operation(t);
  auto key = [](const Operation& op) { return std::vector<Elem>(op.coeffs().begin(), op.coeffs().end()); };
  auto add = [&](Operation op, std::string term, unsigned depth) {
    if (!seen.emplace(key(op), nodes.size()).second) return false;
    nodes.push_back({std::move(op), std::move(term), depth});
    return true;
  };
  const std::vector<Operation> xyz = projections(t, 3);
  add(xyz[0], "x", 0);
  add(xyz[1], "y", 0);
  add(xyz[2], "z", 0);

  auto finish = [&]() {
    out.closure_size = nodes.size();
    out.consistent = !(out.verdict == MalcevSearch::Verdict::Found && out.homs_to_f2 > 0) &&
                     !(out.verdict == MalcevSearch::Verdict::Exhausted && out.homs_to_f2 == 0);
    return out;
  };
  if (auto it = seen.find(key(target)); it != seen.end()) {
    out.verdict = MalcevSearch::Verdict::Found;
    out.witness = nodes[it->second].term;
    return finish();
  }

  // (r, 1-r) for r other than 0 and 1; those are projections.
  std::vector<Elem> guards;
  for (Elem e = 0; e < r.size(); ++e) {
    if (e != r.zero() && e != r.one()) guards.push_back(e);
  }
  for (unsigned d = 1; d <= depth_cap; ++d) {
    const std::size_t frontier = nodes.size();
    bool grew = false;
    for (Elem g : guards) {
      const Operation b = binary_of(t, g);
      for (std::size_t i = 0; i < frontier; ++i) {
        for (std::size_t j = 0; j < frontier; ++j) {
          if (std::max(nodes[i].depth, nodes[j].depth) + 1 != d) continue;
          Operation v = compose(b, {nodes[i].op, nodes[j].op});
          const bool hit = v == target;
          std::string term = r.label(g) + "(" + nodes[i].term + "," + nodes[j].term + ")";
          if (add(std::move(v), std::move(term), d)) {
            grew = true;
            if (hit) {
              out.verdict = MalcevSearch::Verdict::Found;
              out.witness = nodes.back().term;
              out.depth = d;
              return finish();
            }
          }
        }
      }
    }
    if (!grew) {
      out.verdict = MalcevSearch::Verdict::Exhausted;
      out.depth = d;
      return finish();
    }
  }
  out.verdict = MalcevSearch::Verdict::DepthCapReached;
  out.depth = depth_cap;
  return finish();
}

}  // namespace clonekit
