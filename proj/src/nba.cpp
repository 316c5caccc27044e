#include "clonekit/nba.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "clonekit/error.hpp"
#include "clonekit/random.hpp"
#include "tuples.hpp"

namespace clonekit {

using detail::for_each_tuple;
using detail::sat_pow;

namespace {

std::string coeff_label(const Operation& op) {
  std::string out = "[";
  for (std::size_t i = 0; i < op.arity(); ++i) {
    if (i) out += ',';
    out += op.theory().ring().label(op[i]);
  }
  return out + "]";
}

std::vector<Elem> as_elems(std::span<const std::size_t> idx) {
  return std::vector<Elem>(idx.begin(), idx.end());
}

// Exhaustive over size^vars assignments within cap, else `samples` seeded
// draws. Returns the tag to put in the identity ("" when exhaustive).
std::string scan_assignments(std::size_t size, std::size_t vars, const NbaCheckOptions& opts,
                             const std::function<bool(std::span<const std::size_t>)>& fn) {
  if (sat_pow(size, vars) <= opts.exhaustive_cap) {
    for_each_tuple(size, vars, fn);
    return "";
  }
  SplitMix64 rng(opts.seed);
  std::vector<std::size_t> idx(vars);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    for (auto& i : idx) i = static_cast<std::size_t>(rng.below(size));
    if (!fn(idx)) break;
  }
  return "[sampled:" + std::to_string(opts.samples) + ",seed:" + std::to_string(opts.seed) + "]";
}

}  // namespace

// ---- NBA ------------------------------------------------------------------

NBA NBA::from_table(std::size_t carrier, std::size_t n, std::vector<Elem> q,
                    std::vector<Elem> constants, std::vector<std::string> labels) {
  NBA a;
  a.size_ = carrier;
  a.n_ = n;
  a.table_ = std::move(q);
  a.constants_ = std::move(constants);
  a.labels_ = std::move(labels);
  if (a.table_.size() != sat_pow(carrier, n + 1)) {
    throw Error(ErrorCode::InvalidArgument, "q table needs " + std::to_string(sat_pow(carrier, n + 1)) +
                                                " entries, got " + std::to_string(a.table_.size()));
  }
  a.validate();
  return a;
}

NBA NBA::from_function(std::size_t carrier, std::size_t n, QFunction q, std::vector<Elem> constants,
                       std::vector<std::string> labels) {
  NBA a;
  a.size_ = carrier;
  a.n_ = n;
  a.constants_ = std::move(constants);
  a.labels_ = std::move(labels);
  if (n + 1 <= kDenseMaxArity && carrier <= kDenseMaxCarrier) {
    a.table_.reserve(sat_pow(carrier, n + 1));
    for_each_tuple(carrier, n + 1, [&](std::span<const std::size_t> idx) {
      const std::vector<Elem> bs(idx.begin() + 1, idx.end());
      a.table_.push_back(q(static_cast<Elem>(idx[0]), bs));
      return true;
    });
  } else {
    a.fn_ = std::move(q);
  }
  a.validate();
  return a;
}

void NBA::validate() const {
  if (size_ == 0) throw Error(ErrorCode::InvalidArgument, "empty carrier");
  if (n_ == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  if (constants_.size() != n_) {
    throw Error(ErrorCode::InvalidArgument, "need " + std::to_string(n_) + " constants");
  }
  for (Elem c : constants_) {
    if (c >= size_) throw Error(ErrorCode::IndexOutOfRange, "constant " + std::to_string(c));
  }
  for (Elem v : table_) {
    if (v >= size_) throw Error(ErrorCode::IndexOutOfRange, "q table entry " + std::to_string(v));
  }
  if (!labels_.empty() && labels_.size() != size_) {
    throw Error(ErrorCode::InvalidArgument, "label count does not match carrier");
  }
}

std::string NBA::label(Elem x) const {
  if (labels_.empty()) return std::to_string(x);
  return labels_.at(x);
}

std::size_t NBA::table_index(Elem a, std::span<const Elem> bs) const {
  std::size_t idx = a;
  for (Elem b : bs) idx = idx * size_ + b;
  return idx;
}

Elem NBA::q(Elem a, std::span<const Elem> bs) const {
  if (!table_.empty()) return table_[table_index(a, bs)];
  return fn_(a, bs);
}

NBA NBA::with_entry(std::size_t index, Elem value) const {
  if (table_.empty()) throw Error(ErrorCode::InvalidArgument, "with_entry needs a dense q table");
  if (index >= table_.size() || value >= size_) {
    throw Error(ErrorCode::IndexOutOfRange, "q table entry " + std::to_string(index));
  }
  NBA out = *this;
  out.table_[index] = value;
  return out;
}

TheoryNBA nba_from_theory(const Theory& t, std::size_t n, std::uint64_t cap) {
  if (t.flavor() != Flavor::Hyperaffine) throw Error(ErrorCode::TheoryMismatch, t.name() + " is not hyperaffine");
  if (t.is_degenerate()) throw Error(ErrorCode::DegenerateTheory, t.name() + " is degenerate");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 1");
  std::vector<Operation> carrier = enumerate(t, n, cap);
  std::map<std::vector<Elem>, Elem> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    const auto c = carrier[i].coeffs();
    index.emplace(std::vector<Elem>(c.begin(), c.end()), static_cast<Elem>(i));
    labels.push_back(coeff_label(carrier[i]));
  }
  std::vector<Elem> constants;
  for (const Operation& p : projections(t, n)) {
    constants.push_back(index.at(std::vector<Elem>(p.coeffs().begin(), p.coeffs().end())));
  }
  auto q = [carrier, index, n](Elem a, std::span<const Elem> bs) {
    std::vector<Operation> args;
    args.reserve(bs.size());
    for (Elem b : bs) args.push_back(carrier[b]);
    const Operation r = compose(carrier[a], args, n);
    return index.at(std::vector<Elem>(r.coeffs().begin(), r.coeffs().end()));
  };
  NBA a = NBA::from_function(carrier.size(), n, q, std::move(constants), std::move(labels));
  return TheoryNBA{std::move(a), t, std::move(carrier)};
}

// ---- Axioms ---------------------------------------------------------------

Report check_axioms(const NBA& a, const NbaCheckOptions& opts) {
  Report report;
  const std::size_t N = a.size();
  const std::size_t n = a.dimension();
  auto lab = [&](Elem x) { return a.label(x); };
  auto list = [&](std::span<const Elem> xs) {
    std::string out = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ',';
      out += lab(xs[i]);
    }
    return out + ")";
  };

  {  // H1: q(e_i, x_1..x_n) = x_i
    std::string bad;
    std::string tag = scan_assignments(N, n, opts, [&](std::span<const std::size_t> idx) {
      const std::vector<Elem> xs = as_elems(idx);
      for (std::size_t i = 1; i <= n; ++i) {
        if (a.q(a.e(i), xs) != xs[i - 1]) {
          bad = "i=" + std::to_string(i) + " xs=" + list(xs);
          return false;
        }
      }
      return true;
    });
    report.record("H1" + tag, bad.empty(), bad);
  }
  {  // H2: q(y, x..x) = x
    std::string bad;
    std::string tag = scan_assignments(N, 2, opts, [&](std::span<const std::size_t> idx) {
      const std::vector<Elem> xs(n, static_cast<Elem>(idx[1]));
      if (a.q(static_cast<Elem>(idx[0]), xs) != idx[1]) {
        bad = "y=" + lab(static_cast<Elem>(idx[0])) + " x=" + lab(static_cast<Elem>(idx[1]));
        return false;
      }
      return true;
    });
    report.record("H2" + tag, bad.empty(), bad);
  }
  {  // H3: q(y, q(y,row_1), .., q(y,row_n)) = q(y, row_1[1], .., row_n[n])
    // For fixed y the left side sees only v_i = q(y,row_i) and the right side
    // only d_i = row_i[i], and the rows are independent, so it suffices to
    // range over the realized pairs (v_i, d_i).
    std::string bad;
    std::string tag;
    bool exact = true;
    for (Elem y = 0; y < N && bad.empty() && exact; ++y) {
      std::vector<std::vector<std::pair<Elem, Elem>>> pairs(n);
      std::vector<std::vector<std::vector<Elem>>> witness(n);
      std::uint64_t product = 1;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<char> seen(N * N, 0);
        for_each_tuple(N, n, [&](std::span<const std::size_t> idx) {
          const std::vector<Elem> row = as_elems(idx);
          const Elem v = a.q(y, row);
          const Elem d = row[i];
          if (!seen[v * N + d]) {
            seen[v * N + d] = 1;
            pairs[i].emplace_back(v, d);
            witness[i].push_back(row);
          }
          return true;
        });
        product = detail::sat_mul(product, pairs[i].size());
      }
      if (product > opts.exhaustive_cap) {
        exact = false;
        break;
      }
      // mixed-radix walk over pairs[0] x .. x pairs[n-1]
      std::vector<std::size_t> pos(n, 0);
      std::vector<Elem> vs(n), ds(n);
      bool more = true;
      while (more) {
        for (std::size_t i = 0; i < n; ++i) {
          vs[i] = pairs[i][pos[i]].first;
          ds[i] = pairs[i][pos[i]].second;
        }
        if (a.q(y, vs) != a.q(y, ds)) {
          bad = "y=" + lab(y) + " rows=";
          for (std::size_t i = 0; i < n; ++i) bad += list(witness[i][pos[i]]);
          break;
        }
        more = false;
        for (std::size_t k = n; k-- > 0;) {
          if (++pos[k] < pairs[k].size()) {
            more = true;
            break;
          }
          pos[k] = 0;
        }
      }
    }
    if (!exact) {
      bad.clear();
      tag = scan_assignments(N, 1 + n * n, opts, [&](std::span<const std::size_t> idx) {
        const Elem y = static_cast<Elem>(idx[0]);
        std::vector<Elem> inner(n), diag(n);
        for (std::size_t i = 0; i < n; ++i) {
          const std::vector<Elem> row = as_elems(idx.subspan(1 + i * n, n));
          inner[i] = a.q(y, row);
          diag[i] = row[i];
        }
        if (a.q(y, inner) != a.q(y, diag)) {
          bad = "y=" + lab(y) + " xs=" + list(as_elems(idx.subspan(1)));
          return false;
        }
        return true;
      });
    }
    report.record("H3" + tag, bad.empty(), bad);
  }
  {  // H4: q(y, q(z_1,row_1), ..) = q(q(y,z), q(y,col_1), .., q(y,col_n))
    std::string bad;
    std::string tag = scan_assignments(N, 1 + n + n * n, opts, [&](std::span<const std::size_t> idx) {
      const Elem y = static_cast<Elem>(idx[0]);
      const std::vector<Elem> zs = as_elems(idx.subspan(1, n));
      const auto xs = idx.subspan(1 + n);
      std::vector<Elem> inner(n), cols(n), col(n);
      for (std::size_t i = 0; i < n; ++i) inner[i] = a.q(zs[i], as_elems(xs.subspan(i * n, n)));
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = static_cast<Elem>(xs[i * n + j]);
        cols[j] = a.q(y, col);
      }
      if (a.q(y, inner) != a.q(a.q(y, zs), cols)) {
        bad = "y=" + lab(y) + " zs=" + list(zs) + " xs=" + list(as_elems(xs));
        return false;
      }
      return true;
    });
    report.record("H4" + tag, bad.empty(), bad);
  }
  {  // H5: q(y, e_1..e_n) = y
    std::string bad;
    const std::vector<Elem> es(a.constants().begin(), a.constants().end());
    for (Elem y = 0; y < N; ++y) {
      if (a.q(y, es) != y) {
        bad = "y=" + lab(y);
        break;
      }
    }
    report.record("H5", bad.empty(), bad);
  }
  return report;
}

// ---- Coordinates ----------------------------------------------------------

std::vector<Elem> coordinates(const NBA& a, Elem x) {
  const std::size_t n = a.dimension();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "coordinates need dimension at least 2");
  std::vector<Elem> out;
  std::vector<Elem> args(n, a.e(2));
  for (std::size_t i = 0; i < n; ++i) {
    args.assign(n, a.e(2));
    args[i] = a.e(1);
    out.push_back(a.q(x, args));
  }
  return out;
}

std::optional<Elem> CoordinateAlgebra::index_of(Elem parent) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), parent);
  if (it == elements.end() || *it != parent) return std::nullopt;
  return static_cast<Elem>(it - elements.begin());
}

CoordinateAlgebra coordinate_algebra(const NBA& a) {
  const std::size_t n = a.dimension();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "B_A needs dimension at least 2");
  std::vector<Elem> args(n);
  for (std::size_t i = 2; i < n; ++i) args[i] = a.e(i + 1);
  auto t = [&](Elem x, Elem b, Elem c) {
    args[0] = b;
    args[1] = c;
    return a.q(x, args);
  };
  const Elem one = a.e(1);
  const Elem zero = a.e(2);

  CoordinateAlgebra ca;
  for (Elem x = 0; x < a.size(); ++x) {
    bool member = true;
    for (Elem b = 0; b < a.size() && member; ++b) member = t(x, b, b) == b;
    if (member) ca.elements.push_back(x);
  }
  const auto& E = ca.elements;
  const std::size_t m = E.size();

  std::string bad;
  for (std::size_t i = 0; i < m && bad.empty(); ++i) {
    for (std::size_t j = 0; j < m && bad.empty(); ++j) {
      for (std::size_t k = 0; k < m && bad.empty(); ++k) {
        if (!ca.index_of(t(E[i], E[j], E[k]))) {
          bad = "t(" + a.label(E[i]) + "," + a.label(E[j]) + "," + a.label(E[k]) + ")";
        }
      }
    }
  }
  if (!ca.index_of(one) || !ca.index_of(zero)) bad = "constants outside B_A";
  ca.checks.record("B_A-closed", bad.empty(), bad);

  if (bad.empty()) {
    std::vector<Elem> add(m * m), mul(m * m);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
      labels.push_back(a.label(E[i]));
      for (std::size_t j = 0; j < m; ++j) {
        const Elem not_b = t(E[j], zero, one);
        mul[i * m + j] = *ca.index_of(t(E[i], E[j], zero));
        add[i * m + j] = *ca.index_of(t(E[i], not_b, E[j]));
      }
    }
    const auto violations = ring_axiom_violations(m, add, mul, *ca.index_of(zero), *ca.index_of(one));
    ca.checks.record("B_A-ring", violations.empty(), violations.empty() ? "" : violations.front());
    if (violations.empty()) {
      ca.ring = FiniteRing::from_tables(m, std::move(add), std::move(mul), *ca.index_of(zero),
                                        *ca.index_of(one), std::move(labels), "B_A");
      ca.checks.record("B_A-boolean", is_boolean(*ca.ring), "some a.a != a");
    }
  }

  // The six conditional-disjunction identities with q = t, 1 = e_1, 0 = e_2,
  // all variables ranging over B_A.
  auto scan = [&](const char* id, std::size_t vars,
                  const std::function<bool(std::span<const Elem>)>& holds) {
    std::string where;
    for_each_tuple(m, vars, [&](std::span<const std::size_t> idx) {
      std::vector<Elem> v;
      for (std::size_t i : idx) v.push_back(E[i]);
      if (!holds(v)) {
        where = "(";
        for (std::size_t i = 0; i < v.size(); ++i) where += (i ? "," : "") + a.label(v[i]);
        where += ")";
        return false;
      }
      return true;
    });
    ca.checks.record(id, where.empty(), where);
  };
  scan("dicker:recovery", 1, [&](auto v) { return t(v[0], one, zero) == v[0]; });
  scan("dicker:units", 2, [&](auto v) { return t(one, v[0], v[1]) == v[0] && t(zero, v[0], v[1]) == v[1]; });
  scan("dicker:guard-composition", 5, [&](auto v) {
    return t(v[0], t(v[1], v[3], v[4]), t(v[2], v[3], v[4])) == t(t(v[0], v[1], v[2]), v[3], v[4]);
  });
  scan("dicker:idempotence", 2, [&](auto v) { return t(v[0], v[1], v[1]) == v[1]; });
  scan("dicker:commutation", 6, [&](auto v) {
    return t(v[0], t(v[1], v[2], v[3]), t(v[1], v[4], v[5])) ==
           t(v[1], t(v[0], v[2], v[4]), t(v[0], v[3], v[5]));
  });
  scan("dicker:splitting", 5, [&](auto v) {
    return t(v[0], t(v[0], v[1], v[2]), t(v[0], v[3], v[4])) == t(v[0], v[1], v[4]);
  });
  return ca;
}

std::optional<std::vector<Elem>> coordinate_isomorphism(const CoordinateAlgebra& ca,
                                                        const FiniteRing& target) {
  if (!ca.ring || !is_boolean(target)) return std::nullopt;
  auto iso = boolean_isomorphism(boolean_view(*ca.ring), boolean_view(target));
  if (iso && !is_ring_isomorphism(*ca.ring, target, *iso)) return std::nullopt;
  return iso;
}

// ---- psi ------------------------------------------------------------------

std::string_view verdict_name(PsiResult::Verdict v) noexcept {
  switch (v) {
    case PsiResult::Verdict::Ok: return "ok";
    case PsiResult::Verdict::NotIsomorphic: return "not-isomorphic";
    case PsiResult::Verdict::NotBijective: return "not-bijective";
    case PsiResult::Verdict::NotHomomorphic: return "not-homomorphic";
  }
  return "?";
}

PsiResult psi_reconstruct(const NBA& a, const Theory& target, std::uint64_t cap) {
  if (target.flavor() != Flavor::Hyperaffine) {
    throw Error(ErrorCode::TheoryMismatch, target.name() + " is not hyperaffine");
  }
  PsiResult out;
  auto stop = [&](PsiResult::Verdict v, const std::string& id, std::string why) {
    out.verdict = v;
    out.counterexample = why;
    out.report.fail(id, std::move(why));
    return out;
  };
  const std::size_t N = a.size();
  const std::size_t n = a.dimension();

  const CoordinateAlgebra ca = coordinate_algebra(a);
  const auto iso = coordinate_isomorphism(ca, target.ring());
  if (!iso) return stop(PsiResult::Verdict::NotIsomorphic, "B_A-isomorphic", "B_A !~ " + target.ring().spec());
  out.report.pass("B_A-isomorphic");

  for (Elem x = 0; x < N; ++x) {
    std::vector<Elem> coeffs;
    for (Elem c : coordinates(a, x)) {
      const auto k = ca.index_of(c);
      if (!k) return stop(PsiResult::Verdict::NotHomomorphic, "psi-well-defined", "coordinate of " + a.label(x) + " outside B_A");
      coeffs.push_back((*iso)[*k]);
    }
    if (!target.contains(coeffs)) {
      return stop(PsiResult::Verdict::NotHomomorphic, "psi-well-defined",
                  "coordinates of " + a.label(x) + " are not a partition of unity");
    }
    out.image.emplace_back(target, std::move(coeffs));
  }
  out.report.pass("psi-well-defined");

  std::map<std::vector<Elem>, Elem> back;
  for (Elem x = 0; x < N; ++x) {
    const auto c = out.image[x].coeffs();
    auto [it, fresh] = back.emplace(std::vector<Elem>(c.begin(), c.end()), x);
    if (!fresh) {
      return stop(PsiResult::Verdict::NotBijective, "psi-bijective",
                  a.label(it->second) + " and " + a.label(x) + " share coordinates");
    }
  }
  if (N != count_operations(target, n)) {
    return stop(PsiResult::Verdict::NotBijective, "psi-bijective",
                std::to_string(N) + " elements onto " + std::to_string(count_operations(target, n)));
  }
  out.report.pass("psi-bijective");

  for (std::size_t i = 1; i <= n; ++i) {
    if (!(out.image[a.e(i)] == projection(target, n, i))) {
      return stop(PsiResult::Verdict::NotHomomorphic, "psi-constants", "e" + std::to_string(i));
    }
  }
  out.report.pass("psi-constants");

  if (sat_pow(N, n + 1) > cap) {
    throw Error(ErrorCode::EnumerationTooLarge, "psi homomorphism scan over " + std::to_string(N) +
                                                    "^" + std::to_string(n + 1) + " entries");
  }
  std::string bad;
  for_each_tuple(N, n + 1, [&](std::span<const std::size_t> idx) {
    const std::vector<Elem> bs(idx.begin() + 1, idx.end());
    std::vector<Operation> args;
    for (Elem b : bs) args.push_back(out.image[b]);
    const Elem x = static_cast<Elem>(idx[0]);
    if (!(out.image[a.q(x, bs)] == compose(out.image[x], args, n))) {
      bad = "a=" + a.label(x) + " bs=(";
      for (std::size_t i = 0; i < bs.size(); ++i) bad += (i ? "," : "") + a.label(bs[i]);
      bad += ")";
      return false;
    }
    return true;
  });
  if (!bad.empty()) return stop(PsiResult::Verdict::NotHomomorphic, "psi-homomorphism", bad);
  out.report.pass("psi-homomorphism");
  return out;
}

Report transport_axioms(const NBA& a, const Theory& target, std::uint64_t cap) {
  const PsiResult psi = psi_reconstruct(a, target, cap);
  Report report = psi.report;
  const std::size_t n = a.dimension();
  if (psi.verdict != PsiResult::Verdict::Ok) {
    for (const char* h : {"H1", "H2", "H3", "H4", "H5"}) {
      report.fail(std::string(h) + "[free-model]", "psi " + std::string(verdict_name(psi.verdict)));
    }
    return report;
  }
  const Theory& t = target;
  const std::vector<Operation> ops = enumerate(t, n, cap);
  const std::vector<Operation> xs = projections(t, n);
  const std::vector<Operation> grid = projections(t, n * n);
  auto row = [&](std::size_t i) {
    return std::vector<Operation>(grid.begin() + static_cast<std::ptrdiff_t>(i * n),
                                  grid.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  };
  auto tag = [](std::uint64_t count) { return "[free-model:" + std::to_string(count) + "]"; };

  {
    std::string bad;
    for (std::size_t i = 1; i <= n && bad.empty(); ++i) {
      if (!(compose(projection(t, n, i), xs, n) == xs[i - 1])) bad = "i=" + std::to_string(i);
    }
    report.record("H1" + tag(n), bad.empty(), bad);
  }
  {
    std::string bad;
    const Operation x = projection(t, 1, 1);
    const std::vector<Operation> same(n, x);
    for (const Operation& y : ops) {
      if (!(compose(y, same, 1) == x)) {
        bad = "y=" + coeff_label(y);
        break;
      }
    }
    report.record("H2" + tag(ops.size()), bad.empty(), bad);
  }
  {
    std::string bad;
    std::vector<Operation> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(grid[i * n + i]);
    for (const Operation& y : ops) {
      std::vector<Operation> inner;
      for (std::size_t i = 0; i < n; ++i) inner.push_back(compose(y, row(i), n * n));
      if (!(compose(y, inner, n * n) == compose(y, diag, n * n))) {
        bad = "y=" + coeff_label(y);
        break;
      }
    }
    report.record("H3" + tag(ops.size()), bad.empty(), bad);
  }
  {
    std::string bad;
    std::vector<std::vector<Operation>> rows, cols;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(row(i));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Operation> col;
      for (std::size_t i = 0; i < n; ++i) col.push_back(grid[i * n + j]);
      cols.push_back(std::move(col));
    }
    for_each_tuple(ops.size(), n + 1, [&](std::span<const std::size_t> idx) {
      const Operation& y = ops[idx[0]];
      std::vector<Operation> zs;
      for (std::size_t i = 1; i <= n; ++i) zs.push_back(ops[idx[i]]);
      std::vector<Operation> inner, outer;
      for (std::size_t i = 0; i < n; ++i) inner.push_back(compose(zs[i], rows[i], n * n));
      for (std::size_t j = 0; j < n; ++j) outer.push_back(compose(y, cols[j], n * n));
      if (!(compose(y, inner, n * n) == compose(compose(y, zs, n), outer, n * n))) {
        bad = "y=" + coeff_label(y) + " zs=(";
        for (std::size_t i = 0; i < n; ++i) bad += (i ? "," : "") + coeff_label(zs[i]);
        bad += ")";
        return false;
      }
      return true;
    });
    report.record("H4" + tag(sat_pow(ops.size(), n + 1)), bad.empty(), bad);
  }
  {
    std::string bad;
    for (const Operation& y : ops) {
      if (!(compose(y, xs, n) == y)) {
        bad = "y=" + coeff_label(y);
        break;
      }
    }
    report.record("H5" + tag(ops.size()), bad.empty(), bad);
  }
  return report;
}

std::string format_nba(const NBA& a) {
  std::ostringstream out;
  out << "nba dimension " << a.dimension() << "\n";
  out << "carrier " << a.size() << "\n";
  out << "elements";
  for (Elem x = 0; x < a.size(); ++x) out << ' ' << a.label(x);
  out << "\nconstants";
  for (std::size_t i = 1; i <= a.dimension(); ++i) out << " e" << i << '=' << a.label(a.e(i));
  out << "\n";
  if (a.dense()) {
    out << "q";
    const std::size_t N = a.size();
    const auto table = a.table();
    for (std::size_t i = 0; i < table.size(); ++i) {
      out << (i % N == 0 ? "\n " : " ") << table[i];
    }
    out << "\n";
  } else {
    out << "q virtual\n";
  }
  return out.str();
}

}  // namespace clonekit
