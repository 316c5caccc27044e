#include "clonekit/action_models.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "clonekit/error.hpp"
#include "clonekit/random.hpp"
#include "tuples.hpp"

namespace clonekit {

namespace {

constexpr std::size_t kMaxCanonicalCarrier = 4096;

// A scan variable: ring elements or carrier elements.
struct Var {
  const char* name;
  bool ring;
};

// Mixed-radix scan, last variable fastest; ok(v) false records the first
// violation in `report` under `id`.
template <typename Ok>
void scan(Report& report, const std::string& id, const FiniteModel& m, std::initializer_list<Var> vars,
          Ok&& ok) {
  const std::vector<Var> vs(vars);
  const std::size_t k = vs.size();
  std::vector<Elem> v(k, 0);
  std::vector<std::size_t> range(k);
  for (std::size_t i = 0; i < k; ++i) range[i] = vs[i].ring ? m.ring.size() : m.size;
  for (std::size_t r : range) {
    if (r == 0) {
      report.pass(id);
      return;
    }
  }
  for (;;) {
    if (!ok(v)) {
      std::string where;
      for (std::size_t i = 0; i < k; ++i) {
        if (i) where += ' ';
        where += vs[i].name;
        where += '=';
        where += vs[i].ring ? m.ring.label(v[i]) : std::to_string(v[i]);
      }
      report.fail(id, where);
      return;
    }
    std::size_t pos = k;
    for (;;) {
      if (pos == 0) {
        report.pass(id);
        return;
      }
      --pos;
      if (++v[pos] < range[pos]) break;
      v[pos] = 0;
    }
  }
}

void require_boolean(const FiniteModel& m) {
  if (!is_boolean(m.ring)) throw Error(ErrorCode::NotBoolean, m.ring.spec() + " is not Boolean");
}

std::string first_failure(const Report& r) {
  for (const CheckLine& l : r.lines()) {
    if (!l.pass) return l.identity + " at " + l.instance;
  }
  return "";
}

void require_suite(const Report& r, const std::string& what) {
  if (!r.ok()) throw Error(ErrorCode::SuiteFailed, what + ": " + first_failure(r));
}

// Stalk-size vectors with every entry >= 1 and product <= limit.
void stalk_shapes(std::size_t atoms, std::size_t limit, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == atoms) {
    out.push_back(cur);
    return;
  }
  const std::size_t used = std::accumulate(cur.begin(), cur.end(), std::size_t{1}, std::multiplies<>());
  for (std::size_t s = 1; used * s <= limit; ++s) {
    cur.push_back(s);
    stalk_shapes(atoms, limit, cur, out);
    cur.pop_back();
  }
}

}  // namespace

void FiniteModel::validate() const {
  if (size == 0) throw Error(ErrorCode::InvalidArgument, "empty carrier");
  if (action.size() != ring.size()) {
    throw Error(ErrorCode::InvalidArgument, "need one action table per ring element");
  }
  auto check = [&](const std::vector<Elem>& t, std::size_t want, const std::string& what) {
    if (t.size() != want) throw Error(ErrorCode::InvalidArgument, what + " has the wrong size");
    for (Elem v : t) {
      if (v >= size) throw Error(ErrorCode::IndexOutOfRange, what + " entry " + std::to_string(v));
    }
  };
  for (std::size_t b = 0; b < action.size(); ++b) check(action[b], size * size, "action " + std::to_string(b));
  if (p) check(*p, size * size * size, "p");
  if (add) check(*add, size * size, "add");
  if (o && *o >= size) throw Error(ErrorCode::IndexOutOfRange, "base point " + std::to_string(*o));
}

bool same_tables(const FiniteModel& a, const FiniteModel& b) {
  return a.size == b.size && a.ring.same_tables(b.ring) && a.action == b.action && a.p == b.p &&
         a.o == b.o && a.add == b.add;
}

// ---- Suites ---------------------------------------------------------------

Report check_b_axioms(const FiniteModel& m) {
  require_boolean(m);
  const FiniteRing& R = m.ring;
  Report r;
  scan(r, "B1", m, {{"b", true}, {"x", false}}, [&](const auto& v) { return m.act(v[0], v[1], v[1]) == v[1]; });
  scan(r, "B2", m, {{"b", true}, {"x", false}, {"y", false}, {"z", false}}, [&](const auto& v) {
    const Elem b = v[0], x = v[1], y = v[2], z = v[3];
    const Elem mid = m.act(b, x, z);
    return m.act(b, m.act(b, x, y), z) == mid && m.act(b, x, m.act(b, y, z)) == mid;
  });
  scan(r, "B3", m, {{"b", true}, {"x", false}, {"y", false}}, [&](const auto& v) {
    return m.act(R.complement(v[0]), v[1], v[2]) == m.act(v[0], v[2], v[1]);
  });
  scan(r, "B4", m, {{"x", false}, {"y", false}}, [&](const auto& v) { return m.act(R.zero(), v[0], v[1]) == v[1]; });
  scan(r, "B5", m, {{"b", true}, {"c", true}, {"x", false}, {"y", false}}, [&](const auto& v) {
    const Elem b = v[0], c = v[1], x = v[2], y = v[3];
    return m.act(b, m.act(c, x, y), y) == m.act(R.mul(b, c), x, y);
  });
  return r;
}

Report check_r_axioms(const FiniteModel& m, bool include_r5) {
  const FiniteRing& R = m.ring;
  Report r;
  scan(r, "R1", m, {{"b", true}, {"x", false}}, [&](const auto& v) { return m.act(v[0], v[1], v[1]) == v[1]; });
  scan(r, "R2", m, {{"b", true}, {"c", true}, {"x", false}, {"y", false}, {"z", false}, {"w", false}},
       [&](const auto& v) {
         const Elem b = v[0], c = v[1], x = v[2], y = v[3], z = v[4], w = v[5];
         return m.act(b, m.act(c, x, y), m.act(c, z, w)) == m.act(c, m.act(b, x, z), m.act(b, y, w));
       });
  scan(r, "R3", m, {{"x", false}, {"y", false}}, [&](const auto& v) {
    return m.act(R.one(), v[0], v[1]) == v[0] && m.act(R.zero(), v[0], v[1]) == v[1];
  });
  scan(r, "R4", m, {{"a", true}, {"b", true}, {"c", true}, {"x", false}, {"y", false}}, [&](const auto& v) {
    const Elem a = v[0], b = v[1], c = v[2], x = v[3], y = v[4];
    const Elem g = R.add(R.mul(a, b), R.mul(R.complement(a), c));
    return m.act(a, m.act(b, x, y), m.act(c, x, y)) == m.act(g, x, y);
  });
  if (include_r5) {
    scan(r, "R5", m, {{"b", true}, {"x", false}, {"y", false}, {"z", false}, {"w", false}}, [&](const auto& v) {
      const Elem b = v[0], x = v[1], y = v[2], z = v[3], w = v[4];
      return m.act(b, m.act(b, x, y), m.act(b, z, w)) == m.act(b, x, w);
    });
  }
  return r;
}

Report check_a_axioms(const FiniteModel& m) {
  if (!m.p) throw Error(ErrorCode::InvalidArgument, "A1..A4 need a p table");
  const FiniteRing& R = m.ring;
  Report r;
  scan(r, "A1", m, {{"x", false}, {"y", false}}, [&](const auto& v) {
    return m.p3(v[0], v[1], v[1]) == v[0] && m.p3(v[0], v[0], v[1]) == v[1];
  });
  scan(r, "A2[p,p]", m,
       {{"x11", false}, {"x12", false}, {"x13", false}, {"x21", false}, {"x22", false}, {"x23", false},
        {"x31", false}, {"x32", false}, {"x33", false}},
       [&](const auto& v) {
         const Elem lhs = m.p3(m.p3(v[0], v[1], v[2]), m.p3(v[3], v[4], v[5]), m.p3(v[6], v[7], v[8]));
         const Elem rhs = m.p3(m.p3(v[0], v[3], v[6]), m.p3(v[1], v[4], v[7]), m.p3(v[2], v[5], v[8]));
         return lhs == rhs;
       });
  scan(r, "A2[p,a]", m,
       {{"a", true}, {"x11", false}, {"x12", false}, {"x21", false}, {"x22", false}, {"x31", false}, {"x32", false}},
       [&](const auto& v) {
         const Elem a = v[0];
         const Elem lhs = m.p3(m.act(a, v[1], v[2]), m.act(a, v[3], v[4]), m.act(a, v[5], v[6]));
         const Elem rhs = m.act(a, m.p3(v[1], v[3], v[5]), m.p3(v[2], v[4], v[6]));
         return lhs == rhs;
       });
  scan(r, "A3", m, {{"x", false}, {"y", false}}, [&](const auto& v) {
    const Elem two = R.add(R.one(), R.one());
    return m.p3(v[1], v[0], v[1]) == m.act(two, v[1], v[0]);
  });
  scan(r, "A4", m, {{"a", true}, {"b", true}, {"c", true}, {"x", false}, {"y", false}}, [&](const auto& v) {
    const Elem a = v[0], b = v[1], c = v[2], x = v[3], y = v[4];
    const Elem g = R.add(R.sub(a, b), c);
    return m.p3(m.act(a, x, y), m.act(b, x, y), m.act(c, x, y)) == m.act(g, x, y);
  });
  return r;
}

Report check_l1(const FiniteModel& m) {
  if (!m.add) throw Error(ErrorCode::InvalidArgument, "L1 needs an add table");
  Report r;
  scan(r, "L1", m, {{"b", true}, {"x", false}, {"y", false}, {"z", false}, {"w", false}}, [&](const auto& v) {
    const Elem b = v[0], x = v[1], y = v[2], z = v[3], w = v[4];
    return m.plus(m.act(b, x, y), m.act(b, z, w)) == m.act(b, m.plus(x, z), m.plus(y, w));
  });
  return r;
}

Report check_group(const FiniteModel& m, Elem o) {
  if (!m.add) throw Error(ErrorCode::InvalidArgument, "group laws need an add table");
  Report r;
  scan(r, "group-associative", m, {{"x", false}, {"y", false}, {"z", false}}, [&](const auto& v) {
    return m.plus(m.plus(v[0], v[1]), v[2]) == m.plus(v[0], m.plus(v[1], v[2]));
  });
  scan(r, "group-commutative", m, {{"x", false}, {"y", false}},
       [&](const auto& v) { return m.plus(v[0], v[1]) == m.plus(v[1], v[0]); });
  scan(r, "group-unit", m, {{"x", false}}, [&](const auto& v) { return m.plus(v[0], o) == v[0]; });
  scan(r, "group-exponent-2", m, {{"x", false}}, [&](const auto& v) { return m.plus(v[0], v[0]) == o; });
  return r;
}

Report check_comb(const FiniteModel& m, Elem o) {
  if (!m.add) throw Error(ErrorCode::InvalidArgument, "comb needs an add table");
  const FiniteRing& R = m.ring;
  Report r;
  scan(r, "comb", m, {{"b", true}, {"x", false}, {"y", false}}, [&](const auto& v) {
    const Elem b = v[0], x = v[1], y = v[2];
    return m.act(b, x, y) == m.plus(m.act(b, x, o), m.act(R.complement(b), y, o));
  });
  return r;
}

// ---- Canonical models -----------------------------------------------------

std::vector<Elem> stalk_coordinates(const SheafData& s, Elem x) {
  std::vector<Elem> c(s.stalks.size());
  for (std::size_t i = s.stalks.size(); i-- > 0;) {
    c[i] = static_cast<Elem>(x % s.stalks[i]);
    x = static_cast<Elem>(x / s.stalks[i]);
  }
  return c;
}

Elem stalk_index(const SheafData& s, const std::vector<Elem>& coords) {
  std::size_t x = 0;
  for (std::size_t i = 0; i < s.stalks.size(); ++i) x = x * s.stalks[i] + coords[i];
  return static_cast<Elem>(x);
}

FiniteModel canonical_bset(const SheafData& s) {
  const BooleanView view = boolean_view(s.ring);
  const std::size_t atoms = view.atoms().size();
  if (s.stalks.size() != atoms) {
    throw Error(ErrorCode::InvalidArgument, "need " + std::to_string(atoms) + " stalks, got " +
                                                std::to_string(s.stalks.size()));
  }
  std::size_t size = 1;
  for (std::size_t k : s.stalks) {
    if (k == 0) throw Error(ErrorCode::EmptyStalk, "stalks must be nonempty");
    size *= k;
    if (size > kMaxCanonicalCarrier) throw Error(ErrorCode::CarrierTooLarge, "product of stalks too large");
  }
  if (s.group) {
    if (s.group->size() != atoms) throw Error(ErrorCode::InvalidArgument, "one group table per stalk");
    for (std::size_t i = 0; i < atoms; ++i) {
      if ((*s.group)[i].size() != s.stalks[i] * s.stalks[i]) {
        throw Error(ErrorCode::InvalidArgument, "group table of stalk " + std::to_string(i));
      }
    }
  }
  FiniteModel m{s.ring, size, {}, {}, {}, {}};
  std::vector<std::vector<Elem>> coords(size);
  for (Elem x = 0; x < size; ++x) coords[x] = stalk_coordinates(s, x);
  m.action.assign(s.ring.size(), std::vector<Elem>(size * size));
  std::vector<Elem> out(atoms);
  for (Elem b = 0; b < s.ring.size(); ++b) {
    const std::uint64_t below = view.atoms_below(b);
    for (Elem x = 0; x < size; ++x) {
      for (Elem y = 0; y < size; ++y) {
        for (std::size_t i = 0; i < atoms; ++i) out[i] = ((below >> i) & 1U) ? coords[x][i] : coords[y][i];
        m.action[b][x * size + y] = stalk_index(s, out);
      }
    }
  }
  if (s.group) {
    std::vector<Elem> add(size * size);
    for (Elem x = 0; x < size; ++x) {
      for (Elem y = 0; y < size; ++y) {
        for (std::size_t i = 0; i < atoms; ++i) {
          out[i] = (*s.group)[i][coords[x][i] * s.stalks[i] + coords[y][i]];
        }
        add[x * size + y] = stalk_index(s, out);
      }
    }
    std::vector<Elem> p(size * size * size);
    for (Elem x = 0; x < size; ++x) {
      for (Elem y = 0; y < size; ++y) {
        for (Elem z = 0; z < size; ++z) p[(x * size + y) * size + z] = add[add[x * size + y] * size + z];
      }
    }
    m.add = std::move(add);
    m.p = std::move(p);
    m.o = 0;
  }
  return m;
}

// ---- Decomposition --------------------------------------------------------

Decomposition decompose_to_stalks(const FiniteModel& m, std::optional<Elem> first) {
  const Report b = check_b_axioms(m);
  if (!b.ok()) throw Error(ErrorCode::NotABSet, first_failure(b));
  const BooleanView view = boolean_view(m.ring);
  const auto atoms = view.atoms();
  const std::size_t N = m.size;

  std::vector<Elem> order;
  if (first) order.push_back(*first);
  for (Elem x = 0; x < N; ++x) {
    if (!first || x != *first) order.push_back(x);
  }

  Decomposition d{SheafData{m.ring, {}, std::nullopt}, {}, {}, {}};
  for (std::size_t ai = 0; ai < atoms.size(); ++ai) {
    const Elem s = atoms[ai];
    auto rel = [&](Elem x, Elem y) { return m.act(s, x, y) == y; };
    std::string bad;
    for (Elem x = 0; x < N && bad.empty(); ++x) {
      if (!rel(x, x)) bad = "reflexive x=" + std::to_string(x);
      for (Elem y = 0; y < N && bad.empty(); ++y) {
        if (rel(x, y) != rel(y, x)) bad = "symmetric x=" + std::to_string(x) + " y=" + std::to_string(y);
        for (Elem z = 0; z < N && bad.empty(); ++z) {
          if (rel(x, y) && rel(y, z) && !rel(x, z)) {
            bad = "transitive x=" + std::to_string(x) + " y=" + std::to_string(y) + " z=" + std::to_string(z);
          }
        }
      }
    }
    const std::string id = "stalk-relation[" + m.ring.label(s) + "]";
    d.checks.record(id, bad.empty(), bad);
    if (!bad.empty()) throw Error(ErrorCode::DecompositionFailed, id + " at " + bad);

    std::vector<Elem> cls(N);
    std::vector<Elem> reps;
    for (Elem x : order) {
      auto it = std::find_if(reps.begin(), reps.end(), [&](Elem r) { return rel(x, r); });
      if (it == reps.end()) {
        cls[x] = static_cast<Elem>(reps.size());
        reps.push_back(x);
      } else {
        cls[x] = static_cast<Elem>(it - reps.begin());
      }
    }
    d.classes.push_back(std::move(cls));
    d.sheaf.stalks.push_back(reps.size());
  }

  std::size_t product = 1;
  for (std::size_t k : d.sheaf.stalks) product *= k;
  d.iso.resize(N);
  std::vector<int> hit(product, -1);
  std::string bad = product == N ? "" : std::to_string(N) + " elements onto " + std::to_string(product);
  for (Elem x = 0; x < N && bad.empty(); ++x) {
    std::vector<Elem> c;
    for (const auto& cls : d.classes) c.push_back(cls[x]);
    d.iso[x] = stalk_index(d.sheaf, c);
    if (hit[d.iso[x]] >= 0) bad = "x=" + std::to_string(hit[d.iso[x]]) + " and x=" + std::to_string(x);
    hit[d.iso[x]] = static_cast<int>(x);
  }
  d.checks.record("evaluation-bijective", bad.empty(), bad);
  if (!bad.empty()) throw Error(ErrorCode::DecompositionFailed, "evaluation map at " + bad);

  const FiniteModel canon = canonical_bset(d.sheaf);
  bad.clear();
  for (Elem b = 0; b < m.ring.size() && bad.empty(); ++b) {
    for (Elem x = 0; x < N && bad.empty(); ++x) {
      for (Elem y = 0; y < N && bad.empty(); ++y) {
        if (d.iso[m.act(b, x, y)] != canon.act(b, d.iso[x], d.iso[y])) {
          bad = "b=" + m.ring.label(b) + " x=" + std::to_string(x) + " y=" + std::to_string(y);
        }
      }
    }
  }
  d.checks.record("intertwines-action", bad.empty(), bad);
  if (!bad.empty()) throw Error(ErrorCode::DecompositionFailed, "action at " + bad);
  return d;
}

// ---- Regular and free models ----------------------------------------------

FiniteModel regular_model(const FiniteRing& r) {
  const std::size_t N = r.size();
  FiniteModel m{r, N, {}, {}, {}, {}};
  m.action.assign(N, std::vector<Elem>(N * N));
  for (Elem a = 0; a < N; ++a) {
    for (Elem x = 0; x < N; ++x) {
      for (Elem y = 0; y < N; ++y) m.action[a][x * N + y] = r.add(r.mul(a, x), r.mul(r.complement(a), y));
    }
  }
  std::vector<Elem> p(N * N * N), add(N * N);
  for (Elem x = 0; x < N; ++x) {
    for (Elem y = 0; y < N; ++y) {
      add[x * N + y] = r.add(x, y);
      for (Elem z = 0; z < N; ++z) p[(x * N + y) * N + z] = r.add(r.sub(x, y), z);
    }
  }
  m.p = std::move(p);
  m.add = std::move(add);
  return m;
}

FiniteModel free_model(const Theory& t, std::size_t arity, std::uint64_t cap) {
  const std::vector<Operation> carrier = enumerate(t, arity, cap);
  const std::size_t N = carrier.size();
  if (N == 0) throw Error(ErrorCode::InvalidArgument, t.name() + "(" + std::to_string(arity) + ") is empty");
  if (N > kMaxCanonicalCarrier) throw Error(ErrorCode::CarrierTooLarge, "free model too large");
  std::map<std::vector<Elem>, Elem> index;
  for (std::size_t i = 0; i < N; ++i) {
    index.emplace(std::vector<Elem>(carrier[i].coeffs().begin(), carrier[i].coeffs().end()), static_cast<Elem>(i));
  }
  auto idx = [&](const Operation& op) {
    return index.at(std::vector<Elem>(op.coeffs().begin(), op.coeffs().end()));
  };
  const FiniteRing& r = t.ring();
  FiniteModel m{r, N, {}, {}, {}, {}};
  m.action.assign(r.size(), std::vector<Elem>(N * N));
  for (Elem b = 0; b < r.size(); ++b) {
    const Operation op = binary_of(t, b);
    for (Elem x = 0; x < N; ++x) {
      for (Elem y = 0; y < N; ++y) m.action[b][x * N + y] = idx(compose(op, {carrier[x], carrier[y]}));
    }
  }
  if (t.flavor() == Flavor::Affine) {
    const Operation p = malcev_operation(t);
    std::vector<Elem> table(N * N * N);
    for (Elem x = 0; x < N; ++x) {
      for (Elem y = 0; y < N; ++y) {
        for (Elem z = 0; z < N; ++z) {
          table[(x * N + y) * N + z] = idx(compose(p, {carrier[x], carrier[y], carrier[z]}));
        }
      }
    }
    m.p = std::move(table);
  }
  return m;
}

// ---- Vector spaces --------------------------------------------------------

FiniteModel vector_space_from_affine_model(const FiniteModel& m, Elem o) {
  require_boolean(m);
  if (!m.p) throw Error(ErrorCode::InvalidArgument, "affine model needs a p table");
  if (o >= m.size) throw Error(ErrorCode::IndexOutOfRange, "base point " + std::to_string(o));
  require_suite(check_r_axioms(m, false), "R1..R4");
  require_suite(check_a_axioms(m), "A1..A4");
  FiniteModel out = m;
  std::vector<Elem> add(m.size * m.size);
  for (Elem x = 0; x < m.size; ++x) {
    for (Elem y = 0; y < m.size; ++y) add[x * m.size + y] = m.p3(x, o, y);
  }
  out.add = std::move(add);
  out.o = o;
  return out;
}

FiniteModel affine_model_from_vector_space(const FiniteModel& m) {
  require_boolean(m);
  if (!m.add || !m.o) throw Error(ErrorCode::InvalidArgument, "vector space needs an add table and o");
  require_suite(check_group(m, *m.o), "group laws");
  require_suite(check_r_axioms(m, false), "R1..R4");
  require_suite(check_l1(m), "L1");
  FiniteModel out = m;
  const std::size_t N = m.size;
  std::vector<Elem> p(N * N * N);
  for (Elem x = 0; x < N; ++x) {
    for (Elem y = 0; y < N; ++y) {
      for (Elem z = 0; z < N; ++z) p[(x * N + y) * N + z] = m.plus(m.plus(x, y), z);
    }
  }
  out.p = std::move(p);
  return out;
}

VectDecomposition vect_sheaf_decompose(const FiniteModel& m, Elem o) {
  require_boolean(m);
  const FiniteModel vs = m.add ? m : vector_space_from_affine_model(m, o);
  Report checks;
  auto gate = [&](const Report& r, const std::string& what) {
    checks.append(r);
    require_suite(r, what);
  };
  gate(check_r_axioms(vs, false), "R1..R4");
  gate(check_group(vs, o), "group laws");
  gate(check_l1(vs), "L1");
  gate(check_comb(vs, o), "comb");
  // R5 is a consequence of comb and L1; checked rather than assumed.
  Report r5;
  const Report full = check_r_axioms(vs, true);
  if (const CheckLine* l = full.find("R5")) r5.record(l->identity, l->pass, l->instance);
  gate(r5, "R5");

  Decomposition d = decompose_to_stalks(vs, o);
  checks.append(d.checks);
  const std::size_t N = vs.size;
  std::vector<std::vector<Elem>> groups;
  for (std::size_t i = 0; i < d.classes.size(); ++i) {
    const auto& cls = d.classes[i];
    const std::size_t k = d.sheaf.stalks[i];
    std::vector<Elem> table(k * k, 0);
    std::vector<char> set(k * k, 0);
    std::string bad;
    for (Elem x = 0; x < N && bad.empty(); ++x) {
      for (Elem y = 0; y < N && bad.empty(); ++y) {
        const std::size_t at = cls[x] * k + cls[y];
        const Elem sum = cls[vs.plus(x, y)];
        if (!set[at]) {
          set[at] = 1;
          table[at] = sum;
        } else if (table[at] != sum) {
          bad = "x=" + std::to_string(x) + " y=" + std::to_string(y);
        }
      }
    }
    const std::string id = "stalk-group[" + vs.ring.label(boolean_view(vs.ring).atoms()[i]) + "]";
    if (bad.empty()) {
      // stalk laws with zero = class of o = 0
      for (Elem u = 0; u < k && bad.empty(); ++u) {
        if (table[u * k] != u || table[u * k + u] != 0) bad = "u=" + std::to_string(u);
        for (Elem v = 0; v < k && bad.empty(); ++v) {
          if (table[u * k + v] != table[v * k + u]) bad = "u=" + std::to_string(u) + " v=" + std::to_string(v);
          for (Elem w = 0; w < k && bad.empty(); ++w) {
            if (table[table[u * k + v] * k + w] != table[u * k + table[v * k + w]]) {
              bad = "u=" + std::to_string(u) + " v=" + std::to_string(v) + " w=" + std::to_string(w);
            }
          }
        }
      }
    }
    checks.record(id, bad.empty(), bad);
    if (!bad.empty()) throw Error(ErrorCode::DecompositionFailed, id + " at " + bad);
    groups.push_back(std::move(table));
  }
  d.sheaf.group = std::move(groups);

  const FiniteModel canon = canonical_bset(d.sheaf);
  std::string bad = d.iso[o] == 0 ? "" : "o does not map to 0";
  for (Elem x = 0; x < N && bad.empty(); ++x) {
    for (Elem y = 0; y < N && bad.empty(); ++y) {
      if (d.iso[vs.plus(x, y)] != canon.plus(d.iso[x], d.iso[y])) {
        bad = "x=" + std::to_string(x) + " y=" + std::to_string(y);
      }
    }
  }
  checks.record("group-isomorphism", bad.empty(), bad);
  if (!bad.empty()) throw Error(ErrorCode::DecompositionFailed, "group isomorphism at " + bad);
  return VectDecomposition{std::move(d), std::move(checks)};
}

// ---- rtob probe -----------------------------------------------------------

ProbeResult axiom_equivalence_probe(const FiniteRing& ring, std::size_t carrier_size, std::size_t samples,
                                    std::uint64_t seed) {
  if (carrier_size == 0 || carrier_size > 3 || ring.size() > 4) {
    throw Error(ErrorCode::InvalidArgument, "probe needs carrier <= 3 and a ring of at most 4 elements");
  }
  if (!is_boolean(ring)) throw Error(ErrorCode::NotBoolean, ring.spec() + " is not Boolean");
  const std::size_t atoms = boolean_view(ring).atoms().size();
  ProbeResult out;
  std::string first_disagreement;

  auto compare = [&](const FiniteModel& m, const std::string& what) {
    ++out.models;
    const bool b = check_b_axioms(m).ok();
    const bool r = check_r_axioms(m, true).ok();
    if (b && r) {
      ++out.both_pass;
    } else if (!b && !r) {
      ++out.both_fail;
    } else {
      ++out.disagreements;
      if (first_disagreement.empty()) {
        first_disagreement = what + (b ? " passes B1..B5 only" : " passes R1..R5 only");
      }
    }
  };

  std::vector<std::vector<std::size_t>> shapes;
  std::vector<std::size_t> cur;
  stalk_shapes(atoms, carrier_size, cur, shapes);
  std::vector<FiniteModel> exact;  // canonical models on exactly carrier_size elements
  std::string canon_bad;
  for (const auto& shape : shapes) {
    const FiniteModel m = canonical_bset(SheafData{ring, shape, std::nullopt});
    std::string label = "canonical(";
    for (std::size_t i = 0; i < shape.size(); ++i) label += (i ? "," : "") + std::to_string(shape[i]);
    label += ")";
    const std::size_t before = out.disagreements;
    compare(m, label);
    if (out.disagreements == before && !check_b_axioms(m).ok() && canon_bad.empty()) canon_bad = label;
    if (m.size == carrier_size) exact.push_back(m);
  }
  const std::size_t canonical_count = out.models;
  out.report.record("rtob[canonical:" + std::to_string(canonical_count) + "]",
                    out.disagreements == 0 && canon_bad.empty(),
                    first_disagreement.empty() ? canon_bad + " fails both suites" : first_disagreement);

  SplitMix64 rng(seed);
  const std::size_t N = carrier_size;
  const std::size_t K = ring.size();
  const std::size_t before = out.disagreements;
  first_disagreement.clear();
  for (std::size_t s = 0; s < samples; ++s) {
    SplitMix64 g = rng.split();
    FiniteModel m{ring, N, std::vector<std::vector<Elem>>(K, std::vector<Elem>(N * N)), {}, {}, {}};
    const std::size_t kind = (exact.empty() && s % 3 == 2) ? 1 : s % 3;
    if (kind == 2) {
      m = exact[g.below(exact.size())];
      const Elem b = static_cast<Elem>(g.below(K));
      const std::size_t at = g.below(N * N);
      if (N > 1) m.action[b][at] = static_cast<Elem>((m.action[b][at] + 1 + g.below(N - 1)) % N);
    } else {
      for (Elem b = 0; b < K; ++b) {
        for (Elem x = 0; x < N; ++x) {
          for (Elem y = 0; y < N; ++y) {
            Elem v = static_cast<Elem>(g.below(N));
            if (kind == 1) {
              if (x == y) v = x;
              if (b == ring.one()) v = x;
              else if (b == ring.zero()) v = y;
            }
            m.action[b][x * N + y] = v;
          }
        }
      }
    }
    compare(m, "sample " + std::to_string(s));
  }
  out.report.record("rtob[sampled:" + std::to_string(samples) + ",seed:" + std::to_string(seed) + "]",
                    out.disagreements == before, first_disagreement);
  return out;
}

}  // namespace clonekit
