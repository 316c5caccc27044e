#include "clonekit/finite_ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "clonekit/error.hpp"

namespace clonekit {

namespace {

std::string describe(std::initializer_list<std::pair<const char*, Elem>> vars) {
  std::string out;
  for (const auto& [name, value] : vars) {
    if (!out.empty()) out += ' ';
    out += name;
    out += '=';
    out += std::to_string(value);
  }
  return out;
}

std::vector<Elem> negation_table(std::size_t n, std::span<const Elem> add, Elem zero) {
  std::vector<Elem> neg(n, zero);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (add[a * n + b] == zero) {
        neg[a] = b;
        break;
      }
    }
  }
  return neg;
}

std::string mask_label(std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < 64; ++i) {
    if ((mask >> i) & 1U) {
      if (!first) out += ',';
      out += atom_name(i);
      first = false;
    }
  }
  out += '}';
  return out;
}

}  // namespace

std::string atom_name(std::size_t i) {
  static constexpr const char* kNames[] = {"s", "t", "u", "v", "w"};
  if (i < std::size(kNames)) return kNames[i];
  return "a" + std::to_string(i);
}

std::vector<std::string> ring_axiom_violations(std::size_t n, std::span<const Elem> add,
                                               std::span<const Elem> mul, Elem zero, Elem one) {
  std::vector<std::string> out;
  if (n == 0) {
    out.emplace_back("empty carrier");
    return out;
  }
  if (add.size() != n * n || mul.size() != n * n) {
    out.emplace_back("table size differs from carrier_size^2");
    return out;
  }
  if (zero >= n || one >= n) {
    out.emplace_back("unit out of range");
    return out;
  }
  for (std::size_t i = 0; i < n * n; ++i) {
    if (add[i] >= n || mul[i] >= n) {
      out.emplace_back("table entry out of range at flat index " + std::to_string(i));
      return out;
    }
  }
  auto A = [&](Elem a, Elem b) { return add[a * n + b]; };
  auto M = [&](Elem a, Elem b) { return mul[a * n + b]; };

  // Scans variables a, b, c (only as many as the axiom uses) in order.
  auto first = [&](const char* axiom, int vars, auto&& pred) {
    const Elem nb = vars >= 2 ? static_cast<Elem>(n) : 1;
    const Elem nc = vars >= 3 ? static_cast<Elem>(n) : 1;
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < nb; ++b) {
        for (Elem c = 0; c < nc; ++c) {
          if (!pred(a, b, c)) {
            out.push_back(std::string(axiom) + " at " + describe({{"a", a}, {"b", b}, {"c", c}}));
            return;
          }
        }
      }
    }
  };
  first("add-associative", 3, [&](Elem a, Elem b, Elem c) { return A(A(a, b), c) == A(a, A(b, c)); });
  first("add-commutative", 2, [&](Elem a, Elem b, Elem) { return A(a, b) == A(b, a); });
  first("add-unit", 1, [&](Elem a, Elem, Elem) { return A(a, zero) == a && A(zero, a) == a; });
  first("add-inverse", 1, [&](Elem a, Elem, Elem) {
    for (Elem b = 0; b < n; ++b) {
      if (A(a, b) == zero) return true;
    }
    return false;
  });
  first("mul-associative", 3, [&](Elem a, Elem b, Elem c) { return M(M(a, b), c) == M(a, M(b, c)); });
  first("mul-unit", 1, [&](Elem a, Elem, Elem) { return M(a, one) == a && M(one, a) == a; });
  first("distributive-left", 3,
        [&](Elem a, Elem b, Elem c) { return M(a, A(b, c)) == A(M(a, b), M(a, c)); });
  first("distributive-right", 3,
        [&](Elem a, Elem b, Elem c) { return M(A(a, b), c) == A(M(a, c), M(b, c)); });
  return out;
}

FiniteRing FiniteRing::build(Data data, bool validate) {
  if (data.size == 0 || data.size > kMaxRingSize) {
    throw Error(ErrorCode::CarrierTooLarge,
                "ring carrier must have between 1 and " + std::to_string(kMaxRingSize) + " elements");
  }
  if (validate) {
    auto violations = ring_axiom_violations(data.size, data.add, data.mul, data.zero, data.one);
    if (!violations.empty()) throw Error(ErrorCode::InvalidRing, violations.front());
  }
  data.neg = negation_table(data.size, data.add, data.zero);
  if (data.labels.empty()) {
    data.labels.reserve(data.size);
    for (std::size_t i = 0; i < data.size; ++i) data.labels.push_back(std::to_string(i));
  } else if (data.labels.size() != data.size) {
    throw Error(ErrorCode::InvalidArgument, "label count differs from carrier size");
  }
  return FiniteRing(std::make_shared<const Data>(std::move(data)));
}

FiniteRing FiniteRing::from_tables(std::size_t size, std::vector<Elem> add, std::vector<Elem> mul,
                                   Elem zero, Elem one, std::vector<std::string> labels,
                                   std::string spec) {
  Data d;
  d.size = size;
  d.add = std::move(add);
  d.mul = std::move(mul);
  d.zero = zero;
  d.one = one;
  d.kind = RingKind::TableGiven;
  d.spec = std::move(spec);
  d.labels = std::move(labels);
  return build(std::move(d), true);
}

std::optional<Elem> FiniteRing::find(std::string_view label) const {
  for (Elem e = 0; e < size(); ++e) {
    if (data_->labels[e] == label) return e;
  }
  return std::nullopt;
}

bool FiniteRing::same_tables(const FiniteRing& other) const noexcept {
  if (data_ == other.data_) return true;
  return data_->size == other.data_->size && data_->zero == other.data_->zero &&
         data_->one == other.data_->one && data_->add == other.data_->add &&
         data_->mul == other.data_->mul;
}

FiniteRing make_zmod(unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "zmod modulus must be positive");
  if (n > kMaxRingSize) throw Error(ErrorCode::CarrierTooLarge, "zmod modulus too large");
  FiniteRing::Data d;
  d.size = n;
  d.add.resize(std::size_t{n} * n);
  d.mul.resize(std::size_t{n} * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      d.add[a * n + b] = static_cast<Elem>((a + b) % n);
      d.mul[a * n + b] = static_cast<Elem>((std::uint64_t{a} * b) % n);
    }
  }
  d.zero = 0;
  d.one = static_cast<Elem>(1 % n);
  d.kind = RingKind::ZMod;
  d.kind_param = n;
  d.spec = "zmod:" + std::to_string(n);
  return FiniteRing::build(std::move(d), false);
}

FiniteRing make_powerset_boolean(unsigned k) {
  if (k > 12) throw Error(ErrorCode::CarrierTooLarge, "powerset ring limited to 12 atoms");
  const std::size_t n = std::size_t{1} << k;
  FiniteRing::Data d;
  d.size = n;
  d.add.resize(n * n);
  d.mul.resize(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      d.add[a * n + b] = a ^ b;
      d.mul[a * n + b] = a & b;
    }
  }
  d.zero = 0;
  d.one = static_cast<Elem>(n - 1);
  d.kind = RingKind::PowersetBoolean;
  d.kind_param = k;
  d.spec = "bool:" + std::to_string(k);
  for (Elem a = 0; a < n; ++a) d.labels.push_back(mask_label(a));
  return FiniteRing::build(std::move(d), false);
}

FiniteRing product_ring(const FiniteRing& r1, const FiniteRing& r2) {
  const std::size_t n1 = r1.size(), n2 = r2.size(), n = n1 * n2;
  if (n > kMaxRingSize) throw Error(ErrorCode::CarrierTooLarge, "product ring too large");
  FiniteRing::Data d;
  d.size = n;
  d.add.resize(n * n);
  d.mul.resize(n * n);
  auto pair = [n2](Elem a, Elem b) { return static_cast<Elem>(a * n2 + b); };
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      const Elem x1 = x / n2, x2 = x % n2, y1 = y / n2, y2 = y % n2;
      d.add[x * n + y] = pair(r1.add(x1, y1), r2.add(x2, y2));
      d.mul[x * n + y] = pair(r1.mul(x1, y1), r2.mul(x2, y2));
    }
  }
  d.zero = pair(r1.zero(), r2.zero());
  d.one = pair(r1.one(), r2.one());
  d.kind = RingKind::Product;
  d.spec = "prod(" + r1.spec() + "," + r2.spec() + ")";
  for (Elem x = 0; x < n; ++x) {
    d.labels.push_back("(" + r1.label(x / n2) + "," + r2.label(x % n2) + ")");
  }
  return FiniteRing::build(std::move(d), false);
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  FiniteRing parse() {
    FiniteRing r = spec();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return r;
  }

 private:
  FiniteRing spec() {
    skip_ws();
    if (consume("zmod:")) return make_zmod(number());
    if (consume("bool:")) return make_powerset_boolean(number());
    if (consume("prod(")) {
      FiniteRing a = spec();
      skip_ws();
      if (!consume(",")) fail("expected ','");
      FiniteRing b = spec();
      skip_ws();
      if (!consume(")")) fail("expected ')'");
      return product_ring(a, b);
    }
    fail("expected zmod:<n>, bool:<k> or prod(<spec>,<spec>)");
  }

  unsigned number() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (v > kMaxRingSize) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return static_cast<unsigned>(v);
  }

  bool consume(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                "ring spec '" + std::string(text_) + "' position " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FiniteRing parse_ring_spec(std::string_view spec) { return SpecParser(spec).parse(); }

bool is_boolean(const FiniteRing& r) {
  for (Elem a = 0; a < r.size(); ++a) {
    if (r.mul(a, a) != a) return false;
  }
  return true;
}

bool is_commutative(const FiniteRing& r) {
  for (Elem a = 0; a < r.size(); ++a) {
    for (Elem b = a + 1; b < r.size(); ++b) {
      if (r.mul(a, b) != r.mul(b, a)) return false;
    }
  }
  return true;
}

BooleanView::BooleanView(FiniteRing ring) : ring_(std::move(ring)) {
  const std::size_t n = ring_.size();
  for (Elem a = 0; a < n; ++a) {
    if (ring_.mul(a, a) != a) {
      throw Error(ErrorCode::NotBoolean, ring_.spec() + ": " + ring_.label(a) + "^2 != " + ring_.label(a));
    }
  }
  meet_.resize(n * n);
  join_.resize(n * n);
  not_.resize(n);
  for (Elem a = 0; a < n; ++a) {
    not_[a] = ring_.complement(a);
    for (Elem b = 0; b < n; ++b) {
      meet_[a * n + b] = ring_.mul(a, b);
      join_[a * n + b] = ring_.add(a, ring_.mul(ring_.complement(a), b));
    }
  }
  for (Elem a = 0; a < n; ++a) {
    if (a == ring_.zero()) continue;
    bool minimal = true;
    for (Elem b = 0; b < n && minimal; ++b) {
      if (b != a && b != ring_.zero() && leq(b, a)) minimal = false;
    }
    if (minimal) atoms_.push_back(a);
  }
  if (atoms_.size() >= 63) throw Error(ErrorCode::CarrierTooLarge, "too many atoms");
  below_.resize(n);
  by_mask_.assign(std::size_t{1} << atoms_.size(), ring_.zero());
  std::vector<bool> hit(by_mask_.size(), false);
  for (Elem e = 0; e < n; ++e) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (leq(atoms_[i], e)) mask |= std::uint64_t{1} << i;
    }
    below_[e] = mask;
    if (mask >= by_mask_.size() || hit[mask]) {
      throw Error(ErrorCode::InvalidRing, "Boolean ring is not atomic over its atoms");
    }
    hit[mask] = true;
    by_mask_[mask] = e;
  }
  if (by_mask_.size() != n) throw Error(ErrorCode::InvalidRing, "atom decomposition is not onto");
}

Elem BooleanView::from_atom_mask(std::uint64_t mask) const {
  if (mask >= by_mask_.size()) throw Error(ErrorCode::IndexOutOfRange, "atom mask out of range");
  return by_mask_[mask];
}

BooleanView boolean_view(const FiniteRing& r) { return BooleanView(r); }

std::vector<HomToF2> homs_to_f2(const FiniteRing& r, std::size_t cap) {
  const std::size_t n = r.size();
  if (n > cap || n >= 63) {
    throw Error(ErrorCode::CarrierTooLarge,
                "hom search over " + std::to_string(n) + " elements exceeds cap " + std::to_string(cap));
  }
  std::vector<HomToF2> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    auto h = [bits](Elem e) { return static_cast<Elem>((bits >> e) & 1U); };
    if (h(r.zero()) != 0 || h(r.one()) != 1) continue;
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a) {
      for (Elem b = 0; b < n && ok; ++b) {
        ok = h(r.add(a, b)) == (h(a) ^ h(b)) && h(r.mul(a, b)) == (h(a) & h(b));
      }
    }
    if (!ok) continue;
    HomToF2 map(n);
    for (Elem e = 0; e < n; ++e) map[e] = h(e);
    out.push_back(std::move(map));
  }
  return out;
}

bool is_ring_isomorphism(const FiniteRing& from, const FiniteRing& to, std::span<const Elem> map) {
  const std::size_t n = from.size();
  if (to.size() != n || map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Elem e : map) {
    if (e >= n || hit[e]) return false;
    hit[e] = true;
  }
  if (map[from.zero()] != to.zero() || map[from.one()] != to.one()) return false;
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (map[from.add(a, b)] != to.add(map[a], map[b])) return false;
      if (map[from.mul(a, b)] != to.mul(map[a], map[b])) return false;
    }
  }
  return true;
}

std::optional<std::vector<Elem>> boolean_isomorphism(const BooleanView& from, const BooleanView& to) {
  const std::size_t k = from.atoms().size();
  if (to.atoms().size() != k || from.size() != to.size()) return std::nullopt;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<Elem> map(from.size());
    for (Elem e = 0; e < from.size(); ++e) {
      const std::uint64_t src = from.atoms_below(e);
      std::uint64_t dst = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if ((src >> i) & 1U) dst |= std::uint64_t{1} << perm[i];
      }
      map[e] = to.from_atom_mask(dst);
    }
    if (is_ring_isomorphism(from.ring(), to.ring(), map)) return map;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::string format_ring(const FiniteRing& r) {
  std::ostringstream os;
  const std::size_t n = r.size();
  auto table = [&](const char* name, auto&& op) {
    os << name << '\n';
    for (Elem a = 0; a < n; ++a) {
      os << ' ';
      for (Elem b = 0; b < n; ++b) os << ' ' << op(a, b);
      os << '\n';
    }
  };
  os << "ring " << r.spec() << '\n';
  os << "size " << n << '\n';
  os << "zero " << r.zero() << '\n';
  os << "one " << r.one() << '\n';
  os << "elements\n";
  for (Elem e = 0; e < n; ++e) os << "  " << e << ' ' << r.label(e) << '\n';
  table("add", [&](Elem a, Elem b) { return r.add(a, b); });
  table("mul", [&](Elem a, Elem b) { return r.mul(a, b); });
  os << "commutative " << (is_commutative(r) ? "yes" : "no") << '\n';
  const bool boolean = is_boolean(r);
  os << "boolean " << (boolean ? "yes" : "no") << '\n';
  if (boolean) {
    BooleanView v(r);
    os << "atoms";
    for (Elem a : v.atoms()) os << ' ' << a;
    os << '\n';
    table("meet", [&](Elem a, Elem b) { return v.meet(a, b); });
    table("join", [&](Elem a, Elem b) { return v.join(a, b); });
    os << "not\n ";
    for (Elem a = 0; a < n; ++a) os << ' ' << v.negate(a);
    os << '\n';
  }
  return os.str();
}

}  // namespace clonekit
