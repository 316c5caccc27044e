#include "clonekit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "clonekit/action_models.hpp"
#include "clonekit/error.hpp"
#include "clonekit/finite_ring.hpp"
#include "clonekit/ite.hpp"
#include "clonekit/model_io.hpp"
#include "clonekit/nba.hpp"
#include "clonekit/report.hpp"
#include "clonekit/theory.hpp"

namespace clonekit::cli {

namespace {

struct Options {
  std::string ring = "bool:2";
  std::string flavor;
  std::size_t max_arity = 3;
  std::string enum_cap = "1e6";
  std::size_t max_ring_size = 8;
  std::uint64_t seed = 42;
  std::size_t samples = 20000;
  std::size_t dim = 3;
  unsigned depth = 6;
  std::size_t arity = 3;
  std::optional<Elem> base;
  std::string suite = "auto";
  std::vector<std::string> inputs;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_cap(const std::string& s) {
  double v = 0;
  std::size_t used = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Usage("--enum-cap: not a number: " + s);
  }
  if (used != s.size() || v < 1 || v > 9.0e15 || std::floor(v) != v) throw Usage("--enum-cap: expected a positive integer, got " + s);
  return static_cast<std::uint64_t>(v);
}

class Session {
 public:
  Session(const Options& o, std::ostream& out) : opt_(o), out_(out), cap_(parse_cap(o.enum_cap)) {}

  FiniteRing ring() const {
    FiniteRing r = parse_ring_spec(opt_.ring);
    if (r.size() > opt_.max_ring_size) {
      throw Usage("ring " + opt_.ring + " has " + std::to_string(r.size()) + " elements, above --max-ring-size " +
                  std::to_string(opt_.max_ring_size));
    }
    return r;
  }

  Theory theory(const FiniteRing& r) const {
    std::string f = opt_.flavor;
    if (f.empty()) f = is_boolean(r) ? "hyperaffine" : "affine";
    if (f == "hyperaffine") return Theory::hyperaffine(r);
    if (f == "affine") return Theory::affine(r);
    if (f == "full") return Theory::full_module(r);
    if (f == "U") return Theory::degenerate_u();
    if (f == "U'") return Theory::degenerate_u_prime();
    throw Usage("--flavor: unknown flavor '" + f + "'");
  }

  void header(const std::string& command, const std::string& extra = "") {
    out_ << "# " << command << " ring=" << opt_.ring;
    if (!extra.empty()) out_ << " " << extra;
    out_ << " max-arity=" << opt_.max_arity << " enum-cap=" << cap_ << " max-ring-size=" << opt_.max_ring_size
         << " seed=" << opt_.seed << " samples=" << opt_.samples << "\n";
  }

  int finish(const Report& rep) {
    out_ << rep.render() << rep.summary() << "\n";
    return rep.ok() ? kExitPass : kExitFail;
  }

  int ring_info() {
    const FiniteRing r = ring();
    header("ring info");
    out_ << format_ring(r);
    Report rep;
    const auto bad = ring_axiom_violations(r.size(), r.add_table(), r.mul_table(), r.zero(), r.one());
    rep.record("ring-axioms", bad.empty(), bad.empty() ? "" : bad.front());
    return finish(rep);
  }

  int theory_verify() {
    const Theory t = theory(ring());
    header("theory verify", "flavor=" + std::string(flavor_name(t.flavor())));
    return finish(verify_theory(t, opt_.max_arity, cap_));
  }

  int theory_roundtrip() {
    const Theory t = theory(ring());
    header("theory roundtrip", "flavor=" + std::string(flavor_name(t.flavor())));
    const Report rep = clonekit::theory_roundtrip(t, opt_.max_arity, cap_);
    if (rep.ok()) {
      const BinaryRing br = ring_on_binary(t);
      out_ << "# T(2) ~ " << t.ring().spec() << " via r -> (r, 1-r)\n";
      for (Elem r = 0; r < t.ring().size(); ++r) {
        out_ << "iso " << t.ring().label(r) << " -> " << to_string(br.carrier[br.embedding[r]]) << "\n";
      }
    }
    return finish(rep);
  }

  int nba_check() {
    const Theory t = Theory::hyperaffine(ring());
    header("nba check", "dim=" + std::to_string(opt_.dim));
    const TheoryNBA tn = nba_from_theory(t, opt_.dim, cap_);
    Report rep;
    rep.append(check_axioms(tn.nba, NbaCheckOptions{cap_, opt_.samples, opt_.seed}));
    const CoordinateAlgebra ca = coordinate_algebra(tn.nba);
    rep.append(ca.checks);
    const PsiResult psi = psi_reconstruct(tn.nba, t, cap_);
    rep.append(psi.report);
    rep.append(transport_axioms(tn.nba, t, cap_));
    out_ << "# carrier=" << tn.nba.size() << " B_A=" << ca.elements.size() << " psi=" << verdict_name(psi.verdict)
         << "\n";
    return finish(rep);
  }

  FiniteModel load_model() const {
    if (opt_.inputs.size() != 1) throw Usage("expected exactly one model file");
    std::ifstream in(opt_.inputs[0]);
    if (!in) throw Usage("cannot open " + opt_.inputs[0]);
    std::stringstream buf;
    buf << in.rdbuf();
    FiniteModel m = parse_model(buf.str());
    if (m.ring.size() > opt_.max_ring_size) throw Usage("model ring above --max-ring-size");
    return m;
  }

  Elem base_point(const FiniteModel& m) const {
    if (opt_.base) return *opt_.base;
    if (m.o) return *m.o;
    throw Usage("no base point: pass --o or add an 'o' line");
  }

  int model_check() {
    const FiniteModel m = load_model();
    header("model check", "file=" + opt_.inputs[0] + " suite=" + opt_.suite);
    Report rep;
    const std::string& s = opt_.suite;
    const bool boolean = is_boolean(m.ring);
    const bool automatic = s == "auto";
    if (s == "B" || (automatic && boolean)) rep.append(check_b_axioms(m));
    if (s == "R" || automatic) rep.append(check_r_axioms(m, boolean || s == "R"));
    if (s == "R4") rep.append(check_r_axioms(m, false));
    if (s == "A" || (automatic && m.p)) rep.append(check_a_axioms(m));
    const bool vector_space = s == "vect" || (automatic && m.add && (m.o || opt_.base));
    if (s == "L1" || vector_space) rep.append(check_l1(m));
    if (s == "group" || vector_space) rep.append(check_group(m, base_point(m)));
    if (s == "comb" || vector_space) rep.append(check_comb(m, base_point(m)));
    if (rep.lines().empty()) throw Usage("--suite: nothing to check for '" + s + "'");
    return finish(rep);
  }

  int model_decompose() {
    const FiniteModel m = load_model();
    const bool vect = opt_.base.has_value();
    header("model decompose", "file=" + opt_.inputs[0] + (vect ? " o=" + std::to_string(*opt_.base) : ""));
    Report rep;
    try {
      std::optional<VectDecomposition> vd;
      if (vect) vd = vect_sheaf_decompose(m, *opt_.base);
      const Decomposition d = vd ? vd->decomposition : decompose_to_stalks(m);
      rep.append(vd ? vd->checks : d.checks);
      const BooleanView v = boolean_view(m.ring);
      for (std::size_t i = 0; i < d.sheaf.stalks.size(); ++i) {
        out_ << "stalk " << m.ring.label(v.atoms()[i]) << " size=" << d.sheaf.stalks[i] << " classes=";
        for (std::size_t x = 0; x < d.classes[i].size(); ++x) out_ << (x ? "," : "") << d.classes[i][x];
        out_ << "\n";
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotABSet && e.code() != ErrorCode::DecompositionFailed &&
          e.code() != ErrorCode::SuiteFailed)
        throw;
      rep.fail("decompose", e.what());
    }
    return finish(rep);
  }

  int ite_normalize() {
    const BooleanView v = boolean_view(ring());
    if (opt_.inputs.size() != 1) throw Usage("expected one expression");
    header("ite normalize", "arity=" + std::to_string(opt_.arity));
    const Expr e = parse_expr(opt_.inputs[0], v, opt_.arity);
    const NormalForm nf = eval_to_operation(e, v, opt_.arity);
    out_ << "coefficients";
    for (Elem c : nf.coeffs) out_ << " " << guard_literal(c, v);
    out_ << "\n" << print_expr(chain_of(nf, v), v) << "\n";
    return kExitPass;
  }

  int ite_equiv() {
    const BooleanView v = boolean_view(ring());
    if (opt_.inputs.size() != 2) throw Usage("expected two expressions");
    header("ite equiv", "arity=" + std::to_string(opt_.arity));
    const NormalForm a = eval_to_operation(parse_expr(opt_.inputs[0], v, opt_.arity), v, opt_.arity);
    const NormalForm b = eval_to_operation(parse_expr(opt_.inputs[1], v, opt_.arity), v, opt_.arity);
    if (a == b) {
      out_ << "EQUIV\n";
      return kExitPass;
    }
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (a.coeffs[i] != b.coeffs[i]) {
        out_ << "NOT-EQUIV at x" << i + 1 << ": " << guard_literal(a.coeffs[i], v) << " vs "
             << guard_literal(b.coeffs[i], v) << "\n";
        break;
      }
    }
    return kExitFail;
  }

  int malcev_search() {
    const FiniteRing r = ring();
    header("malcev search", "depth=" + std::to_string(opt_.depth));
    const MalcevSearch s = malcev_binary_expressibility(r, opt_.depth);
    out_ << "verdict " << verdict_name(s.verdict) << " depth=" << s.depth << " closure=" << s.closure_size
         << " homs-to-F2=" << s.homs_to_f2 << "\n";
    if (!s.witness.empty()) out_ << "witness " << s.witness << "\n";
    Report rep;
    rep.record("criterion-consistent", s.consistent,
               std::string(verdict_name(s.verdict)) + " with " + std::to_string(s.homs_to_f2) + " homs");
    return finish(rep);
  }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::uint64_t cap_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Finite algebraic theories, Boolean actions and if-then-else normal forms", "clonekit"};
  app.require_subcommand(1);

  auto caps = [&](CLI::App* c) {
    c->add_option("--ring", opt.ring, "ring spec: zmod:<n> | bool:<k> | prod(<a>,<b>)")->capture_default_str();
    c->add_option("--max-arity", opt.max_arity, "largest arity scanned")->capture_default_str();
    c->add_option("--enum-cap", opt.enum_cap, "enumeration cap")->capture_default_str();
    c->add_option("--max-ring-size", opt.max_ring_size, "largest accepted ring")->capture_default_str();
    c->add_option("--seed", opt.seed, "sampling seed")->capture_default_str();
    c->add_option("--samples", opt.samples, "sample count when a scan is too large")->capture_default_str();
  };

  std::string selected;
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help) {
    CLI::App* c = group->add_subcommand(name, help);
    caps(c);
    c->callback([&selected, group, name] { selected = group->get_name() + " " + name; });
    return c;
  };

  CLI::App* ring = app.add_subcommand("ring", "finite rings")->require_subcommand(1);
  leaf(ring, "info", "tables, atoms and ring-axiom check");

  CLI::App* theory = app.add_subcommand("theory", "algebraic theories")->require_subcommand(1);
  for (const char* name : {"verify", "roundtrip"}) {
    leaf(theory, name, name == std::string("verify") ? "property suite" : "T(2) ring and coefficient round trip")
        ->add_option("--flavor", opt.flavor, "full | affine | hyperaffine | U | U'");
  }

  CLI::App* nba = app.add_subcommand("nba", "n-dimensional Boolean algebras")->require_subcommand(1);
  leaf(nba, "check", "H1..H5, B_A and psi on T(n) of H_B")->add_option("--dim", opt.dim, "dimension n")->capture_default_str();

  CLI::App* model = app.add_subcommand("model", "finite models")->require_subcommand(1);
  CLI::App* check = leaf(model, "check", "axiom suites on a model file");
  check->add_option("file", opt.inputs, "model file")->required();
  check->add_option("--suite", opt.suite, "auto | B | R | R4 | A | L1 | group | comb | vect")->capture_default_str();
  check->add_option("--o", opt.base, "base point");
  CLI::App* decompose = leaf(model, "decompose", "stalk decomposition of a model file");
  decompose->add_option("file", opt.inputs, "model file")->required();
  decompose->add_option("--o", opt.base, "base point; switches to the vector-space decomposition");

  CLI::App* ite = app.add_subcommand("ite", "if-then-else expressions")->require_subcommand(1);
  CLI::App* norm = leaf(ite, "normalize", "canonical chain of an expression");
  norm->add_option("expr", opt.inputs, "expression")->required();
  norm->add_option("--arity", opt.arity, "number of variables")->capture_default_str();
  CLI::App* eq = leaf(ite, "equiv", "semantic equivalence of two expressions");
  eq->add_option("exprs", opt.inputs, "two expressions")->required()->expected(2);
  eq->add_option("--arity", opt.arity, "number of variables")->capture_default_str();

  CLI::App* malcev = app.add_subcommand("malcev", "Mal'cev operations")->require_subcommand(1);
  leaf(malcev, "search", "express x - y + z through binary operations")
      ->add_option("--depth", opt.depth, "depth cap")
      ->capture_default_str();

  std::vector<std::string> argv_store{"clonekit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Session s(opt, out);
    if (selected == "ring info") return s.ring_info();
    if (selected == "theory verify") return s.theory_verify();
    if (selected == "theory roundtrip") return s.theory_roundtrip();
    if (selected == "nba check") return s.nba_check();
    if (selected == "model check") return s.model_check();
    if (selected == "model decompose") return s.model_decompose();
    if (selected == "ite normalize") return s.ite_normalize();
    if (selected == "ite equiv") return s.ite_equiv();
    if (selected == "malcev search") return s.malcev_search();
    err << "usage error: no command\n";
    return kExitUsage;
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace clonekit::cli
