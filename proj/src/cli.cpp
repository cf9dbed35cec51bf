#include "quiltkit/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "quiltkit/brace.hpp"
#include "quiltkit/complex_builder.hpp"
#include "quiltkit/fsurj.hpp"
#include "quiltkit/gs.hpp"
#include "quiltkit/homotopy.hpp"
#include "quiltkit/quilt.hpp"
#include "quiltkit/serialize.hpp"
#include "quiltkit/twist.hpp"

namespace qk {

namespace {

// Negates the composite of one seeded pair of arity 2 basis elements. A
// correct axiom checker must notice.
template <OperadLike O>
class SignMutated {
 public:
  using Basis = typename O::Basis;

  SignMutated(O op, std::uint64_t seed) : op_(std::move(op)) {
    const auto b = op_.basis(2);
    std::mt19937_64 rng(seed);
    x_ = b[rng() % b.size()];
    y_ = b[rng() % b.size()];
    slot_ = 1 + static_cast<int>(rng() % 2);
  }

  std::string name() const { return op_.name() + " (mutated " + op_.encode(x_) + " o_" + std::to_string(slot_) + " " + op_.encode(y_) + ")"; }
  std::vector<Basis> basis(int n) const { return op_.basis(n); }
  Element<Basis> compose(const Basis& x, int i, const Basis& y) const {
    auto r = op_.compose(x, i, y);
    if (i == slot_ && x == x_ && y == y_) r *= Scalar(-1);
    return r;
  }
  Basis act(const Basis& x, const Permutation& s) const { return op_.act(x, s); }
  Element<Basis> differential(const Basis& x) const { return op_.differential(x); }
  Basis unit() const { return op_.unit(); }
  std::string encode(const Basis& x) const { return op_.encode(x); }

 private:
  O op_;
  Basis x_, y_;
  int slot_ = 1;
};

CheckEntry entry_from(const std::string& suite, const std::string& identity, const CheckReport& r,
                      std::string detail = "") {
  return {suite, identity, r.passed, r.checks, std::move(detail), r.failures};
}

std::string betti_text(const BettiTable& t) {
  std::string s = "{";
  for (const auto& [d, k] : t) s += (s.size() > 1 ? ", " : "") + std::to_string(d) + ": " + std::to_string(k);
  return s + "}";
}

// ---------------------------------------------------------------- axioms

template <OperadLike O>
CheckEntry axiom_entry(const O& op, const RunConfig& cfg) {
  AxiomOptions opt;
  opt.max_arity = cfg.max_arity;
  opt.triple_arity = cfg.max_arity + 2;
  opt.random_samples = cfg.samples;
  opt.random_arity = cfg.max_arity + 1;
  opt.seed = cfg.seed;
  const auto r = check_operad_axioms(op, opt);
  return entry_from("axioms",
                    op.name() + ": d^2 = 0, derivation, associativity, equivariance, unit; exhaustive at arity <= " +
                        std::to_string(cfg.max_arity) + ", " + std::to_string(cfg.samples) + " samples at arity " +
                        std::to_string(cfg.max_arity + 1),
                    r);
}

void suite_axioms(const RunConfig& cfg, VerifyReport& rep) {
  if (cfg.mutate_signs) {
    rep.entries.push_back(axiom_entry(SignMutated<BraceOperad>({}, cfg.seed), cfg));
    rep.entries.push_back(axiom_entry(SignMutated<FSurjOperad>({}, cfg.seed), cfg));
    rep.entries.push_back(axiom_entry(SignMutated<QuiltOperad>({}, cfg.seed), cfg));
    return;
  }
  rep.entries.push_back(axiom_entry(BraceOperad{}, cfg));
  rep.entries.push_back(axiom_entry(FSurjOperad{}, cfg));
  rep.entries.push_back(axiom_entry(QuiltOperad{}, cfg));
  CheckReport m = check_morphism<QuiltOperad, BraceOperad>(
      [](const Quilt& q) { return project_to_brace(q); }, QuiltOperad{}, BraceOperad{}, cfg.max_arity);
  rep.entries.push_back(entry_from("axioms", "p: quilt -> brace is an operad morphism, arity <= " +
                                                 std::to_string(cfg.max_arity), m));
}

// ------------------------------------------------------ quilt homology

void suite_hawkins(const RunConfig& cfg, VerifyReport& rep) {
  for (int n = 1; n <= cfg.max_arity; ++n) {
    const auto trees = enumerate_trees(n);
    const auto qc = quilt_arity_complex(n);
    const auto b = betti(qc.complex);
    CheckReport r;
    r.record(b == BettiTable{{0, trees.size()}},
             [&] { return "betti " + betti_text(b) + " != {0: " + std::to_string(trees.size()) + "}"; });
    rep.entries.push_back(entry_from("hawkins-conjecture",
                                     "betti(Quilt(" + std::to_string(n) + ")) = {0: |Tree(" + std::to_string(n) + ")|}",
                                     r, betti_text(b)));

    CheckReport per;
    for (const auto& t : trees) {
      const auto h = quilt_tree_homology(t);
      per.record(h == BettiTable{{0, 1}}, [&] { return "betti(Quilt(" + t.encode() + ")) = " + betti_text(h); });
    }
    rep.entries.push_back(
        entry_from("hawkins-conjecture", "betti(Quilt(T)) = {0: 1} for every tree T of arity " + std::to_string(n), per));

    // p induces an isomorphism H^0(Quilt(n)) -> Brace(n) when it kills the
    // boundaries, has full rank and dim H^0 = |Tree(n)|
    CheckReport bij;
    const auto& top = qc.basis.at(0);
    SparseMatrix p(trees.size(), top.size());
    for (std::size_t c = 0; c < top.size(); ++c)
      for (const auto& [t, v] : project_to_brace(top[c])) {
        const auto it = std::lower_bound(trees.begin(), trees.end(), t);
        p.add(static_cast<std::size_t>(it - trees.begin()), c, v);
      }
    if (qc.complex.lowest_degree() < 0) {
      const auto& d = qc.complex.differential(-1);
      bij.record((p * d).is_zero(), [] { return std::string("p does not vanish on boundaries"); });
    }
    bij.record(rank(p) == trees.size(), [] { return std::string("p is not onto Brace(n)"); });
    bij.record(b.count(0) && b.at(0) == trees.size(), [] { return std::string("dim H^0 != |Tree(n)|"); });
    rep.entries.push_back(entry_from("hawkins-conjecture",
                                     "p maps degree 0 classes bijectively onto Tree(" + std::to_string(n) + ")", bij));
  }
}

// ------------------------------------------------- homotopy relations

void suite_linf(const RunConfig& cfg, VerifyReport& rep) {
  for (int n = 2; n <= std::max(2, cfg.max_arity); ++n) {
    rep.entries.push_back(entry_from("linf", "d(L_" + std::to_string(n) + ") = quadratic L-infinity terms",
                                     check_linf_relation(n)));
    rep.entries.push_back(entry_from("linf", "L_" + std::to_string(n) + " = sum_j (-1)^(1j) PL_" + std::to_string(n) + "^(1j)",
                                     check_coset_identity(n)));
  }
}

void suite_prelieinf(const RunConfig& cfg, VerifyReport& rep) {
  for (int n = 2; n <= std::max(2, cfg.max_arity); ++n)
    rep.entries.push_back(entry_from("prelieinf", "d(PL_" + std::to_string(n) + ") = quadratic pre-Lie-infinity terms",
                                     check_prelieinf_relation(n)));
}

// ------------------------------------------------------------ twisting

template <class Tw>
CheckReport square_zero(const Tw& tw, int max_arity) {
  CheckReport r;
  for (int n = 0; n <= max_arity; ++n)
    for (const auto& b : tw.basis(n))
      r.record(differential(tw, tw.differential(b)).is_zero(), [&] { return "d^2 != 0 on " + tw.encode(b); });
  return r;
}

void suite_twist(const RunConfig& cfg, VerifyReport& rep) {
  const int arity = std::min(cfg.max_arity, 2);
  const std::string range = "arity <= " + std::to_string(arity) + ", blacks <= " + std::to_string(cfg.black_cap);
  const auto tb = make_twbrace(cfg.black_cap);
  const auto tq = make_twquilt(cfg.black_cap);
  rep.entries.push_back(entry_from("twist", "(d^m)^2 = 0 on TwBrace, " + range, square_zero(tb, arity)));
  rep.entries.push_back(entry_from("twist", "(d^alpha)^2 = 0 on TwQuilt, " + range, square_zero(tq, arity)));

  CheckReport proj;
  for (int n = 0; n <= arity; ++n)
    for (const auto& b : tq.basis(n))
      proj.record(tw_projection(tq.differential(b)) == differential(tb, tw_projection(Element<Black<Quilt>>::of(b))),
                  [&] { return "projection does not commute with d on " + tq.encode(b); });
  rep.entries.push_back(entry_from("twist", "tw_projection is a chain map, " + range, proj));

  const int ge2 = std::min(cfg.max_arity, 3);
  const auto big = make_twbrace(std::max(ge2 - 1, 0));
  CheckReport closed;
  for (int n = 1; n <= ge2; ++n)
    for (const auto& b : twbrace_ge2_basis(n))
      for (const auto& [y, c] : big.differential(b))
        closed.record(in_twbrace_ge2(y), [&] { return "d leaves TwBrace>=2 on " + big.encode(b); });
  for (int m = 1; m < ge2; ++m)
    for (int k = 1; m + k - 1 <= ge2; ++k)
      for (const auto& x : twbrace_ge2_basis(m))
        for (const auto& y : twbrace_ge2_basis(k))
          for (int i = 1; i <= m; ++i)
            for (const auto& [z, c] : big.compose(x, i, y))
              closed.record(in_twbrace_ge2(z), [&] { return "composition leaves TwBrace>=2: " + big.encode(z); });
  rep.entries.push_back(entry_from("twist", "TwBrace>=2 is closed under d^m and composition, arity <= " + std::to_string(ge2),
                                   closed));

  FSurjOperad fs;
  for (int n = 1; n <= cfg.max_arity; ++n) {
    const auto tw = make_twbrace(std::max(n - 1, 0));
    const auto twc = build_complex<Black<PlanarTree>>(twbrace_ge2_basis(n),
                                                      [&](const Black<PlanarTree>& b) { return tw.differential(b); });
    const auto fsc = build_complex<Word>(enumerate_words(n), [&](const Word& w) { return fs.differential(w); });
    BettiTable shifted;
    for (const auto& [d, k] : betti(twc.complex)) shifted[d - (n - 1)] = k;
    const auto target = betti(fsc.complex);
    CheckReport h;
    h.record(shifted == target, [&] { return betti_text(shifted) + " != " + betti_text(target); });
    rep.entries.push_back(entry_from("twist",
                                     "H(TwBrace>=2(" + std::to_string(n) + ")) shifted by " + std::to_string(n - 1) +
                                         " = H(FSurj(" + std::to_string(n) + "))",
                                     h, betti_text(target)));
  }
}

// ----------------------------------------------------------- quotients

void suite_quotients(const RunConfig& cfg, VerifyReport& rep) {
  using TQ = Element<Black<Quilt>>;
  const int arity = std::min(cfg.max_arity, 2);
  const int cap = std::min(cfg.black_cap, 2);
  const std::string range = "arity <= " + std::to_string(arity) + ", blacks <= " + std::to_string(cap);
  const auto tq = make_twquilt(cap);
  const auto tc = make_twquilt(cap, c_series(), cap + 1);
  const auto tm = make_twquilt(cap, m_series(), cap);

  CheckReport qb, qbsq;
  for (int n = 0; n <= arity; ++n)
    for (const auto& b : tq.basis(n)) {
      const auto x = TQ::of(b);
      const auto nx = quiltb_normal_form(x);
      qb.record(quiltb_normal_form(nx) == nx, [&] { return "normal form not idempotent on " + tq.encode(b); });
      qb.record(quiltb_normal_form(differential(tq, nx)) == quiltb_normal_form(tq.differential(b)),
                [&] { return "d does not descend on " + tq.encode(b); });
      qbsq.record(quiltb_normal_form(differential(tc, quiltb_normal_form(tc.differential(b)))).is_zero(),
                  [&] { return "(d^c)^2 != 0 on " + tq.encode(b); });
    }
  rep.entries.push_back(entry_from("quotients", "d descends through quiltb_normal_form, " + range, qb));
  rep.entries.push_back(entry_from("quotients", "(d^c)^2 = 0 in Quilt_b[[c]], " + range, qbsq));

  MQuiltQuotient Q(tq);
  CheckReport mq, mqsq;
  for (int n = 0; n <= arity; ++n)
    for (const auto& b : tq.basis(n)) {
      const auto x = TQ::of(b);
      const auto nx = Q.normal_form(x);
      mq.record(Q.normal_form(nx) == nx, [&] { return "normal form not idempotent on " + tq.encode(b); });
      mq.record(Q.normal_form(differential(tq, nx)) == Q.normal_form(tq.differential(b)),
                [&] { return "d does not descend on " + tq.encode(b); });
      mqsq.record(Q.normal_form(differential(tm, Q.normal_form(tm.differential(b)))).is_zero(),
                  [&] { return "(d^m)^2 != 0 on " + tq.encode(b); });
    }
  rep.entries.push_back(entry_from("quotients", "d descends through the mQuilt normal form, " + range, mq));
  rep.entries.push_back(entry_from("quotients", "(d^m)^2 = 0 in mQuilt, " + range, mqsq));
}

// ------------------------------------------------------------------- GS

const char* kDualNumbers = R"({
  "base": {"objects": ["U"], "arrows": []},
  "fibers": {"U": {"objects": ["*"], "homs": [{"source": "*", "target": "*", "dim": 2}],
                   "identities": {"*": [1, 0]},
                   "products": [{"objects": ["*", "*", "*"], "values": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]}]}},
  "restrictions": []
})";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("", "cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

SparseMatrix sum(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out = a;
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (const auto& [c, v] : b.row(r)) out.add(r, c, v);
  return out;
}

void gs_checks(const std::string& name, const Prestack& p, int bound, VerifyReport& rep) {
  const auto v = validate_prestack(p);
  CheckReport valid;
  valid.record(v.valid, [&] { return v.problems.empty() ? std::string("invalid") : v.problems.front(); });
  rep.entries.push_back(entry_from("gs", name + ": category, functor, naturality and coherence axioms", valid,
                                   v.presheaf ? "presheaf" : "prestack with nontrivial twists"));
  if (!v.valid) return;
  const GSComplex gs(p);
  CheckReport d0;
  for (int n = 0; n <= bound; ++n)
    for (int pp = 0; pp <= n; ++pp)
      d0.record((gs.d0_matrix(pp, n - pp + 1) * gs.d0_matrix(pp, n - pp)).is_zero(),
                [&] { return "d0^2 != 0 at (" + std::to_string(pp) + ", " + std::to_string(n - pp) + ")"; });
  rep.entries.push_back(entry_from("gs", name + ": d0^2 = 0 for p + q <= " + std::to_string(bound), d0));
  if (!v.presheaf) return;
  CheckReport tot;
  for (int n = 0; n <= bound; ++n)
    for (int pp = 0; pp <= n; ++pp) {
      const int q = n - pp;
      tot.record((gs.d1_matrix(pp + 1, q) * gs.d1_matrix(pp, q)).is_zero(),
                 [&] { return "d1^2 != 0 at (" + std::to_string(pp) + ", " + std::to_string(q) + ")"; });
      tot.record(sum(gs.d1_matrix(pp, q + 1) * gs.d0_matrix(pp, q), gs.d0_matrix(pp + 1, q) * gs.d1_matrix(pp, q)).is_zero(),
                 [&] { return "d0 d1 + d1 d0 != 0 at (" + std::to_string(pp) + ", " + std::to_string(q) + ")"; });
    }
  rep.entries.push_back(entry_from("gs", name + ": (d0 + d1)^2 = 0 for p + q <= " + std::to_string(bound), tot,
                                   "H = " + betti_text(gs_cohomology(p, bound))));
}

void suite_gs(const RunConfig& cfg, VerifyReport& rep) {
  if (!cfg.prestack.empty()) {
    gs_checks(std::filesystem::path(cfg.prestack).filename().string(), prestack_from_json(read_file(cfg.prestack)),
              cfg.bound, rep);
    return;
  }
  const auto p = prestack_from_json(kDualNumbers);
  gs_checks("dual numbers", p, cfg.bound, rep);
  const auto h = gs_cohomology(p, cfg.bound);
  CheckReport r;
  BettiTable expect{{0, 2}};
  for (int n = 1; n <= cfg.bound - 1; ++n) expect[n] = 1;
  r.record(h == expect, [&] { return betti_text(h) + " != " + betti_text(expect); });
  rep.entries.push_back(entry_from("gs", "dual numbers: H^n = HH^n = 1 for 1 <= n <= " + std::to_string(cfg.bound - 1), r,
                                   betti_text(h)));
}

using Suite = void (*)(const RunConfig&, VerifyReport&);

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> s{
      {"axioms", suite_axioms},     {"hawkins-conjecture", suite_hawkins}, {"linf", suite_linf},
      {"prelieinf", suite_prelieinf}, {"twist", suite_twist},              {"quotients", suite_quotients},
      {"gs", suite_gs}};
  return s;
}

// ------------------------------------------------------------- commands

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class B>
Element<B> element_argument(const std::string& arg, const std::string& operad,
                            const std::function<B(const std::string&)>& parse) {
  if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json") {
    json j;
    try {
      j = json::parse(read_file(arg));
    } catch (const json::parse_error& e) {
      throw FormatError("", e.what());
    }
    return element_from_json<B>(j, operad, parse);
  }
  return Element<B>::of(parse(arg));
}

template <OperadLike O>
void print_element(std::ostream& out, const RunConfig& cfg, const O& op, const ElementOf<O>& x) {
  if (cfg.format == "json")
    out << element_to_json(op, x).dump(2) << '\n';
  else
    out << describe(op, x) << '\n';
}

template <OperadLike O>
int algebra_command(const O& op, const std::function<typename O::Basis(const std::string&)>& parse,
                    const std::vector<std::string>& operands, int slot, const RunConfig& cfg, std::ostream& out) {
  const auto x = element_argument<typename O::Basis>(operands.at(0), op.name(), parse);
  if (operands.size() == 1) {
    print_element(out, cfg, op, differential(op, x));
    return 0;
  }
  const auto y = element_argument<typename O::Basis>(operands.at(1), op.name(), parse);
  if (slot < 1 || slot > x.arity()) throw InputError("slot " + std::to_string(slot) + " out of range 1.." + std::to_string(x.arity()));
  print_element(out, cfg, op, compose(op, x, slot, y));
  return 0;
}

int dispatch_algebra(const std::string& operad, const std::vector<std::string>& operands, int slot,
                     const RunConfig& cfg, std::ostream& out) {
  if (operad == "brace")
    return algebra_command<BraceOperad>(BraceOperad{}, parse_tree_text, operands, slot, cfg, out);
  if (operad == "fsurj")
    return algebra_command<FSurjOperad>(FSurjOperad{}, parse_word_text, operands, slot, cfg, out);
  if (operad == "quilt")
    return algebra_command<QuiltOperad>(QuiltOperad{}, parse_quilt_text, operands, slot, cfg, out);
  throw InputError("unknown operad '" + operad + "' (expected brace, fsurj or quilt)");
}

template <class Op, class B>
void list_basis(const Op& op, const std::vector<B>& all, const std::string& name, int arity, const int* degree,
                const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<B> keep;
  for (const auto& b : all)
    if (!degree || basis_degree(b) == *degree) keep.push_back(b);
  if (cfg.format == "json") {
    json j{{"operad", name}, {"arity", arity}, {"count", keep.size()}, {"elements", json::array()}};
    for (const auto& b : keep) j["elements"].push_back({{"basis", op.encode(b)}, {"degree", basis_degree(b)}});
    out << j.dump(2) << '\n';
  } else {
    for (const auto& b : keep) out << op.encode(b) << '\n';
    err << keep.size() << " elements\n";
  }
}

int cmd_enumerate(const std::string& operad, int n, const int* degree, const RunConfig& cfg, std::ostream& out,
                  std::ostream& err) {
  if (n < 0) throw InputError("arity must be nonnegative");
  if (operad == "brace") {
    BraceOperad op;
    list_basis(op, op.basis(n), operad, n, degree, cfg, out, err);
  } else if (operad == "fsurj") {
    FSurjOperad op;
    list_basis(op, op.basis(n), operad, n, degree, cfg, out, err);
  } else if (operad == "quilt") {
    QuiltOperad op;
    list_basis(op, op.basis(n), operad, n, degree, cfg, out, err);
  } else if (operad == "twbrace") {
    const auto op = make_twbrace(cfg.black_cap);
    list_basis(op, op.basis(n), operad, n, degree, cfg, out, err);
  } else if (operad == "twquilt") {
    const auto op = make_twquilt(cfg.black_cap);
    list_basis(op, op.basis(n), operad, n, degree, cfg, out, err);
  } else if (operad == "twbrace-ge2") {
    const auto op = make_twbrace(std::max(n - 1, 0));
    list_basis(op, twbrace_ge2_basis(n), operad, n, degree, cfg, out, err);
  } else {
    throw InputError("unknown operad '" + operad + "' (expected brace, fsurj, quilt, twbrace, twquilt or twbrace-ge2)");
  }
  return 0;
}

void print_betti(std::ostream& out, const RunConfig& cfg, const std::string& label, const BettiTable& t) {
  if (cfg.format == "json")
    out << json{{"complex", label}, {"betti", json::parse(betti_to_json(t))}}.dump() << '\n';
  else
    out << label << ": " << betti_text(t) << '\n';
}

int cmd_homology(const std::string& operad, int n, bool per_tree, const RunConfig& cfg, std::ostream& out) {
  if (n < 1) throw InputError("arity must be positive");
  const std::string a = std::to_string(n);
  if (operad == "quilt") {
    if (per_tree)
      for (const auto& t : enumerate_trees(n)) print_betti(out, cfg, "Quilt(" + t.encode() + ")", quilt_tree_homology(t));
    else
      print_betti(out, cfg, "Quilt(" + a + ")", betti(quilt_arity_complex(n).complex));
  } else if (operad == "fsurj") {
    FSurjOperad fs;
    const auto c = build_complex<Word>(enumerate_words(n), [&](const Word& w) { return fs.differential(w); });
    print_betti(out, cfg, "FSurj(" + a + ")", betti(c.complex));
  } else if (operad == "twbrace-ge2") {
    const auto tw = make_twbrace(std::max(n - 1, 0));
    const auto c = build_complex<Black<PlanarTree>>(twbrace_ge2_basis(n),
                                                    [&](const Black<PlanarTree>& b) { return tw.differential(b); });
    print_betti(out, cfg, "TwBrace>=2(" + a + ")", betti(c.complex));
  } else {
    throw InputError("unknown operad '" + operad + "' (expected quilt, fsurj or twbrace-ge2)");
  }
  return 0;
}

int cmd_render(const std::string& input, const std::string& format, std::ostream& out) {
  Quilt q;
  if (input.size() > 5 && input.substr(input.size() - 5) == ".json") {
    json j;
    try {
      j = json::parse(read_file(input));
    } catch (const json::parse_error& e) {
      throw FormatError("", e.what());
    }
    q = quilt_from_json(j);
  } else {
    q = parse_quilt_text(input);
  }
  const auto d = layout_quilt(q);
  if (format == "svg") {
    out << render_svg(d);
  } else if (format == "json") {
    json rects = json::array();
    for (const auto& r : d.rects)
      rects.push_back({{"label", r.label},
                       {"cols", {r.col_lo, r.col_hi}},
                       {"rows", {r.row_lo, r.row_hi}},
                       {"height", r.nominal_height},
                       {"width", r.nominal_width}});
    json lines = json::array();
    for (const auto& l : d.double_lines)
      lines.push_back({{"label", l.label}, {"row", l.row}, {"cols", {l.col_lo, l.col_hi}}});
    out << json{{"quilt", quilt_to_json(q)}, {"rows", d.rows}, {"cols", d.cols}, {"rects", rects},
                {"cells", d.cells}, {"doubleLines", lines}}
               .dump(2)
        << '\n';
  } else {
    out << render_text(d);
  }
  return 0;
}

int cmd_gs(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  if (cfg.bound < 1) throw InputError("bound must be positive");
  const Prestack p = prestack_from_json(read_file(path));
  const auto v = validate_prestack(p);
  if (!v.valid) {
    std::string msg = "invalid prestack:";
    for (const auto& s : v.problems) msg += "\n  " + s;
    throw InputError(msg);
  }
  if (v.presheaf) {
    const auto h = gs_cohomology(p, cfg.bound);
    if (cfg.format == "json") {
      out << json{{"presheaf", true}, {"bound", cfg.bound}, {"betti", json::parse(betti_to_json(h))}}.dump() << '\n';
    } else {
      for (int n = 0; n <= cfg.bound - 1; ++n) out << "H^" << n << " = " << (h.count(n) ? h.at(n) : 0) << '\n';
    }
    return 0;
  }
  // only d0 is defined for prestacks with nontrivial twists: report the
  // column cohomology (the E1 page of the filtration by p)
  const GSComplex gs(p);
  json e1 = json::array();
  std::ostringstream text;
  text << "prestack with nontrivial twists: only d0 is available; E1 page\n";
  for (int n = 0; n <= cfg.bound - 1; ++n)
    for (int pp = 0; pp <= n; ++pp) {
      const int q = n - pp;
      const std::size_t dim = gs.dim(pp, q);
      const std::size_t in = q > 0 ? rank(gs.d0_matrix(pp, q - 1)) : 0;
      const std::size_t h = dim - rank(gs.d0_matrix(pp, q)) - in;
      e1.push_back({{"p", pp}, {"q", q}, {"dim", h}});
      text << "E1^{" << pp << "," << q << "} = " << h << '\n';
    }
  if (cfg.format == "json")
    out << json{{"presheaf", false}, {"bound", cfg.bound}, {"e1", e1}}.dump() << '\n';
  else
    out << text.str();
  return 0;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.passed; });
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  out << "seed " << seed << '\n';
  std::size_t ok = 0;
  for (const auto& e : entries) {
    ok += e.passed;
    out << (e.passed ? "PASS" : "FAIL") << "  [" << e.suite << "] " << e.identity << " (" << e.checks << " checks)";
    if (!e.detail.empty()) out << ": " << e.detail;
    out << '\n';
    for (const auto& f : e.failures) out << "      counterexample: " << f << '\n';
  }
  out << ok << " passed, " << entries.size() - ok << " failed\n";
  return out.str();
}

std::string VerifyReport::json() const {
  nlohmann::json j{{"seed", seed}, {"passed", passed()}, {"checks", nlohmann::json::array()}};
  for (const auto& e : entries)
    j["checks"].push_back({{"suite", e.suite},
                           {"identity", e.identity},
                           {"passed", e.passed},
                           {"count", e.checks},
                           {"detail", e.detail},
                           {"failures", e.failures}});
  return j.dump(2) + "\n";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, s] : suites()) v.push_back(n);
    return v;
  }();
  return names;
}

VerifyReport run_verify(const std::string& suite, const RunConfig& cfg) {
  VerifyReport rep;
  rep.seed = cfg.seed;
  bool found = false;
  for (const auto& [name, run] : suites())
    if (suite == "all" || suite == name) {
      run(cfg, rep);
      found = true;
    }
  if (!found) throw std::invalid_argument("unknown suite '" + suite + "'");
  return rep;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in the brace, surjection and quilt operads and the GS complex", "quiltkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "svg"}));
  app.add_option("--seed", cfg.seed, "Seed for sampled checks");
  app.add_option("--max-arity", cfg.max_arity, "Largest arity checked")->check(CLI::PositiveNumber);
  app.add_option("--black-cap", cfg.black_cap, "Largest number of black inputs kept")->check(CLI::NonNegativeNumber);
  app.add_option("--bound", cfg.bound, "Total degree bound of the GS complex")->check(CLI::PositiveNumber);
  app.add_option("--samples", cfg.samples, "Random axiom instances per operad");
  app.add_option("--prestack", cfg.prestack, "Prestack file (JSON)");
  app.fallthrough();

  std::string operad, suite = "all", input;
  int arity = -1, slot = 1, degree = 0;
  std::vector<std::string> operands;
  bool per_tree = false;

  auto* en = app.add_subcommand("enumerate", "List the canonical basis of one arity");
  en->add_option("operad,--operad", operad, "brace, fsurj, quilt, twbrace, twquilt, twbrace-ge2")->required();
  en->add_option("arity,--arity", arity, "Arity")->required();
  auto* deg_opt = en->add_option("--degree", degree, "Keep one degree only");

  auto* ve = app.add_subcommand("verify", "Run a verification suite");
  ve->add_option("suite", suite, "Suite name or all")->check(CLI::IsMember([] {
    auto v = suite_names();
    v.push_back("all");
    return v;
  }()));
  ve->add_flag("--mutate-signs", cfg.mutate_signs, "Negate one seeded composition before the axiom checks");

  auto* co = app.add_subcommand("compose", "Partial composition x o_slot y");
  co->add_option("operad,--operad", operad, "brace, fsurj or quilt")->required();
  co->add_option("operands", operands, "Two basis encodings or element files")->expected(2)->required();
  co->add_option("--slot", slot, "Composition slot")->required();

  auto* di = app.add_subcommand("differential", "Differential of an element");
  di->add_option("operad,--operad", operad, "brace, fsurj or quilt")->required();
  di->add_option("operand", operands, "Basis encoding or element file")->expected(1)->required();

  auto* ho = app.add_subcommand("homology", "Betti numbers of one arity");
  ho->add_option("arity,--arity", arity, "Arity")->required();
  std::string hop = "quilt";
  ho->add_option("--operad", hop, "quilt, fsurj or twbrace-ge2");
  ho->add_flag("--per-tree", per_tree, "One table per tree (quilt only)");

  auto* re = app.add_subcommand("render", "Draw a quilt");
  re->add_option("quilt", input, "Quilt file (JSON) or 'word tree' text")->required();

  auto* gs = app.add_subcommand("gs", "Cohomology of the GS complex of a prestack");
  gs->add_option("prestack", cfg.prestack, "Prestack file (JSON)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cfg.format == "svg" && !re->parsed()) throw InputError("--format svg applies to render only");
    if (en->parsed()) return cmd_enumerate(operad, arity, deg_opt->count() ? &degree : nullptr, cfg, out, err);
    if (ve->parsed()) {
      const auto rep = run_verify(suite, cfg);
      out << (cfg.format == "json" ? rep.json() : rep.text());
      return rep.passed() ? 0 : 1;
    }
    if (co->parsed()) return dispatch_algebra(operad, operands, slot, cfg, out);
    if (di->parsed()) return dispatch_algebra(operad, operands, slot, cfg, out);
    if (ho->parsed()) return cmd_homology(hop, arity, per_tree, cfg, out);
    if (re->parsed()) return cmd_render(input, cfg.format, out);
    if (gs->parsed()) {
      if (cfg.prestack.empty()) throw InputError("gs needs a prestack file");
      return cmd_gs(cfg.prestack, cfg, out);
    }
  } catch (const FormatError& e) {
    err << "input error at " << e.what() << '\n';
    return 2;
  } catch (const PrestackError& e) {
    err << "input error at " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace qk
