// mfact: batch front end for the matrix-factorization pipeline.
//
// Exit codes: 0 all certificates pass, 1 internal error, 2 parse or usage
// error, 3 precondition violation, 4 certificate failure, 5 solver bound
// exhausted.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

#include "mfc/error.hpp"
#include "mfc/io.hpp"

using nlohmann::ordered_json;
using namespace mfc;

namespace {

struct Options {
  std::string command;
  std::string input;
  std::string output;
  std::string certificate;
  std::string glued;
  unsigned degree_bound = 4;
  std::size_t points = 10;
  unsigned seed = 1;
};

// Worst failure seen so far; larger codes win except that 0 never overrides.
struct Status {
  int code = 0;
  void fail(ErrorKind k) { code = std::max(code, static_cast<int>(k)); }
  void require(bool ok, ErrorKind k = ErrorKind::certificate) {
    if (!ok) fail(k);
  }
};

ordered_json ranks_json(const std::map<int, std::size_t>& r) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : r) j[std::to_string(k)] = v;
  return j;
}

std::string point_string(const std::vector<Scalar>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].to_string();
  return s + ")";
}

ordered_json mf_summary(const MatrixFactorization& m) {
  ordered_json j;
  j["variables"] = m.ring->names;
  j["potential"] = m.potential.to_string();
  j["rank"] = {m.p0.size(), m.p1.size()};
  auto defect = m.defect();
  j["delta_squared"] = defect ? *defect : "W id";
  return j;
}

bool is_mf_file(const std::string& text) { return text.rfind("matrix-factorization", 0) == 0; }

void emit_mf(const Options& o, const MatrixFactorization& m, const std::vector<std::string>& notes) {
  const std::string text = io::write_mf(m, notes);
  if (!o.output.empty()) io::write_file_atomic(o.output, text);
}

ordered_json support_json(const MatrixFactorization& m, const std::vector<std::vector<Scalar>>& pts, unsigned bound,
                          Status& st, bool expect_contractible) {
  ordered_json out = ordered_json::array();
  for (const auto& v : support_check(m, pts, bound)) {
    ordered_json e;
    e["point"] = point_string(v.point);
    e["verdict"] = to_string(v.kind);
    bool on_zero = true;
    for (const auto& c : v.point) on_zero = on_zero && c.is_zero();
    if (v.kind == SupportVerdict::Kind::unknown) st.fail(ErrorKind::solver_bound);
    else if (expect_contractible && !on_zero && v.kind != SupportVerdict::Kind::contractible) st.fail(ErrorKind::certificate);
    out.push_back(std::move(e));
  }
  return out;
}

MatrixFactorization mf_from_document(const io::Document& doc, ordered_json& cert) {
  if (doc.koszul) {
    auto m = koszul_mf(doc.koszul->first, doc.koszul->second);
    cert["construction"] = "koszul";
    return m;
  }
  if (doc.scheme) {
    if (!doc.homotopy) throw PreconditionError("[dgscheme] needs f for folding");
    auto c = dgmf_from_homotopy(*doc.scheme, *doc.homotopy);
    cert["construction"] = "fold";
    cert["curvature"] = c.curvature.to_string(doc.scheme->odd);
    return fold_to_mf(c);
  }
  if (doc.has_curve) {
    auto r = spin::fundamental_mf(doc.curve);
    cert["construction"] = "fundamental";
    return r.mf;
  }
  throw PreconditionError("input has no [koszul], [dgscheme] or [curve] section");
}

int cmd_check(const Options& o, ordered_json& cert) {
  Status st;
  auto doc = io::read_document(o.input);
  if (!doc.w) throw PreconditionError("[potential] has no W");
  ordered_json items = ordered_json::array();
  auto item = [&](const std::string& name, bool ok, const std::string& detail, ErrorKind k = ErrorKind::certificate) {
    items.push_back({{"check", name}, {"passed", ok}, {"detail", detail}});
    st.require(ok, k);
  };
  auto wr = weight_of(*doc.w);
  std::string offending;
  for (const auto& t : wr.offending_terms) offending += (offending.empty() ? "" : ", ") + t;
  item("quasi-homogeneous", wr.kind == WeightReport::Kind::homogeneous,
       wr.kind == WeightReport::Kind::homogeneous ? "weight " + std::to_string(wr.degree)
       : wr.kind == WeightReport::Kind::zero      ? "W = 0"
                                                  : "offending terms: " + offending);
  if (doc.d && wr.kind == WeightReport::Kind::homogeneous)
    item("degree", wr.degree == *doc.d, "declared " + std::to_string(*doc.d));
  for (const auto& [name, g] : doc.group) {
    const Poly moved = act(g, *doc.w);
    item("invariant under " + name, moved == *doc.w, moved == *doc.w ? "W" : moved.to_string());
  }
  if (doc.j) {
    const Poly moved = act(*doc.j, *doc.w);
    item("invariant under J", moved == *doc.w, moved == *doc.w ? "W" : moved.to_string());
  }
  auto nd = nondegeneracy_check(*doc.w, o.degree_bound);
  std::string nd_detail = nd.explanation;
  if (nd.kind == NondegeneracyVerdict::Kind::degenerate) nd_detail += " witness " + point_string(nd.witness);
  item("nondegenerate", nd.kind == NondegeneracyVerdict::Kind::nondegenerate, nd_detail,
       nd.kind == NondegeneracyVerdict::Kind::inconclusive ? ErrorKind::solver_bound : ErrorKind::certificate);
  if (doc.has_curve) {
    try {
      doc.curve.validate();
      item("spin data", true, "accepted");
    } catch (const PreconditionError& e) {
      item("spin data", false, e.what());
    }
  }
  cert["checks"] = items;
  return st.code;
}

int cmd_koszul(const Options& o, ordered_json& cert) {
  auto doc = io::read_document(o.input);
  if (!doc.koszul) throw PreconditionError("input has no [koszul] section");
  auto m = koszul_mf(doc.koszul->first, doc.koszul->second);
  m.validate();
  cert["mf"] = mf_summary(m);
  emit_mf(o, m, {"koszul delta = alpha^ + iota_beta"});
  return 0;
}

int cmd_fold(const Options& o, ordered_json& cert) {
  auto doc = io::read_document(o.input);
  if (!doc.scheme) throw PreconditionError("input has no [dgscheme] section");
  DgFunction f = doc.homotopy ? *doc.homotopy : DgFunction(doc.ring, doc.scheme->odd_count());
  auto c = dgmf_from_homotopy(*doc.scheme, f);
  auto m = fold_to_mf(c);
  m.validate();
  cert["curvature"] = c.curvature.to_string(doc.scheme->odd);
  cert["leibniz"] = "holds";
  cert["mf"] = mf_summary(m);
  emit_mf(o, m, {"fold of (O_X, d + f)"});
  return 0;
}

int cmd_fundamental(const Options& o, ordered_json& cert) {
  Status st;
  auto doc = io::read_document(o.input);
  if (!doc.has_curve) throw PreconditionError("input has no [curve] section");
  auto r = spin::fundamental_mf(doc.curve);
  const auto& x = r.obstruction.scheme;
  cert["two_term"] = {{"rank_A", r.model.a.size()},
                      {"rank_B", r.model.b.size()},
                      {"homology", ranks_json(r.model.homology)},
                      {"cech", ranks_json(r.model.oracle)}};
  cert["obstruction"] = r.obstruction.c.to_string(x.odd);
  cert["f_minus_one"] = r.f_minus_one.to_string(x.odd);
  cert["convention"] = "delta = d - f_{-1}; potential = +sum W_i";
  cert["over_product"] = r.over_product;
  cert["mf"] = mf_summary(r.mf);
  cert["restricted_potential"] = r.restricted.to_string();
  if (r.over_product) st.require(r.mf.potential == r.restricted);

  auto res = spin::residue_structure(doc.curve, r.model, 30, o.seed);
  ordered_json rj = ordered_json::array();
  for (const auto& m : res.rj_ranks) rj.push_back(ranks_json(m));
  cert["residue"] = {{"residue_theorem", res.residue_theorem},
                     {"triangle", res.triangle},
                     {"compatibility", res.compatibility},
                     {"rj_ranks", rj}};
  st.require(res.passed());

  if (r.over_product) cert["support"] = support_json(r.mf, spin::sample_points(r.mf.ring, o.points, o.seed), o.degree_bound, st, true);

  auto eq = spin::check_equivariance(doc.curve, r);
  ordered_json entries = ordered_json::array();
  for (const auto& e : eq.entries)
    entries.push_back({{"element", e.name}, {"central", e.central}, {"passed", e.passed}, {"detail", e.detail}});
  cert["equivariance"] = entries;
  st.require(eq.passed());

  std::vector<std::string> notes{"convention delta = d - f_{-1}; potential = +sum W_i"};
  if (!r.over_product) notes.push_back("over tot(A): Z is not an isomorphism onto the product of fixed spaces");
  emit_mf(o, r.mf, notes);
  return st.code;
}

int cmd_verify(const Options& o, ordered_json& cert) {
  auto m = io::read_mf(o.input);
  auto defect = m.defect();
  auto weight = m.weight_defect();
  cert["mf"] = mf_summary(m);
  cert["weights"] = weight ? *weight : "consistent";
  return defect || weight ? static_cast<int>(ErrorKind::certificate) : 0;
}

int cmd_homology(const Options& o, ordered_json& cert) {
  const std::string text = io::read_file(o.input);
  if (!is_mf_file(text)) {
    auto doc = io::parse_document(text);
    if (doc.has_curve) {
      auto model = spin::two_term_realization(doc.curve);
      cert["two_term"] = {{"rank_A", model.a.size()},
                          {"rank_B", model.b.size()},
                          {"homology", ranks_json(model.homology)},
                          {"cech", ranks_json(model.oracle)}};
      return model.homology == model.oracle ? 0 : static_cast<int>(ErrorKind::certificate);
    }
    auto m = mf_from_document(doc, cert);
    ordered_json fibers = ordered_json::array();
    for (const auto& p : doc.points) {
      auto [h0, h1] = fiber_homology(m, p);
      fibers.push_back({{"point", point_string(p)}, {"H0", h0}, {"H1", h1}});
    }
    cert["fiber_homology"] = fibers;
    return 0;
  }
  auto m = io::parse_mf(text);
  std::vector<Scalar> origin(m.ring->size());
  auto [h0, h1] = fiber_homology(m, origin);
  cert["fiber_homology"] = ordered_json::array({{{"point", point_string(origin)}, {"H0", h0}, {"H1", h1}}});
  return 0;
}

int cmd_glue(const Options& o, ordered_json& cert) {
  Status st;
  if (o.glued.empty()) throw PreconditionError("glue needs --glued <spec of the nodal curve>");
  auto disc = io::read_document(o.input);
  auto glued = io::read_document(o.glued);
  if (!disc.has_curve || !glued.has_curve) throw PreconditionError("both inputs need a [curve] section");
  auto g = spin::twisted_diagonal_glue(disc.curve, glued.curve, static_cast<unsigned>(o.points), o.seed);
  cert["cartesian"] = g.cartesian;
  if (g.counterexample) cert["counterexample"] = point_string(*g.counterexample);
  cert["potential_match"] = g.potential_match;
  cert["identification"] = g.identification;
  cert["detail"] = g.detail;
  cert["pulled_back"] = mf_summary(g.pulled_back);
  cert["glued"] = mf_summary(g.glued.mf);
  st.require(g.passed());
  emit_mf(o, g.pulled_back, {"pullback along the twisted diagonal"});
  return st.code;
}

int cmd_support(const Options& o, ordered_json& cert) {
  Status st;
  const std::string text = io::read_file(o.input);
  MatrixFactorization m;
  std::vector<std::vector<Scalar>> pts;
  bool expect = false;
  if (is_mf_file(text)) {
    m = io::parse_mf(text);
  } else {
    auto doc = io::parse_document(text);
    m = mf_from_document(doc, cert);
    pts = doc.points;
    expect = doc.has_curve && !doc.koszul && !doc.scheme;
  }
  if (pts.empty()) pts = spin::sample_points(m.ring, o.points, o.seed);
  cert["mf"] = mf_summary(m);
  cert["support"] = support_json(m, pts, o.degree_bound, st, expect);
  return st.code;
}

int run(const Options& o, ordered_json& cert) {
  if (o.command == "check") return cmd_check(o, cert);
  if (o.command == "koszul") return cmd_koszul(o, cert);
  if (o.command == "fold") return cmd_fold(o, cert);
  if (o.command == "fundamental") return cmd_fundamental(o, cert);
  if (o.command == "verify") return cmd_verify(o, cert);
  if (o.command == "homology") return cmd_homology(o, cert);
  if (o.command == "glue") return cmd_glue(o, cert);
  return cmd_support(o, cert);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix factorizations from dg-schemes and genus-zero spin curves"};
  app.require_subcommand(1, 1);
  Options o;
  const std::vector<std::pair<const char*, const char*>> commands{
      {"check", "quasi-homogeneity, invariance and nondegeneracy of W"},
      {"koszul", "Koszul matrix factorization {alpha, beta}"},
      {"fold", "fold a curved dg-scheme presentation"},
      {"fundamental", "fundamental matrix factorization of a spin curve"},
      {"verify", "re-check delta^2 = W id for a matrix-factorization file"},
      {"homology", "homology ranks"},
      {"glue", "twisted-diagonal gluing certificate"},
      {"support", "contractibility at sample points"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input,--input", o.input, "input file")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", o.output, "matrix-factorization output file (written atomically)");
    sub->add_option("--certificate", o.certificate, "write the JSON certificate here instead of stdout");
    sub->add_option("--degree-bound", o.degree_bound, "solver degree bound")->check(CLI::Range(0u, 64u));
    sub->add_option("--points", o.points, "number of sample points")->check(CLI::Range(std::size_t{0}, std::size_t{10000}));
    sub->add_option("--seed", o.seed, "sampling seed");
    if (std::string(name) == "glue")
      sub->add_option("--glued", o.glued, "spec of the glued curve")->required()->check(CLI::ExistingFile);
    sub->callback([&o, n = std::string(name)] { o.command = n; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorKind::parse);
  }

  ordered_json cert;
  cert["command"] = o.command;
  int code = 0;
  try {
    code = run(o, cert);
  } catch (const Error& e) {
    code = static_cast<int>(e.kind());
    cert["error"] = e.what();
    std::cerr << "mfact: " << e.what() << "\n";
  } catch (const std::exception& e) {
    code = 1;
    cert["error"] = e.what();
    std::cerr << "mfact: internal error: " << e.what() << "\n";
  }
  cert["exit_code"] = code;
  cert["passed"] = code == 0;
  const std::string text = cert.dump(2) + "\n";
  try {
    if (o.certificate.empty()) std::cout << text;
    else io::write_file_atomic(o.certificate, text);
  } catch (const Error& e) {
    std::cerr << "mfact: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  }
  return code;
}
