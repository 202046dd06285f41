#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "besselw/bessel.hpp"
#include "besselw/model_document.hpp"
#include "besselw/morse.hpp"
#include "besselw/oracle.hpp"
#include "besselw/parallel.hpp"
#include "besselw/quadrature.hpp"

namespace besselw::cli {

enum Exit : int { pass = 0, fail = 1, inadmissible = 2, usage = 64 };

/// "6,7,9" -> {6, 7, 9}.
inline std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw parse_error("bad index '" + item + "'");
    }
    if (used != item.size()) throw parse_error("bad index '" + item + "'");
    out.push_back(v);
  }
  return out;
}

/// "1:2,5:6" -> {1, 2, 5, 6}; each n1:n2 is the inclusive run n1..n2.
inline std::vector<int> parse_pair_runs(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw parse_error("pair run '" + item + "' needs the form n1:n2");
    const auto lo = parse_index_list(item.substr(0, colon));
    const auto hi = parse_index_list(item.substr(colon + 1));
    if (lo.size() != 1 || hi.size() != 1 || hi[0] < lo[0]) throw parse_error("bad pair run '" + item + "'");
    for (int m = lo[0]; m <= hi[0]; ++m) out.push_back(m);
  }
  return out;
}

struct Options {
  std::string a;
  std::string virtuals;
  std::string pairs;
  std::string minus;
  std::string plus;
  std::string which;
  std::string json_path;
  std::string csv_path;
  double x_min = -4.0;
  double x_max = 14.0;
  int points = 8000;
  double tol = -1;
  int max_n = 10;
  int max_index = 12;
  int max_size = 3;
  std::string kind = "all";
  bool allow_threshold = false;
  bool force = false;
  bool oracle = false;
  // bessel
  int n = 0;
  std::string alpha;
  std::string beta = "2";
  std::string rbessel_A;
  std::string laguerre_alpha;
};

/// Thrown for a threshold parameter given without --allow-threshold.
class threshold_refused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline MorseParam param_from(const Options& o) {
  if (o.a.empty()) throw parse_error("--a is required");
  const Rational a = parse_rational(o.a);
  MorseParam p(a, ThresholdPolicy::allow);
  if (p.is_threshold() && !o.allow_threshold)
    throw threshold_refused("a = " + a.get_str() + " places a level at zero energy; pass --allow-threshold");
  return p;
}

inline DeformationSpec spec_from(const Options& o) {
  try {
    return {param_from(o), SeedSet(Sign::minus, parse_pair_runs(o.pairs)),
            SeedSet(Sign::minus, parse_index_list(o.virtuals))};
  } catch (const threshold_refused&) {
    throw;
  } catch (const parse_error&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

inline SeedSet seed_set_from(const Options& o) {
  if (o.minus.empty() == o.plus.empty()) throw parse_error("give exactly one of --minus or --plus");
  try {
    return o.minus.empty() ? SeedSet(Sign::plus, parse_index_list(o.plus))
                           : SeedSet(Sign::minus, parse_index_list(o.minus));
  } catch (const parse_error&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

inline Grid grid_from(const Options& o) {
  try {
    return Grid(o.x_min, o.x_max, o.points);
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

/// Writes to `path`, or to `out` when path is empty.
inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text << '\n';
}

/// Two columns x,V(e^x) over the interior nodes of the grid.
inline void write_grid_csv(const RationalFunction& V, const Grid& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  const auto xs = grid_nodes(g);
  const auto vs = sample_potential(V, g);
  f << "# x,V\n" << std::setprecision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) f << xs[i] << ',' << vs[i] << '\n';
}

inline json set_json(const SeedSet& s) {
  return {{"sign", std::string(1, to_char(s.sign()))}, {"indexes", s.indexes()}};
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_potential(const Options& o, std::ostream& out, std::ostream& err) {
  const DeformationSpec spec = spec_from(o);
  const ModelDocument doc = make_document(spec, o.force);
  emit(render(doc), o.json_path, out);
  if (!o.csv_path.empty() && doc.potential) write_grid_csv(*doc.potential, grid_from(o), o.csv_path);
  if (!doc.certificate.ok) {
    err << "besselw: inadmissible spec " << to_string(spec) << '\n';
    return inadmissible;
  }
  return pass;
}

inline json identities_report(const Options& o, bool& ok) {
  std::vector<Rational> as;
  if (!o.a.empty())
    as.push_back(parse_rational(o.a));
  else
    as = {Rational(1), Rational(3, 2), Rational(3), Rational(9, 2), Rational(7, 3)};
  json failures = json::array();
  int checked = 0;
  for (const auto& a : as)
    for (Sign sign : {Sign::minus, Sign::plus})
      for (int m = 0; m <= o.max_n; ++m)
        for (Identity id : {Identity::bochner_ode, Identity::laguerre_connection, Identity::backward_shift,
                            Identity::forward_shift}) {
          if (id == Identity::forward_shift && m == 0) continue;
          ++checked;
          const Polynomial r = identity_residual(id, static_cast<unsigned>(m), a, sign);
          if (!r.is_zero())
            failures.push_back({{"identity", to_string(id)},
                                {"m", m},
                                {"a", a.get_str()},
                                {"sign", std::string(1, to_char(sign))},
                                {"residual", coefficients_json(r)}});
        }
  ok = failures.empty();
  return {{"which", "identities"}, {"checked", checked}, {"failures", failures}, {"passed", ok}};
}

inline json equivalence_report(const Options& o, bool& ok) {
  const SeedSet set = seed_set_from(o);
  const MorseParam p(parse_rational(o.a.empty() ? throw parse_error("--a is required") : o.a),
                     ThresholdPolicy::allow);
  const EquivalenceReport r = verify_equivalence(set, p);
  ok = r.passed();
  json j = {{"which", "equivalence"},
            {"set", set_json(r.set)},
            {"a", r.a.get_str()},
            {"dual", set_json(r.dual)},
            {"shift", r.shift},
            {"dual_a", Rational(r.a + r.shift).get_str()},
            {"monic_equal", r.monic_equal},
            {"proportionality", r.proportionality.get_str()},
            {"degenerate", r.degenerate},
            {"limit_equal", r.limit_equal},
            {"passed", ok}};
  j["lhs_monic"] = r.lhs_monic.is_zero() ? json(nullptr) : coefficients_json(r.lhs_monic);
  j["rhs_monic"] = r.rhs_monic.is_zero() ? json(nullptr) : coefficients_json(r.rhs_monic);
  return j;
}

inline json orthogonality_report(const Options& o, bool& ok) {
  const DeformationSpec spec = spec_from(o);
  std::vector<int> levels;
  for (const auto& l : bound_spectrum(spec))
    if (!l.threshold()) levels.push_back(l.n);
  std::sort(levels.begin(), levels.end());
  const double tol = o.tol > 0 ? o.tol : 1e-6;
  const GramReport g = gram_matrix(spec, levels);
  ok = g.diagonal_positive && g.max_offdiag_ratio < tol;
  return {{"which", "orthogonality"}, {"levels", g.levels},  {"gram", g.matrix},
          {"max_offdiag_ratio", g.max_offdiag_ratio},    {"tol", tol}, {"passed", ok}};
}

inline json spectrum_report(const Options& o, bool& ok) {
  const DeformationSpec spec = spec_from(o);
  SpectrumOptions so;
  if (o.tol > 0) so.extrapolated_tol = o.tol;
  const SpectrumReport r = isospectral_check(spec, grid_from(o), so);
  ok = r.passed;
  json j = to_json(summarize(r));
  j["which"] = "spectrum";
  return j;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  bool ok = false;
  json report;
  if (o.which == "identities") {
    report = identities_report(o, ok);
  } else if (o.which == "equivalence") {
    report = equivalence_report(o, ok);
  } else if (o.which == "orthogonality" || o.which == "spectrum") {
    const DeformationSpec spec = spec_from(o);
    const AdmissibilityCertificate cert = certify_admissible(spec);
    if (!cert.ok) {
      out << json{{"which", o.which}, {"certificate", to_json(cert)}, {"passed", false}}.dump(2) << '\n';
      err << "besselw: inadmissible spec " << to_string(spec) << '\n';
      return inadmissible;
    }
    report = o.which == "spectrum" ? spectrum_report(o, ok) : orthogonality_report(o, ok);
  } else {
    throw parse_error("--which must be one of equivalence, identities, orthogonality, spectrum");
  }
  emit(report.dump(2), o.json_path, out);
  if (!ok) err << "besselw: verification failed (" << o.which << ")\n";
  return ok ? pass : fail;
}

/// Lexicographic k-subsets of `pool`.
inline void combinations(const std::vector<int>& pool, std::size_t k, std::vector<std::vector<int>>& out) {
  std::vector<int> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == k) {
      out.push_back(pick);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      pick.push_back(pool[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

/// Candidate specs in emission order: juxtaposed-pair sets, then virtual sets.
inline std::vector<DeformationSpec> catalog_specs(const MorseParam& p, int max_index, int max_size,
                                                  const std::string& kind) {
  std::vector<DeformationSpec> specs;
  if (kind == "all" || kind == "pairs") {
    const int top = std::min(p.N(), max_index);
    std::vector<std::vector<int>> sets;
    for (int mask = 1; top >= 1 && mask < (1 << top); ++mask) {
      std::vector<int> idx;
      for (int b = 0; b < top; ++b)
        if (mask >> b & 1) idx.push_back(b + 1);
      if (is_juxtaposed_pairs(SeedSet(Sign::minus, idx)).ok) sets.push_back(idx);
    }
    std::sort(sets.begin(), sets.end());
    for (auto& s : sets) specs.push_back({p, SeedSet(Sign::minus, s), SeedSet(Sign::minus, {})});
  }
  if (kind == "all" || kind == "virtuals") {
    std::vector<int> pool;
    for (int m = 1; m <= max_index; ++m)
      if (Rational(m) > 2 * p.a() - 1) pool.push_back(m);
    std::vector<std::vector<int>> sets;
    for (int k = 1; k <= max_size; ++k) combinations(pool, static_cast<std::size_t>(k), sets);
    std::sort(sets.begin(), sets.end());
    for (auto& s : sets) specs.push_back({p, SeedSet(Sign::minus, {}), SeedSet(Sign::minus, s)});
  }
  return specs;
}

inline int cmd_catalog(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.kind != "all" && o.kind != "pairs" && o.kind != "virtuals")
    throw parse_error("--kind must be all, pairs or virtuals");
  if (o.max_index < 1 || o.max_size < 1) throw parse_error("--max-index and --max-size must be positive");
  const MorseParam p = param_from(o);
  const auto specs = catalog_specs(p, o.max_index, o.max_size, o.kind);
  const auto docs = parallel_map(specs, [](const DeformationSpec& s) { return make_document(s); });
  std::ostringstream lines;
  int bad = 0;
  for (const auto& d : docs) {
    lines << to_json(d).dump() << '\n';
    if (!d.certificate.ok) ++bad;
  }
  std::string text = lines.str();
  if (!text.empty()) text.pop_back();
  if (!text.empty() || !o.json_path.empty()) emit(text, o.json_path, out);
  err << "besselw: catalog of " << docs.size() << " specs, " << bad << " inadmissible\n";
  return bad == 0 ? pass : fail;
}

inline int cmd_bessel(const Options& o, std::ostream& out) {
  if (o.n < 0) throw parse_error("--n must be non-negative");
  const int chosen = !o.alpha.empty() + !o.rbessel_A.empty() + !o.laguerre_alpha.empty();
  if (chosen != 1) throw parse_error("give exactly one of --alpha, --rbessel, --laguerre");
  const auto n = static_cast<unsigned>(o.n);
  Polynomial p;
  json j = {{"n", o.n}};
  if (!o.alpha.empty()) {
    const BesselIndex idx(parse_rational(o.alpha), parse_rational(o.beta));
    p = gen_bessel_scaled(n, idx);
    j["kind"] = "gen_bessel";
    j["alpha"] = idx.alpha.get_str();
    j["beta"] = idx.beta.get_str();
  } else if (!o.rbessel_A.empty()) {
    const Rational A = parse_rational(o.rbessel_A);
    p = rbessel(n, A);
    j["kind"] = "rbessel";
    j["A"] = A.get_str();
  } else {
    const Rational alpha = parse_rational(o.laguerre_alpha);
    p = laguerre(n, alpha);
    j["kind"] = "laguerre";
    j["alpha"] = alpha.get_str();
  }
  j["coefficients"] = coefficients_json(p);
  j["text"] = to_string(p);
  out << to_string(p) << '\n';
  if (!o.json_path.empty()) emit(j.dump(2), o.json_path, out);
  return pass;
}

inline int cmd_wronskian(const Options& o, std::ostream& out) {
  const SeedSet set = seed_set_from(o);
  if (set.empty()) throw parse_error("seed set is empty");
  const MorseParam p(parse_rational(o.a.empty() ? throw parse_error("--a is required") : o.a),
                     ThresholdPolicy::allow);
  const Polynomial w = seed_wronskian(set, p);
  json j = {{"set", set_json(set)},
            {"a", p.a().get_str()},
            {"wronskian", coefficients_json(w)},
            {"text", to_string(w)},
            {"degree", w.degree()},
            {"degree_formula", wronskian_degree_formula(set)}};
  j["monic"] = w.is_zero() ? json(nullptr) : coefficients_json(w.monic());
  j["positive_roots"] = w.is_zero() ? json(nullptr) : json(sturm_positive_roots(w));
  emit(j.dump(2), o.json_path, out);
  return pass;
}

inline int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
  const DeformationSpec spec = spec_from(o);
  const AdmissibilityCertificate cert = certify_admissible(spec);
  json j = {{"spec", {{"a", spec.param.a().get_str()}, {"pairs", spec.pairs.indexes()}, {"virtuals", spec.virtuals.indexes()}}},
            {"certificate", to_json(cert)}};
  if (!cert.ok) {
    emit(j.dump(2), o.json_path, out);
    err << "besselw: inadmissible spec " << to_string(spec) << '\n';
    return inadmissible;
  }
  json levels = json::array();
  for (const auto& l : bound_spectrum(spec))
    levels.push_back({{"n", l.n}, {"energy", l.energy.get_str()}, {"threshold", l.threshold()}});
  j["spectrum"] = levels;
  bool ok = true;
  if (o.oracle) {
    SpectrumOptions so;
    if (o.tol > 0) so.extrapolated_tol = o.tol;
    const SpectrumReport r = isospectral_check(spec, grid_from(o), so);
    j["oracle"] = to_json(summarize(r));
    ok = r.passed;
  }
  emit(j.dump(2), o.json_path, out);
  return ok ? pass : fail;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rationally deformed Morse potentials from Bessel-polynomial Wronskians", "besselw"};
  app.require_subcommand(1);

  auto add_spec = [&](CLI::App* c) {
    c->add_option("--a", o.a, "Morse parameter as p/q");
    c->add_option("--virtuals", o.virtuals, "state-free seed indexes m1,m2,...");
    c->add_option("--pairs", o.pairs, "deleted eigen-pairs as runs n1:n2[,n3:n4]");
    c->add_flag("--allow-threshold", o.allow_threshold, "accept 2a odd (a level at zero energy)");
  };
  auto add_grid = [&](CLI::App* c) {
    c->add_option("--xmin", o.x_min, "left end of the x grid");
    c->add_option("--xmax", o.x_max, "right end of the x grid");
    c->add_option("--points", o.points, "grid intervals on the coarse run");
  };

  auto* potential = app.add_subcommand("potential", "build and certify a deformed potential");
  add_spec(potential);
  add_grid(potential);
  potential->add_option("--json", o.json_path, "write the document here instead of stdout");
  potential->add_option("--grid-csv", o.csv_path, "write x,V(x) samples");
  potential->add_flag("--force", o.force, "build the potential even when certification fails");

  auto* verify = app.add_subcommand("verify", "run one verification suite");
  add_spec(verify);
  add_grid(verify);
  verify->add_option("--which", o.which, "equivalence | identities | orthogonality | spectrum")->required();
  verify->add_option("--minus", o.minus, "minus-type seed set for equivalence");
  verify->add_option("--plus", o.plus, "plus-type seed set for equivalence");
  verify->add_option("--max-n", o.max_n, "largest degree for the identity suite");
  verify->add_option("--tol", o.tol, "tolerance override");
  verify->add_option("--json", o.json_path, "write the report here instead of stdout");

  auto* catalog = app.add_subcommand("catalog", "enumerate and certify seed sets");
  add_spec(catalog);
  catalog->add_option("--max-index", o.max_index, "largest seed index");
  catalog->add_option("--max-size", o.max_size, "largest virtual set size");
  catalog->add_option("--kind", o.kind, "all | pairs | virtuals");
  catalog->add_option("--json", o.json_path, "write JSON lines here instead of stdout");

  auto* bessel = app.add_subcommand("bessel", "print a Bessel-family polynomial");
  bessel->add_option("--n", o.n, "degree")->required();
  bessel->add_option("--alpha", o.alpha, "generalized Bessel alpha");
  bessel->add_option("--beta", o.beta, "generalized Bessel beta (default 2)");
  bessel->add_option("--rbessel", o.rbessel_A, "Romanovski-Bessel parameter A");
  bessel->add_option("--laguerre", o.laguerre_alpha, "Laguerre alpha");
  bessel->add_option("--json", o.json_path, "also write JSON here");

  auto* wronskian_cmd = app.add_subcommand("wronskian", "seed Wronskian of a set");
  wronskian_cmd->add_option("--a", o.a, "Morse parameter as p/q");
  wronskian_cmd->add_option("--minus", o.minus, "minus-type indexes");
  wronskian_cmd->add_option("--plus", o.plus, "plus-type indexes");
  wronskian_cmd->add_option("--json", o.json_path, "write JSON here instead of stdout");

  auto* spectrum = app.add_subcommand("spectrum", "exact bound spectrum, optionally checked numerically");
  add_spec(spectrum);
  add_grid(spectrum);
  spectrum->add_flag("--oracle", o.oracle, "solve numerically and compare");
  spectrum->add_option("--tol", o.tol, "extrapolated tolerance override");
  spectrum->add_option("--json", o.json_path, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return pass;
  } catch (const CLI::ParseError& e) {
    err << "besselw: " << e.what() << '\n';
    return usage;
  }

  try {
    if (*potential) return cmd_potential(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    if (*catalog) return cmd_catalog(o, out, err);
    if (*bessel) return cmd_bessel(o, out);
    if (*wronskian_cmd) return cmd_wronskian(o, out);
    if (*spectrum) return cmd_spectrum(o, out, err);
  } catch (const parse_error& e) {
    err << "besselw: " << e.what() << '\n';
    return usage;
  } catch (const threshold_refused& e) {
    err << "besselw: " << e.what() << '\n';
    return inadmissible;
  } catch (const inadmissible_error& e) {
    err << "besselw: " << e.what() << '\n';
    return inadmissible;
  } catch (const std::exception& e) {
    err << "besselw: error: " << e.what() << '\n';
    return fail;
  }
  return usage;
}

}  // namespace besselw::cli
