#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "besselw/morse.hpp"
#include "besselw/oracle.hpp"
#include "besselw/rational.hpp"

namespace besselw {

using json = nlohmann::ordered_json;

/// Oracle results as stored in a document.
struct OracleSummary {
  Grid grid;
  std::vector<LevelReport> levels;
  std::vector<double> extras;
  bool deleted_absent = true;
  double max_abs_err = 0;
  bool passed = false;
  std::vector<std::string> messages;

  friend bool operator==(const OracleSummary&, const OracleSummary&) = default;
};

inline bool operator==(const LevelReport& l, const LevelReport& r) {
  return l.n == r.n && l.predicted == r.predicted && l.threshold == r.threshold && l.coarse == r.coarse &&
         l.fine == r.fine && l.extrapolated == r.extrapolated && l.error == r.error && l.nodes == r.nodes &&
         l.ok == r.ok;
}

inline OracleSummary summarize(const SpectrumReport& r) {
  return {r.grid, r.levels, r.extras, r.deleted_absent, r.max_abs_err, r.passed, r.messages};
}

/// Exact value of the potential at a sample point y.
struct PotentialSample {
  Rational y;
  Rational value;

  friend bool operator==(const PotentialSample&, const PotentialSample&) = default;
};

struct ModelDocument {
  Rational a;
  bool allow_threshold = false;
  std::vector<int> pairs;
  std::vector<int> virtuals;
  AdmissibilityCertificate certificate;
  std::optional<Polynomial> wronskian;
  std::optional<RationalFunction> potential;
  std::vector<Level> spectrum;
  std::vector<PotentialSample> samples;
  std::optional<OracleSummary> oracle;

  friend bool operator==(const ModelDocument& l, const ModelDocument& r) {
    return l.a == r.a && l.allow_threshold == r.allow_threshold && l.pairs == r.pairs && l.virtuals == r.virtuals &&
           l.certificate == r.certificate && l.wronskian == r.wronskian && l.potential == r.potential &&
           l.spectrum == r.spectrum && l.samples == r.samples && l.oracle == r.oracle;
  }
};

inline DeformationSpec spec_of(const ModelDocument& d) {
  return {MorseParam(d.a, d.allow_threshold ? ThresholdPolicy::allow : ThresholdPolicy::reject),
          SeedSet(Sign::minus, d.pairs), SeedSet(Sign::minus, d.virtuals)};
}

/// Certifies the spec and fills every exact section; the potential and the
/// spectrum are present only for admissible specs unless `force` is set.
inline ModelDocument make_document(const DeformationSpec& spec, bool force = false) {
  ModelDocument d;
  d.a = spec.param.a();
  d.allow_threshold = spec.param.is_threshold();
  d.pairs = spec.pairs.indexes();
  d.virtuals = spec.virtuals.indexes();
  d.certificate = certify_admissible(spec);
  if (!spec.undeformed() && !spec.overlapping()) {
    Polynomial w = spec_wronskian(spec);
    if (!w.is_zero()) d.wronskian = std::move(w);
  }
  if (d.certificate.ok || (force && d.wronskian)) {
    d.potential = deformed_potential(spec, force);
    if (d.certificate.ok) d.spectrum = bound_spectrum(spec);
    for (int y : {1, 2}) {
      if (d.potential->den()(Rational(y)) != 0) d.samples.push_back({Rational(y), (*d.potential)(Rational(y))});
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// JSON

inline json coefficients_json(const Polynomial& p) {
  json arr = json::array();
  for (const auto& c : p.coefficients()) arr.push_back(c.get_str());
  return arr;
}

inline Polynomial polynomial_from_json(const json& arr) {
  std::vector<Rational> c;
  for (const auto& v : arr) c.push_back(parse_rational(v.get<std::string>()));
  return Polynomial(std::move(c));
}

inline json to_json(const AdmissibilityCertificate& c) {
  json checks = json::array();
  for (const auto& b : c.bound_check)
    checks.push_back({{"index", b.index},
                      {"kind", b.kind == BoundCheck::Kind::pair ? "pair" : "virtual"},
                      {"ok", b.ok},
                      {"reason", b.reason}});
  return {{"ok", c.ok},
          {"wronskian_positive_roots", c.wronskian_positive_roots},
          {"wronskian_degree", c.wronskian_degree},
          {"bound_check", checks},
          {"messages", c.messages}};
}

inline AdmissibilityCertificate certificate_from_json(const json& j) {
  AdmissibilityCertificate c;
  c.ok = j.at("ok").get<bool>();
  c.wronskian_positive_roots = j.at("wronskian_positive_roots").get<int>();
  c.wronskian_degree = j.at("wronskian_degree").get<int>();
  for (const auto& b : j.at("bound_check"))
    c.bound_check.push_back({b.at("index").get<int>(),
                             b.at("kind").get<std::string>() == "pair" ? BoundCheck::Kind::pair
                                                                        : BoundCheck::Kind::virtual_seed,
                             b.at("ok").get<bool>(), b.at("reason").get<std::string>()});
  c.messages = j.at("messages").get<std::vector<std::string>>();
  return c;
}

inline json to_json(const Grid& g) { return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"points", g.points}}; }

inline json to_json(const OracleSummary& o) {
  json levels = json::array();
  for (const auto& l : o.levels)
    levels.push_back({{"n", l.n},
                      {"predicted", l.predicted.get_str()},
                      {"threshold", l.threshold},
                      {"coarse", l.coarse},
                      {"fine", l.fine},
                      {"extrapolated", l.extrapolated},
                      {"error", l.error},
                      {"nodes", l.nodes},
                      {"ok", l.ok}});
  return {{"grid", to_json(o.grid)},   {"levels", levels},           {"extras", o.extras},
          {"deleted_absent", o.deleted_absent}, {"max_abs_err", o.max_abs_err}, {"passed", o.passed},
          {"messages", o.messages}};
}

inline OracleSummary oracle_from_json(const json& j) {
  OracleSummary o;
  const auto& g = j.at("grid");
  o.grid = Grid(g.at("x_min").get<double>(), g.at("x_max").get<double>(), g.at("points").get<int>());
  for (const auto& l : j.at("levels")) {
    LevelReport r;
    r.n = l.at("n").get<int>();
    r.predicted = parse_rational(l.at("predicted").get<std::string>());
    r.threshold = l.at("threshold").get<bool>();
    r.coarse = l.at("coarse").get<double>();
    r.fine = l.at("fine").get<double>();
    r.extrapolated = l.at("extrapolated").get<double>();
    r.error = l.at("error").get<double>();
    r.nodes = l.at("nodes").get<int>();
    r.ok = l.at("ok").get<bool>();
    o.levels.push_back(r);
  }
  o.extras = j.at("extras").get<std::vector<double>>();
  o.deleted_absent = j.at("deleted_absent").get<bool>();
  o.max_abs_err = j.at("max_abs_err").get<double>();
  o.passed = j.at("passed").get<bool>();
  o.messages = j.at("messages").get<std::vector<std::string>>();
  return o;
}

inline json to_json(const ModelDocument& d) {
  json j;
  j["spec"] = {{"a", d.a.get_str()},
               {"allow_threshold", d.allow_threshold},
               {"pairs", d.pairs},
               {"virtuals", d.virtuals}};
  j["certificate"] = to_json(d.certificate);
  j["wronskian"] = d.wronskian ? coefficients_json(*d.wronskian) : json(nullptr);
  j["potential"] = d.potential ? json{{"num", coefficients_json(d.potential->num())},
                                      {"den", coefficients_json(d.potential->den())}}
                               : json(nullptr);
  json spectrum = json::array();
  for (const auto& l : d.spectrum)
    spectrum.push_back({{"n", l.n}, {"energy", l.energy.get_str()}, {"threshold", l.threshold()}});
  j["spectrum"] = spectrum;
  json samples = json::array();
  for (const auto& s : d.samples) samples.push_back({{"y", s.y.get_str()}, {"V", s.value.get_str()}});
  j["samples"] = samples;
  j["oracle"] = d.oracle ? to_json(*d.oracle) : json(nullptr);
  return j;
}

inline ModelDocument document_from_json(const json& j) {
  ModelDocument d;
  const auto& s = j.at("spec");
  d.a = parse_rational(s.at("a").get<std::string>());
  d.allow_threshold = s.at("allow_threshold").get<bool>();
  d.pairs = s.at("pairs").get<std::vector<int>>();
  d.virtuals = s.at("virtuals").get<std::vector<int>>();
  d.certificate = certificate_from_json(j.at("certificate"));
  if (!j.at("wronskian").is_null()) d.wronskian = polynomial_from_json(j.at("wronskian"));
  if (!j.at("potential").is_null())
    d.potential = RationalFunction::normalize(polynomial_from_json(j.at("potential").at("num")),
                                              polynomial_from_json(j.at("potential").at("den")));
  for (const auto& l : j.at("spectrum"))
    d.spectrum.push_back({l.at("n").get<int>(), parse_rational(l.at("energy").get<std::string>())});
  for (const auto& v : j.at("samples"))
    d.samples.push_back({parse_rational(v.at("y").get<std::string>()), parse_rational(v.at("V").get<std::string>())});
  if (!j.at("oracle").is_null()) d.oracle = oracle_from_json(j.at("oracle"));
  return d;
}

inline std::string render(const ModelDocument& d, int indent = 2) { return to_json(d).dump(indent); }

inline ModelDocument parse_document(const std::string& text) { return document_from_json(json::parse(text)); }

}  // namespace besselw
