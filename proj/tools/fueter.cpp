// fueter: command-line front end. Every command writes one JSON report
// (stdout or --output); exit status 0 = all checks passed, 1 = a check
// failed, 2 = bad configuration.

#include "fueter/acceptance.hpp"
#include "fueter/cf_operator.hpp"
#include "fueter/cp1.hpp"
#include "fueter/errors.hpp"
#include "fueter/hull.hpp"
#include "fueter/parallel.hpp"
#include "fueter/penrose.hpp"
#include "fueter/twistor.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::json;
using namespace fueter;

namespace {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A finished command: the report and whether its checks held.
struct Outcome {
  json report;
  bool ok = true;
  std::string failure;
};

struct Common {
  int threads = 0;
  std::string output;
  std::string format = "json";
};

json complex_json(cd c) { return {c.real(), c.imag()}; }

json complex_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

json quaternion_json(const Quaterniond& q) { return {q.x0, q.x1, q.x2, q.x3}; }

json sigma_json(const Biquaterniond& s) { return {{"x", to_json(s.x)}, {"y", to_json(s.y)}}; }

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

cd complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("complex numbers are given as x or [re, im]");
}

// "1.5", "1.5,-2" or "[1.5, -2]"
cd parse_complex(const std::string& text) {
  if (text.find('[') != std::string::npos) return complex_from_json(parse_json(text, "complex number"));
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError("cannot read complex number '" + text + "'");
  }
}

// {"x": [...], "y": [...]} or the 2n x 2 matrix as rows of [re, im] pairs.
Biquaterniond parse_sigma(const std::string& text) {
  const json j = parse_json(text, "sigma");
  if (j.is_object()) {
    auto x = quaternion_vector_from_json(j.at("x"));
    auto y = j.contains("y") ? quaternion_vector_from_json(j["y"]) : QuaternionVectord(x.size());
    return {std::move(x), std::move(y)};
  }
  if (!j.is_array() || j.empty() || j.size() % 2 != 0)
    throw ConfigError("sigma matrix needs 2n rows");
  MatrixX2cd z(static_cast<Eigen::Index>(j.size()), 2);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != 2) throw ConfigError("sigma matrix rows have two entries");
    for (std::size_t c = 0; c < 2; ++c)
      z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
  }
  return Biquaterniond::from_matrix(z);
}

std::vector<QuaternionVectord> parse_points(const std::string& text) {
  const json j = parse_json(text, "points");
  std::vector<QuaternionVectord> out;
  if (j.is_array() && !j.empty() && j[0].is_array())
    for (const auto& p : j) out.push_back(quaternion_vector_from_json(p));
  else
    out.push_back(quaternion_vector_from_json(j));
  return out;
}

QuadratureConfig parse_quadrature(const std::string& text) {
  if (text.empty()) return {};
  return quadrature_from_json(parse_json(text, "quadrature"));
}

FdConfig fd_config(double step, const std::string& scheme) {
  FdConfig c;
  c.step = step;
  if (scheme == "central") c.scheme = FdScheme::central;
  else if (scheme == "richardson") c.scheme = FdScheme::richardson;
  else throw ConfigError("scheme is central or richardson");
  return c;
}

std::vector<QuaternionVectord> field_samples(const FieldEntry& e, int n, int count, std::uint64_t seed) {
  if (count < 1) throw ConfigError("--samples must be positive");
  Rng rng(seed);
  std::vector<QuaternionVectord> out;
  for (int k = 0; k < count; ++k) out.push_back(e.sample(rng, n));
  return out;
}

void emit(const Outcome& o, const Common& common) {
  if (common.output.empty()) {
    std::cout << o.report.dump(2) << "\n";
    return;
  }
  std::ofstream f(common.output);
  if (!f) throw ConfigError("cannot write '" + common.output + "'");
  f << o.report.dump(2) << "\n";
}

Outcome finish(json report, bool ok, std::string failure = {}) {
  report["ok"] = ok;
  if (!ok) report["failure"] = failure;
  return {std::move(report), ok, std::move(failure)};
}

// ---------------------------------------------------------------------------

struct FieldOptions {
  std::string field = "E";
  int n = 1;
  int samples = 20;
  std::uint64_t seed = 7;
  double tol = 1e-4;
  std::string points;

  void add(CLI::App* app, int default_samples, double default_tol) {
    samples = default_samples;
    tol = default_tol;
    app->add_option("--field", field, "registered field")->capture_default_str();
    app->add_option("--n", n, "number of quaternionic variables")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--samples", samples, "random sample points")->capture_default_str();
    app->add_option("--seed", seed, "sampling seed")->capture_default_str();
    app->add_option("--tol", tol, "tolerance")->capture_default_str();
    app->add_option("--points", points, "explicit points: JSON array of flat 4n arrays");
  }
  const FieldEntry& entry() const {
    try {
      return field_entry(field);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  std::vector<QuaternionVectord> sample_points() const {
    if (!points.empty()) {
      auto p = parse_points(points);
      for (const auto& x : p)
        if (x.size() != n) throw ConfigError("point dimension differs from --n");
      return p;
    }
    return field_samples(entry(), n, samples, seed);
  }
};

Outcome cf_check(const FieldOptions& f, double step, const std::string& scheme) {
  const auto& e = f.entry();
  const auto pts = f.sample_points();
  auto r = is_monogenic(e.make(f.n), pts, f.tol, fd_config(step, scheme));
  r.field = e.name;
  json rep = to_json(r);
  rep["command"] = "cf check";
  return finish(rep, r.verdict, "max residual " + std::to_string(r.max_residual) + " exceeds tol");
}

// ---------------------------------------------------------------------------

struct HullOptions {
  std::string domain;
  std::string sigma;
  int count = 512;

  void add(CLI::App* app) {
    app->add_option("--domain", domain, "domain: JSON or H*:n=1, B:r=1,n=2, whole:n=1, empty:n=1")->required();
    app->add_option("--sigma", sigma, "point of M_{2n x 2}(C)")->required();
    app->add_option("--count", count, "sphere lattice size")->capture_default_str();
  }
  Domain parsed_domain() const {
    try {
      return parse_domain(domain);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("domain: ") + e.what());
    }
  }
  Biquaterniond parsed_sigma(const Domain& d) const {
    auto s = parse_sigma(sigma);
    if (s.size() != d.n()) throw ConfigError("sigma and domain differ in n");
    return s;
  }
  ImUnitSphereSampler sampler() const {
    ImUnitSphereSampler s;
    s.count = count;
    return s;
  }
};

json hull_query_json(const HullQuery& q) {
  return {{"membership", to_string(q.membership)}, {"inside", q.verdict()},
          {"inf_value", q.inf_value},              {"band", q.band},
          {"argmin_q", quaternion_json(q.argmin_q)}, {"grid_certified", q.grid_certified}};
}

Outcome hull_command(const std::string& mode, const HullOptions& o) {
  const auto d = o.parsed_domain();
  const auto s = o.parsed_sigma(d);
  json rep = {{"command", "hull " + mode}, {"domain", d.description()}, {"sigma", sigma_json(s)}};
  if (mode == "contains") {
    const auto q = hull_contains(s, d, o.sampler());
    rep.update(hull_query_json(q));
    return finish(rep, true);
  }
  try {
    if (mode == "distance") {
      rep["distance"] = hull_distance(s, d, o.sampler());
    } else {
      const auto w = hull_witness(s, d, o.sampler());
      rep["witness"] = sigma_json(w.point);
      rep["boundary_point"] = to_json(w.boundary_point);
      rep["q"] = quaternion_json(w.q);
      rep["distance"] = w.distance;
    }
  } catch (const std::domain_error& e) {
    return finish(rep, false, e.what());
  }
  return finish(rep, true);
}

// ---------------------------------------------------------------------------

struct TwistorOptions {
  std::string sigma;
  std::string domain;
  std::string pi = "[[1, 0], [0, 0]]";
  int polar = 24;
  int azimuthal = 48;

  HopfGrid grid() const {
    HopfGrid g;
    g.polar = polar;
    g.azimuthal = azimuthal;
    return g;
  }
};

Outcome twistor_sweep(const TwistorOptions& o, const Common& common) {
  const auto s = parse_sigma(o.sigma);
  const auto grid = o.grid();
  const auto nodes = grid.nodes();
  json points = json::array();
  for (const auto& node : nodes)
    points.push_back({{"alpha", complex_json(node.alpha)},
                      {"beta", complex_json(node.beta)},
                      {"point", to_json(sweep_point(s, node.alpha, node.beta))}});
  if (common.format == "csv") {
    std::ostringstream csv;
    csv << "alpha_re,alpha_im,beta_re,beta_im";
    for (Eigen::Index c = 0; c < 4 * s.size(); ++c) csv << ",x" << c;
    csv << "\n";
    csv.precision(17);
    for (const auto& node : nodes) {
      csv << node.alpha.real() << "," << node.alpha.imag() << "," << node.beta.real() << "," << node.beta.imag();
      const auto p = sweep_point(s, node.alpha, node.beta);
      for (Eigen::Index c = 0; c < p.coords().size(); ++c) csv << "," << p.coords()[c];
      csv << "\n";
    }
    json rep = {{"command", "twistor sweep"}, {"csv", csv.str()}};
    return finish(rep, true);
  }
  json rep = {{"command", "twistor sweep"},
              {"sigma", sigma_json(s)},
              {"grid", {{"polar", grid.polar}, {"azimuthal", grid.azimuthal}, {"resolution", grid.resolution()}}},
              {"points", points}};
  return finish(rep, true);
}

Outcome twistor_embed(const TwistorOptions& o) {
  const auto s = parse_sigma(o.sigma);
  const json pi = parse_json(o.pi, "pi");
  if (!pi.is_array() || pi.size() != 2) throw ConfigError("pi is [pi0, pi1]");
  const cd p0 = complex_from_json(pi[0]), p1 = complex_from_json(pi[1]);
  if (p0 == 0.0 && p1 == 0.0) throw ConfigError("[0 : 0] is not a point of CP^1");
  const auto tp = line_embed(s, p0, p1);
  json rep = {{"command", "twistor embed"}, {"sigma", sigma_json(s)}, {"pi", {complex_json(p0), complex_json(p1)}},
              {"homogeneous", complex_json(tp.coords())}};
  const auto fp = eta_inverse(tp);
  rep["chart"] = fp.chart;
  rep["fiber"] = complex_json(fp.fiber);
  rep["base"] = to_json(fp.base);
  return finish(rep, true);
}

Outcome twistor_hull_lines(const TwistorOptions& o) {
  if (o.domain.empty()) throw ConfigError("--domain is required");
  const auto d = parse_domain(o.domain);
  const auto s = parse_sigma(o.sigma);
  if (s.size() != d.n()) throw ConfigError("sigma and domain differ in n");
  const auto q = hull_contains_via_lines(s, d, o.grid());
  json rep = {{"command", "twistor hull-lines"},
              {"domain", d.description()},
              {"sigma", sigma_json(s)},
              {"membership", to_string(q.membership)},
              {"inside", q.verdict()},
              {"inf_value", q.inf_value},
              {"band", q.band},
              {"argmin", {complex_json(q.argmin_alpha), complex_json(q.argmin_beta)}}};
  return finish(rep, true);
}

// ---------------------------------------------------------------------------

struct Cp1Options {
  int k = -3;
  std::string form = "harmonic";
  std::string a0 = "1", a1 = "0";
  std::string center = "0";
  double radius = 1.0;
  std::string quadrature;
  double tol = 1e-8;

  Form01 build() const {
    const cd c0 = parse_complex(a0), c1 = parse_complex(a1);
    const Bump b{parse_complex(center), radius};
    if (!(radius > 0.0)) throw ConfigError("--radius must be positive");
    if (form == "harmonic") {
      if (k != -3) throw ConfigError("the harmonic representative lives in degree -3");
      return harmonic_representative(c0, c1);
    }
    if (form == "bump") return b.exact_form(k);
    if (form == "harmonic+bump") {
      if (k != -3) throw ConfigError("the harmonic representative lives in degree -3");
      const auto h = harmonic_representative(c0, c1);
      const auto e = b.exact_form(k);
      return {k, [h, e](cd z) { return h.h0(z) + e.h0(z); }, [h, e](cd w) { return h.h1(w) + e.h1(w); }};
    }
    throw ConfigError("form is harmonic, bump or harmonic+bump");
  }
};

json decay_json(const DecayReport& r) {
  return {{"radii", r.radii}, {"magnitudes", r.magnitudes}, {"limit", to_string(r.limit)}};
}

Outcome cp1_coeffs(const Cp1Options& o) {
  const auto w = o.build();
  auto q = parse_quadrature(o.quadrature);
  if (o.form != "harmonic" && o.quadrature.empty()) {
    // bumps settle fast once the compactification is centred on them
    q.tolerance = 1e-9;
    q.max_doublings = 5;
    q = Bump{parse_complex(o.center), o.radius}.fitted(q);
  }
  const auto c = cohomology_coefficients(w, q);
  json rep = {{"command", "cp1 coeffs"}, {"k", w.k}, {"form", o.form}, {"quadrature", q.to_json()},
              {"coefficients", complex_json(c)}};
  return finish(rep, true);
}

Outcome cp1_harmonic(const Cp1Options& o) {
  const cd c0 = parse_complex(o.a0), c1 = parse_complex(o.a1);
  const auto w = harmonic_representative(c0, c1);
  const auto clutch = validate_form(w);
  const auto decay = decay_check(w, 1, 0);
  const auto c = cohomology_coefficients(w, parse_quadrature(o.quadrature));
  const double err = std::max(std::abs(c[0] - c0), std::abs(c[1] - c1));
  json rep = {{"command", "cp1 harmonic"},
              {"a", {complex_json(c0), complex_json(c1)}},
              {"h0_at_zero", complex_json(w.h0(0.0))},
              {"clutching_violation", clutch.max_violation},
              {"decay", decay_json(decay)},
              {"coefficients", complex_json(c)},
              {"round_trip_error", err},
              {"tol", o.tol}};
  if (!clutch.passed(o.tol)) return finish(rep, false, "clutching violated");
  if (!decay.passed()) return finish(rep, false, "representative does not decay");
  if (!(err <= o.tol)) return finish(rep, false, "coefficients do not round trip");
  return finish(rep, true);
}

Outcome cp1_validate(const Cp1Options& o) {
  const auto w = o.build();
  const auto clutch = validate_form(w);
  json rep = {{"command", "cp1 validate"}, {"k", w.k}, {"form", o.form}, {"tol", o.tol},
              {"clutching_violation", clutch.max_violation},
              {"worst_z", complex_json(clutch.worst_z)}, {"samples", clutch.samples}};
  bool ok = clutch.passed(o.tol);
  std::string failure = ok ? "" : "clutching violated";
  if (-w.k + 2 > 1) {
    const auto d = decay_check(w, 1, 0);
    rep["decay"] = decay_json(d);
    if (ok && !d.passed()) {
      ok = false;
      failure = "form does not decay";
    }
  }
  if (o.form != "harmonic") {
    const Bump b{parse_complex(o.center), o.radius};
    const auto s = validate_section(b.section(w.k));
    rep["section_clutching_violation"] = s.max_violation;
    if (ok && !s.passed(o.tol)) {
      ok = false;
      failure = "bump section clutching violated";
    }
  }
  return finish(rep, ok, failure);
}

// ---------------------------------------------------------------------------

Outcome penrose_roundtrip(const FieldOptions& f, const QuadratureConfig& q, bool compare) {
  const auto& e = f.entry();
  const auto psi = e.make(f.n);
  const auto w = sharp(psi);
  const auto pts = f.sample_points();
  TransformOptions opt;
  opt.quadrature = q;
  json per = json::array();
  double max_error = 0.0, max_residual = 0.0;
  std::vector<Eigen::Vector2cd> values(pts.size());
  std::vector<double> closed(pts.size()), residual(pts.size());
  try {
    parallel_for(pts.size(), [&](std::size_t k) {
      const auto r = penrose_transform(w, pts[k], opt);
      values[k] = r.value;
      closed[k] = r.closedness;
      if (!compare) {
        // output monogenicity, with the transform itself as the oracle
        const auto out = ScalarField::from_pair(
            [&](const QuaternionVectord& x) { return Eigen::Vector2cd(line_integral(w, embed(x), q).value); },
            psi.domain());
        residual[k] = cf_apply(out, pts[k], FdConfig{1e-3, 0.0, FdScheme::richardson}).norm();
      }
    });
  } catch (const CertificateError& err) {
    json rep = {{"command", std::string("penrose ") + (compare ? "roundtrip" : "forward")},
                {"mode", compare ? "roundtrip" : "forward"}, {"field", e.name}, {"n", f.n}};
    return finish(rep, false, err.what());
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    json p = {{"point", to_json(pts[k])}, {"value", complex_json(Eigen::VectorXcd(values[k]))},
              {"closedness", closed[k]}};
    if (compare) {
      const double err = (values[k] - psi.pair(pts[k])).norm();
      p["error"] = err;
      max_error = std::max(max_error, err);
    } else {
      p["cf_residual"] = residual[k];
      max_residual = std::max(max_residual, residual[k]);
    }
    per.push_back(p);
  }
  const std::string mode = compare ? "roundtrip" : "forward";
  json rep = {{"command", "penrose " + mode},
              {"mode", mode},
              {"field", e.name},
              {"n", f.n},
              {"tolerances", {{"error", f.tol}, {"closedness", opt.closedness_tol}}},
              {"quadrature", q.to_json()},
              {"max_error", compare ? max_error : max_residual},
              {"per_point", per}};
  const double worst = compare ? max_error : max_residual;
  return finish(rep, worst <= f.tol,
                (compare ? "round-trip error " : "output D-residual ") + std::to_string(worst) + " exceeds tol");
}

Outcome penrose_complex(const FieldOptions& f, const QuadratureConfig& q, const std::string& sigma_text,
                        double y_scale) {
  const auto& e = f.entry();
  const auto psi = e.make(f.n);
  const auto ext = e.extension(f.n);
  const auto w = closed_sharp(psi);
  std::vector<Biquaterniond> sigmas;
  if (!sigma_text.empty()) {
    sigmas.push_back(parse_sigma(sigma_text));
    if (sigmas[0].size() != f.n) throw ConfigError("sigma dimension differs from --n");
  } else {
    Rng rng(f.seed);
    int guard = 0;
    while (static_cast<int>(sigmas.size()) < f.samples && guard++ < 100 * f.samples) {
      Biquaterniond s(e.sample(rng, f.n), gaussian_vector(rng, f.n, y_scale));
      if (hull_contains(s, psi.domain()).verdict()) sigmas.push_back(s);
    }
    if (sigmas.empty()) throw ConfigError("no sampled sigma fell inside the hull; lower --y-scale");
  }
  std::vector<json> per(sigmas.size());
  std::vector<double> errors(sigmas.size(), 0.0);
  std::vector<std::string> refused(sigmas.size());
  parallel_for(sigmas.size(), [&](std::size_t k) {
    try {
      const auto r = penrose_transform_complex(w, sigmas[k], psi.domain(), q);
      per[k] = {{"sigma", sigma_json(sigmas[k])}, {"value", complex_json(Eigen::VectorXcd(r.value))},
                {"hull_inf_value", r.hull.inf_value}};
      if (ext) {
        errors[k] = (r.value - (*ext)(sigmas[k].matrix())).norm();
        per[k]["error"] = errors[k];
      }
    } catch (const std::domain_error& err) {
      refused[k] = err.what();
      per[k] = {{"sigma", sigma_json(sigmas[k])}, {"refused", refused[k]}};
    }
  });
  double max_error = 0.0;
  for (double v : errors) max_error = std::max(max_error, v);
  json rep = {{"command", "penrose complex"},
              {"mode", "complex"},
              {"field", e.name},
              {"n", f.n},
              {"tolerances", {{"error", f.tol}}},
              {"quadrature", q.to_json()},
              {"compared_with_extension", ext.has_value()},
              {"max_error", max_error},
              {"per_point", per}};
  for (const auto& r : refused)
    if (!r.empty()) return finish(rep, false, r);
  return finish(rep, max_error <= f.tol, "extension error " + std::to_string(max_error) + " exceeds tol");
}

Outcome penrose_diagram(const FieldOptions& f, const QuadratureConfig& q) {
  const auto& e = f.entry();
  const auto pts = f.sample_points();
  const auto& cal = default_calibration();
  const auto r = diagram_check(e.make(f.n), pts, cal, {}, q);
  json per = json::array();
  for (std::size_t k = 0; k < pts.size(); ++k) per.push_back({{"point", to_json(pts[k])}, {"residual", r.per_point[k]}});
  json rep = {{"command", "penrose diagram"},
              {"mode", "diagram"},
              {"field", e.name},
              {"n", f.n},
              {"tolerances", {{"residual", f.tol}}},
              {"calibration", cal.to_json()},
              {"max_error", r.max_residual},
              {"max_lhs", r.max_lhs},
              {"max_rhs", r.max_rhs},
              {"per_point", per}};
  return finish(rep, r.max_residual <= f.tol, "diagram residual " + std::to_string(r.max_residual) + " exceeds tol");
}

// ---------------------------------------------------------------------------

Outcome verify_all(int n, std::uint64_t seed, const std::vector<int>& only) {
  const AcceptanceConfig cfg{n, seed};
  std::vector<CriterionResult> results;
  if (only.empty()) {
    results = run_all(cfg);
  } else {
    for (int id : only) {
      if (id < 1 || id > 8) throw ConfigError("criteria are numbered 1 to 8");
      try {
        results.push_back(run_criterion(id, cfg));
      } catch (const std::exception& e) {
        CriterionResult r;
        r.id = id;
        r.name = "criterion " + std::to_string(id);
        r.failure = std::string("exception: ") + e.what();
        results.push_back(r);
      }
    }
  }
  json list = json::array();
  std::string failure;
  for (const auto& r : results) {
    list.push_back(to_json(r));
    if (!r.passed && failure.empty()) failure = "criterion " + std::to_string(r.id) + ": " + r.failure;
  }
  json rep = {{"command", "verify all"}, {"n", n}, {"seed", seed}, {"criteria", list}};
  return finish(rep, failure.empty(), failure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cauchy-Fueter operator, monogenic hulls and the Penrose transform"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Common common;
  app.add_option("--threads", common.threads, "worker cap (default FUETER_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output,-o", common.output, "write the report here instead of stdout");
  app.add_option("--format", common.format, "json, or csv for twistor sweep")
      ->check(CLI::IsMember({"json", "csv"}));

  std::function<Outcome()> run;

  // cf
  auto* cf = app.add_subcommand("cf", "Cauchy-Fueter operator")->require_subcommand(1);
  FieldOptions cf_field;
  double cf_step = 0.0;
  std::string cf_scheme = "central";
  auto* cf_check_cmd = cf->add_subcommand("check", "monogenicity of a registered field on samples");
  cf_field.add(cf_check_cmd, 1000, 1e-5);
  cf_check_cmd->add_option("--step", cf_step, "absolute FD step (0: relative 1e-5)");
  cf_check_cmd->add_option("--scheme", cf_scheme, "central or richardson");
  cf_check_cmd->callback([&] { run = [&] { return cf_check(cf_field, cf_step, cf_scheme); }; });

  // hull
  auto* hull = app.add_subcommand("hull", "monogenic hull queries")->require_subcommand(1);
  HullOptions hull_opt;
  for (const std::string mode : {"contains", "distance", "witness"}) {
    auto* sub = hull->add_subcommand(mode, "hull " + mode);
    hull_opt.add(sub);
    sub->callback([&, mode] { run = [&, mode] { return hull_command(mode, hull_opt); }; });
  }

  // twistor
  auto* twistor = app.add_subcommand("twistor", "twistor lines")->require_subcommand(1);
  TwistorOptions tw;
  auto* sweep = twistor->add_subcommand("sweep", "base points x + y q swept by a twistor line");
  sweep->add_option("--sigma", tw.sigma)->required();
  sweep->add_option("--polar", tw.polar)->capture_default_str();
  sweep->add_option("--azimuthal", tw.azimuthal)->capture_default_str();
  sweep->callback([&] { run = [&] { return twistor_sweep(tw, common); }; });
  auto* embed_cmd = twistor->add_subcommand("embed", "point of the twistor line over [pi0 : pi1]");
  embed_cmd->add_option("--sigma", tw.sigma)->required();
  embed_cmd->add_option("--pi", tw.pi, "[pi0, pi1] with entries x or [re, im]")->capture_default_str();
  embed_cmd->callback([&] { run = [&] { return twistor_embed(tw); }; });
  auto* lines = twistor->add_subcommand("hull-lines", "hull membership by line containment");
  lines->add_option("--sigma", tw.sigma)->required();
  lines->add_option("--domain", tw.domain)->required();
  lines->add_option("--polar", tw.polar)->capture_default_str();
  lines->add_option("--azimuthal", tw.azimuthal)->capture_default_str();
  lines->callback([&] { run = [&] { return twistor_hull_lines(tw); }; });

  // cp1
  auto* cp1 = app.add_subcommand("cp1", "line bundles over CP^1")->require_subcommand(1);
  Cp1Options co;
  auto* dim = cp1->add_subcommand("dim", "dimension of H^1(CP^1, Q_k)");
  dim->add_option("--k", co.k)->required();
  dim->callback([&] {
    run = [&] {
      const int d = h1_dimension(co.k);
      std::cout << d << "\n";
      json rep = {{"command", "cp1 dim"}, {"k", co.k}, {"dimension", d}};
      Outcome o = finish(rep, true);
      if (common.output.empty()) o.report = nullptr;  // plain answer already printed
      return o;
    };
  });
  const auto form_options = [&](CLI::App* sub) {
    sub->add_option("--k", co.k, "bundle degree")->capture_default_str();
    sub->add_option("--form", co.form, "harmonic, bump or harmonic+bump")->capture_default_str();
    sub->add_option("--a0", co.a0, "x or re,im")->capture_default_str();
    sub->add_option("--a1", co.a1, "x or re,im")->capture_default_str();
    sub->add_option("--center", co.center, "bump centre, re,im")->capture_default_str();
    sub->add_option("--radius", co.radius, "bump radius")->capture_default_str();
    sub->add_option("--quadrature", co.quadrature, "quadrature config JSON");
    sub->add_option("--tol", co.tol)->capture_default_str();
  };
  auto* coeffs = cp1->add_subcommand("coeffs", "cohomology coefficients a_l");
  form_options(coeffs);
  coeffs->callback([&] { run = [&] { return cp1_coeffs(co); }; });
  auto* harmonic = cp1->add_subcommand("harmonic", "harmonic representative for k = -3");
  form_options(harmonic);
  harmonic->callback([&] { run = [&] { return cp1_harmonic(co); }; });
  auto* validate = cp1->add_subcommand("validate", "clutching and decay of a form");
  form_options(validate);
  validate->callback([&] { run = [&] { return cp1_validate(co); }; });

  // penrose
  auto* penrose = app.add_subcommand("penrose", "Penrose transform")->require_subcommand(1);
  FieldOptions pf;
  std::string pq, psigma;
  double y_scale = 0.2;
  for (const std::string mode : {"roundtrip", "forward", "complex", "diagram"}) {
    auto* sub = penrose->add_subcommand(mode, "penrose " + mode);
    pf.add(sub, mode == "diagram" ? 5 : 20, 1e-4);
    sub->add_option("--quadrature", pq, "quadrature config JSON");
    if (mode == "complex") {
      sub->add_option("--sigma", psigma, "single point of the hull instead of samples");
      sub->add_option("--y-scale", y_scale, "spread of sampled imaginary parts")->capture_default_str();
    }
    sub->callback([&, mode] {
      run = [&, mode]() -> Outcome {
        const auto q = parse_quadrature(pq);
        if (mode == "roundtrip") return penrose_roundtrip(pf, q, true);
        if (mode == "forward") return penrose_roundtrip(pf, q, false);
        if (mode == "complex") return penrose_complex(pf, q, psigma, y_scale);
        return penrose_diagram(pf, q);
      };
    });
  }

  // verify
  auto* verify = app.add_subcommand("verify", "end-to-end checks")->require_subcommand(1);
  int vn = 1;
  std::uint64_t vseed = 7;
  std::vector<int> vonly;
  auto* all = verify->add_subcommand("all", "all eight checks");
  all->add_option("--n", vn)->check(CLI::PositiveNumber)->capture_default_str();
  all->add_option("--seed", vseed)->capture_default_str();
  all->add_option("--only", vonly, "restrict to these check ids");
  all->callback([&] { run = [&] { return verify_all(vn, vseed, vonly); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (common.threads > 0) set_thread_limit(common.threads);
    Outcome o = run();
    if (common.format == "csv" && o.report.contains("csv")) {
      if (common.output.empty()) {
        std::cout << o.report["csv"].get<std::string>();
      } else {
        std::ofstream f(common.output);
        if (!f) throw ConfigError("cannot write '" + common.output + "'");
        f << o.report["csv"].get<std::string>();
      }
    } else if (!o.report.is_null()) {
      emit(o, common);
    }
    if (!o.ok) {
      std::cerr << "check failed: " << o.failure << "\n";
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
}
