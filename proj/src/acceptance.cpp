#include "fueter/acceptance.hpp"

#include "fueter/cf_operator.hpp"
#include "fueter/cp1.hpp"
#include "fueter/errors.hpp"
#include "fueter/hull.hpp"
#include "fueter/penrose.hpp"
#include "fueter/sampling.hpp"
#include "fueter/twistor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fueter {

namespace {

class Checker {
 public:
  explicit Checker(CriterionResult& r) : r_(r) {}
  void require(bool ok, const std::string& what) {
    if (!ok && r_.failure.empty()) r_.failure = what;
  }
  void finish() { r_.passed = r_.failure.empty(); }

 private:
  CriterionResult& r_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

nlohmann::json cjson(cd v) { return {v.real(), v.imag()}; }

// Sub-seeds keep criteria independent of each other's draw counts.
Rng rng_for(const AcceptanceConfig& cfg, int id) {
  return Rng(cfg.seed * 1000003ULL + static_cast<std::uint64_t>(100 * cfg.n + id));
}

Biquaterniond random_biquaternion(Rng& rng, int n, double sx, double sy) {
  return {gaussian_vector(rng, n, sx), gaussian_vector(rng, n, sy)};
}

// y with |x| (1 + eps) = |y| and (x, y) = 0, so det = -|x|^2 ((1 + eps)^2 - 1).
Biquaterniond near_singular(Rng& rng, double eps) {
  const Quaterniond x = gaussian_quaternion(rng);
  Eigen::Vector4d u = gaussian_quaternion(rng).coeffs();
  const Eigen::Vector4d xc = x.coeffs();
  u -= u.dot(xc) / xc.squaredNorm() * xc;
  u *= x.norm() * (1.0 + eps) / u.norm();
  QuaternionVectord xv(1), yv(1);
  xv.set(0, x);
  yv.set(0, Quaterniond::from_coeffs(u));
  return {xv, yv};
}

// Block 0 gets |x| in [0.5, 1], y orthogonal to x and |y|^2 = |x|^2 + target,
// so det = -target there; other blocks are Gaussian.
Biquaterniond with_det(Rng& rng, int n, double target) {
  Biquaterniond s{gaussian_vector(rng, n), gaussian_vector(rng, n, 0.6)};
  const Quaterniond x = shell_quaternion(rng, 0.5, 1.0);
  Eigen::Vector4d u = gaussian_quaternion(rng).coeffs();
  const Eigen::Vector4d xc = x.coeffs();
  u -= u.dot(xc) / xc.squaredNorm() * xc;
  u *= std::sqrt(xc.squaredNorm() + target) / u.norm();
  s.x.set(0, x);
  s.y.set(0, Quaterniond::from_coeffs(u));
  return s;
}

// x + y q0 = 0 for a unit imaginary q0 in every block.
Biquaterniond line_through_zero(Rng& rng, int n) {
  const Quaterniond q0 = unit_imaginary<double>(unit_vector3(rng));
  QuaternionVectord y = gaussian_vector(rng, n);
  return {-(y * q0), y};
}

}  // namespace

// 1 ---------------------------------------------------------------------------

CriterionResult check_fundamental_solution(const AcceptanceConfig& cfg) {
  CriterionResult r{1, "monogenicity of the fundamental solution", false, {}, {}};
  Checker c(r);
  Rng rng = rng_for(cfg, 1);
  const auto& entry = field_entry("E");
  const ScalarField psi = entry.make(cfg.n);
  std::vector<QuaternionVectord> pts;
  for (int k = 0; k < 1000; ++k) pts.push_back(entry.sample(rng, cfg.n));
  FdConfig fd;
  fd.step = 1e-5;
  const auto rep = is_monogenic(psi, pts, 1e-6, fd);
  r.data = to_json(rep);
  r.data["field"] = "E";
  c.require(rep.verdict, "max |D E| = " + fmt(rep.max_residual) + " >= 1e-6");
  c.finish();
  return r;
}

// 2 ---------------------------------------------------------------------------

CriterionResult check_holomorphic_extension(const AcceptanceConfig& cfg) {
  CriterionResult r{2, "holomorphic extension of the fundamental solution", false, {}, {}};
  Checker c(r);
  Rng rng = rng_for(cfg, 2);
  const auto ext = *field_entry("E").extension(cfg.n);
  FdConfig fd;
  fd.step = 1e-5;

  double worst = 0.0, min_det = 1e300;
  int drawn = 0;
  for (int k = 0; k < 1000; ++k) {
    MatrixX2cd z(2 * cfg.n, 2);
    do {
      for (Eigen::Index a = 0; a < z.rows(); ++a)
        for (int b = 0; b < 2; ++b) z(a, b) = gaussian_complex(rng);
      ++drawn;
    } while (std::abs(fixtures::block_det(z)) <= 0.1);
    min_det = std::min(min_det, std::abs(fixtures::block_det(z)));
    worst = std::max(worst, dC_apply(ext, z, fd).norm());
  }
  double slice = 0.0;
  const auto& entry = field_entry("E");
  for (int k = 0; k < 1000; ++k) {
    const auto x = entry.sample(rng, cfg.n);
    slice = std::max(slice, (ext.restrict(x) - fixtures::fundamental_pair(x)).norm());
  }
  r.data = {{"samples", 1000}, {"draws", drawn}, {"min_abs_det", min_det},
            {"max_dC_residual", worst}, {"max_real_slice_error", slice}};
  c.require(worst < 1e-6, "max |D^C E_ext| = " + fmt(worst) + " >= 1e-6");
  c.require(slice < 1e-12, "real-slice mismatch " + fmt(slice) + " >= 1e-12");
  c.finish();
  return r;
}

// 3 ---------------------------------------------------------------------------

CriterionResult check_hull_equivalence(const AcceptanceConfig& cfg) {
  CriterionResult r{3, "hull by definition equals hull by twistor lines", false, {}, {}};
  Checker c(r);
  Rng rng = rng_for(cfg, 3);
  const int n = cfg.n;

  struct Case {
    std::string name;
    Domain domain;
  };
  std::vector<Case> cases = {{"ball", Domain::ball(n, 1.0)},
                             {"point_complement", Domain::point_complement(QuaternionVectord(n))}};
  r.data["domains"] = nlohmann::json::array();
  for (const auto& cs : cases) {
    int agree = 0, band_only = 0, hard = 0, inside = 0;
    for (int k = 0; k < 1000; ++k) {
      Biquaterniond s = cs.name == "ball"
                            ? Biquaterniond(ball_vector(rng, n, 0.9),
                                            gaussian_vector(rng, n, 0.2 / std::sqrt(double(n))))
                        : (k % 5 == 0) ? line_through_zero(rng, n)
                                       : random_biquaternion(rng, n, 1.0, 0.7);
      if (cs.name == "point_complement" && k % 10 == 5) {
        // push an exact zero-hitting line slightly off
        s.x += gaussian_vector(rng, n, 1e-3);
      }
      const auto a = hull_contains(s, cs.domain);
      const auto b = hull_contains_via_lines(s, cs.domain);
      if (a.verdict()) ++inside;
      if (a.verdict() == b.verdict()) {
        ++agree;
      } else if (a.membership == Membership::indeterminate ||
                 b.membership == Membership::indeterminate) {
        ++band_only;
      } else {
        ++hard;
      }
    }
    const double rate = agree / 1000.0;
    r.data["domains"].push_back({{"domain", cs.name}, {"samples", 1000}, {"agree", agree},
                                 {"disagree_in_band", band_only}, {"disagree_outside_band", hard},
                                 {"inside", inside}, {"agreement", rate}});
    c.require(rate >= 0.995, cs.name + ": agreement " + std::to_string(rate) + " < 0.995");
    c.require(hard == 0, cs.name + ": " + std::to_string(hard) + " disagreements outside the band");
  }

  if (n == 1) {
    const Domain punctured = Domain::point_complement(QuaternionVectord(1));
    int checked = 0, wrong = 0, small = 0, small_not_inside = 0;
    for (int k = 0; k < 1000; ++k) {
      Biquaterniond s;
      if (k % 5 == 0) {
        s = line_through_zero(rng, 1);
      } else if (k % 5 == 1) {
        s = near_singular(rng, std::pow(10.0, uniform(rng, -4.0, -0.5)));
      } else {
        s = random_biquaternion(rng, 1, 1.0, 1.0);
      }
      const double d = std::abs(det(s));
      const auto a = hull_contains(s, punctured);
      const auto b = hull_contains_via_lines(s, punctured);
      if (d > 1e-3) {
        ++checked;
        if (!a.verdict() || !b.verdict()) ++wrong;
      } else {
        ++small;
        if (!a.verdict() && !b.verdict()) ++small_not_inside;
      }
    }
    r.data["det_check"] = {{"samples", 1000}, {"abs_det_above_1e-3", checked},
                           {"mismatches", wrong}, {"abs_det_below_1e-3", small},
                           {"below_reported_not_inside", small_not_inside}};
    c.require(wrong == 0, "H*: " + std::to_string(wrong) + " samples with |det| > 1e-3 not inside");
  }
  c.finish();
  return r;
}

// 4 ---------------------------------------------------------------------------

CriterionResult check_distance_lemma(const AcceptanceConfig& cfg) {
  CriterionResult r{4, "distance lemma and boundary witness", false, {}, {}};
  Checker c(r);
  Rng rng = rng_for(cfg, 4);
  const int n = cfg.n;

  double real_err = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double radius = uniform(rng, 0.5, 2.0);
    const auto center = k == 0 ? QuaternionVectord(n) : ball_vector(rng, n, 0.95 * radius);
    const double got = hull_distance(Biquaterniond(center), Domain::ball(n, radius));
    real_err = std::max(real_err, std::abs(got - (radius - center.norm()) / std::sqrt(2.0)));
  }
  c.require(real_err < 1e-6, "hull_distance((c,0), B_r) off by " + fmt(real_err));

  double witness_rel = 0.0, worst_margin = 1e300;
  int witness_inside = 0, exterior_found = 0, exterior_too_close = 0;
  for (int k = 0; k < 100; ++k) {
    const bool ball = k % 2 == 0;
    const Domain dom = ball ? Domain::ball(n, 1.0) : Domain::point_complement(QuaternionVectord(n));
    Biquaterniond s;
    HullQuery q;
    do {
      s = ball ? random_biquaternion(rng, n, 0.3, 0.2) : random_biquaternion(rng, n, 1.0, 0.6);
      q = hull_contains(s, dom);
    } while (!q.verdict());
    const double d = q.inf_value / std::sqrt(2.0);
    const auto w = hull_witness(s, dom);
    witness_rel = std::max(witness_rel, std::abs(w.distance - d) / d);
    if (hull_contains(w.point, dom).verdict()) ++witness_inside;

    const double slack = q.band / std::sqrt(2.0);
    const Biquaterniond towards = w.point - s;
    for (int t = 0; t < 10; ++t) {
      // half random directions, half near the witness direction
      Biquaterniond dir = random_biquaternion(rng, n, 1.0, 1.0);
      if (t % 2 == 1) {
        const double wiggle = 0.2 / dir.norm_c();
        dir = Biquaterniond(towards.x * (1.0 / d) + dir.x * wiggle, towards.y * (1.0 / d) + dir.y * wiggle);
      }
      const double len = uniform(rng, 0.0, 2.0) * d;
      const double scale = len / dir.norm_c();
      dir.x *= scale;
      dir.y *= scale;
      const double dist = dir.norm_c();
      const Biquaterniond p = s + dir;
      if (hull_contains(p, dom).membership == Membership::outside) {
        ++exterior_found;
        worst_margin = std::min(worst_margin, dist - (d - slack));
        if (dist < d - slack) ++exterior_too_close;
      }
    }
  }
  r.data = {{"real_slice_max_error", real_err},
            {"witness_max_relative_error", witness_rel},
            {"witness_inside_hull", witness_inside},
            {"exterior_samples", exterior_found},
            {"exterior_closer_than_distance", exterior_too_close},
            {"min_exterior_margin", exterior_found ? worst_margin : 0.0}};
  c.require(witness_rel < 1e-3, "witness distance relative error " + fmt(witness_rel));
  c.require(witness_inside == 0, std::to_string(witness_inside) + " witnesses reported inside the hull");
  c.require(exterior_too_close == 0,
            std::to_string(exterior_too_close) + " exterior samples closer than the hull distance");
  c.finish();
  return r;
}

// 5 ---------------------------------------------------------------------------

CriterionResult check_cp1_cohomology(const AcceptanceConfig& cfg) {
  CriterionResult r{5, "CP^1 cohomology coefficients", false, {}, {}};
  Checker c(r);
  Rng rng = rng_for(cfg, 5);

  const cd norm = quadrature_c([](cd z) { return cd(2.0 / std::pow(1.0 + std::norm(z), 3)); });
  const double norm_err = std::abs(norm - 1.0);

  double harmonic_err = 0.0;
  for (int k = 0; k < 100; ++k) {
    const cd a0 = gaussian_complex(rng), a1 = gaussian_complex(rng);
    const auto got = cohomology_coefficients(harmonic_representative(a0, a1));
    harmonic_err = std::max(harmonic_err, std::max(std::abs(got[0] - a0), std::abs(got[1] - a1)));
  }

  QuadratureConfig bump_q;
  bump_q.tolerance = 1e-7;
  bump_q.max_doublings = 5;
  double exact_max = 0.0;
  for (int k = 0; k < 20; ++k) {
    // centers uniform in |c| < 2
    const Bump b{std::polar(2.0 * std::sqrt(uniform(rng)), uniform(rng, 0.0, 2.0 * M_PI)),
                 uniform(rng, 0.5, 1.5)};
    exact_max = std::max(exact_max, cohomology_coefficients(b.exact_form(-3), b.fitted(bump_q)).cwiseAbs().maxCoeff());
  }
  r.data = {{"normalization", cjson(norm)},
            {"normalization_error", norm_err},
            {"harmonic_round_trip_max_error", harmonic_err},
            {"exact_form_max_coefficient", exact_max}};
  c.require(norm_err < 1e-8, "normalization integral off by " + fmt(norm_err));
  c.require(harmonic_err < 1e-6, "harmonic round trip error " + fmt(harmonic_err));
  c.require(exact_max < 1e-5, "exact bump form coefficient " + fmt(exact_max));
  c.finish();
  return r;
}

// 6 ---------------------------------------------------------------------------

CriterionResult check_penrose_round_trip(const AcceptanceConfig& cfg) {
  CriterionResult r{6, "Penrose transform round trip", false, {}, {}};
  Checker c(r);
  Rng rng = rng_for(cfg, 6);
  r.data["fields"] = nlohmann::json::array();
  for (const std::string name : {"constant", "linear_monogenic", "E"}) {
    const auto& entry = field_entry(name);
    const ScalarField psi = entry.make(cfg.n);
    const TwistorForm w = sharp(psi);
    double err = 0.0, closed = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto x = entry.sample(rng, cfg.n);
      try {
        const auto t = penrose_transform(w, x);
        err = std::max(err, (t.value - psi.pair(x)).norm());
        closed = std::max(closed, t.closedness);
      } catch (const CertificateError& e) {
        c.require(false, name + ": " + e.what());
      }
    }
    r.data["fields"].push_back({{"field", name}, {"points", 20}, {"max_error", err},
                                {"max_closedness", closed}});
    c.require(err < 1e-4, name + ": round trip error " + fmt(err));
  }
  c.finish();
  return r;
}

// 7 ---------------------------------------------------------------------------

CriterionResult check_commutative_diagram(const AcceptanceConfig& cfg) {
  CriterionResult r{7, "commutative diagram with the Cauchy-Fueter operator", false, {}, {}};
  Checker c(r);
  Rng rng = rng_for(cfg, 7);
  const auto& cal = default_calibration();
  r.data["calibration"] = cal.to_json();
  QuadratureConfig q;
  q.tolerance = 1e-9;
  r.data["fields"] = nlohmann::json::array();
  for (const std::string name : {"nonmonogenic_quadratic", "smooth_nonmonogenic", "conj_q", "constant",
                                 "linear_monogenic", "E"}) {
    const auto& entry = field_entry(name);
    std::vector<QuaternionVectord> pts;
    for (int k = 0; k < 10; ++k) pts.push_back(entry.sample(rng, cfg.n));
    const auto rep = diagram_check(entry.make(cfg.n), pts, cal, {}, q);
    r.data["fields"].push_back({{"field", name}, {"monogenic", entry.monogenic}, {"points", 10},
                                {"max_residual", rep.max_residual}, {"max_lhs", rep.max_lhs},
                                {"max_rhs", rep.max_rhs}});
    if (entry.monogenic) {
      c.require(rep.max_lhs < 1e-4 && rep.max_rhs < 1e-4,
                name + ": monogenic sides not zero (" + fmt(rep.max_lhs) + ", " + fmt(rep.max_rhs) + ")");
    } else {
      c.require(rep.max_residual < 1e-4, name + ": diagram residual " + fmt(rep.max_residual));
      c.require(rep.max_lhs > 1e-2, name + ": pushforward unexpectedly small");
    }
  }
  c.finish();
  return r;
}

// 8 ---------------------------------------------------------------------------

CriterionResult check_complex_transform(const AcceptanceConfig& cfg) {
  CriterionResult r{8, "complexified Penrose transform on the monogenic hull", false, {}, {}};
  Checker c(r);
  Rng rng = rng_for(cfg, 8);
  const int n = cfg.n;
  const auto& entry = field_entry("E");
  const ScalarField psi = entry.make(n);
  const TwistorForm closed = closed_sharp(psi);
  const TwistorForm plain = sharp(psi);
  const Domain dom = psi.domain();

  double value_err = 0.0, dc_res = 0.0, min_det = 1e300;
  int rejected = 0, nodes = 0;
  for (int k = 0; k < 20; ++k) {
    Biquaterniond s;
    for (;;) {
      if (k % 4 == 3) {
        // close to the |det| = 0.3 edge
        s = with_det(rng, n, uniform(rng, 0.3, 0.4));
        if (hull_contains(s, dom).verdict()) break;
        ++rejected;
        continue;
      }
      QuaternionVectord x = gaussian_vector(rng, n);
      x.set(0, shell_quaternion(rng, 0.5, 2.0));
      s = {x, gaussian_vector(rng, n, 0.6)};
      if (std::abs(fixtures::block_det(s.matrix())) > 0.3 && hull_contains(s, dom).verdict()) break;
      ++rejected;
    }
    min_det = std::min(min_det, std::abs(fixtures::block_det(s.matrix())));
    const auto t = penrose_transform_complex(closed, s, dom);
    value_err = std::max(value_err, (t.value - fixtures::fundamental_extension(s.matrix())).norm());

    // same node set for every stencil point
    const auto settled = line_integral(closed, s.matrix(), {});
    nodes = std::max(nodes, settled.radial);
    QuadratureConfig fixed;
    fixed.radial = settled.radial;
    fixed.angular = settled.angular;
    fixed.adaptive = false;
    FdConfig fd;
    fd.step = 1e-5;
    dc_res = std::max(dc_res, dC_apply(penrose_field(closed, fixed), s.matrix(), fd).norm());
  }

  double slice_bits = 0.0, slice_plain = 0.0;
  TransformOptions no_cert;
  no_cert.certify = false;
  for (int k = 0; k < 20; ++k) {
    const auto x = entry.sample(rng, n);
    const auto a = penrose_transform(closed, x, no_cert).value;
    const Eigen::Vector2cd b = line_integral(closed, Biquaterniond(x).matrix(), {}).value;
    const auto p = penrose_transform(plain, x, no_cert).value;
    slice_bits = std::max(slice_bits, (a - b).cwiseAbs().maxCoeff());
    slice_plain = std::max(slice_plain, (a - p).norm() / std::max(1.0, p.norm()));
  }
  r.data = {{"points", 20},
            {"rejected_draws", rejected},
            {"min_abs_det", min_det},
            {"max_error_vs_extension", value_err},
            {"max_dC_residual", dc_res},
            {"max_radial_nodes", nodes},
            {"real_slice_shared_path_difference", slice_bits},
            {"real_slice_vs_plain_sharp", slice_plain}};
  c.require(value_err < 1e-4, "complex transform differs from the extension by " + fmt(value_err));
  c.require(dc_res < 1e-6, "D^C residual of the transform " + fmt(dc_res));
  c.require(slice_bits == 0.0, "real-slice transform differs from the shared path");
  c.require(slice_plain < 1e-12, "real-slice transform depends on the K-part: " + fmt(slice_plain));
  c.finish();
  return r;
}

// ---------------------------------------------------------------------------

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg) {
  switch (id) {
    case 1: return check_fundamental_solution(cfg);
    case 2: return check_holomorphic_extension(cfg);
    case 3: return check_hull_equivalence(cfg);
    case 4: return check_distance_lemma(cfg);
    case 5: return check_cp1_cohomology(cfg);
    case 6: return check_penrose_round_trip(cfg);
    case 7: return check_commutative_diagram(cfg);
    case 8: return check_complex_transform(cfg);
  }
  throw std::invalid_argument("no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_all(const AcceptanceConfig& cfg) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 8; ++id) {
    try {
      out.push_back(run_criterion(id, cfg));
    } catch (const std::exception& e) {
      CriterionResult r;
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.failure = std::string("exception: ") + e.what();
      out.push_back(r);
    }
  }
  return out;
}

nlohmann::json to_json(const CriterionResult& r) {
  nlohmann::json j = {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"data", r.data}};
  j["failure"] = r.failure.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.failure);
  return j;
}

}  // namespace fueter
