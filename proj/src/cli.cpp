#include "hconv/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "hconv/convolution.hpp"
#include "hconv/diffops.hpp"
#include "hconv/distributions.hpp"
#include "hconv/errors.hpp"
#include "hconv/integrals.hpp"
#include "hconv/json_io.hpp"
#include "hconv/parser.hpp"
#include "hconv/schwartz.hpp"

namespace hconv::cli {

namespace {

// Bad flag values or inconsistent flags; reported with exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string expr;
  std::optional<std::size_t> dim;
  std::optional<unsigned> degree;
  std::string center;
  std::string radius;
  std::string gauss_rate;
  std::string gauss_center;
  std::string at;
  std::string alpha;
  std::string beta;
  std::string dist;
  std::optional<double> sample_radius;
};

std::vector<Rational> rational_list(const std::string& text, const char* flag) {
  try {
    return parse_rational_list(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": expected comma separated rationals, got \"" + text +
                     "\"");
  }
}

Rational rational_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": expected a rational, got \"" + text + "\"");
  }
}

MultiIndex index_flag(const std::string& text, const char* flag, std::size_t dim) {
  if (text.empty()) return MultiIndex(dim);
  std::vector<unsigned> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.size() > 4 ||
        item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError(std::string(flag) + ": expected comma separated naturals, got \"" + text +
                       "\"");
    }
    out.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  if (out.size() != dim) {
    throw UsageError(std::string(flag) + ": length " + std::to_string(out.size()) +
                     " does not match dimension " + std::to_string(dim));
  }
  return MultiIndex(std::move(out));
}

void require_length(std::size_t got, std::size_t dim, const char* flag) {
  if (got != dim) {
    throw UsageError(std::string(flag) + ": length " + std::to_string(got) +
                     " does not match dimension " + std::to_string(dim));
  }
}

// Dimension from --dim, else from a vector flag, else from the expression.
Polynomial expression(const Options& o, std::optional<std::size_t> hint = std::nullopt) {
  std::optional<std::size_t> dim = o.dim ? o.dim : hint;
  if (dim && (*dim == 0 || *dim > kMaxVariable)) {
    throw UsageError("--dim: must be between 1 and " + std::to_string(kMaxVariable));
  }
  return parse_polynomial(o.expr, dim);
}

TemperedDistribution distribution(const Options& o) {
  std::string text = o.dist;
  if (!text.empty() && text.front() == '@') {
    std::ifstream file(text.substr(1));
    if (!file) throw UsageError("--dist: cannot read " + text.substr(1));
    std::stringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }
  TemperedDistribution lambda = parse_distribution(text);
  if (o.dim && *o.dim != lambda.dim()) {
    throw UsageError("--dim " + std::to_string(*o.dim) + " conflicts with distribution dim " +
                     std::to_string(lambda.dim()));
  }
  return lambda;
}

// q(x) exp(-rate |x - center|^2) from --gauss-rate and --gauss-center.
GaussPoly gauss_poly(const Options& o, Polynomial q) {
  const std::size_t dim = q.dim();
  const Rational rate = rational_flag(o.gauss_rate, "--gauss-rate");
  if (rate <= 0) throw UsageError("--gauss-rate: must be positive");
  std::vector<Rational> center(dim, Rational(0));
  if (!o.gauss_center.empty()) {
    center = rational_list(o.gauss_center, "--gauss-center");
    require_length(center.size(), dim, "--gauss-center");
  }
  return GaussPoly(std::move(q), rate, std::move(center));
}

// q from the positional expression (default 1).
GaussPoly gauss_poly(const Options& o, std::size_t dim) {
  return gauss_poly(o, o.expr.empty() ? Polynomial::constant(dim, 1)
                                      : parse_polynomial(o.expr, dim));
}

GaussPoly pure_gaussian(const Options& o, std::size_t dim) {
  return gauss_poly(o, Polynomial::constant(dim, 1));
}

SphereSpec sphere(const Options& o, std::size_t dim) {
  std::vector<Rational> center(dim, Rational(0));
  if (!o.center.empty()) {
    center = rational_list(o.center, "--center");
    require_length(center.size(), dim, "--center");
  }
  const Rational radius = o.radius.empty() ? Rational(1) : rational_flag(o.radius, "--radius");
  if (radius <= 0) throw UsageError("--radius: must be positive");
  return SphereSpec(std::move(center), radius);
}

std::optional<std::size_t> center_hint(const std::string& flag_value, const char* flag) {
  if (flag_value.empty()) return std::nullopt;
  return rational_list(flag_value, flag).size();
}

Json polynomial_list(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

Json verb_laplacian(const Options& o) { return {{"result", to_string(laplacian(expression(o)))}}; }

Json verb_euler(const Options& o) { return {{"result", to_string(euler(expression(o)))}}; }

Json verb_harmonic_check(const Options& o) {
  const Polynomial p = expression(o, center_hint(o.gauss_center, "--gauss-center"));
  Json out;
  const bool harmonic = is_harmonic(p);
  out["harmonic"] = harmonic;
  out["laplacian"] = to_string(laplacian(p));
  Json components = Json::array();
  for (const auto& [m, part] : homogeneous_components(p)) {
    Json c;
    c["degree"] = m;
    c["harmonic"] = is_harmonic(part);
    c["shift_identity"] = m < 2 || laplacian_component_shift_check(p, m);
    components.push_back(std::move(c));
  }
  out["components"] = std::move(components);
  if (!o.gauss_rate.empty() && harmonic) {
    const GaussPoly phi = pure_gaussian(o, p.dim());
    out["spherical_mean_route"] =
        spherical_mean_route_check(p, moments_gp(phi, p.degree().value_or(0)));
  }
  return out;
}

Json verb_harmonic_basis(const Options& o) {
  if (!o.dim || !o.degree) throw UsageError("harmonic-basis requires --dim and --degree");
  if (*o.dim == 0 || *o.dim > kMaxVariable) throw UsageError("--dim: out of range");
  const HarmonicBasis hb = harmonic_basis(*o.dim, *o.degree);
  Json out;
  out["dim"] = hb.dim;
  out["degree"] = hb.degree;
  out["count"] = hb.basis.size();
  out["basis"] = polynomial_list(hb.basis);
  return out;
}

Json verb_sphere_mean(const Options& o) {
  const Polynomial p = expression(o, center_hint(o.center, "--center"));
  return {{"mean", to_string(sphere_average(p, sphere(o, p.dim())).value)}};
}

Json verb_mean_value_check(const Options& o) {
  const Polynomial p = expression(o, center_hint(o.center, "--center"));
  const SphereSpec s = sphere(o, p.dim());
  const bool holds = mean_value_check(p, s);
  Json out;
  out["holds"] = holds;
  out["mean"] = to_string(sphere_average(p, s).value);
  out["center_value"] = to_string(evaluate(p, s.center()));
  return out;
}

Json verb_divergence_check(const Options& o) {
  const Polynomial p = expression(o);
  Json out;
  out["holds"] = divergence_identity_check(p);
  out["sphere_integral_euler"] = to_string(unit_sphere_integral(euler(p)));
  out["ball_integral_laplacian"] = to_string(unit_ball_integral(laplacian(p)));
  out["unit"] = "surface measure of the unit sphere";
  return out;
}

Json verb_convolve(const Options& o) {
  if (o.gauss_rate.empty()) throw UsageError("convolve requires --gauss-rate");
  if (!o.dist.empty()) {
    // Distribution convolved with the Gauss-polynomial, evaluated at --at.
    const TemperedDistribution lambda = distribution(o);
    const GaussPoly phi = gauss_poly(o, lambda.dim());
    if (o.at.empty()) throw UsageError("convolve --dist requires --at");
    const auto x = rational_list(o.at, "--at");
    require_length(x.size(), lambda.dim(), "--at");
    Json out;
    out["family"] = std::string(family_name(lambda.family()));
    out["value"] = convolve_pointwise(lambda, phi, x);
    return out;
  }
  const Polynomial p = expression(o, center_hint(o.gauss_center, "--gauss-center"));
  const GaussPoly phi = pure_gaussian(o, p.dim());
  const MomentProvider moments = moments_gp(phi, p.degree().value_or(0));
  const Polynomial normalized = convolve_poly(p, moments);
  Json out;
  out["normalized"] = to_string(normalized);
  out["integral_of_phi"] = *moments.normalization();
  if (normalized.degree()) out["degree"] = *normalized.degree();
  else out["degree"] = nullptr;
  if (!o.at.empty()) {
    const auto x = rational_list(o.at, "--at");
    require_length(x.size(), p.dim(), "--at");
    std::vector<double> xd;
    for (const auto& v : x) xd.push_back(to_double(v));
    out["value_at"] = to_double(evaluate(normalized, x)) * *moments.normalization();
    out["quadrature_value_at"] = numeric_convolution_oracle(p, phi, xd);
  }
  return out;
}

Json verb_eigen_check(const Options& o) {
  if (o.gauss_rate.empty()) throw UsageError("eigen-check requires --gauss-rate");
  const Polynomial p = expression(o, center_hint(o.gauss_center, "--gauss-center"));
  const GaussPoly phi = pure_gaussian(o, p.dim());
  const EigenReport r = eigen_check(p, moments_gp(phi, p.degree().value_or(0)));
  Json out;
  out["harmonic"] = r.harmonic;
  out["residual"] = to_string(r.residual);
  out["eigenvalue_note"] = r.eigenvalue_note;
  return out;
}

Json seminorm_json(const SeminormValue& s) {
  Json out;
  out["alpha"] = index_array(s.alpha);
  out["beta"] = index_array(s.beta);
  out["value"] = s.value;
  out["argmax"] = s.argmax_point;
  out["refinement_step"] = s.refinement_step;
  return out;
}

std::size_t psi_dim(const Options& o) {
  if (o.dim) return *o.dim;
  if (auto h = center_hint(o.gauss_center, "--gauss-center")) return *h;
  return o.expr.empty() ? 1 : parse_polynomial(o.expr).dim();
}

Json verb_seminorm(const Options& o) {
  if (o.gauss_rate.empty()) throw UsageError("seminorm requires --gauss-rate");
  const std::size_t n = psi_dim(o);
  const GaussPoly psi = gauss_poly(o, n);
  return seminorm_json(
      seminorm(psi, index_flag(o.alpha, "--alpha", n), index_flag(o.beta, "--beta", n)));
}

Json verb_apply(const Options& o) {
  if (o.dist.empty() || o.gauss_rate.empty()) {
    throw UsageError("apply requires --dist and --gauss-rate");
  }
  const TemperedDistribution lambda = distribution(o);
  const ApplyResult r = apply(lambda, gauss_poly(o, lambda.dim()));
  Json out;
  out["family"] = std::string(family_name(lambda.family()));
  out["value"] = r.value;
  out["error_estimate"] = r.error_estimate;
  if (r.exact) out["exact"] = to_string(*r.exact);
  return out;
}

Json verb_growth_cert(const Options& o) {
  if (o.dist.empty() || o.gauss_rate.empty()) {
    throw UsageError("growth-cert requires --dist and --gauss-rate");
  }
  const TemperedDistribution lambda = distribution(o);
  const GrowthCertificate c =
      growth_certificate(lambda, gauss_poly(o, lambda.dim()), o.sample_radius.value_or(16.0));
  Json out;
  out["family"] = std::string(family_name(lambda.family()));
  out["l"] = c.l;
  out["C1"] = c.C1;
  out["witness_count"] = c.witness_points.size();
  out["sample_max"] = c.sample_max;
  out["holdout_max"] = c.holdout_max;
  out["holdout_margin"] = c.holdout_margin;
  return out;
}

Json verb_continuity_cert(const Options& o) {
  if (o.dist.empty()) throw UsageError("continuity-cert requires --dist");
  const TemperedDistribution lambda = distribution(o);
  const ContinuityCertificate c = continuity_certificate(lambda);
  Json out;
  out["family"] = std::string(family_name(lambda.family()));
  out["C"] = to_string(c.C);
  Json pairs = Json::array();
  for (const auto& [alpha, beta] : c.pairs) {
    pairs.push_back(Json{{"alpha", index_array(alpha)}, {"beta", index_array(beta)}});
  }
  out["pairs"] = std::move(pairs);
  if (!o.gauss_rate.empty()) {
    const ContinuityCheck check = verify_continuity(c, lambda, gauss_poly(o, lambda.dim()));
    out["check"] = Json{{"lhs", check.lhs}, {"rhs", check.rhs}, {"holds", check.holds}};
  }
  return out;
}

struct Verb {
  const char* name;
  const char* description;
  std::function<Json(const Options&)> handler;
  bool expr_required;
  bool expr_allowed;
};

void validate_tolerance_env() {
  if (const char* env = std::getenv("HCONV_QUAD_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw UsageError(std::string("HCONV_QUAD_TOL: expected a positive number, got \"") + env +
                       "\"");
    }
  }
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact harmonic polynomial and Gaussian convolution toolkit. Output is JSON."};
  app.name("hconv");
  app.require_subcommand(1);
  app.footer(
      "Expressions use x1, x2, ... with + - * ^ and rationals such as 3/2.\n"
      "Vectors are comma separated: --center 1/2,-1/3. Use -- before an expression\n"
      "that starts with '-'. HCONV_QUAD_TOL overrides the quadrature tolerance.");

  const std::vector<Verb> verbs = {
      {"laplacian", "Laplacian of a polynomial", verb_laplacian, true, true},
      {"euler", "Euler operator sum x_j d/dx_j of a polynomial", verb_euler, true, true},
      {"harmonic-check", "Harmonicity of a polynomial and of its homogeneous components",
       verb_harmonic_check, true, true},
      {"harmonic-basis", "Basis of homogeneous harmonic polynomials (--dim, --degree)",
       verb_harmonic_basis, false, false},
      {"sphere-mean", "Exact average of a polynomial over a sphere", verb_sphere_mean, true, true},
      {"mean-value-check", "Sphere average versus value at the center (harmonic input)",
       verb_mean_value_check, true, true},
      {"divergence-check", "Sphere integral of euler(p) versus ball integral of laplacian(p)",
       verb_divergence_check, true, true},
      {"convolve", "Convolution with a Gaussian (exact) or of a distribution (pointwise)",
       verb_convolve, false, true},
      {"eigen-check", "Whether p is an eigenfunction of Gaussian convolution", verb_eigen_check,
       true, true},
      {"seminorm", "Schwartz seminorm sup |x^alpha d^beta psi|", verb_seminorm, false, true},
      {"apply", "Distribution applied to a Gauss-polynomial test function", verb_apply, false,
       true},
      {"growth-cert", "Polynomial growth certificate for a distribution convolved with phi",
       verb_growth_cert, false, true},
      {"continuity-cert", "Continuity certificate (C, seminorm pairs) for a distribution",
       verb_continuity_cert, false, true},
  };

  Options opts;
  std::vector<std::pair<CLI::App*, const Verb*>> subs;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.description);
    if (v.expr_allowed) {
      auto* opt = sub->add_option("expr", opts.expr, "Polynomial expression");
      if (v.expr_required) opt->required();
    }
    sub->add_option("--dim", opts.dim, "Dimension n (default: inferred)");
    const std::string name = v.name;
    if (name == "harmonic-basis") sub->add_option("--degree", opts.degree, "Degree l");
    if (name == "sphere-mean" || name == "mean-value-check") {
      sub->add_option("--center", opts.center, "Sphere center, e.g. 0,1/2 (default origin)");
      sub->add_option("--radius", opts.radius, "Sphere radius (default 1)");
    }
    if (name == "harmonic-check" || name == "convolve" || name == "eigen-check" ||
        name == "seminorm" || name == "apply" || name == "growth-cert" ||
        name == "continuity-cert") {
      sub->add_option("--gauss-rate", opts.gauss_rate, "Rate a of exp(-a|x - c|^2)");
      sub->add_option("--gauss-center", opts.gauss_center, "Gaussian center c (default origin)");
    }
    if (name == "convolve") sub->add_option("--at", opts.at, "Evaluation point");
    if (name == "seminorm") {
      sub->add_option("--alpha", opts.alpha, "Monomial weight multi-index (default 0)");
      sub->add_option("--beta", opts.beta, "Derivative multi-index (default 0)");
    }
    if (name == "convolve" || name == "apply" || name == "growth-cert" ||
        name == "continuity-cert") {
      sub->add_option("--dist", opts.dist, "Distribution as JSON or @file");
    }
    if (name == "growth-cert") {
      sub->add_option("--sample-radius", opts.sample_radius, "Sampling radius R (default 16)");
    }
    subs.emplace_back(sub, &v);
  }

  std::vector<const char*> argv{"hconv"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }

  const Verb* verb = nullptr;
  for (const auto& [sub, v] : subs) {
    if (sub->parsed()) verb = v;
  }
  try {
    validate_tolerance_env();
    out << verb->handler(opts).dump() << '\n';
    return 0;
  } catch (const ParseError& e) {
    err << "hconv " << verb->name << ": " << e.what() << '\n';
    return 2;
  } catch (const SchemaError& e) {
    err << "hconv " << verb->name << ": " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "hconv " << verb->name << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "hconv " << verb->name << ": error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hconv::cli
