// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hconv/cli.hpp"
#include "hconv/convolution.hpp"
#include "hconv/diffops.hpp"
#include "hconv/distributions.hpp"
#include "hconv/errors.hpp"
#include "hconv/integrals.hpp"
#include "hconv/parser.hpp"
#include "malformed.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hconv;
using testing::Gen;

namespace {

struct Outcome {
  bool pass = true;
  std::size_t checks = 0;
  std::string first_failure;
  double worst = 0.0;  // largest observed error, where meaningful

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

std::size_t random_dim(Gen& gen, std::size_t max = 4) {
  return static_cast<std::size_t>(gen.integer(1, static_cast<std::int64_t>(max)));
}

Outcome euler_identity() {
  Outcome o;
  Gen gen(1001);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (unsigned l = 0; l <= 8; ++l) {
      for (int i = 0; i < 50; ++i) {
        const Polynomial p = gen.homogeneous(n, l);
        o.expect(euler(p) == p * Rational(l), "euler(p) != l p for " + to_string(p));
      }
    }
  }
  return o;
}

Outcome harmonic_components() {
  Outcome o;
  Gen gen(1002);
  for (int i = 0; i < 200; ++i) {
    const Polynomial h = gen.harmonic(random_dim(gen), 8);
    o.expect(is_harmonic(h), "generated polynomial not harmonic");
    for (const auto& [m, part] : homogeneous_components(h)) {
      o.expect(is_harmonic(part), "component " + std::to_string(m) + " of " + to_string(h));
    }
  }
  return o;
}

Outcome degree_shift() {
  Outcome o;
  Gen gen(1003);
  for (int i = 0; i < 200; ++i) {
    const Polynomial p = gen.polynomial(random_dim(gen), 8, 12);
    const unsigned top = p.degree().value_or(0) + 2;
    for (unsigned m = 2; m <= top; ++m) {
      o.expect(laplacian(homogeneous_component(p, m)) == homogeneous_component(laplacian(p), m - 2),
               "degree shift fails at m=" + std::to_string(m) + " for " + to_string(p));
    }
  }
  return o;
}

Outcome mean_value() {
  Outcome o;
  Gen gen(1004);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (unsigned l = 0; l <= 8; ++l) {
      for (const auto& b : harmonic_basis(n, l).basis) {
        for (int s = 0; s < 20; ++s) {
          const SphereSpec sphere(gen.point(n), gen.positive_rational());
          o.expect(sphere_average(b, sphere).value == evaluate(b, sphere.center()),
                   "mean value fails for " + to_string(b));
        }
        if (l >= 1) {
          o.expect(sphere_average(b, SphereSpec::unit(n)).value == 0,
                   "nonzero origin average for " + to_string(b));
        }
      }
    }
  }
  return o;
}

Outcome divergence() {
  Outcome o;
  Gen gen(1005);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = random_dim(gen);
    const Polynomial p = i % 2 ? gen.harmonic(n, 8) : gen.polynomial(n, 8, 12);
    o.expect(unit_sphere_integral(euler(p)) == unit_ball_integral(laplacian(p)),
             "divergence identity fails for " + to_string(p));
  }
  return o;
}

Outcome sphere_means() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (unsigned d = 0; d <= 8; d += 2) {
      for (const auto& alpha : multi_indices_of_degree(n, d)) {
        if (alpha.has_odd_entry()) continue;
        const double err = testing::rel_err(testing::sphere_mean_by_quadrature(alpha),
                                            to_double(monomial_sphere_mean(alpha)));
        o.worst = std::max(o.worst, err);
        o.expect(err <= 1e-9, "quadrature disagrees for " + alpha.to_string());
      }
    }
  }
  std::vector<MultiIndex> even4;
  for (unsigned d = 0; d <= 8; d += 2) {
    for (const auto& alpha : multi_indices_of_degree(4, d)) {
      if (!alpha.has_odd_entry()) even4.push_back(alpha);
    }
  }
  const auto mc = testing::sphere_means_monte_carlo(even4, 4, 10'000'000, 1006);
  for (std::size_t k = 0; k < even4.size(); ++k) {
    const double err = std::abs(mc[k] - to_double(monomial_sphere_mean(even4[k])));
    o.expect(err <= 1e-3, "Monte Carlo disagrees for " + even4[k].to_string());
  }
  return o;
}

Outcome polynomial_convolution() {
  Outcome o;
  Gen gen(1007);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = random_dim(gen, 3);
    const Polynomial p = gen.polynomial_of_degree(n, static_cast<unsigned>(gen.integer(0, 6)));
    const GaussPoly phi = GaussPoly::gaussian(n, gen.positive_rational(6, 4));
    const MomentProvider m = moments_gp(phi, *p.degree());
    const Polynomial conv = convolve_poly(p, m);
    o.expect(conv.degree() == p.degree(), "degree changed for " + to_string(p));
    for (int k = 0; k < 10; ++k) {
      // Uniform in the ball of radius 5.
      std::vector<double> x(n);
      double r2;
      do {
        r2 = 0.0;
        for (auto& v : x) {
          v = gen.uniform(-5, 5);
          r2 += v * v;
        }
      } while (r2 > 25.0);
      std::vector<Rational> xr;
      for (double v : x) xr.push_back(from_double(v));
      const double symbolic = to_double(evaluate(conv, xr)) * *m.normalization();
      const double numeric = numeric_convolution_oracle(p, phi, x);
      const double err = testing::rel_err(numeric, symbolic);
      o.worst = std::max(o.worst, err);
      o.expect(err <= 1e-8, "oracle disagrees for " + to_string(p) + " (rel " + std::to_string(err) + ")");
    }
  }
  return o;
}

Outcome eigenfunctions() {
  Outcome o;
  Gen gen(1008);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (unsigned l = 0; l <= 8; ++l) {
      const auto basis = harmonic_basis(n, l).basis;
      for (int r = 0; r < 5; ++r) {
        const MomentProvider m = moments_gp(GaussPoly::gaussian(n, gen.positive_rational()), l);
        for (const auto& b : basis) {
          o.expect(eigen_check(b, m).residual.is_zero(), "nonzero residual for " + to_string(b));
        }
      }
    }
  }
  const auto probe = eigen_check(parse_polynomial("x1^2", 2),
                                 moments_gp(GaussPoly::gaussian(2, Rational(1, 2)), 2));
  o.expect(probe.residual == Polynomial::constant(2, 1), "x1^2 residual is not 1");
  return o;
}

TemperedDistribution random_instance(Gen& gen, std::size_t n, int family) {
  switch (family) {
    case 0: {
      std::vector<PointMass> masses;
      const int count = static_cast<int>(gen.integer(1, 3));
      for (int i = 0; i < count; ++i) {
        PointMass m{gen.nonzero_rational(), gen.point(n, 3, 2), gen.index_up_to(n, 2)};
        bool duplicate = false;
        for (const auto& prev : masses) {
          duplicate = duplicate || (prev.location == m.location && prev.derivative == m.derivative);
        }
        if (!duplicate) masses.push_back(std::move(m));
      }
      return TemperedDistribution::point_masses(std::move(masses));
    }
    case 1:
      return TemperedDistribution::polynomial_kernel(
          gen.polynomial_of_degree(n, static_cast<unsigned>(gen.integer(0, 5))));
    default:
      return TemperedDistribution::gauss_poly_kernel(gen.gauss_poly(n, 2, 3));
  }
}

Outcome convolution_definition() {
  Outcome o;
  Gen gen(1009);
  for (int family = 0; family < 3; ++family) {
    for (int i = 0; i < 10; ++i) {
      const std::size_t n = random_dim(gen, 3);
      const TemperedDistribution lambda = random_instance(gen, n, family);
      const GaussPoly phi = family == 1 ? GaussPoly::gaussian(n, gen.positive_rational(4, 3))
                                        : gen.gauss_poly(n, 2, 3);
      for (int k = 0; k < 10; ++k) {
        const auto x = gen.point(n, 5, 2);
        const double route = convolve_pointwise(lambda, phi, x);
        const double direct = convolve_direct(lambda, phi, x);
        const double err = testing::rel_err(route, direct);
        o.worst = std::max(o.worst, err);
        o.expect(err <= 1e-9, std::string(family_name(lambda.family())) + " disagrees (rel " +
                                  std::to_string(err) + ")");
      }
    }
  }
  return o;
}

Outcome growth() {
  Outcome o;
  Gen gen(1010);
  auto certify = [&](const TemperedDistribution& lambda, const GaussPoly& phi, double radius,
                     unsigned want, bool decaying) {
    try {
      const GrowthCertificate c = growth_certificate(lambda, phi, radius);
      o.expect(c.l == want, std::string(family_name(lambda.family())) + " certified l=" + std::to_string(c.l));
      o.expect(c.holdout_margin >= 0.0, "holdout violated");
      if (decaying) o.expect(c.holdout_max < c.sample_max, "holdout maxima do not decay");
    } catch (const CertificateRejected& e) {
      o.expect(false, std::string(family_name(lambda.family())) + ": " + e.what());
    }
  };
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = random_dim(gen, 3);
    certify(random_instance(gen, n, 0), gen.gauss_poly(n, 2, 3), 8.0, 0, false);
    certify(random_instance(gen, n, 2), gen.gauss_poly(n, 2, 3), 8.0, 0, true);
  }
  for (unsigned d = 0; d <= 5; ++d) {
    for (int i = 0; i < 5; ++i) {
      const std::size_t n = random_dim(gen, 3);
      certify(TemperedDistribution::polynomial_kernel(gen.polynomial_of_degree(n, d)),
              GaussPoly::gaussian(n, gen.positive_rational(4, 3)), 1024.0, d, false);
    }
  }
  return o;
}

Outcome continuity() {
  Outcome o;
  Gen gen(1011);
  for (int family = 0; family < 3; ++family) {
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = random_dim(gen, 3);
      const TemperedDistribution lambda = random_instance(gen, n, family);
      const ContinuityCertificate cert = continuity_certificate(lambda);
      const GaussPoly psi = gen.gauss_poly(n, 3, 4);
      const ContinuityCheck check = verify_continuity(cert, lambda, psi);
      o.worst = std::max(o.worst, check.rhs > 0 ? check.lhs / check.rhs : 0.0);
      o.expect(check.holds, std::string(family_name(lambda.family())) + ": " +
                                std::to_string(check.lhs) + " > " + std::to_string(check.rhs));
    }
  }
  return o;
}

Outcome parser_round_trip() {
  Outcome o;
  Gen gen(1012);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = random_dim(gen);
    const Polynomial p = gen.polynomial(n, 8, 10, 1'000'000, 1'000'000);
    o.expect(parse_polynomial(to_string(p), n) == p, "round trip fails for " + to_string(p));
  }
  for (const auto& m : testing::malformed_inputs()) {
    std::ostringstream out;
    std::ostringstream err;
    const std::vector<std::string> args{"laplacian", "--", m.text};
    const int code = cli::run(args, out, err);
    o.expect(code == 2, std::string("exit code ") + std::to_string(code) + " for \"" + m.text + "\"");
    o.expect(err.str().find("offset " + std::to_string(m.offset)) != std::string::npos,
             std::string("no position in diagnostic for \"") + m.text + "\"");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Euler identity", euler_identity},
      {"harmonic component closure", harmonic_components},
      {"Laplacian degree shift", degree_shift},
      {"mean-value property", mean_value},
      {"divergence identity", divergence},
      {"monomial sphere means vs quadrature", sphere_means},
      {"polynomial convolution vs numeric oracle", polynomial_convolution},
      {"eigenfunction theorem", eigenfunctions},
      {"convolution definition consistency", convolution_definition},
      {"growth certificates", growth},
      {"continuity certificates", continuity},
      {"parser round trip and diagnostics", parser_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.first_failure = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %-42s checks=%zu worst=%.3g time=%.1fs%s%s\n", o.pass ? "PASS" : "FAIL",
                i + 1, criteria[i].first, o.checks, o.worst, secs, o.pass ? "" : "  first: ",
                o.first_failure.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
