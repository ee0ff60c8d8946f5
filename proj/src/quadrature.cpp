#include "hconv/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "hconv/errors.hpp"

namespace hconv::quad {

namespace {

constexpr unsigned kPanelOrder = 16;

Rule compute_rule(unsigned order) {
  Rule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (unsigned i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (unsigned k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

struct PanelNodes {
  std::vector<double> x;
  std::vector<double> w;
};

PanelNodes composite_nodes(double lo, double hi, std::size_t panels) {
  const Rule& rule = gauss_legendre(kPanelOrder);
  PanelNodes out;
  out.x.reserve(panels * kPanelOrder);
  out.w.reserve(panels * kPanelOrder);
  const double h = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = lo + (static_cast<double>(p) + 0.5) * h;
    for (unsigned k = 0; k < kPanelOrder; ++k) {
      out.x.push_back(mid + 0.5 * h * rule.nodes[k]);
      out.w.push_back(0.5 * h * rule.weights[k]);
    }
  }
  return out;
}

}  // namespace

const Rule& gauss_legendre(unsigned order) {
  static std::mutex mutex;
  static std::map<unsigned, Rule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

double default_tolerance() {
  if (const char* env = std::getenv("HCONV_QUAD_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
  }
  return 1e-10;
}

double gaussian_tail_radius(double rate, unsigned poly_degree, double eps) {
  return std::sqrt((poly_degree + 2.0 * std::log(1.0 / eps)) / rate);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 32) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

QuadResult integrate_1d(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol, unsigned max_level) {
  auto level_sum = [&](std::size_t panels, double& abs_sum) {
    const PanelNodes nodes = composite_nodes(lo, hi, panels);
    std::vector<double> vals(nodes.x.size());
    std::vector<double> abs_vals(nodes.x.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      vals[i] = nodes.w[i] * f(nodes.x[i]);
      abs_vals[i] = std::abs(vals[i]);
    }
    abs_sum = pairwise_sum(abs_vals);
    return pairwise_sum(vals);
  };

  QuadResult result;
  double abs_prev = 0.0;
  double prev = level_sum(2, abs_prev);
  for (unsigned level = 2; level <= max_level; ++level) {
    double abs_cur = 0.0;
    const double cur = level_sum(std::size_t{1} << level, abs_cur);
    result.value = cur;
    result.error = std::abs(cur - prev);
    result.magnitude = abs_cur;
    if (result.error <= rel_tol * abs_cur) {
      result.converged = true;
      return result;
    }
    prev = cur;
  }
  return result;
}

QuadResult integrate_box(const std::function<double(std::span<const double>)>& f,
                         std::span<const double> lo, std::span<const double> hi, double rel_tol,
                         std::size_t max_points) {
  const std::size_t n = lo.size();
  if (hi.size() != n) throw DimensionMismatch(n, hi.size());

  auto points_at = [n](std::size_t panels) {
    double total = 1.0;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(panels * kPanelOrder);
    return total;
  };

  auto level_sum = [&](std::size_t panels, double& abs_sum) {
    std::vector<PanelNodes> axes;
    axes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) axes.push_back(composite_nodes(lo[i], hi[i], panels));
    const std::size_t per_axis = panels * kPanelOrder;
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> y(n);
    std::vector<double> vals;
    std::vector<double> abs_vals;
    vals.reserve(static_cast<std::size_t>(points_at(panels)));
    abs_vals.reserve(vals.capacity());
    while (true) {
      double w = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = axes[i].x[idx[i]];
        w *= axes[i].w[idx[i]];
      }
      const double v = w * f(y);
      vals.push_back(v);
      abs_vals.push_back(std::abs(v));
      std::size_t i = 0;
      while (i < n && ++idx[i] == per_axis) idx[i++] = 0;
      if (i == n) break;
    }
    abs_sum = pairwise_sum(abs_vals);
    return pairwise_sum(vals);
  };

  QuadResult result;
  std::size_t panels = 1;
  double abs_prev = 0.0;
  double prev = level_sum(panels, abs_prev);
  result.value = prev;
  result.error = std::abs(prev);
  result.magnitude = abs_prev;
  while (points_at(panels * 2) <= static_cast<double>(max_points)) {
    panels *= 2;
    double abs_cur = 0.0;
    const double cur = level_sum(panels, abs_cur);
    result.value = cur;
    result.error = std::abs(cur - prev);
    result.magnitude = abs_cur;
    if (result.error <= rel_tol * abs_cur) {
      result.converged = true;
      return result;
    }
    prev = cur;
  }
  return result;
}

QuadResult integrate_separable(
    std::span<const SeparableTerm> terms,
    const std::vector<std::vector<std::function<double(double)>>>& axis_factors,
    std::span<const double> lo, std::span<const double> hi, double rel_tol) {
  const std::size_t n = axis_factors.size();
  if (lo.size() != n) throw DimensionMismatch(n, lo.size());
  if (hi.size() != n) throw DimensionMismatch(n, hi.size());

  std::vector<std::vector<QuadResult>> one_d(n);
  std::vector<std::vector<bool>> done(n);
  for (std::size_t i = 0; i < n; ++i) {
    one_d[i].resize(axis_factors[i].size());
    done[i].assign(axis_factors[i].size(), false);
  }

  QuadResult total;
  total.converged = true;
  std::vector<double> contributions;
  contributions.reserve(terms.size());
  double error = 0.0;
  for (const auto& term : terms) {
    if (term.factor.size() != n) throw DimensionMismatch(n, term.factor.size());
    double prod = term.coefficient;
    double prod_bound = std::abs(term.coefficient);
    double prod_abs = std::abs(term.coefficient);
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned id = term.factor[i];
      if (!done[i][id]) {
        one_d[i][id] = integrate_1d(axis_factors[i][id], lo[i], hi[i], rel_tol);
        done[i][id] = true;
      }
      const QuadResult& r = one_d[i][id];
      total.converged = total.converged && r.converged;
      prod *= r.value;
      prod_bound *= std::abs(r.value) + r.error;
      prod_abs *= r.magnitude;
    }
    contributions.push_back(prod);
    error += prod_bound - std::abs(prod);
    total.magnitude += prod_abs;
  }
  total.value = pairwise_sum(contributions);
  total.error = error;
  return total;
}

}  // namespace hconv::quad
