#include "entrokit/geometry.hpp"

#include <cmath>

#include "entrokit/divergence.hpp"
#include "entrokit/errors.hpp"

namespace entrokit {

namespace {

void require_full_support(const Distribution& p) {
  if (!p.full_support()) throw DomainError("metric requires every p_i > 0");
}

Distribution shifted(const Distribution& p, std::span<const double> dp) {
  if (dp.size() != p.size()) throw DimensionError("dp and p differ in size");
  double total = 0.0;
  for (double v : dp) total += v;
  if (std::fabs(total) > 1e-12) throw DomainError("dp must sum to zero");
  std::vector<double> v(p.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = p[i] + dp[i];
  try {
    return Distribution::make(std::move(v));
  } catch (const ValidationError& e) {
    throw DomainError(std::string("p + dp is not a distribution: ") + e.what());
  }
}

}  // namespace

double metric_coefficient(const DeformParams& params, MetricConvention convention) noexcept {
  const double a = 1.0 - 2.0 * params.k();
  return convention == MetricConvention::derived ? a : a + 4.0 * params.r();
}

MetricDiagonal fisher_metric(const Distribution& p, const DeformParams& params,
                             MetricConvention convention) {
  require_full_support(p);
  const double a = metric_coefficient(params, convention);
  std::vector<double> g(p.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = a / p[i];
  return {std::move(g), params, convention};
}

SquareMatrix fd_hessian(const Distribution& p, const DeformParams& params, double step) {
  require_full_support(p);
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
  for (double x : p.probs()) {
    if (!(x - step > 0.0) || !(x + step < 1.0)) {
      throw DomainError("finite-difference stencil leaves (0, 1)");
    }
  }
  const std::size_t n = p.size();
  const auto base = p.probs();
  std::vector<double> a(base.begin(), base.end());
  auto f = [&] { return divergence_sum(a, base, params); };

  SquareMatrix h{n, std::vector<double>(n * n, 0.0)};
  const double f0 = f();
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = base[i] + step;
    const double fp = f();
    a[i] = base[i] - step;
    const double fm = f();
    a[i] = base[i];
    h(i, i) = (fp - 2.0 * f0 + fm) / (step * step);

    for (std::size_t j = i + 1; j < n; ++j) {
      double corners[4];
      int c = 0;
      for (double si : {1.0, -1.0}) {
        for (double sj : {1.0, -1.0}) {
          a[i] = base[i] + si * step;
          a[j] = base[j] + sj * step;
          corners[c++] = f();
        }
      }
      a[i] = base[i];
      a[j] = base[j];
      const double mixed =
          (corners[0] - corners[1] - corners[2] + corners[3]) / (4.0 * step * step);
      h(i, j) = mixed;
      h(j, i) = mixed;
    }
  }
  return h;
}

double quadratic_form(const Distribution& p, std::span<const double> dp,
                      const DeformParams& params) {
  require_full_support(p);
  shifted(p, dp);
  const auto g = fisher_metric(p, params, MetricConvention::derived).g;
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * dp[i] * dp[i];
  return s;
}

double taylor_ratio(const Distribution& p, std::span<const double> dp,
                    const DeformParams& params) {
  const double qf = quadratic_form(p, dp, params);
  if (!(qf > 0.0)) throw DomainError("taylor_ratio: dp must be non-zero");
  const auto moved = shifted(p, dp);
  return 2.0 * divergence(moved, p, params).value / qf;
}

double hessian_potential(double u, const PotentialCoefficients& coeffs) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("potential needs u > 0");
  return coeffs.c2 + u * (coeffs.c1 - coeffs.a) + coeffs.a * u * std::log(u);
}

}  // namespace entrokit
