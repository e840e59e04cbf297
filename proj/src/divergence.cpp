#include "entrokit/divergence.hpp"

#include <cmath>
#include <string>

#include "entrokit/errors.hpp"

namespace entrokit {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionError("divergence: sizes differ (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

void require_continuity(double p, double q, std::size_t i) {
  if (p > 0.0 && !(q > 0.0)) {
    throw AbsoluteContinuityError("divergence: p[" + std::to_string(i) +
                                  "] > 0 but q is zero there");
  }
}

// p (1 - (q/p)^(2k)) / (2k) for p, q > 0.
double closed_term(double p, double q, double k) noexcept {
  return -p * std::expm1(2.0 * k * std::log(q / p)) / (2.0 * k);
}

}  // namespace

DivergenceValue divergence(const Distribution& p, const Distribution& q,
                           const DeformParams& params) {
  require_same_size(p.size(), q.size());
  const double k = params.k();
  double d = 0.0;
  bool full = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    require_continuity(p[i], q[i], i);
    if (p[i] == 0.0) {
      full = false;
      continue;
    }
    d += closed_term(p[i], q[i], k);
  }
  return {d, params, full ? SupportFlag::full : SupportFlag::extended, params.at_boundary()};
}

double divergence_literal(const Distribution& p, const Distribution& q,
                          const DeformParams& params) {
  require_same_size(p.size(), q.size());
  const double k = params.k();
  const double r = params.r();
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    require_continuity(p[i], q[i], i);
    if (p[i] == 0.0) continue;
    const double ratio = p[i] / q[i];
    d += p[i] * std::pow(ratio, r - k) * detail::ln_kr_raw(ratio, k, r);
  }
  return d;
}

double divergence_literal_inverted(const Distribution& p, const Distribution& q,
                                   const DeformParams& params) {
  require_same_size(p.size(), q.size());
  const double k = params.k();
  const double r = params.r();
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    require_continuity(p[i], q[i], i);
    if (p[i] == 0.0) continue;
    const double ratio = q[i] / p[i];
    d -= p[i] * std::pow(ratio, r + k) * detail::ln_kr_raw(ratio, k, r);
  }
  return d;
}

double divergence_sum(std::span<const double> a, std::span<const double> b,
                      const DeformParams& params) {
  require_same_size(a.size(), b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0)) {
      throw DomainError("divergence_sum: entries must be positive");
    }
    d += closed_term(a[i], b[i], params.k());
  }
  return d;
}

double reference_divergence(const Distribution& p, const Distribution& q,
                            const DivergenceFamily& family) {
  require_same_size(p.size(), q.size());
  const auto* ts = std::get_if<TsallisDivergence>(&family);
  if (ts && (ts->q == 1.0 || !std::isfinite(ts->q))) {
    throw ParamError("Tsallis divergence needs finite q != 1");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    require_continuity(p[i], q[i], i);
    if (p[i] == 0.0) continue;
    if (ts) {
      d -= p[i] * ln_q(q[i] / p[i], ts->q);
    } else {
      d += p[i] * std::log(p[i] / q[i]);
    }
  }
  return d;
}

DivergenceValue mutual_divergence(const JointDistribution2& j, const DeformParams& params) {
  const auto [px, py] = marginals(j);
  return divergence(flatten(j), flatten(product(px, py)), params);
}

LogSumSides log_sum_gap(std::span<const double> a, std::span<const double> b,
                        const DeformParams& params) {
  require_same_size(a.size(), b.size());
  if (a.empty()) throw DimensionError("log_sum_gap: empty input");
  const double k = params.k();
  const double r = params.r();
  auto term = [&](double num, double den) {
    const double ratio = num / den;
    return num * std::pow(ratio, r - k) * detail::ln_kr_raw(ratio, k, r);
  };
  double lhs = 0.0;
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0) || !std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw DomainError("log_sum_gap: entries must be finite and positive");
    }
    lhs += term(a[i], b[i]);
    sa += a[i];
    sb += b[i];
  }
  return {lhs, term(sa, sb)};
}

}  // namespace entrokit
