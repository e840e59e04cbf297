#include "entrokit/entropy.hpp"

#include <cmath>
#include <numeric>

#include "entrokit/errors.hpp"

namespace entrokit {

namespace detail {

double entropy_summand(double p, double k) noexcept {
  if (p == 0.0) return 0.0;
  return p * std::expm1(2.0 * k * std::log(p)) / (2.0 * k);
}

}  // namespace detail

namespace {

double entropy_of(std::span<const double> p, double k) {
  double s = 0.0;
  for (double x : p) s -= detail::entropy_summand(x, k);
  return s;
}

// Rows index the conditioning variable.
double conditional_rows_entropy(const JointDistribution2& j, double k) {
  double s = 0.0;
  for (std::size_t x = 0; x < j.rows(); ++x) {
    const auto row = j.row(x);
    const double px = std::accumulate(row.begin(), row.end(), 0.0);
    if (!(px > 0.0)) continue;
    double inner = 0.0;
    for (double v : row) inner -= detail::entropy_summand(v / px, k);
    s += std::pow(px, 2.0 * k + 1.0) * inner;
  }
  return s;
}

}  // namespace

EntropyValue entropy(const Distribution& p, const DeformParams& params) {
  return {entropy_of(p.probs(), params.k()), params};
}

double entropy_literal(const Distribution& p, const DeformParams& params) {
  const double k = params.k();
  const double r = params.r();
  double s = 0.0;
  for (double x : p.probs()) {
    if (x == 0.0) continue;
    s -= std::pow(x, r + k + 1.0) * ln_kr(x, params);
  }
  return s;
}

EntropyValue joint_entropy(const JointDistribution2& j, const DeformParams& params) {
  return {entropy_of(j.flat(), params.k()), params};
}

EntropyValue joint_entropy(const JointDistribution3& j, const DeformParams& params) {
  return {entropy_of(j.flat(), params.k()), params};
}

EntropyValue conditional_entropy(const JointDistribution2& j, const DeformParams& params,
                                 Conditioning direction) {
  const double k = params.k();
  if (direction == Conditioning::y_given_x) return {conditional_rows_entropy(j, k), params};
  return {conditional_rows_entropy(transpose(j), k), params};
}

EntropyValue conditional_entropy3(const JointDistribution3& j, const DeformParams& params,
                                  Conditioning3 mode) {
  const double k = params.k();
  switch (mode) {
    case Conditioning3::xy_given_z:
      return {conditional_rows_entropy(group_z_vs_xy(j), k), params};
    case Conditioning3::y_given_xz:
      return {conditional_rows_entropy(group_xz_vs_y(j), k), params};
    case Conditioning3::x_given_z:
      return {conditional_rows_entropy(transpose(marginal_xz(j)), k), params};
    case Conditioning3::y_given_z:
      return {conditional_rows_entropy(transpose(marginal_yz(j)), k), params};
  }
  throw ParamError("unknown conditioning mode");
}

double mutual_entropy(const JointDistribution2& j, const DeformParams& params) {
  const auto [px, py] = marginals(j);
  return entropy(px, params).value + entropy(py, params).value - joint_entropy(j, params).value;
}

double reference_entropy(const Distribution& p, const EntropyFamily& family) {
  if (const auto* ts = std::get_if<TsallisEntropy>(&family)) {
    const double q = ts->q;
    if (q == 1.0 || !std::isfinite(q)) throw ParamError("Tsallis entropy needs finite q != 1");
    double s = 0.0;
    for (double x : p.probs()) {
      if (x > 0.0) s -= std::pow(x, q) * ln_q(x, q);
    }
    return s;
  }
  double s = 0.0;
  for (double x : p.probs()) {
    if (x > 0.0) s -= x * std::log(x);
  }
  return s;
}

}  // namespace entrokit
