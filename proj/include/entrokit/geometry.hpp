#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "entrokit/deformed_log.hpp"
#include "entrokit/distributions.hpp"

namespace entrokit {

/// Which coefficient the diagonal metric g_ii = A / p_i uses.
///
/// `derived` is A = 1 - 2k, the second derivative of `divergence` in its
/// first argument at Q = P. `r_shifted` is A = 1 - 2k + 4r, the form usually
/// quoted for this divergence. The two disagree whenever r != 0.
enum class MetricConvention { derived, r_shifted };

struct MetricDiagonal {
  std::vector<double> g;
  DeformParams params;
  MetricConvention convention;
};

/// Dense row-major square matrix.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
};

/// u log u coefficient A and integration constants c1, c2 of the potential
/// Psi(u) = c2 + u (c1 - A) + A u log u, whose second derivative is A / u.
struct PotentialCoefficients {
  double a;
  double c1 = 0.0;
  double c2 = 0.0;
};

inline constexpr double kDefaultFdStep = 1e-4;

/// The coefficient A for `convention`.
double metric_coefficient(const DeformParams& params, MetricConvention convention) noexcept;

/// Diagonal of the divergence-induced metric at `p`. DomainError unless p
/// has full support.
MetricDiagonal fisher_metric(const Distribution& p, const DeformParams& params,
                             MetricConvention convention = MetricConvention::derived);

/// Central finite-difference Hessian of a -> D(a || p) at a = p. Coordinates
/// are perturbed independently (no projection onto the simplex). DomainError
/// if p_i +/- step leaves (0, 1).
SquareMatrix fd_hessian(const Distribution& p, const DeformParams& params,
                        double step = kDefaultFdStep);

/// sum_i g_ii dp_i^2 with the derived metric. `dp` must sum to 0 within 1e-12
/// and p + dp must be a distribution.
double quadratic_form(const Distribution& p, std::span<const double> dp,
                      const DeformParams& params);

/// 2 D(p + dp || p) / quadratic_form(p, dp). Tends to 1 as |dp| -> 0.
double taylor_ratio(const Distribution& p, std::span<const double> dp,
                    const DeformParams& params);

/// Psi(u). DomainError for u <= 0.
double hessian_potential(double u, const PotentialCoefficients& coeffs);

}  // namespace entrokit
