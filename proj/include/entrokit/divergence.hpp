#pragma once

#include <span>
#include <variant>

#include "entrokit/deformed_log.hpp"
#include "entrokit/distributions.hpp"

namespace entrokit {

/// `full` when every p_i and q_i is positive; `extended` when some outcome
/// has p_i = 0 and was dropped by the zero-extension convention.
enum class SupportFlag { full, extended };

struct DivergenceValue {
  double value;
  DeformParams params;
  SupportFlag support;
  /// True at k = 1/2, where the value is 1 - sum_{p_i > 0} q_i and therefore
  /// vanishes whenever the supports coincide.
  bool boundary_degenerate;
};

/// Generalized Tsallis relative entropy
///   D_{k,r}(P||Q) = sum_x p (p/q)^(r-k) ln_kr(p/q)
/// evaluated through the per-term closed form (p - p^(1-2k) q^(2k)) / (2k).
/// Outcomes with p_i = 0 contribute 0. Throws AbsoluteContinuityError when
/// p_i > 0 = q_i and DimensionError on a size mismatch.
DivergenceValue divergence(const Distribution& p, const Distribution& q,
                           const DeformParams& params);

/// The (p/q)^(r-k) ln_kr(p/q) form, evaluated literally.
double divergence_literal(const Distribution& p, const Distribution& q,
                          const DeformParams& params);
/// The -(q/p)^(r+k) ln_kr(q/p) form, evaluated literally.
double divergence_literal_inverted(const Distribution& p, const Distribution& q,
                                   const DeformParams& params);

/// Closed-form sum over unnormalized positive vectors. Used by the
/// finite-difference metric, which perturbs coordinates off the simplex.
double divergence_sum(std::span<const double> a, std::span<const double> b,
                      const DeformParams& params);

struct TsallisDivergence {
  double q;
};
struct KullbackLeibler {};
using DivergenceFamily = std::variant<TsallisDivergence, KullbackLeibler>;

/// Tsallis D_q = -sum p ln_q(q/p), or KL sum p ln(p/q).
double reference_divergence(const Distribution& p, const Distribution& q,
                            const DivergenceFamily& family);

/// D_{k,r}(p(x, y) || p(x) p(y)).
DivergenceValue mutual_divergence(const JointDistribution2& j, const DeformParams& params);

struct LogSumSides {
  double lhs;
  double rhs;
  double gap() const noexcept { return lhs - rhs; }
};

/// Both sides of the deformed log-sum inequality
///   sum a_i (a_i/b_i)^(r-k) ln_kr(a_i/b_i) >= a (a/b)^(r-k) ln_kr(a/b).
LogSumSides log_sum_gap(std::span<const double> a, std::span<const double> b,
                        const DeformParams& params);

}  // namespace entrokit
