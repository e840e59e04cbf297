#pragma once

#include <variant>

#include "entrokit/deformed_log.hpp"
#include "entrokit/distributions.hpp"

namespace entrokit {

/// A generalized Tsallis entropy together with the parameters it was
/// computed for. The value is never negative.
struct EntropyValue {
  double value;
  DeformParams params;
};

/// S_{k,r}(X) = -sum_x p(x)^(r+k+1) ln_kr(p(x)), zero-probability outcomes
/// skipped. Each summand is evaluated in the equivalent closed form
/// p (p^(2k) - 1) / (2k), which is why the result does not depend on r.
EntropyValue entropy(const Distribution& p, const DeformParams& params);

/// Same quantity computed term by term exactly as written, with pow() and
/// ln_kr(). Kept as an independent cross-check of `entropy`.
double entropy_literal(const Distribution& p, const DeformParams& params);

/// Entropy of the flattened joint law.
EntropyValue joint_entropy(const JointDistribution2& j, const DeformParams& params);
EntropyValue joint_entropy(const JointDistribution3& j, const DeformParams& params);

enum class Conditioning { y_given_x, x_given_y };

/// -sum_x p(x)^(2k+1) sum_y p(y|x)^(k+r+1) ln_kr(p(y|x)); slices with
/// p(x) = 0 contribute nothing. `x_given_y` is the transposed analogue.
EntropyValue conditional_entropy(const JointDistribution2& j, const DeformParams& params,
                                 Conditioning direction = Conditioning::y_given_x);

enum class Conditioning3 { xy_given_z, y_given_xz, x_given_z, y_given_z };

/// Three-variable conditionals, each weighted by the conditioning marginal
/// raised to 2k + 1.
EntropyValue conditional_entropy3(const JointDistribution3& j, const DeformParams& params,
                                  Conditioning3 mode);

/// S(X) + S(Y) - S(X, Y).
double mutual_entropy(const JointDistribution2& j, const DeformParams& params);

struct TsallisEntropy {
  double q;
};
struct ShannonEntropy {};
using EntropyFamily = std::variant<TsallisEntropy, ShannonEntropy>;

/// Tsallis S_q = -sum p^q ln_q(p), or Shannon -sum p ln p (nats).
double reference_entropy(const Distribution& p, const EntropyFamily& family);

namespace detail {
// p^(r+k+1) ln_kr(p) in closed form; 0 for p == 0.
double entropy_summand(double p, double k) noexcept;
}  // namespace detail

}  // namespace entrokit
