#pragma once

#include <string>

namespace entrokit {

/// How strictly a (k, r) pair is validated.
///
/// `strict` is the natural domain of the deformed logarithm: 0 < k <= 1/2 and
/// r > 0. `relaxed` only requires finite values and k != 0; it exists for the
/// legacy definitions and for the Tsallis reductions that leave the strict
/// domain.
enum class ParamMode { strict, relaxed };

/// The deformation pair (k, r). Instances are always valid for their mode.
class DeformParams {
 public:
  /// Throws ParamError unless 0 < k <= 1/2 and r > 0.
  static DeformParams strict(double k, double r);
  /// Throws ParamError unless k != 0 and both values are finite.
  static DeformParams relaxed(double k, double r);
  static DeformParams make(double k, double r, ParamMode mode);

  double k() const noexcept { return k_; }
  double r() const noexcept { return r_; }
  ParamMode mode() const noexcept { return mode_; }

  bool in_strict_domain() const noexcept;
  /// k == 1/2, where the divergence collapses on the common support.
  bool at_boundary() const noexcept { return k_ == 0.5; }
  /// Membership in the region R of the original two-parameter logarithm.
  bool in_legacy_region() const noexcept;

  std::string describe() const;

  friend bool operator==(const DeformParams&, const DeformParams&) = default;

 private:
  DeformParams(double k, double r, ParamMode mode) : k_(k), r_(r), mode_(mode) {}

  double k_;
  double r_;
  ParamMode mode_;
};

/// (x^k - x^-k) / (2k x^r), evaluated as expm1(2k log x) / (2k x^(r+k)).
/// Throws DomainError for x <= 0.
double ln_kr(double x, const DeformParams& params);

/// a * ln_{ak,ar}(x), the right-hand side of the power rule
/// ln_kr(x^a) = a ln_{ak,ar}(x). The scaled pair is validated in the mode of
/// `params`; a == 0 is a ParamError.
double ln_kr_scaled(double x, double a, const DeformParams& params);

/// Tsallis q-logarithm (x^(1-q) - 1) / (1 - q). ParamError for q == 1.
double ln_q(double x, double q);

/// Original two-parameter logarithm x^r (x^k - x^-k) / (2k). Note the sign
/// of r: legacy_ln(x, k, r) == ln_kr(x, k, -r). Parameters outside the region
/// R are accepted; check `in_legacy_region()` to detect them.
double legacy_ln(double x, const DeformParams& params);

/// Companion x^r (x^k + x^-k) / 2 of the legacy product rule.
double legacy_u(double x, const DeformParams& params);

namespace detail {

// Unvalidated kernels shared by the modules; x > 0 and k != 0 assumed.
double ln_kr_raw(double x, double k, double r) noexcept;

// (x^(2k) - 1) / (2k), accurate near x = 1 and for small |k|.
double pow_ratio_minus_one(double x, double k) noexcept;

}  // namespace detail

}  // namespace entrokit
