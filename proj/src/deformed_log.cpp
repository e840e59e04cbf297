#include "entrokit/deformed_log.hpp"

#include <cmath>
#include <cstdio>

#include "entrokit/errors.hpp"

namespace entrokit {

namespace {

std::string fmt_pair(double k, double r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "k=%.17g r=%.17g", k, r);
  return buf;
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be a finite positive real");
  }
}

}  // namespace

DeformParams DeformParams::strict(double k, double r) {
  if (!std::isfinite(k) || !std::isfinite(r) || !(k > 0.0 && k <= 0.5) || !(r > 0.0)) {
    throw ParamError("deformation parameters outside 0 < k <= 1/2, r > 0: " + fmt_pair(k, r));
  }
  return DeformParams(k, r, ParamMode::strict);
}

DeformParams DeformParams::relaxed(double k, double r) {
  if (!std::isfinite(k) || !std::isfinite(r) || k == 0.0) {
    throw ParamError("deformation parameters need finite values and k != 0: " + fmt_pair(k, r));
  }
  return DeformParams(k, r, ParamMode::relaxed);
}

DeformParams DeformParams::make(double k, double r, ParamMode mode) {
  return mode == ParamMode::strict ? strict(k, r) : relaxed(k, r);
}

bool DeformParams::in_strict_domain() const noexcept {
  return k_ > 0.0 && k_ <= 0.5 && r_ > 0.0;
}

bool DeformParams::in_legacy_region() const noexcept {
  const double ak = std::fabs(k_);
  if (ak < 0.5) return -ak <= r_ && r_ <= ak;
  if (ak < 1.0) return ak - 1.0 <= r_ && r_ <= 1.0 - ak;
  return false;
}

std::string DeformParams::describe() const {
  return fmt_pair(k_, r_) + (mode_ == ParamMode::strict ? " (strict)" : " (relaxed)");
}

namespace detail {

double pow_ratio_minus_one(double x, double k) noexcept {
  return std::expm1(2.0 * k * std::log(x)) / (2.0 * k);
}

double ln_kr_raw(double x, double k, double r) noexcept {
  const double lx = std::log(x);
  return std::expm1(2.0 * k * lx) / (2.0 * k) * std::exp(-(r + k) * lx);
}

}  // namespace detail

double ln_kr(double x, const DeformParams& params) {
  require_positive(x, "ln_kr");
  return detail::ln_kr_raw(x, params.k(), params.r());
}

double ln_kr_scaled(double x, double a, const DeformParams& params) {
  if (a == 0.0 || !std::isfinite(a)) {
    throw ParamError("power rule needs a finite non-zero exponent");
  }
  require_positive(x, "ln_kr_scaled");
  const auto scaled = DeformParams::make(a * params.k(), a * params.r(), params.mode());
  return a * detail::ln_kr_raw(x, scaled.k(), scaled.r());
}

double ln_q(double x, double q) {
  if (q == 1.0 || !std::isfinite(q)) throw ParamError("ln_q needs finite q != 1");
  require_positive(x, "ln_q");
  const double e = 1.0 - q;
  return std::expm1(e * std::log(x)) / e;
}

double legacy_ln(double x, const DeformParams& params) {
  require_positive(x, "legacy_ln");
  return detail::ln_kr_raw(x, params.k(), -params.r());
}

double legacy_u(double x, const DeformParams& params) {
  require_positive(x, "legacy_u");
  const double lx = std::log(x);
  return std::exp(params.r() * lx) * std::cosh(params.k() * lx);
}

}  // namespace entrokit
