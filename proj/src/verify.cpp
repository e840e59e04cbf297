#include "entrokit/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <thread>

#include <json.hpp>

#include "entrokit/deformed_log.hpp"
#include "entrokit/divergence.hpp"
#include "entrokit/entropy.hpp"
#include "entrokit/errors.hpp"
#include "entrokit/geometry.hpp"

namespace entrokit {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Two sides of a check. For identities `scale` is the magnitude the
/// difference is measured against.
struct Outcome {
  double lhs;
  double rhs;
  double scale = 1.0;
};

Outcome identity(double lhs, double rhs, std::initializer_list<double> terms = {}) {
  double scale = std::max(std::fabs(lhs), std::fabs(rhs));
  double sum = 0.0;
  for (double t : terms) sum += std::fabs(t);
  return {lhs, rhs, std::max(scale, sum)};
}

/// Random instance generator for one (property, trial) pair. Every draw is
/// recorded so that the digest describes the instance.
class Trial {
 public:
  Trial(const SweepConfig& config, std::size_t index, RngSeed child)
      : config_(config), index_(index), child_(child), rng_(child) {}

  Rng& rng() noexcept { return rng_; }
  std::size_t index() const noexcept { return index_; }
  bool first() const noexcept { return index_ == 0; }

  double note(const char* key, double v) {
    notes_ += ' ';
    notes_ += key;
    notes_ += '=';
    notes_ += fmt_real(v);
    return v;
  }
  std::size_t note(const char* key, std::size_t v) {
    notes_ += ' ';
    notes_ += key;
    notes_ += '=';
    notes_ += std::to_string(v);
    return v;
  }

  double k() { return note("k", rng_.uniform(config_.k_range.lo, config_.k_range.hi)); }
  /// k kept away from 1/2, where the divergence loses separation.
  double k_separated() {
    const double hi = std::min(config_.k_range.hi, 0.45);
    const double lo = std::min(config_.k_range.lo, hi);
    return note("k", rng_.uniform(lo, hi));
  }
  double r() { return note("r", rng_.uniform(config_.r_range.lo, config_.r_range.hi)); }
  DeformParams params() {
    const double kk = k();
    return DeformParams::strict(kk, r());
  }
  DeformParams params_separated() {
    const double kk = k_separated();
    return DeformParams::strict(kk, r());
  }

  std::size_t size(const char* key = "n") {
    return note(key, rng_.between(config_.sizes.lo, config_.sizes.hi));
  }
  /// Size in [max(2, lo), max(2, min(hi, cap))].
  std::size_t size_at_least_two(std::size_t cap, const char* key = "n") {
    const std::size_t lo = std::max<std::size_t>(2, config_.sizes.lo);
    const std::size_t hi = std::max(lo, std::min(config_.sizes.hi, cap));
    return note(key, rng_.between(lo, hi));
  }

  double scalar() { return rng_.log_uniform(1e-2, 1e2); }

  /// Flat Dirichlet weights; one trial in four zeroes a random subset of
  /// cells (never all) to exercise the zero-probability conventions.
  std::vector<double> simplex(std::size_t n, bool allow_sparse) {
    auto v = sample_distribution(n, rng_).vec();
    if (allow_sparse && n > 1 && rng_.uniform() < 0.25) {
      const std::size_t keep = rng_.index(n);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i != keep && rng_.uniform() < 0.4) v[i] = 0.0;
        total += v[i];
      }
      for (double& x : v) x /= total;
    }
    return v;
  }

  Distribution distribution(std::size_t n, bool allow_sparse = false) {
    return Distribution::make(simplex(n, allow_sparse), true);
  }
  JointDistribution2 joint2(std::size_t nx, std::size_t ny) {
    return JointDistribution2::make(nx, ny, simplex(nx * ny, true), true);
  }
  JointDistribution3 joint3(std::size_t nx, std::size_t ny, std::size_t nz) {
    return JointDistribution3::make(nx, ny, nz, simplex(nx * ny * nz, true), true);
  }

  /// Interior point with every coordinate at least 1 / (2n).
  Distribution interior(std::size_t n) {
    const auto d = sample_distribution(n, rng_);
    return mix(Distribution::uniform(n), d, 0.5);
  }

  std::string digest() const {
    char head[96];
    std::snprintf(head, sizeof head, "master=%llu child=0x%016llx trial=%zu",
                  static_cast<unsigned long long>(config_.seed.value),
                  static_cast<unsigned long long>(child_.value), index_);
    return head + notes_;
  }

 private:
  const SweepConfig& config_;
  std::size_t index_;
  RngSeed child_;
  Rng rng_;
  std::string notes_;
};

using Evaluator = std::function<Outcome(Trial&)>;

struct Property {
  PropertyInfo info;
  Evaluator eval;
};

double S(const Distribution& p, const DeformParams& prm) { return entropy(p, prm).value; }
double S(const JointDistribution2& j, const DeformParams& prm) {
  return joint_entropy(j, prm).value;
}
double S(const JointDistribution3& j, const DeformParams& prm) {
  return joint_entropy(j, prm).value;
}
double D(const Distribution& p, const Distribution& q, const DeformParams& prm) {
  return divergence(p, q, prm).value;
}

constexpr std::array<double, 4> kRGrid{0.1, 0.5, 1.0, 2.0};

// Second differences f(x_{i-1}) - 2 f(x_i) + f(x_{i+1}) on a uniform grid.
template <class F>
double min_second_difference(F f, double start, double step, std::size_t count) {
  double worst = std::numeric_limits<double>::infinity();
  double a = f(start);
  double b = f(start + step);
  for (std::size_t i = 2; i < count; ++i) {
    const double c = f(start + static_cast<double>(i) * step);
    worst = std::min(worst, a - 2.0 * b + c);
    a = b;
    b = c;
  }
  return worst;
}

// --- deformed logarithm ------------------------------------------------------

std::vector<Property> deformed_log_properties() {
  using K = PropertyKind;
  std::vector<Property> props;

  props.push_back({{"product_rule_1", "(xy)^(r+k) ln(xy) = x^(r+k) ln x + y^(r+k) ln y + 2k (xy)^(r+k) ln x ln y", K::identity}, [](Trial& t) {
                     const auto prm = t.params();
                     const double x = t.note("x", t.scalar());
                     const double y = t.note("y", t.scalar());
                     const double e = prm.r() + prm.k();
                     const double lhs = std::pow(x * y, e) * ln_kr(x * y, prm);
                     const double t1 = std::pow(x, e) * ln_kr(x, prm);
                     const double t2 = std::pow(y, e) * ln_kr(y, prm);
                     const double t3 = 2.0 * prm.k() * std::pow(x, e) * std::pow(y, e) *
                                       ln_kr(x, prm) * ln_kr(y, prm);
                     return identity(lhs, t1 + t2 + t3, {t1, t2, t3});
                   }});

  props.push_back({{"product_rule_2", "ln(xy) = x^(k-r) ln y + y^(-r-k) ln x", K::identity}, [](Trial& t) {
                     const auto prm = t.params();
                     const double x = t.note("x", t.scalar());
                     const double y = t.note("y", t.scalar());
                     const double t1 = std::pow(x, -(prm.r() - prm.k())) * ln_kr(y, prm);
                     const double t2 = std::pow(y, -(prm.r() + prm.k())) * ln_kr(x, prm);
                     return identity(ln_kr(x * y, prm), t1 + t2, {t1, t2});
                   }});

  props.push_back({{"inversion", "ln(1/x) = -x^(2r) ln x", K::identity}, [](Trial& t) {
                     const auto prm = t.params();
                     const double x = t.note("x", t.scalar());
                     return identity(ln_kr(1.0 / x, prm),
                                     -std::pow(x, 2.0 * prm.r()) * ln_kr(x, prm));
                   }});

  props.push_back({{"quotient", "ln(x/y) = -y^(2r) x^(k-r) ln y + y^(r+k) ln x", K::identity}, [](Trial& t) {
                     const auto prm = t.params();
                     const double x = t.note("x", t.scalar());
                     const double y = t.note("y", t.scalar());
                     const double t1 = -std::pow(y, 2.0 * prm.r()) /
                                       std::pow(x, prm.r() - prm.k()) * ln_kr(y, prm);
                     const double t2 = std::pow(y, prm.r() + prm.k()) * ln_kr(x, prm);
                     return identity(ln_kr(x / y, prm), t1 + t2, {t1, t2});
                   }});

  props.push_back({{"power_rule", "ln_{k,r}(x^a) = a ln_{ak,ar}(x)", K::identity}, [](Trial& t) {
                     const auto prm = t.params();
                     const double x = t.note("x", t.scalar());
                     const double a = t.note("a", t.rng().log_uniform(0.05, 0.5 / prm.k()));
                     return identity(ln_kr(std::pow(x, a), prm), ln_kr_scaled(x, a, prm));
                   }});

  props.push_back(
      {{"convexity_witnesses", "-x^(r+k) ln x on (0,1] and x^(r-k+1) ln x on (0,4] are convex", K::inequality},
       [](Trial& t) {
         const auto prm = t.params();
         const double e = prm.r() + prm.k();
         // -x^(r+k) ln_kr(x) on (0, 1]
         const double w1 = min_second_difference(
             [&](double x) { return -std::pow(x, e) * ln_kr(x, prm); }, 0.005, 0.005, 200);
         // x^(r-k+1) ln_kr(x) on (0, 4]
         const double w2 = min_second_difference(
             [&](double x) { return std::pow(x, prm.r() - prm.k() + 1.0) * ln_kr(x, prm); }, 0.01,
             0.01, 400);
         return Outcome{std::min(w1, w2), 0.0};
       }});

  props.push_back(
      {{"legacy_monotone_convex", "-Ln is positive, decreasing and convex on (0,1] for r < 0", K::inequality}, [](Trial& t) {
         const double k = t.note("k", t.rng().uniform(1e-3, 1.0));
         const double r = t.note("r", -t.rng().uniform(1e-3, 1.0));
         const auto prm = DeformParams::relaxed(k, r);
         constexpr std::size_t kGrid = 1000;
         const double h = 1.0 / kGrid;
         auto f = [&](double x) { return -legacy_ln(x, prm); };
         double worst_value = std::numeric_limits<double>::infinity();
         double worst_decrease = std::numeric_limits<double>::infinity();
         for (std::size_t i = 1; i <= kGrid; ++i) {
           const double x = static_cast<double>(i) * h;
           const double fx = f(x);
           worst_value = std::min(worst_value, fx);
           if (i < kGrid) worst_decrease = std::min(worst_decrease, fx - f(x + h));
         }
         const double convex = min_second_difference(f, h, h, kGrid);
         return Outcome{std::min({worst_value, worst_decrease, convex}), 0.0};
       }});

  props.push_back({{"legacy_product_rule", "Ln(xy) = u(x) Ln(y) + Ln(x) u(y)", K::identity}, [](Trial& t) {
                     const double k = t.note("k", t.rng().uniform(0.05, 0.95));
                     const double bound = k < 0.5 ? k : 1.0 - k;
                     const double r = t.note("r", t.rng().uniform(-bound, bound));
                     const auto prm = DeformParams::relaxed(k, r);
                     const double x = t.note("x", t.scalar());
                     const double y = t.note("y", t.scalar());
                     const double t1 = legacy_u(x, prm) * legacy_ln(y, prm);
                     const double t2 = legacy_ln(x, prm) * legacy_u(y, prm);
                     return identity(legacy_ln(x * y, prm), t1 + t2, {t1, t2});
                   }});

  props.push_back({{"log_sum_inequality", "sum a_i (a_i/b_i)^(r-k) ln(a_i/b_i) >= a (a/b)^(r-k) ln(a/b)", K::inequality}, [](Trial& t) {
                     const auto prm = t.params();
                     const std::size_t n = t.size();
                     const double sa = t.note("scale_a", t.rng().log_uniform(0.1, 10.0));
                     const double sb = t.note("scale_b", t.rng().log_uniform(0.1, 10.0));
                     std::vector<double> a(n);
                     std::vector<double> b(n);
                     for (std::size_t i = 0; i < n; ++i) {
                       a[i] = sa * (t.rng().exponential() + 1e-3);
                       b[i] = t.first() ? a[i] : sb * (t.rng().exponential() + 1e-3);
                     }
                     const auto sides = log_sum_gap(a, b, prm);
                     return Outcome{sides.lhs, sides.rhs};
                   }});
  return props;
}

// --- distributions -----------------------------------------------------------

std::vector<Property> distribution_properties() {
  using K = PropertyKind;
  std::vector<Property> props;

  props.push_back({{"marginals_of_product", "marginals of P x Q are P and Q", K::identity}, [](Trial& t) {
                     const auto p = t.distribution(t.size("nx"), true);
                     const auto q = t.distribution(t.size("ny"), true);
                     const auto [mx, my] = marginals(product(p, q));
                     double worst = 0.0;
                     for (std::size_t i = 0; i < p.size(); ++i)
                       worst = std::max(worst, std::fabs(mx[i] - p[i]));
                     for (std::size_t i = 0; i < q.size(); ++i)
                       worst = std::max(worst, std::fabs(my[i] - q[i]));
                     return identity(worst, 0.0);
                   }});

  props.push_back({{"channel_preserves_mass", "W P sums to 1", K::identity},
                   [](Trial& t) {
                     const std::size_t n = t.size("n");
                     const std::size_t m = t.size("m");
                     const auto w = sample_channel(m, n, t.rng());
                     const auto p = t.distribution(n, true);
                     const auto out = apply_channel(w, p);
                     double total = 0.0;
                     for (double v : out.probs()) total += v;
                     return identity(total, 1.0);
                   }});

  props.push_back(
      {{"conditional_consistency", "sum_x p(x|z) p(y|x,z) = p(y|z)", K::identity},
       [](Trial& t) {
         const auto j = t.joint3(t.size("nx"), t.size("ny"), t.size("nz"));
         const auto pz = marginal_z(j);
         const auto pxz = marginal_xz(j);
         const auto pyz = marginal_yz(j);
         double worst = 0.0;
         for (std::size_t z = 0; z < j.nz(); ++z) {
           if (!(pz[z] > 0.0)) continue;
           for (std::size_t y = 0; y < j.ny(); ++y) {
             double acc = 0.0;
             for (std::size_t x = 0; x < j.nx(); ++x) {
               if (!(pxz(x, z) > 0.0)) continue;
               acc += (pxz(x, z) / pz[z]) * (j(x, y, z) / pxz(x, z));
             }
             worst = std::max(worst, std::fabs(acc - pyz(y, z) / pz[z]));
           }
         }
         return identity(worst, 0.0);
       }});
  return props;
}

// --- entropy -----------------------------------------------------------------

std::vector<Property> entropy_properties() {
  using K = PropertyKind;
  std::vector<Property> props;

  auto two = [](Trial& t) { return t.joint2(t.size("nx"), t.size("ny")); };
  auto three = [](Trial& t) { return t.joint3(t.size("nx"), t.size("ny"), t.size("nz")); };
  // Trial 0 uses a constant X, the equality case of the conditional
  // inequalities.
  auto three_eq = [](Trial& t) {
    const std::size_t nx = t.first() ? t.note("nx", std::size_t{1}) : t.size("nx");
    return t.joint3(nx, t.size("ny"), t.size("nz"));
  };

  props.push_back({{"chain_rule", "S(X,Y) = S(X) + S(Y|X)", K::identity}, [two](Trial& t) {
                     const auto prm = t.params();
                     const auto j = two(t);
                     const double sx = S(marginals(j).first, prm);
                     const double syx = conditional_entropy(j, prm).value;
                     return identity(S(j, prm), sx + syx, {sx, syx});
                   }});

  props.push_back({{"chain_rule_three", "S(X,Y,Z) = S(X,Y|Z) + S(Z)", K::identity}, [three](Trial& t) {
                     const auto prm = t.params();
                     const auto j = three(t);
                     const double c = conditional_entropy3(j, prm, Conditioning3::xy_given_z).value;
                     const double sz = S(marginal_z(j), prm);
                     return identity(S(j, prm), c + sz, {c, sz});
                   }});

  props.push_back({{"chain_rule_conditional", "S(X,Y|Z) = S(X|Z) + S(Y|X,Z)", K::identity}, [three](Trial& t) {
                     const auto prm = t.params();
                     const auto j = three(t);
                     const double lhs =
                         conditional_entropy3(j, prm, Conditioning3::xy_given_z).value;
                     const double a = conditional_entropy3(j, prm, Conditioning3::x_given_z).value;
                     const double b = conditional_entropy3(j, prm, Conditioning3::y_given_xz).value;
                     return identity(lhs, a + b, {a, b});
                   }});

  props.push_back(
      {{"chain_rule_general", "S(X,Y,Z) = S(X) + S(Y|X) + S(Z|X,Y)", K::identity},
       [three](Trial& t) {
         const auto prm = t.params();
         const auto j = three(t);
         const auto jxy = marginal_xy(j);
         const double a = S(marginals(jxy).first, prm);
         const double b = conditional_entropy(jxy, prm).value;
         const double c = conditional_entropy(group_xy_vs_z(j), prm).value;
         return identity(S(j, prm), a + b + c, {a, b, c});
       }});

  props.push_back({{"conditional_reduces_entropy", "S(Y|X) <= S(Y)", K::inequality}, [](Trial& t) {
                     const auto prm = t.params();
                     const std::size_t nx = t.first() ? t.note("nx", std::size_t{1}) : t.size("nx");
                     const auto j = t.joint2(nx, t.size("ny"));
                     return Outcome{S(marginals(j).second, prm), conditional_entropy(j, prm).value};
                   }});

  props.push_back({{"joint_monotonicity", "S(X) <= S(X,Y)", K::inequality},
                   [two](Trial& t) {
                     const auto prm = t.params();
                     const auto j = two(t);
                     return Outcome{S(j, prm), S(marginals(j).first, prm)};
                   }});

  props.push_back({{"independence_rule", "S(Y|X) = S(Y) - 2k S(X) S(Y) for independent X, Y", K::identity}, [](Trial& t) {
                     const auto prm = t.params();
                     const auto p = t.distribution(t.size("nx"), true);
                     const auto q = t.distribution(t.size("ny"), true);
                     const double sx = S(p, prm);
                     const double sy = S(q, prm);
                     const double cross = 2.0 * prm.k() * sx * sy;
                     return identity(conditional_entropy(product(p, q), prm).value, sy - cross,
                                     {sy, cross});
                   }});

  props.push_back({{"pseudo_additivity_entropy", "S(X,Y) = S(X) + S(Y) - 2k S(X) S(Y) for independent X, Y", K::identity}, [](Trial& t) {
                     const auto prm = t.params();
                     const auto p = t.distribution(t.size("nx"), true);
                     const auto q = t.distribution(t.size("ny"), true);
                     const double sx = S(p, prm);
                     const double sy = S(q, prm);
                     const double cross = 2.0 * prm.k() * sx * sy;
                     return identity(S(product(p, q), prm), sx + sy - cross, {sx, sy, cross});
                   }});

  props.push_back({{"subadditivity", "S(X,Y) <= S(X) + S(Y)", K::inequality}, [two](Trial& t) {
                     const auto prm = t.params();
                     const auto j = t.first()
                                        ? product(Distribution::degenerate(2, 0),
                                                  t.distribution(t.size("ny"), false))
                                        : two(t);
                     const auto [px, py] = marginals(j);
                     return Outcome{S(px, prm) + S(py, prm), S(j, prm)};
                   }});

  props.push_back({{"conditional_comparison", "S(Y|X,Z) <= S(Y|Z)", K::inequality}, [three_eq](Trial& t) {
                     const auto prm = t.params();
                     const auto j = three_eq(t);
                     return Outcome{conditional_entropy3(j, prm, Conditioning3::y_given_z).value,
                                    conditional_entropy3(j, prm, Conditioning3::y_given_xz).value};
                   }});

  props.push_back({{"strong_subadditivity", "S(X,Y,Z) + S(Z) <= S(X,Z) + S(Y,Z)", K::inequality}, [three_eq](Trial& t) {
                     const auto prm = t.params();
                     const auto j = three_eq(t);
                     return Outcome{S(marginal_xz(j), prm) + S(marginal_yz(j), prm),
                                    S(j, prm) + S(marginal_z(j), prm)};
                   }});

  props.push_back(
      {{"conditional_chain_monotonicity", "S(X|Z) <= S(X,Y|Z)", K::inequality},
       [three](Trial& t) {
         const auto prm = t.params();
         const auto j = three(t);
         return Outcome{conditional_entropy3(j, prm, Conditioning3::xy_given_z).value,
                        conditional_entropy3(j, prm, Conditioning3::x_given_z).value};
       }});

  props.push_back(
      {{"mutual_entropy_forms", "S(X) + S(Y) - S(X,Y) = S(Y) - S(Y|X)", K::identity},
       [two](Trial& t) {
         const auto prm = t.params();
         const auto j = two(t);
         const double sy = S(marginals(j).second, prm);
         const double syx = conditional_entropy(j, prm).value;
         return identity(mutual_entropy(j, prm), sy - syx, {sy, syx});
       }});

  props.push_back({{"entropy_r_independence", "entropy is the same for every r", K::identity},
                   [](Trial& t) {
                     const double k = t.k();
                     const double r0 = t.r();
                     const auto p = t.distribution(t.size(), true);
                     const double closed = S(p, DeformParams::strict(k, r0));
                     double worst_literal = entropy_literal(p, DeformParams::strict(k, r0));
                     for (double r : kRGrid) {
                       const double lit = entropy_literal(p, DeformParams::strict(k, r));
                       if (std::fabs(lit - closed) > std::fabs(worst_literal - closed))
                         worst_literal = lit;
                     }
                     return identity(worst_literal, closed);
                   }});

  props.push_back({{"tsallis_entropy_reduction", "k = r = (q-1)/2 gives the Tsallis entropy S_q", K::identity},
                   [](Trial& t) {
                     constexpr std::array<double, 3> qs{1.2, 1.5, 2.0};
                     const double q = t.note("q", qs[t.index() % qs.size()]);
                     const double k = (q - 1.0) / 2.0;
                     const auto p = t.distribution(t.size(), true);
                     return identity(S(p, DeformParams::strict(k, k)),
                                     reference_entropy(p, TsallisEntropy{q}));
                   }});

  props.push_back({{"shannon_limit", "k = r = 1e-4 is within 1e-3 relative of the Shannon entropy", K::inequality}, [](Trial& t) {
                     const auto p = t.distribution(t.size(), true);
                     const double h = reference_entropy(p, ShannonEntropy{});
                     const double s = S(p, DeformParams::strict(1e-4, 1e-4));
                     return Outcome{1e-3 * h, std::fabs(s - h)};
                   }});
  return props;
}

// --- divergence --------------------------------------------------------------

std::vector<Property> divergence_properties() {
  using K = PropertyKind;
  std::vector<Property> props;

  props.push_back({{"divergence_nonnegativity", "D(P||Q) >= 0", K::inequality}, [](Trial& t) {
                     const auto prm = t.params();
                     const std::size_t n = t.size();
                     const auto q = t.distribution(n);
                     const auto p = t.first() ? q : t.distribution(n, true);
                     return Outcome{D(p, q, prm), 0.0};
                   }});

  props.push_back(
      {{"identity_of_indiscernibles", "D(P||Q) = 0 only if P = Q, for k < 1/2", K::inequality},
       [](Trial& t) {
         const auto prm = t.params_separated();
         const std::size_t n = t.size();
         const auto p = t.distribution(n);
         const double eps = t.note("eps", t.rng().log_uniform(1e-9, 1e-2));
         const auto q = mix(p, t.distribution(n), eps);
         double gap = 0.0;
         for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::fabs(p[i] - q[i]));
         const double d = D(p, q, prm);
         // Only near-zero divergences constrain the distance.
         return d <= 1e-12 ? Outcome{1e-4, gap} : Outcome{1.0, 0.0};
       }});

  props.push_back({{"permutation_symmetry", "D is invariant under a common permutation", K::identity}, [](Trial& t) {
                     const auto prm = t.params();
                     const std::size_t n = t.size();
                     const auto p = t.distribution(n, true);
                     const auto q = t.distribution(n);
                     const auto perm = t.rng().permutation(n);
                     return identity(D(permute(p, perm), permute(q, perm), prm), D(p, q, prm));
                   }});

  props.push_back({{"extension", "zero-probability outcomes leave D unchanged", K::identity}, [](Trial& t) {
                     const auto prm = t.params();
                     const std::size_t n = t.size();
                     const std::size_t extra = t.note("extra", t.rng().between(1, 3));
                     const auto p = t.distribution(n, true);
                     const auto q = t.distribution(n);
                     return identity(D(extend_with_zeros(p, extra), extend_with_zeros(q, extra), prm),
                                     D(p, q, prm));
                   }});

  props.push_back({{"pseudo_additivity_divergence", "D(P1 x P2||Q1 x Q2) = D1 + D2 - 2k D1 D2", K::identity}, [](Trial& t) {
                     const auto prm = t.params();
                     const std::size_t n1 = t.size("n1");
                     const std::size_t n2 = t.size("n2");
                     const auto p1 = t.distribution(n1, true);
                     const auto q1 = t.distribution(n1);
                     const auto p2 = t.distribution(n2, true);
                     const auto q2 = t.distribution(n2);
                     const double d1 = D(p1, q1, prm);
                     const double d2 = D(p2, q2, prm);
                     const double cross = 2.0 * prm.k() * d1 * d2;
                     const double lhs =
                         D(flatten(product(p1, p2)), flatten(product(q1, q2)), prm);
                     return identity(lhs, d1 + d2 - cross, {d1, d2, cross});
                   }});

  props.push_back({{"joint_convexity", "D is jointly convex in (P, Q)", K::inequality}, [](Trial& t) {
                     const auto prm = t.params();
                     const std::size_t n = t.size();
                     const auto q1 = t.distribution(n);
                     const auto q2 = t.distribution(n);
                     const auto p1 = t.first() ? q1 : t.distribution(n, true);
                     const auto p2 = t.first() ? q2 : t.distribution(n, true);
                     const double d1 = D(p1, q1, prm);
                     const double d2 = D(p2, q2, prm);
                     Outcome worst{1.0, 0.0};
                     double worst_slack = std::numeric_limits<double>::infinity();
                     for (int step = 0; step <= 10; ++step) {
                       const double lambda = step / 10.0;
                       const double lhs = (1.0 - lambda) * d1 + lambda * d2;
                       const double rhs = D(mix(p1, p2, lambda), mix(q1, q2, lambda), prm);
                       if (lhs - rhs < worst_slack) {
                         worst_slack = lhs - rhs;
                         worst = {lhs, rhs};
                       }
                     }
                     return worst;
                   }});

  props.push_back(
      {{"information_monotonicity", "D(WP||WQ) <= D(P||Q)", K::inequality}, [](Trial& t) {
         const auto prm = t.params();
         const std::size_t n = t.size();
         const auto p = t.distribution(n, true);
         const auto q = t.distribution(n);
         Channel w = Channel::identity(n);
         if (t.first()) {
           t.note("channel", std::size_t{0});
         } else if (t.index() % 2 == 1) {
           // coarse-graining: every one of the m groups receives an input
           const std::size_t m = t.note("m", t.rng().between(1, n));
           auto perm = t.rng().permutation(n);
           std::vector<std::size_t> group(n);
           for (std::size_t i = 0; i < n; ++i) group[perm[i]] = i < m ? i : t.rng().index(m);
           w = Channel::partition(group, m);
         } else {
           w = sample_channel(t.size("m"), n, t.rng());
         }
         return Outcome{D(p, q, prm), D(apply_channel(w, p), apply_channel(w, q), prm)};
       }});

  props.push_back({{"divergence_r_independence", "divergence is the same for every r", K::identity},
                   [](Trial& t) {
                     const double k = t.k();
                     const double r0 = t.r();
                     const std::size_t n = t.size();
                     const auto p = t.distribution(n, true);
                     const auto q = t.distribution(n);
                     const double closed = D(p, q, DeformParams::strict(k, r0));
                     double worst = divergence_literal(p, q, DeformParams::strict(k, r0));
                     for (double r : kRGrid) {
                       const double lit = divergence_literal(p, q, DeformParams::strict(k, r));
                       if (std::fabs(lit - closed) > std::fabs(worst - closed)) worst = lit;
                     }
                     return identity(worst, closed);
                   }});

  props.push_back({{"divergence_definitional_equivalence", "sum p (p/q)^(r-k) ln(p/q) = -sum p (q/p)^(r+k) ln(q/p)", K::identity},
                   [](Trial& t) {
                     const auto prm = t.params();
                     const std::size_t n = t.size();
                     const auto p = t.distribution(n);
                     const auto q = t.distribution(n);
                     return identity(divergence_literal(p, q, prm),
                                     divergence_literal_inverted(p, q, prm));
                   }});

  props.push_back({{"kl_limit", "k = r = 1e-4 is within 1e-3 relative of the Kullback-Leibler divergence", K::inequality}, [](Trial& t) {
                     const std::size_t n = t.size();
                     const auto p = t.distribution(n, true);
                     const auto q = t.distribution(n);
                     const double kl = reference_divergence(p, q, KullbackLeibler{});
                     const double d = D(p, q, DeformParams::strict(1e-4, 1e-4));
                     return Outcome{1e-3 * kl, std::fabs(d - kl)};
                   }});

  props.push_back({{"tsallis_divergence_reduction", "k = r = (1-q)/2 gives the Tsallis divergence D_q", K::identity},
                   [](Trial& t) {
                     constexpr std::array<double, 2> qs{0.5, 0.8};
                     const double qp = t.note("q", qs[t.index() % qs.size()]);
                     const double k = (1.0 - qp) / 2.0;
                     const std::size_t n = t.size();
                     const auto p = t.distribution(n, true);
                     const auto q = t.distribution(n);
                     return identity(D(p, q, DeformParams::relaxed(k, k)),
                                     reference_divergence(p, q, TsallisDivergence{qp}));
                   }});

  props.push_back({{"mutual_divergence_nonnegativity", "D(p(x,y)||p(x)p(y)) >= 0", K::inequality},
                   [](Trial& t) {
                     const auto prm = t.params();
                     const auto j = t.joint2(t.size("nx"), t.size("ny"));
                     return Outcome{mutual_divergence(j, prm).value, 0.0};
                   }});
  return props;
}

// --- geometry ----------------------------------------------------------------

std::vector<Property> geometry_properties() {
  using K = PropertyKind;
  std::vector<Property> props;

  props.push_back({{"hessian_separability", "mixed second partials of D vanish at Q = P", K::inequality},
                   [](Trial& t) {
                     const auto prm = t.params_separated();
                     const auto p = t.interior(t.size_at_least_two(8));
                     const auto h = fd_hessian(p, prm);
                     double worst = 0.0;
                     for (std::size_t i = 0; i < h.n; ++i)
                       for (std::size_t j = 0; j < h.n; ++j)
                         if (i != j) worst = std::max(worst, std::fabs(h(i, j)));
                     return Outcome{1e-8, worst};
                   }});

  props.push_back({{"metric_oracle_agreement", "Hessian diagonal of D at Q = P is (1-2k)/p_i", K::inequality},
                   [](Trial& t) {
                     const auto prm = t.params_separated();
                     const auto p = t.interior(t.size_at_least_two(8));
                     const auto h = fd_hessian(p, prm);
                     const auto g = fisher_metric(p, prm).g;
                     double worst = 0.0;
                     for (std::size_t i = 0; i < g.size(); ++i)
                       worst = std::max(worst, std::fabs(h(i, i) - g[i]) / std::fabs(g[i]));
                     return Outcome{1e-5, worst};
                   }});

  props.push_back(
      {{"taylor_quadratic_form", "2 D(P+dP||P) / sum g_ii dP_i^2 -> 1 as dP -> 0", K::inequality},
       [](Trial& t) {
         const auto prm = t.params_separated();
         const std::size_t n = t.size_at_least_two(8);
         const auto p = t.interior(n);
         const auto s = sample_distribution(n, t.rng());
         std::vector<double> dir(n);
         double mean = 0.0;
         for (std::size_t i = 0; i < n; ++i) {
           dir[i] = s[i] - p[i];
           mean += dir[i];
         }
         mean /= static_cast<double>(n);
         double norm = 0.0;
         for (double& v : dir) {
           v -= mean;
           norm = std::max(norm, std::fabs(v));
         }
         std::array<double, 3> err{};
         const std::array<double, 3> eps{1e-2, 1e-3, 1e-4};
         // Worst of +dp and -dp: max(|a e + b e^2|, |-a e + b e^2|) = |a| e + |b| e^2,
         // so an accidental cancellation in one direction cannot mask the trend.
         for (std::size_t e = 0; e < eps.size(); ++e) {
           for (double sign : {1.0, -1.0}) {
             std::vector<double> dp(n);
             for (std::size_t i = 0; i < n; ++i) dp[i] = sign * dir[i] / norm * eps[e];
             err[e] = std::max(err[e], std::fabs(taylor_ratio(p, dp, prm) - 1.0));
           }
         }
         return Outcome{std::min(err[0] - err[1], err[1] - err[2]), 0.0};
       }});

  props.push_back(
      {{"hessian_potential_structure", "Psi''(u) = A/u and g_ii = Psi''(p_i) for both coefficients", K::inequality}, [](Trial& t) {
         const auto prm = t.params();
         const double u = t.note("u", t.rng().uniform(0.1, 1.0));
         const double c1 = t.note("c1", t.rng().uniform(-1.0, 1.0));
         const double c2 = t.note("c2", t.rng().uniform(-1.0, 1.0));
         const auto p = t.distribution(t.size());
         constexpr double h = 1e-4;
         double worst = 0.0;
         for (auto conv : {MetricConvention::derived, MetricConvention::r_shifted}) {
           const PotentialCoefficients coeffs{metric_coefficient(prm, conv), c1, c2};
           const double fd = (hessian_potential(u + h, coeffs) - 2.0 * hessian_potential(u, coeffs) +
                              hessian_potential(u - h, coeffs)) /
                             (h * h);
           const double exact = coeffs.a / u;
           worst = std::max(worst, std::fabs(fd - exact) / std::max(1.0, std::fabs(exact)));
           const auto g = fisher_metric(p, prm, conv).g;
           for (std::size_t i = 0; i < g.size(); ++i) {
             const double psi2 = coeffs.a / p[i];
             worst = std::max(worst, std::fabs(g[i] - psi2) / std::max(1.0, std::fabs(psi2)));
           }
         }
         return Outcome{1e-6, worst};
       }});

  props.push_back({{"metric_positive_definite", "g_ii > 0 for k < 1/2", K::inequality},
                   [](Trial& t) {
                     const auto prm = t.params_separated();
                     const auto p = t.distribution(t.size());
                     const auto g = fisher_metric(p, prm).g;
                     return Outcome{*std::min_element(g.begin(), g.end()), 0.0};
                   }});
  return props;
}

const std::vector<Property>& registry() {
  static const std::vector<Property> all = [] {
    std::vector<Property> v;
    for (auto group : {deformed_log_properties(), distribution_properties(),
                       entropy_properties(), divergence_properties(), geometry_properties()}) {
      for (auto& p : group) v.push_back(std::move(p));
    }
    return v;
  }();
  return all;
}

const Property& find_property(const std::string& name) {
  for (const auto& p : registry()) {
    if (p.info.name == name) return p;
  }
  throw ConfigError("unknown property: " + name);
}

double tolerance_for(const SweepConfig& config, PropertyKind kind) {
  if (config.tol) return *config.tol;
  return kind == PropertyKind::identity ? kIdentityTolerance : kInequalityTolerance;
}

void validate_range(const RealRange& r, const char* what) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
    throw ConfigError(std::string(what) + ": empty or non-finite range");
  }
}

}  // namespace

std::vector<PropertyInfo> list_properties() {
  std::vector<PropertyInfo> out;
  out.reserve(registry().size());
  for (const auto& p : registry()) out.push_back(p.info);
  return out;
}

void validate(const SweepConfig& config) {
  if (config.trials == 0) throw ConfigError("trials must be at least 1");
  if (config.sizes.lo == 0 || config.sizes.lo > config.sizes.hi) {
    throw ConfigError("size range must satisfy 1 <= min <= max");
  }
  // three-way tables hold max^3 cells
  if (config.sizes.hi > kMaxSupportSize) {
    throw ConfigError("size range max must be at most " + std::to_string(kMaxSupportSize));
  }
  validate_range(config.k_range, "k range");
  if (!(config.k_range.lo > 0.0) || config.k_range.hi > 0.5) {
    throw ConfigError("k range must lie in (0, 0.5]");
  }
  validate_range(config.r_range, "r range");
  if (!(config.r_range.lo > 0.0)) throw ConfigError("r range must lie in (0, inf)");
  if (config.tol && !(*config.tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (config.threads == 0 || config.threads > kMaxThreads) {
    throw ConfigError("threads must be in [1, " + std::to_string(kMaxThreads) + "]");
  }
  std::set<std::string> seen;
  for (const auto& name : config.properties) {
    find_property(name);
    if (!seen.insert(name).second) throw ConfigError("property listed twice: " + name);
  }
}

bool VerificationReport::all_passed() const noexcept {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertySummary& s) { return s.fail == 0; });
}

RngSeed derive_seed(RngSeed master, const std::string& property, std::size_t trial) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : property) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return RngSeed{splitmix64(master.value ^ splitmix64(h ^ splitmix64(trial)))};
}

CheckResult run_check(const SweepConfig& config, const std::string& property, std::size_t trial) {
  const Property& prop = find_property(property);
  Trial t(config, trial, derive_seed(config.seed, property, trial));
  CheckResult res;
  res.property = property;
  res.trial_index = trial;
  const double tol = tolerance_for(config, prop.info.kind);
  try {
    const Outcome o = prop.eval(t);
    res.lhs = o.lhs;
    res.rhs = o.rhs;
    if (prop.info.kind == PropertyKind::identity) {
      res.slack = (o.lhs - o.rhs) / std::max(1.0, o.scale);
      res.passed = std::fabs(res.slack) <= tol;
    } else {
      res.slack = o.lhs - o.rhs;
      res.passed = res.slack >= -tol;
    }
    res.instance_digest = t.digest();
  } catch (const std::exception& e) {
    res.lhs = res.rhs = res.slack = kNan;
    res.passed = false;
    res.instance_digest = t.digest() + " error=" + e.what();
  }
  return res;
}

VerificationReport run_suite(const SweepConfig& config) {
  validate(config);
  std::vector<const Property*> selected;
  for (const auto& p : registry()) {
    const bool wanted =
        config.properties.empty() ||
        std::find(config.properties.begin(), config.properties.end(), p.info.name) !=
            config.properties.end();
    if (wanted) selected.push_back(&p);
  }

  VerificationReport report{config, {}};
  for (const Property* prop : selected) {
    std::vector<CheckResult> results(config.trials);
    const std::size_t workers = std::min(config.threads, config.trials);
    if (workers <= 1) {
      for (std::size_t i = 0; i < config.trials; ++i)
        results[i] = run_check(config, prop->info.name, i);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < config.trials; i += workers)
            results[i] = run_check(config, prop->info.name, i);
        });
      }
    }

    PropertySummary summary;
    summary.info = prop->info;
    summary.tolerance = tolerance_for(config, prop->info.kind);
    const bool is_identity = prop->info.kind == PropertyKind::identity;
    summary.worst_slack = is_identity ? 0.0 : std::numeric_limits<double>::infinity();
    for (auto& r : results) {
      if (r.passed) {
        ++summary.pass;
      } else {
        ++summary.fail;
        if (summary.failures.size() < config.max_failures) summary.failures.push_back(r);
      }
      if (std::isfinite(r.slack)) {
        summary.worst_slack = is_identity ? std::max(summary.worst_slack, std::fabs(r.slack))
                                          : std::min(summary.worst_slack, r.slack);
      }
    }
    report.properties.push_back(std::move(summary));
  }
  return report;
}

std::string report_to_json(const VerificationReport& report, int indent) {
  using json = nlohmann::ordered_json;
  const auto& c = report.config;
  json config = {
      {"seed", c.seed.value},
      {"trials", c.trials},
      {"size_range", {c.sizes.lo, c.sizes.hi}},
      {"k_range", {c.k_range.lo, c.k_range.hi}},
      {"r_range", {c.r_range.lo, c.r_range.hi}},
      {"tol", c.tol ? json(*c.tol) : json(nullptr)},
      {"properties", c.properties},
  };
  json props = json::array();
  std::size_t failed = 0;
  for (const auto& s : report.properties) {
    json failures = json::array();
    for (const auto& f : s.failures) {
      failures.push_back({{"property", f.property},
                          {"trial_index", f.trial_index},
                          {"passed", f.passed},
                          {"lhs", f.lhs},
                          {"rhs", f.rhs},
                          {"slack", f.slack},
                          {"instance_digest", f.instance_digest}});
    }
    if (s.fail > 0) ++failed;
    props.push_back({{"name", s.info.name},
                     {"statement", s.info.statement},
                     {"kind", s.info.kind == PropertyKind::identity ? "identity" : "inequality"},
                     {"tolerance", s.tolerance},
                     {"pass", s.pass},
                     {"fail", s.fail},
                     {"worst_slack", s.worst_slack},
                     {"failures", std::move(failures)}});
  }
  json doc = {{"config", std::move(config)},
              {"properties", std::move(props)},
              {"summary",
               {{"properties", report.properties.size()},
                {"failed_properties", failed},
                {"all_passed", failed == 0}}}};
  return doc.dump(indent);
}

}  // namespace entrokit
