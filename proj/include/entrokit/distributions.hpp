#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace entrokit {

/// Absolute tolerance on the total mass of every probability object.
inline constexpr double kMassTolerance = 1e-9;

/// Finite probability vector on the simplex.
class Distribution {
 public:
  /// Validates `weights`; with `normalize` the entries are divided by their
  /// sum, otherwise the sum must already be within kMassTolerance of 1.
  static Distribution make(std::vector<double> weights, bool normalize = false);
  static Distribution uniform(std::size_t n);
  /// Point mass at `index`.
  static Distribution degenerate(std::size_t n, std::size_t index);

  std::span<const double> probs() const noexcept { return p_; }
  const std::vector<double>& vec() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  bool full_support() const noexcept;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  explicit Distribution(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

/// Same as Distribution::make.
Distribution make_distribution(std::vector<double> weights, bool normalize);

/// Joint law p(x, y), stored row-major with x indexing rows.
class JointDistribution2 {
 public:
  static JointDistribution2 make(std::size_t rows, std::size_t cols, std::vector<double> flat,
                                 bool normalize = false);
  static JointDistribution2 from_rows(const std::vector<std::vector<double>>& rows,
                                      bool normalize = false);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t x, std::size_t y) const { return m_[x * cols_ + y]; }
  std::span<const double> flat() const noexcept { return m_; }
  std::span<const double> row(std::size_t x) const {
    return std::span<const double>(m_).subspan(x * cols_, cols_);
  }

  friend bool operator==(const JointDistribution2&, const JointDistribution2&) = default;

 private:
  JointDistribution2(std::size_t rows, std::size_t cols, std::vector<double> m)
      : rows_(rows), cols_(cols), m_(std::move(m)) {}
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> m_;
};

/// Joint law p(x, y, z), stored row-major (z fastest).
class JointDistribution3 {
 public:
  static JointDistribution3 make(std::size_t nx, std::size_t ny, std::size_t nz,
                                 std::vector<double> flat, bool normalize = false);
  static JointDistribution3 from_nested(const std::vector<std::vector<std::vector<double>>>& t,
                                        bool normalize = false);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t nz() const noexcept { return nz_; }
  double operator()(std::size_t x, std::size_t y, std::size_t z) const {
    return t_[(x * ny_ + y) * nz_ + z];
  }
  std::span<const double> flat() const noexcept { return t_; }

  friend bool operator==(const JointDistribution3&, const JointDistribution3&) = default;

 private:
  JointDistribution3(std::size_t nx, std::size_t ny, std::size_t nz, std::vector<double> t)
      : nx_(nx), ny_(ny), nz_(nz), t_(std::move(t)) {}
  std::size_t nx_;
  std::size_t ny_;
  std::size_t nz_;
  std::vector<double> t_;
};

/// Column-stochastic transition matrix W = (w_ji); rows are outputs j,
/// columns are inputs i, and every column sums to 1.
class Channel {
 public:
  static Channel from_rows(const std::vector<std::vector<double>>& rows);
  static Channel make(std::size_t outputs, std::size_t inputs, std::vector<double> flat);
  static Channel identity(std::size_t n);
  /// Coarse-graining channel sending input i to output group[i].
  static Channel partition(std::span<const std::size_t> group, std::size_t outputs);

  std::size_t outputs() const noexcept { return m_; }
  std::size_t inputs() const noexcept { return n_; }
  double operator()(std::size_t j, std::size_t i) const { return w_[j * n_ + i]; }
  std::span<const double> flat() const noexcept { return w_; }

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  Channel(std::size_t m, std::size_t n, std::vector<double> w) : m_(m), n_(n), w_(std::move(w)) {}
  std::size_t m_;
  std::size_t n_;
  std::vector<double> w_;
};

// --- operations ----------------------------------------------------------

/// Row-sum marginal over x and column-sum marginal over y.
std::pair<Distribution, Distribution> marginals(const JointDistribution2& j);
JointDistribution2 product(const Distribution& p, const Distribution& q);
Distribution apply_channel(const Channel& w, const Distribution& p);
/// (1 - lambda) p1 + lambda p2.
Distribution mix(const Distribution& p1, const Distribution& p2, double lambda);

Distribution flatten(const JointDistribution2& j);
Distribution flatten(const JointDistribution3& j);
JointDistribution2 transpose(const JointDistribution2& j);
/// p'(i) = p(perm[i]).
Distribution permute(const Distribution& p, std::span<const std::size_t> perm);
/// Appends `extra` zero-probability outcomes.
Distribution extend_with_zeros(const Distribution& p, std::size_t extra);

Distribution marginal_x(const JointDistribution3& j);
Distribution marginal_y(const JointDistribution3& j);
Distribution marginal_z(const JointDistribution3& j);
JointDistribution2 marginal_xz(const JointDistribution3& j);
JointDistribution2 marginal_yz(const JointDistribution3& j);
JointDistribution2 marginal_xy(const JointDistribution3& j);
/// Regroups p(x, y, z) as a two-variable law over ((x, z), y).
JointDistribution2 group_xz_vs_y(const JointDistribution3& j);
/// Regroups p(x, y, z) as a two-variable law over (z, (x, y)).
JointDistribution2 group_z_vs_xy(const JointDistribution3& j);
/// Regroups p(x, y, z) as a two-variable law over ((x, y), z).
JointDistribution2 group_xy_vs_z(const JointDistribution3& j);

/// Row-wise conditionals p(y | x); rows with p(x) = 0 are all zero.
std::vector<std::vector<double>> conditional_rows(const JointDistribution2& j);

// --- seeded sampling -----------------------------------------------------

struct RngSeed {
  std::uint64_t value = 0;
  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Deterministic, platform-independent random source. Only the raw
/// mt19937_64 stream is used; standard distribution objects are avoided
/// because their output is implementation-defined.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) noexcept;
  /// Standard exponential variate.
  double exponential() noexcept;
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) noexcept;
  /// Uniform integer in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) noexcept { return lo + index(hi - lo + 1); }
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

struct DistributionShape {
  std::size_t n;
};
struct Joint2Shape {
  std::size_t nx, ny;
};
struct Joint3Shape {
  std::size_t nx, ny, nz;
};
struct ChannelShape {
  std::size_t outputs, inputs;
};

/// Flat Dirichlet draws (normalized i.i.d. exponentials). Deterministic for a
/// fixed (shape, seed); ParamError on zero sizes.
Distribution sample(DistributionShape shape, RngSeed seed);
JointDistribution2 sample(Joint2Shape shape, RngSeed seed);
JointDistribution3 sample(Joint3Shape shape, RngSeed seed);
/// Each column is an independent flat Dirichlet draw.
Channel sample(ChannelShape shape, RngSeed seed);

Distribution sample_distribution(std::size_t n, Rng& rng);
JointDistribution2 sample_joint2(std::size_t nx, std::size_t ny, Rng& rng);
JointDistribution3 sample_joint3(std::size_t nx, std::size_t ny, std::size_t nz, Rng& rng);
Channel sample_channel(std::size_t outputs, std::size_t inputs, Rng& rng);

}  // namespace entrokit
