#include "entrokit/distributions.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "entrokit/errors.hpp"

namespace entrokit {

namespace {

// Checks entries and total mass; optionally rescales to unit mass.
void validate_mass(std::vector<double>& v, bool normalize, const char* what) {
  if (v.empty()) throw ValidationError(std::string(what) + ": empty");
  double total = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": non-finite entry");
    if (x < 0.0) throw ValidationError(std::string(what) + ": negative entry");
    total += x;
  }
  if (normalize) {
    if (!(total > 0.0)) throw ValidationError(std::string(what) + ": all-zero weights");
    for (double& x : v) x /= total;
    return;
  }
  if (std::fabs(total - 1.0) > kMassTolerance) {
    throw ValidationError(std::string(what) + ": entries sum to " + std::to_string(total) +
                          ", expected 1");
  }
}

void require_sizes(std::initializer_list<std::size_t> sizes) {
  for (auto s : sizes) {
    if (s == 0) throw ParamError("sizes must be at least 1");
  }
}

std::vector<double> simplex_draw(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) {
    x = rng.exponential();
    total += x;
  }
  for (auto& x : v) x /= total;
  return v;
}

}  // namespace

// --- Distribution ----------------------------------------------------------

Distribution Distribution::make(std::vector<double> weights, bool normalize) {
  validate_mass(weights, normalize, "distribution");
  return Distribution(std::move(weights));
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("distribution: empty");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::degenerate(std::size_t n, std::size_t index) {
  if (index >= n) throw DimensionError("degenerate: index out of range");
  std::vector<double> v(n, 0.0);
  v[index] = 1.0;
  return Distribution(std::move(v));
}

bool Distribution::full_support() const noexcept {
  for (double x : p_) {
    if (!(x > 0.0)) return false;
  }
  return true;
}

Distribution make_distribution(std::vector<double> weights, bool normalize) {
  return Distribution::make(std::move(weights), normalize);
}

// --- JointDistribution2 ----------------------------------------------------

JointDistribution2 JointDistribution2::make(std::size_t rows, std::size_t cols,
                                            std::vector<double> flat, bool normalize) {
  if (rows == 0 || cols == 0) throw ValidationError("joint distribution: empty");
  if (flat.size() != rows * cols) throw DimensionError("joint distribution: shape mismatch");
  validate_mass(flat, normalize, "joint distribution");
  return JointDistribution2(rows, cols, std::move(flat));
}

JointDistribution2 JointDistribution2::from_rows(const std::vector<std::vector<double>>& rows,
                                                 bool normalize) {
  if (rows.empty() || rows.front().empty()) throw ValidationError("joint distribution: empty");
  const std::size_t cols = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionError("joint distribution: ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return make(rows.size(), cols, std::move(flat), normalize);
}

// --- JointDistribution3 ----------------------------------------------------

JointDistribution3 JointDistribution3::make(std::size_t nx, std::size_t ny, std::size_t nz,
                                            std::vector<double> flat, bool normalize) {
  if (nx == 0 || ny == 0 || nz == 0) throw ValidationError("joint distribution: empty");
  if (flat.size() != nx * ny * nz) throw DimensionError("joint distribution: shape mismatch");
  validate_mass(flat, normalize, "joint distribution");
  return JointDistribution3(nx, ny, nz, std::move(flat));
}

JointDistribution3 JointDistribution3::from_nested(
    const std::vector<std::vector<std::vector<double>>>& t, bool normalize) {
  if (t.empty() || t.front().empty() || t.front().front().empty()) {
    throw ValidationError("joint distribution: empty");
  }
  const std::size_t ny = t.front().size();
  const std::size_t nz = t.front().front().size();
  std::vector<double> flat;
  flat.reserve(t.size() * ny * nz);
  for (const auto& plane : t) {
    if (plane.size() != ny) throw DimensionError("joint distribution: ragged tensor");
    for (const auto& row : plane) {
      if (row.size() != nz) throw DimensionError("joint distribution: ragged tensor");
      flat.insert(flat.end(), row.begin(), row.end());
    }
  }
  return make(t.size(), ny, nz, std::move(flat), normalize);
}

// --- Channel ---------------------------------------------------------------

Channel Channel::make(std::size_t outputs, std::size_t inputs, std::vector<double> flat) {
  if (outputs == 0 || inputs == 0) throw ValidationError("channel: empty");
  if (flat.size() != outputs * inputs) throw DimensionError("channel: shape mismatch");
  for (double x : flat) {
    if (!std::isfinite(x) || x < 0.0) throw ValidationError("channel: negative or non-finite entry");
  }
  for (std::size_t i = 0; i < inputs; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < outputs; ++j) total += flat[j * inputs + i];
    if (std::fabs(total - 1.0) > kMassTolerance) {
      throw ValidationError("channel: column " + std::to_string(i) + " sums to " +
                            std::to_string(total));
    }
  }
  return Channel(outputs, inputs, std::move(flat));
}

Channel Channel::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw ValidationError("channel: empty");
  const std::size_t inputs = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * inputs);
  for (const auto& row : rows) {
    if (row.size() != inputs) throw DimensionError("channel: ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return make(rows.size(), inputs, std::move(flat));
}

Channel Channel::identity(std::size_t n) {
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 1.0;
  return make(n, n, std::move(w));
}

Channel Channel::partition(std::span<const std::size_t> group, std::size_t outputs) {
  std::vector<double> w(outputs * group.size(), 0.0);
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (group[i] >= outputs) throw DimensionError("partition: group index out of range");
    w[group[i] * group.size() + i] = 1.0;
  }
  return make(outputs, group.size(), std::move(w));
}

// --- operations --------------------------------------------------------------

std::pair<Distribution, Distribution> marginals(const JointDistribution2& j) {
  std::vector<double> px(j.rows(), 0.0);
  std::vector<double> py(j.cols(), 0.0);
  for (std::size_t x = 0; x < j.rows(); ++x) {
    for (std::size_t y = 0; y < j.cols(); ++y) {
      px[x] += j(x, y);
      py[y] += j(x, y);
    }
  }
  return {Distribution::make(std::move(px)), Distribution::make(std::move(py))};
}

JointDistribution2 product(const Distribution& p, const Distribution& q) {
  std::vector<double> m;
  m.reserve(p.size() * q.size());
  for (double a : p.probs()) {
    for (double b : q.probs()) m.push_back(a * b);
  }
  return JointDistribution2::make(p.size(), q.size(), std::move(m));
}

Distribution apply_channel(const Channel& w, const Distribution& p) {
  if (w.inputs() != p.size()) {
    throw DimensionError("apply_channel: channel has " + std::to_string(w.inputs()) +
                         " inputs, distribution has " + std::to_string(p.size()) + " entries");
  }
  std::vector<double> out(w.outputs(), 0.0);
  for (std::size_t j = 0; j < w.outputs(); ++j) {
    for (std::size_t i = 0; i < w.inputs(); ++i) out[j] += w(j, i) * p[i];
  }
  return Distribution::make(std::move(out));
}

Distribution mix(const Distribution& p1, const Distribution& p2, double lambda) {
  if (p1.size() != p2.size()) throw DimensionError("mix: size mismatch");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ParamError("mix: lambda outside [0, 1]");
  std::vector<double> v(p1.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (1.0 - lambda) * p1[i] + lambda * p2[i];
  return Distribution::make(std::move(v));
}

Distribution flatten(const JointDistribution2& j) {
  return Distribution::make({j.flat().begin(), j.flat().end()});
}

Distribution flatten(const JointDistribution3& j) {
  return Distribution::make({j.flat().begin(), j.flat().end()});
}

JointDistribution2 transpose(const JointDistribution2& j) {
  std::vector<double> m(j.rows() * j.cols());
  for (std::size_t x = 0; x < j.rows(); ++x) {
    for (std::size_t y = 0; y < j.cols(); ++y) m[y * j.rows() + x] = j(x, y);
  }
  return JointDistribution2::make(j.cols(), j.rows(), std::move(m));
}

Distribution permute(const Distribution& p, std::span<const std::size_t> perm) {
  if (perm.size() != p.size()) throw DimensionError("permute: size mismatch");
  std::vector<double> v(p.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (perm[i] >= p.size()) throw DimensionError("permute: index out of range");
    v[i] = p[perm[i]];
  }
  return Distribution::make(std::move(v));
}

Distribution extend_with_zeros(const Distribution& p, std::size_t extra) {
  std::vector<double> v = p.vec();
  v.resize(v.size() + extra, 0.0);
  return Distribution::make(std::move(v));
}

Distribution marginal_x(const JointDistribution3& j) {
  std::vector<double> v(j.nx(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y)
      for (std::size_t z = 0; z < j.nz(); ++z) v[x] += j(x, y, z);
  return Distribution::make(std::move(v));
}

Distribution marginal_y(const JointDistribution3& j) {
  std::vector<double> v(j.ny(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y)
      for (std::size_t z = 0; z < j.nz(); ++z) v[y] += j(x, y, z);
  return Distribution::make(std::move(v));
}

Distribution marginal_z(const JointDistribution3& j) {
  std::vector<double> v(j.nz(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y)
      for (std::size_t z = 0; z < j.nz(); ++z) v[z] += j(x, y, z);
  return Distribution::make(std::move(v));
}

JointDistribution2 marginal_xz(const JointDistribution3& j) {
  std::vector<double> m(j.nx() * j.nz(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y)
      for (std::size_t z = 0; z < j.nz(); ++z) m[x * j.nz() + z] += j(x, y, z);
  return JointDistribution2::make(j.nx(), j.nz(), std::move(m));
}

JointDistribution2 marginal_yz(const JointDistribution3& j) {
  std::vector<double> m(j.ny() * j.nz(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y)
      for (std::size_t z = 0; z < j.nz(); ++z) m[y * j.nz() + z] += j(x, y, z);
  return JointDistribution2::make(j.ny(), j.nz(), std::move(m));
}

JointDistribution2 marginal_xy(const JointDistribution3& j) {
  std::vector<double> m(j.nx() * j.ny(), 0.0);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y)
      for (std::size_t z = 0; z < j.nz(); ++z) m[x * j.ny() + y] += j(x, y, z);
  return JointDistribution2::make(j.nx(), j.ny(), std::move(m));
}

JointDistribution2 group_xz_vs_y(const JointDistribution3& j) {
  const std::size_t rows = j.nx() * j.nz();
  std::vector<double> m(rows * j.ny());
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y)
      for (std::size_t z = 0; z < j.nz(); ++z) m[(x * j.nz() + z) * j.ny() + y] = j(x, y, z);
  return JointDistribution2::make(rows, j.ny(), std::move(m));
}

JointDistribution2 group_z_vs_xy(const JointDistribution3& j) {
  const std::size_t cols = j.nx() * j.ny();
  std::vector<double> m(j.nz() * cols);
  for (std::size_t x = 0; x < j.nx(); ++x)
    for (std::size_t y = 0; y < j.ny(); ++y)
      for (std::size_t z = 0; z < j.nz(); ++z) m[z * cols + x * j.ny() + y] = j(x, y, z);
  return JointDistribution2::make(j.nz(), cols, std::move(m));
}

JointDistribution2 group_xy_vs_z(const JointDistribution3& j) {
  return JointDistribution2::make(j.nx() * j.ny(), j.nz(), {j.flat().begin(), j.flat().end()});
}

std::vector<std::vector<double>> conditional_rows(const JointDistribution2& j) {
  std::vector<std::vector<double>> out(j.rows(), std::vector<double>(j.cols(), 0.0));
  for (std::size_t x = 0; x < j.rows(); ++x) {
    const auto row = j.row(x);
    const double px = std::accumulate(row.begin(), row.end(), 0.0);
    if (!(px > 0.0)) continue;
    for (std::size_t y = 0; y < j.cols(); ++y) out[x][y] = row[y] / px;
  }
  return out;
}

// --- sampling ----------------------------------------------------------------

double Rng::log_uniform(double lo, double hi) noexcept {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::exponential() noexcept {
  // 1 - u lies in (0, 1], so the logarithm is finite.
  return -std::log1p(-uniform());
}

std::size_t Rng::index(std::size_t n) noexcept {
  if (n <= 1) return 0;
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return static_cast<std::size_t>(draw % bound);
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[index(i)]);
  return perm;
}

Distribution sample_distribution(std::size_t n, Rng& rng) {
  require_sizes({n});
  return Distribution::make(simplex_draw(n, rng));
}

JointDistribution2 sample_joint2(std::size_t nx, std::size_t ny, Rng& rng) {
  require_sizes({nx, ny});
  return JointDistribution2::make(nx, ny, simplex_draw(nx * ny, rng));
}

JointDistribution3 sample_joint3(std::size_t nx, std::size_t ny, std::size_t nz, Rng& rng) {
  require_sizes({nx, ny, nz});
  return JointDistribution3::make(nx, ny, nz, simplex_draw(nx * ny * nz, rng));
}

Channel sample_channel(std::size_t outputs, std::size_t inputs, Rng& rng) {
  require_sizes({outputs, inputs});
  std::vector<double> w(outputs * inputs);
  for (std::size_t i = 0; i < inputs; ++i) {
    const auto column = simplex_draw(outputs, rng);
    for (std::size_t j = 0; j < outputs; ++j) w[j * inputs + i] = column[j];
  }
  return Channel::make(outputs, inputs, std::move(w));
}

Distribution sample(DistributionShape shape, RngSeed seed) {
  Rng rng(seed);
  return sample_distribution(shape.n, rng);
}

JointDistribution2 sample(Joint2Shape shape, RngSeed seed) {
  Rng rng(seed);
  return sample_joint2(shape.nx, shape.ny, rng);
}

JointDistribution3 sample(Joint3Shape shape, RngSeed seed) {
  Rng rng(seed);
  return sample_joint3(shape.nx, shape.ny, shape.nz, rng);
}

Channel sample(ChannelShape shape, RngSeed seed) {
  Rng rng(seed);
  return sample_channel(shape.outputs, shape.inputs, rng);
}

}  // namespace entrokit
