#include "tameforge/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tameforge/error.hpp"

namespace tameforge {

void ToleranceConfig::validate() const {
  if (!(diff_step > 0) || !(residual_tol > 0) || !(jac_tol > 0) || grid_n < 2) {
    throw Error(ErrorKind::InvalidArgument, "tolerance config must be strictly positive");
  }
}

bool is_finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool is_finite(const CxVector& z) noexcept {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!is_finite(z[i])) return false;
  }
  return true;
}

void require_finite(const CxVector& z, const char* what) {
  if (!is_finite(z)) throw Error(ErrorKind::NonFiniteEvaluation, what);
}

double sup_norm(const CxVector& z) noexcept {
  double m = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) m = std::max(m, std::abs(z[i]));
  return m;
}

Complex ipow(Complex base, int exponent) noexcept {
  if (exponent < 0) return 1.0 / ipow(base, -exponent);
  Complex result = 1.0;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

CxVector unit_vector(int dim, int index) {
  CxVector e = CxVector::Zero(dim);
  e[index] = 1.0;
  return e;
}

CxMatrix jacobian(const PointMap& map, const CxVector& z, const ToleranceConfig& cfg) {
  const auto dim = z.size();
  const double h = cfg.diff_step;
  CxMatrix out;
  for (Eigen::Index j = 0; j < dim; ++j) {
    CxVector plus = z;
    CxVector minus = z;
    plus[j] += h;
    minus[j] -= h;
    const CxVector fp = map(plus);
    const CxVector fm = map(minus);
    require_finite(fp, "jacobian probe");
    require_finite(fm, "jacobian probe");
    if (j == 0) out.resize(fp.size(), dim);
    // divide by the step actually taken after rounding z +- h
    const double step = plus[j].real() - minus[j].real();
    out.col(j) = (fp - fm) / step;
  }
  return out;
}

std::vector<CxVector> polydisc_grid(double radius, int dim, int grid_n) {
  std::vector<Complex> axis;
  for (int re = 0; re < grid_n; ++re) {
    for (int im = 0; im < grid_n; ++im) {
      const double x = -radius + 2.0 * radius * re / (grid_n - 1);
      const double y = -radius + 2.0 * radius * im / (grid_n - 1);
      const Complex c(x, y);
      if (std::abs(c) <= radius * (1.0 + 1e-12)) axis.push_back(c);
    }
  }
  std::vector<CxVector> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    CxVector p(dim);
    for (int i = 0; i < dim; ++i) p[i] = axis[idx[static_cast<std::size_t>(i)]];
    out.push_back(std::move(p));
    int k = 0;
    while (k < dim && ++idx[static_cast<std::size_t>(k)] == axis.size()) {
      idx[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == dim) break;
  }
  return out;
}

double max_deviation(const PointMap& f, const PointMap& g, double radius, int dim,
                     const ToleranceConfig& cfg) {
  double worst = 0.0;
  for (const auto& z : polydisc_grid(radius, dim, cfg.grid_n)) {
    const CxVector fz = f(z);
    const CxVector gz = g(z);
    require_finite(fz, "max_deviation");
    require_finite(gz, "max_deviation");
    worst = std::max(worst, sup_norm(fz - gz));
  }
  return worst;
}

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Complex Sampler::in_disc(double r) {
  const double rho = r * std::sqrt(uniform(0.0, 1.0));
  const double theta = uniform(0.0, 2.0 * M_PI);
  return std::polar(rho, theta);
}

CxVector Sampler::in_polydisc(int dim, double r) {
  CxVector z(dim);
  for (int i = 0; i < dim; ++i) z[i] = in_disc(r);
  return z;
}

std::vector<int> random_injection(int k, int range, std::uint64_t seed) {
  if (k < 1 || range < k) {
    throw Error(ErrorKind::InvalidArgument,
                "injection needs 1 <= k <= range (k=" + std::to_string(k) +
                    ", range=" + std::to_string(range) + ")");
  }
  std::vector<int> pool(static_cast<std::size_t>(range));
  std::iota(pool.begin(), pool.end(), 1);
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace tameforge
