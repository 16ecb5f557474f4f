#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace tameforge {

using Complex = std::complex<double>;
using CxVector = Eigen::VectorXcd;
using CxMatrix = Eigen::MatrixXcd;
using PointMap = std::function<CxVector(const CxVector&)>;

struct ToleranceConfig {
  double diff_step = 1e-6;
  double residual_tol = 1e-8;
  double jac_tol = 1e-6;
  int grid_n = 7;

  /// Throws InvalidArgument unless every field is strictly positive and
  /// grid_n >= 2.
  void validate() const;
};

bool is_finite(Complex z) noexcept;
bool is_finite(const CxVector& z) noexcept;

/// Throws NonFiniteEvaluation naming `what` when z has a NaN or Inf entry.
void require_finite(const CxVector& z, const char* what);

double sup_norm(const CxVector& z) noexcept;

/// Integer power by repeated squaring; ipow(0, 0) == 1.
Complex ipow(Complex base, int exponent) noexcept;

CxVector unit_vector(int dim, int index);

/// Central differences along the real axis of each coordinate. For a
/// holomorphic map this recovers the complex Jacobian to O(h^2).
CxMatrix jacobian(const PointMap& map, const CxVector& z, const ToleranceConfig& cfg);

/// Grid of grid_n points per real axis of every coordinate, restricted to
/// the closed polydisc of the given radius.
std::vector<CxVector> polydisc_grid(double radius, int dim, int grid_n);

/// Max over polydisc_grid(radius, dim, cfg.grid_n) of |f(z) - g(z)|_inf.
double max_deviation(const PointMap& f, const PointMap& g, double radius, int dim,
                     const ToleranceConfig& cfg);

/// Seeded source of sample points. Every verifier takes its points from one
/// of these so a report can be reproduced from its recorded seed.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  int integer(int lo, int hi);
  /// Uniform in the closed disc of radius r.
  Complex in_disc(double r);
  CxVector in_polydisc(int dim, double r);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Random injective map {1..k} -> {1..range}, returned as values for k = 1..K.
std::vector<int> random_injection(int k, int range, std::uint64_t seed);

}  // namespace tameforge
