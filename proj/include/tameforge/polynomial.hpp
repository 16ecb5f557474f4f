#pragma once

#include <span>
#include <vector>

#include "tameforge/numerics.hpp"

namespace tameforge {

struct Monomial {
  Complex coeff;
  std::vector<int> exponents;
};

/// Sparse multivariate polynomial with complex coefficients.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(int num_vars, std::vector<Monomial> terms);

  static MultiPoly constant(int num_vars, Complex c);

  int num_vars() const { return num_vars_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  Complex eval(std::span<const Complex> z) const;
  MultiPoly partial(int var) const;

  /// (p(z with z[var] = moved) - p(z)) / (moved - z[var]), expanded term by
  /// term so no cancellation occurs. Equals the partial derivative when
  /// moved == z[var].
  Complex divided_difference(std::span<const Complex> z, int var, Complex moved) const;

 private:
  int num_vars_ = 0;
  std::vector<Monomial> terms_;
};

}  // namespace tameforge
