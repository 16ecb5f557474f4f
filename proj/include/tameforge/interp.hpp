#pragma once

#include <span>
#include <vector>

#include "tameforge/numerics.hpp"

namespace tameforge {

inline constexpr std::size_t kMaxInterpolationNodes = 64;
inline constexpr std::size_t kConditioningWarningNodes = 30;
inline constexpr double kNodeCollisionDistance = 1e-12;

/// Value of a Newton-form evaluation together with the running sum of
/// absolute term magnitudes. The ratio |value| / magnitude tells how much of
/// the result survived cancellation.
struct BoundedValue {
  Complex value;
  double magnitude;
};

/// Polynomial through finitely many prescribed values, kept in Newton form
/// over Leja-ordered nodes. This is the only representation of "an entire
/// function with prescribed values on a discrete set" used in the library.
class Interpolant {
 public:
  /// Throws LengthMismatch, NodeCollision (two nodes closer than 1e-12) or
  /// TooManyNodes (more than 64).
  static Interpolant fit(std::span<const Complex> nodes, std::span<const Complex> values);

  /// Interpolant through (nodes, values) that additionally vanishes on
  /// zero_nodes. Zeros placed inside a compact pull the sup-norm there down.
  static Interpolant fit_damped(std::span<const Complex> nodes, std::span<const Complex> values,
                                std::span<const Complex> zero_nodes);

  Complex operator()(Complex z) const { return eval(z); }
  /// Exactly values()[i] when z == nodes()[i].
  Complex eval(Complex z) const;
  BoundedValue eval_bounded(Complex z) const;
  Complex derivative(Complex z) const;

  Interpolant negated() const;

  std::size_t size() const { return nodes_.size(); }
  int degree() const { return static_cast<int>(nodes_.size()) - 1; }
  bool conditioning_warning() const { return nodes_.size() > kConditioningWarningNodes; }

  /// Nodes and values in the order they were supplied.
  const std::vector<Complex>& nodes() const { return nodes_; }
  const std::vector<Complex>& values() const { return values_; }
  /// Leja permutation: ordered_nodes()[i] == nodes()[ordering()[i]].
  const std::vector<std::size_t>& ordering() const { return order_; }
  const std::vector<Complex>& ordered_nodes() const { return ordered_nodes_; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }

 private:
  Interpolant() = default;

  std::vector<Complex> nodes_;
  std::vector<Complex> values_;
  std::vector<std::size_t> order_;
  std::vector<Complex> ordered_nodes_;
  std::vector<Complex> coeffs_;
};

/// Leja ordering of a node set: start at the node of largest modulus, then
/// repeatedly take the node maximizing the product of distances to those
/// already chosen.
std::vector<std::size_t> leja_order(std::span<const Complex> nodes);

}  // namespace tameforge
