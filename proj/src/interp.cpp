#include "tameforge/interp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tameforge/error.hpp"

namespace tameforge {

std::vector<std::size_t> leja_order(std::span<const Complex> nodes) {
  const std::size_t n = nodes.size();
  std::vector<std::size_t> order;
  order.reserve(n);
  if (n == 0) return order;

  std::vector<bool> used(n, false);
  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(nodes[i]) > std::abs(nodes[first])) first = i;
  }
  order.push_back(first);
  used[first] = true;

  // log of the distance product to the chosen set; sums avoid overflow
  std::vector<double> score(n, 0.0);
  for (std::size_t step = 1; step < n; ++step) {
    const Complex last = nodes[order.back()];
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      score[i] += std::log(std::abs(nodes[i] - last));
      if (best == n || score[i] > score[best]) best = i;
    }
    order.push_back(best);
    used[best] = true;
  }
  return order;
}

namespace {

void check_distinct(std::span<const Complex> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!is_finite(nodes[i])) throw Error(ErrorKind::NonFiniteEvaluation, "interpolation node");
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (std::abs(nodes[i] - nodes[j]) <= kNodeCollisionDistance) {
        throw Error(ErrorKind::NodeCollision,
                    "interpolation nodes " + std::to_string(i) + " and " + std::to_string(j) +
                        " coincide");
      }
    }
  }
}

}  // namespace

Interpolant Interpolant::fit(std::span<const Complex> nodes, std::span<const Complex> values) {
  if (nodes.size() != values.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(nodes.size()) + " nodes vs " +
                                               std::to_string(values.size()) + " values");
  }
  if (nodes.empty()) throw Error(ErrorKind::LengthMismatch, "interpolant needs at least one node");
  if (nodes.size() > kMaxInterpolationNodes) {
    throw Error(ErrorKind::TooManyNodes, std::to_string(nodes.size()) + " nodes exceed the cap of " +
                                             std::to_string(kMaxInterpolationNodes));
  }
  check_distinct(nodes);

  Interpolant p;
  p.nodes_.assign(nodes.begin(), nodes.end());
  p.values_.assign(values.begin(), values.end());
  p.order_ = leja_order(nodes);

  const std::size_t n = nodes.size();
  p.ordered_nodes_.resize(n);
  p.coeffs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.ordered_nodes_[i] = nodes[p.order_[i]];
    p.coeffs_[i] = values[p.order_[i]];
  }
  // in-place divided differences
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      p.coeffs_[i] = (p.coeffs_[i] - p.coeffs_[i - 1]) /
                     (p.ordered_nodes_[i] - p.ordered_nodes_[i - level]);
    }
  }
  return p;
}

Interpolant Interpolant::fit_damped(std::span<const Complex> nodes,
                                    std::span<const Complex> values,
                                    std::span<const Complex> zero_nodes) {
  if (nodes.size() != values.size()) {
    throw Error(ErrorKind::LengthMismatch, "fit_damped: nodes and values differ in length");
  }
  std::vector<Complex> all_nodes(nodes.begin(), nodes.end());
  std::vector<Complex> all_values(values.begin(), values.end());
  all_nodes.insert(all_nodes.end(), zero_nodes.begin(), zero_nodes.end());
  all_values.resize(all_nodes.size(), Complex(0.0));
  return fit(all_nodes, all_values);
}

Complex Interpolant::eval(Complex z) const {
  // at a node the polynomial is the prescribed value
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] == z) return values_[i];
  }
  const std::size_t n = coeffs_.size();
  Complex acc = coeffs_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) acc = coeffs_[i] + (z - ordered_nodes_[i]) * acc;
  return acc;
}

BoundedValue Interpolant::eval_bounded(Complex z) const {
  const std::size_t n = coeffs_.size();
  Complex acc = coeffs_[n - 1];
  double mag = std::abs(acc);
  for (std::size_t i = n - 1; i-- > 0;) {
    const double factor = std::abs(z - ordered_nodes_[i]);
    acc = coeffs_[i] + (z - ordered_nodes_[i]) * acc;
    mag = std::abs(coeffs_[i]) + factor * mag;
  }
  return {acc, mag};
}

Complex Interpolant::derivative(Complex z) const {
  const std::size_t n = coeffs_.size();
  Complex acc = coeffs_[n - 1];
  Complex dacc = 0.0;
  for (std::size_t i = n - 1; i-- > 0;) {
    dacc = acc + (z - ordered_nodes_[i]) * dacc;
    acc = coeffs_[i] + (z - ordered_nodes_[i]) * acc;
  }
  return dacc;
}

Interpolant Interpolant::negated() const {
  Interpolant p = *this;
  for (auto& v : p.values_) v = -v;
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

}  // namespace tameforge
