#include "tameforge/polynomial.hpp"

#include <string>

#include "tameforge/error.hpp"

namespace tameforge {

MultiPoly::MultiPoly(int num_vars, std::vector<Monomial> terms)
    : num_vars_(num_vars), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (static_cast<int>(t.exponents.size()) != num_vars_) {
      throw Error(ErrorKind::InvalidArgument,
                  "monomial has " + std::to_string(t.exponents.size()) + " exponents, expected " +
                      std::to_string(num_vars_));
    }
    for (int e : t.exponents) {
      if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
    }
  }
}

MultiPoly MultiPoly::constant(int num_vars, Complex c) {
  return MultiPoly(num_vars, {Monomial{c, std::vector<int>(static_cast<std::size_t>(num_vars), 0)}});
}

Complex MultiPoly::eval(std::span<const Complex> z) const {
  Complex sum = 0.0;
  for (const auto& t : terms_) {
    Complex term = t.coeff;
    for (int i = 0; i < num_vars_; ++i) term *= ipow(z[i], t.exponents[i]);
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::partial(int var) const {
  std::vector<Monomial> out;
  for (const auto& t : terms_) {
    const int e = t.exponents[var];
    if (e == 0) continue;
    Monomial d = t;
    d.coeff *= static_cast<double>(e);
    d.exponents[var] = e - 1;
    out.push_back(std::move(d));
  }
  return MultiPoly(num_vars_, std::move(out));
}

Complex MultiPoly::divided_difference(std::span<const Complex> z, int var, Complex moved) const {
  const Complex old = z[var];
  Complex sum = 0.0;
  for (const auto& t : terms_) {
    const int e = t.exponents[var];
    if (e == 0) continue;
    Complex rest = t.coeff;
    for (int i = 0; i < num_vars_; ++i) {
      if (i != var) rest *= ipow(z[i], t.exponents[i]);
    }
    // (u^e - v^e)/(u - v) = sum_j u^j v^(e-1-j)
    Complex dd = 0.0;
    Complex upow = 1.0;
    for (int j = 0; j < e; ++j) {
      dd += upow * ipow(old, e - 1 - j);
      upow *= moved;
    }
    sum += rest * dd;
  }
  return sum;
}

}  // namespace tameforge
