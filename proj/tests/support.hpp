#pragma once

#include "doctest.h"
#include "tameforge/error.hpp"
#include "tameforge/numerics.hpp"

namespace tftest {

inline tameforge::ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const tameforge::Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return tameforge::ErrorKind::InvalidArgument;
}

inline tameforge::CxVector vec(std::initializer_list<tameforge::Complex> xs) {
  tameforge::CxVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

inline double dist(const tameforge::CxVector& a, const tameforge::CxVector& b) {
  return tameforge::sup_norm(a - b);
}

}  // namespace tftest
