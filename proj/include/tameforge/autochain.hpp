#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "tameforge/flows.hpp"
#include "tameforge/interp.hpp"
#include "tameforge/numerics.hpp"

namespace tameforge {

/// s -> slope * s + offset. Covers the identity and constants that the
/// constructions use next to interpolants.
struct AffineFn {
  Complex slope = 0.0;
  Complex offset = 0.0;

  static AffineFn identity() { return {1.0, 0.0}; }
  static AffineFn constant(Complex c) { return {0.0, c}; }
};

class ScalarFn {
 public:
  ScalarFn(AffineFn f) : impl_(f) {}          // NOLINT(google-explicit-constructor)
  ScalarFn(Interpolant f) : impl_(std::move(f)) {}  // NOLINT(google-explicit-constructor)

  Complex operator()(Complex s) const;
  Complex derivative(Complex s) const;
  ScalarFn negated() const;

  const AffineFn* affine() const { return std::get_if<AffineFn>(&impl_); }
  const Interpolant* interpolant() const { return std::get_if<Interpolant>(&impl_); }

 private:
  std::variant<AffineFn, Interpolant> impl_;
};

/// z -> z + fn(lambda . z) v with lambda . v = 0, so lambda . z is constant
/// along the shear and the inverse is the same shear with -fn.
class ShearPrimitive {
 public:
  /// Throws InvalidArgument when |lambda . v| > 1e-12 or the sizes differ,
  /// ZeroDirection when v = 0.
  ShearPrimitive(CxVector direction, CxVector functional, ScalarFn fn);

  int dim() const { return static_cast<int>(v_.size()); }
  const CxVector& direction() const { return v_; }
  const CxVector& functional() const { return lambda_; }
  const ScalarFn& fn() const { return fn_; }
  /// True iff dim is even and lambda == J v.
  bool forstneric() const { return forstneric_; }

  CxVector apply(const CxVector& z) const;
  ShearPrimitive inverse() const;

 private:
  CxVector v_;
  CxVector lambda_;
  ScalarFn fn_;
  bool forstneric_ = false;
};

/// Flow of a complete field for a time that is either constant or
/// fn(lambda . p), where lambda . p must be constant along the field.
class FlowPrimitive {
 public:
  /// Constant time.
  FlowPrimitive(Generator gen, Complex time, FlowParams params = {});
  /// Function-valued time. Throws NotKernelInvariant when lambda . p moves
  /// by more than 1e-9 after flowing time 0.1 from 10 seeded points.
  FlowPrimitive(Generator gen, ScalarFn time, CxVector functional, FlowParams params = {});

  int dim() const { return generator_dim(gen_, params_); }
  Generator generator() const { return gen_; }
  const ScalarFn& time() const { return time_; }
  const CxVector& functional() const { return lambda_; }
  const FlowParams& params() const { return params_; }
  bool constant_time() const { return constant_; }

  Complex time_at(const CxVector& p) const;
  CxVector apply(const CxVector& p) const;
  FlowPrimitive inverse() const;

 private:
  FlowPrimitive() = default;
  Generator gen_ = Generator::V;
  ScalarFn time_ = AffineFn{};
  CxVector lambda_;
  FlowParams params_;
  bool constant_ = true;
};

class AutoChain;

/// Runs a lower-dimensional chain on selected coordinates, identity elsewhere.
class LiftPrimitive {
 public:
  LiftPrimitive(int dim, std::vector<int> indices, AutoChain inner);

  int dim() const { return dim_; }
  const std::vector<int>& indices() const { return indices_; }
  const AutoChain& inner() const { return *inner_; }

  CxVector apply(const CxVector& z) const;
  LiftPrimitive inverse() const;

 private:
  int dim_;
  std::vector<int> indices_;
  std::shared_ptr<const AutoChain> inner_;
};

using Primitive = std::variant<ShearPrimitive, FlowPrimitive, LiftPrimitive>;

int primitive_dim(const Primitive& p);
CxVector apply_primitive(const Primitive& p, const CxVector& z);

/// Automorphism as an ordered list of invertible primitives; primitives()[0]
/// is applied first. Never stores the composite.
class AutoChain {
 public:
  explicit AutoChain(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return primitives_.size(); }
  bool empty() const { return primitives_.empty(); }
  const std::vector<Primitive>& primitives() const { return primitives_; }

  AutoChain& push(Primitive p);
  /// Appends the primitives of `next`, so the result applies *this first.
  AutoChain& then(const AutoChain& next);

  /// Throws DimensionMismatch or NonFiniteEvaluation.
  CxVector apply(const CxVector& z) const;
  /// Applies only the first `count` primitives.
  CxVector apply_prefix(const CxVector& z, std::size_t count) const;
  AutoChain inverse() const;
  PointMap as_map() const;

 private:
  int dim_;
  std::vector<Primitive> primitives_;
};

CxVector apply(const AutoChain& chain, const CxVector& z);
AutoChain inverse(const AutoChain& chain);

/// The 2n x 2n matrix [[0, I], [-I, 0]].
CxMatrix symplectic_j(int n);

/// z -> z + f(z^T J v) v on C^{2n}. Throws ZeroDirection for v = 0 and
/// DimensionMismatch unless v has 2n entries.
ShearPrimitive make_forstneric_shear(const CxVector& v, ScalarFn f, int n);

}  // namespace tameforge
