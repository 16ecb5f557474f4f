#include "tameforge/autochain.hpp"

#include <cmath>
#include <string>

#include "tameforge/error.hpp"

namespace tameforge {

namespace {

Complex dot(const CxVector& a, const CxVector& b) { return (a.transpose() * b)(0, 0); }

CxVector j_times(const CxVector& v, int n) {
  CxVector out(2 * n);
  for (int j = 0; j < n; ++j) {
    out[j] = v[n + j];
    out[n + j] = -v[j];
  }
  return out;
}

constexpr std::uint64_t kKernelProbeSeed = 0x6b65726e656cULL;

}  // namespace

// ---- ScalarFn ---------------------------------------------------------------

Complex ScalarFn::operator()(Complex s) const {
  if (const auto* f = affine()) return f->slope * s + f->offset;
  return std::get<Interpolant>(impl_).eval(s);
}

Complex ScalarFn::derivative(Complex s) const {
  if (const auto* f = affine()) return f->slope;
  return std::get<Interpolant>(impl_).derivative(s);
}

ScalarFn ScalarFn::negated() const {
  if (const auto* f = affine()) return AffineFn{-f->slope, -f->offset};
  return std::get<Interpolant>(impl_).negated();
}

// ---- ShearPrimitive ---------------------------------------------------------

ShearPrimitive::ShearPrimitive(CxVector direction, CxVector functional, ScalarFn fn)
    : v_(std::move(direction)), lambda_(std::move(functional)), fn_(std::move(fn)) {
  if (v_.size() == 0 || v_.size() != lambda_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "shear direction and functional differ in size");
  }
  if (v_.isZero(0.0)) throw Error(ErrorKind::ZeroDirection, "shear direction is zero");
  const double pairing = std::abs(dot(lambda_, v_));
  if (pairing > 1e-12) {
    throw Error(ErrorKind::InvalidArgument,
                "shear functional does not annihilate its direction (|lambda.v| = " +
                    std::to_string(pairing) + ")");
  }
  if (v_.size() % 2 == 0) {
    const int n = static_cast<int>(v_.size() / 2);
    forstneric_ = (lambda_ - j_times(v_, n)).isZero(0.0);
  }
}

CxVector ShearPrimitive::apply(const CxVector& z) const {
  return z + fn_(dot(lambda_, z)) * v_;
}

ShearPrimitive ShearPrimitive::inverse() const {
  return ShearPrimitive(v_, lambda_, fn_.negated());
}

// ---- FlowPrimitive ----------------------------------------------------------

FlowPrimitive::FlowPrimitive(Generator gen, Complex time, FlowParams params)
    : gen_(gen), time_(AffineFn::constant(time)), params_(std::move(params)), constant_(true) {
  lambda_ = CxVector::Zero(generator_dim(gen_, params_));
}

FlowPrimitive::FlowPrimitive(Generator gen, ScalarFn time, CxVector functional, FlowParams params)
    : gen_(gen),
      time_(std::move(time)),
      lambda_(std::move(functional)),
      params_(std::move(params)),
      constant_(false) {
  const int dim = generator_dim(gen_, params_);
  if (lambda_.size() != dim) {
    throw Error(ErrorKind::DimensionMismatch, "flow time functional has the wrong size");
  }
  Sampler sampler(kKernelProbeSeed);
  for (int i = 0; i < 10; ++i) {
    CxVector p = sampler.in_polydisc(dim, 1.0);
    if (gen_ == Generator::ProductY || gen_ == Generator::GizPsi) {
      if (std::abs(p[1]) < 0.1) p[1] += 0.5;
    }
    const CxVector q = flow_point(gen_, 0.1, p, params_);
    const double drift = std::abs(dot(lambda_, q) - dot(lambda_, p));
    if (!(drift <= 1e-9)) {
      throw Error(ErrorKind::NotKernelInvariant,
                  "time argument moves along the flow of " + std::string(to_string(gen_)) +
                      " (drift " + std::to_string(drift) + ")");
    }
  }
}

Complex FlowPrimitive::time_at(const CxVector& p) const {
  if (constant_) return time_(0.0);
  return time_(dot(lambda_, p));
}

CxVector FlowPrimitive::apply(const CxVector& p) const {
  return flow_point(gen_, time_at(p), p, params_);
}

FlowPrimitive FlowPrimitive::inverse() const {
  FlowPrimitive out;
  out.gen_ = gen_;
  out.time_ = time_.negated();
  out.lambda_ = lambda_;
  out.params_ = params_;
  out.constant_ = constant_;
  return out;
}

// ---- LiftPrimitive ----------------------------------------------------------

LiftPrimitive::LiftPrimitive(int dim, std::vector<int> indices, AutoChain inner)
    : dim_(dim), indices_(std::move(indices)) {
  if (static_cast<int>(indices_.size()) != inner.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "lift indices do not match the inner chain");
  }
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0 || indices_[i] >= dim_) {
      throw Error(ErrorKind::InvalidArgument, "lift index out of range");
    }
    for (std::size_t j = i + 1; j < indices_.size(); ++j) {
      if (indices_[i] == indices_[j]) throw Error(ErrorKind::InvalidArgument, "repeated lift index");
    }
  }
  inner_ = std::make_shared<const AutoChain>(std::move(inner));
}

CxVector LiftPrimitive::apply(const CxVector& z) const {
  CxVector sub(static_cast<Eigen::Index>(indices_.size()));
  for (std::size_t i = 0; i < indices_.size(); ++i) sub[static_cast<Eigen::Index>(i)] = z[indices_[i]];
  const CxVector moved = inner_->apply(sub);
  CxVector out = z;
  for (std::size_t i = 0; i < indices_.size(); ++i) out[indices_[i]] = moved[static_cast<Eigen::Index>(i)];
  return out;
}

LiftPrimitive LiftPrimitive::inverse() const {
  return LiftPrimitive(dim_, indices_, inner_->inverse());
}

// ---- AutoChain --------------------------------------------------------------

int primitive_dim(const Primitive& p) {
  return std::visit([](const auto& prim) { return prim.dim(); }, p);
}

CxVector apply_primitive(const Primitive& p, const CxVector& z) {
  return std::visit([&z](const auto& prim) { return prim.apply(z); }, p);
}

AutoChain::AutoChain(int dim) : dim_(dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "chain dimension must be positive");
}

AutoChain& AutoChain::push(Primitive p) {
  if (primitive_dim(p) != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                "primitive of dim " + std::to_string(primitive_dim(p)) + " in chain of dim " +
                    std::to_string(dim_));
  }
  primitives_.push_back(std::move(p));
  return *this;
}

AutoChain& AutoChain::then(const AutoChain& next) {
  if (next.dim() != dim_) throw Error(ErrorKind::DimensionMismatch, "composing chains of different dim");
  primitives_.insert(primitives_.end(), next.primitives_.begin(), next.primitives_.end());
  return *this;
}

CxVector AutoChain::apply(const CxVector& z) const { return apply_prefix(z, primitives_.size()); }

CxVector AutoChain::apply_prefix(const CxVector& z, std::size_t count) const {
  if (z.size() != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                "point of dim " + std::to_string(z.size()) + " for chain of dim " + std::to_string(dim_));
  }
  CxVector p = z;
  for (std::size_t i = 0; i < count && i < primitives_.size(); ++i) {
    p = apply_primitive(primitives_[i], p);
    require_finite(p, "chain application");
  }
  return p;
}

AutoChain AutoChain::inverse() const {
  AutoChain out(dim_);
  for (auto it = primitives_.rbegin(); it != primitives_.rend(); ++it) {
    out.primitives_.push_back(
        std::visit([](const auto& prim) -> Primitive { return prim.inverse(); }, *it));
  }
  return out;
}

PointMap AutoChain::as_map() const {
  return [chain = *this](const CxVector& z) { return chain.apply(z); };
}

CxVector apply(const AutoChain& chain, const CxVector& z) { return chain.apply(z); }

AutoChain inverse(const AutoChain& chain) { return chain.inverse(); }

CxMatrix symplectic_j(int n) {
  CxMatrix j = CxMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return j;
}

ShearPrimitive make_forstneric_shear(const CxVector& v, ScalarFn f, int n) {
  if (n < 1 || v.size() != 2 * n) {
    throw Error(ErrorKind::DimensionMismatch, "Forstneric shear needs a direction in C^{2n}");
  }
  if (v.isZero(0.0)) throw Error(ErrorKind::ZeroDirection, "Forstneric shear direction is zero");
  return ShearPrimitive(v, j_times(v, n), std::move(f));
}

}  // namespace tameforge
