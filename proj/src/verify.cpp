#include "tameforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tameforge/error.hpp"

namespace tameforge {

Check& VerificationReport::add(std::string name, double residual, double tol, bool expected_fail) {
  Check c;
  c.name = std::move(name);
  c.residual = residual;
  c.tol = tol;
  c.pass = residual <= tol;
  c.expected_fail = expected_fail;
  checks.push_back(std::move(c));
  return checks.back();
}

VerificationReport& VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  return *this;
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool VerificationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.expected_fail || c.pass; });
}

std::vector<CxVector> sample_points(int dim, const SampleSpec& spec) {
  Sampler sampler(spec.seed);
  std::vector<CxVector> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) out.push_back(sampler.in_polydisc(dim, spec.radius));
  return out;
}

VerificationReport check_symplectic(const AutoChain& chain, int n, const ToleranceConfig& cfg,
                                    const SampleSpec& samples) {
  auto report = check_symplectic(chain, n, cfg, sample_points(chain.dim(), samples));
  report.sample_seed = samples.seed;
  return report;
}

VerificationReport check_symplectic(const AutoChain& chain, int n, const ToleranceConfig& cfg,
                                    const std::vector<CxVector>& points) {
  if (chain.dim() != 2 * n) {
    throw Error(ErrorKind::DimensionMismatch, "symplectic check needs a chain on C^{2n}");
  }
  const CxMatrix j = symplectic_j(n);
  const PointMap map = chain.as_map();
  double worst = 0.0;
  for (const auto& z : points) {
    const CxMatrix d = jacobian(map, z, cfg);
    const CxMatrix defect = d.transpose() * j * d - j;
    worst = std::max(worst, defect.cwiseAbs().maxCoeff());
  }
  VerificationReport report;
  report.config = cfg;
  report.add("symplectic", worst, cfg.jac_tol);
  return report;
}

VerificationReport check_volume(const AutoChain& chain, const ToleranceConfig& cfg,
                                const SampleSpec& samples) {
  auto report = check_volume(chain, cfg, sample_points(chain.dim(), samples));
  report.sample_seed = samples.seed;
  return report;
}

VerificationReport check_volume(const AutoChain& chain, const ToleranceConfig& cfg,
                                const std::vector<CxVector>& points) {
  const PointMap map = chain.as_map();
  double worst = 0.0;
  for (const auto& z : points) {
    const CxMatrix d = jacobian(map, z, cfg);
    worst = std::max(worst, std::abs(d.determinant() - 1.0));
  }
  VerificationReport report;
  report.config = cfg;
  report.add("volume", worst, cfg.jac_tol);
  return report;
}

VerificationReport verify_tame_action(const AutoChain& chain, const std::vector<CxVector>& points,
                                      const std::vector<CxVector>& images,
                                      const ToleranceConfig& cfg) {
  if (points.size() != images.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(points.size()) + " points vs " +
                                               std::to_string(images.size()) + " images");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    worst = std::max(worst, sup_norm(chain.apply(points[i]) - images[i]));
  }
  VerificationReport report;
  report.config = cfg;
  report.add("tame_action", worst, cfg.residual_tol);
  return report;
}

double round_trip_residual(const AutoChain& chain, const std::vector<CxVector>& points) {
  const AutoChain inv = chain.inverse();
  double worst = 0.0;
  for (const auto& z : points) worst = std::max(worst, sup_norm(inv.apply(chain.apply(z)) - z));
  return worst;
}

}  // namespace tameforge
