#include "deloc/spectral.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace deloc {

std::size_t SpectralModel::class_index(const Element& gamma) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i]->contains(gamma)) return i;
  throw ValidationError("no nontrivial class contains " + D.group().name(gamma));
}

const std::vector<CD>& SpectralModel::multiplicities_of(const Element& gamma) const {
  return multiplicities[class_index(gamma)];
}

void SpectralModel::require_gap() const {
  if (gap < kMinGap)
    throw GapError("spectral gap " + std::to_string(gap) + " below " + std::to_string(kMinGap));
}

SpectralModel eigendecompose(const AlgebraElement& D) {
  const Group& G = D.group();
  if (!G.is_finite()) throw ComputationError("eigendecompose needs a finite group");
  if (!D.is_hermitian(1e-12)) throw ValidationError("operator D is not Hermitian");

  SpectralModel model{.D = D, .rep = regular_representation(D)};
  Eigen::SelfAdjointEigenSolver<Mat> es(model.rep);
  if (es.info() != Eigen::Success) throw ComputationError("eigensolver failed");
  const auto& vals = es.eigenvalues();
  const Mat& vecs = es.eigenvectors();

  // Eigenvalues arrive ascending; cluster neighbours closer than the tolerance.
  Eigen::Index start = 0;
  const Eigen::Index dim = vals.size();
  while (start < dim) {
    Eigen::Index end = start + 1;
    while (end < dim && vals(end) - vals(end - 1) < kClusterTol) ++end;
    double lam = vals.segment(start, end - start).mean();
    Mat V = vecs.middleCols(start, end - start);
    Mat P = V * V.adjoint();
    model.eigenvalues.push_back(lam);
    model.cluster_sizes.push_back(static_cast<std::size_t>(end - start));
    model.projections.push_back(from_regular(G, D.N(), P));
    start = end;
  }
  model.gap = std::numeric_limits<double>::infinity();
  for (double l : model.eigenvalues) model.gap = std::min(model.gap, std::abs(l));
  if (model.eigenvalues.empty()) model.gap = 0.0;

  for (auto& c : nontrivial_classes(G)) {
    auto cl = std::make_shared<const ConjugacyClass>(std::move(c));
    std::vector<CD> m;
    for (const auto& P : model.projections) m.push_back(delocalized_trace(P, *cl));
    model.classes.push_back(cl);
    model.multiplicities.push_back(std::move(m));
  }
  return model;
}

AlgebraElement functional_calculus(const SpectralModel& model, const std::function<CD(double)>& f) {
  AlgebraElement out(model.D.group(), model.D.N());
  for (std::size_t j = 0; j < model.eigenvalues.size(); ++j)
    out += model.projections[j] * f(model.eigenvalues[j]);
  return out;
}

double normalizing_F(double t, double x) { return 0.5 * (1.0 + std::erf(t * x)); }

EtaPathPoint eta_path_u(const SpectralModel& model, double t) {
  model.require_gap();
  using std::numbers::pi;
  const CD i2pi(0.0, 2.0 * pi);
  auto u = [&](double x) { return std::exp(i2pi * normalizing_F(t, x)); };
  auto uinv = [&](double x) { return std::exp(-i2pi * normalizing_F(t, x)); };
  auto du = [&](double x) {
    return CD(0.0, 2.0 * std::sqrt(pi)) * x * std::exp(-t * t * x * x);
  };
  return {functional_calculus(model, u), functional_calculus(model, uinv),
          functional_calculus(model, du)};
}

void check_spectrum(const SpectrumFile& s, bool for_eta) {
  for (std::size_t j = 0; j < s.modes.size(); ++j) {
    if (!std::isfinite(s.modes[j].lambda))
      throw ValidationError("modes[" + std::to_string(j) + "].lambda is not finite");
    if (for_eta && s.modes[j].lambda == 0.0)
      throw GapError("modes[" + std::to_string(j) + "].lambda is zero; eta needs invertibility");
    for (const auto& [id, m] : s.modes[j].mult) {
      bool known = false;
      for (const auto& c : s.classes) known = known || c == id;
      if (!known)
        throw ValidationError("modes[" + std::to_string(j) + "].mult." + id + " is not a listed class");
    }
  }
}

}  // namespace deloc
