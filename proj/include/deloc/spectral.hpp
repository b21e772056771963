#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "deloc/algebra.hpp"

namespace deloc {

inline constexpr double kClusterTol = 1e-10;
inline constexpr double kMinGap = 1e-6;

struct SpectralModel {
  AlgebraElement D;
  Mat rep;
  std::vector<double> eigenvalues{};  // clustered, ascending
  std::vector<std::size_t> cluster_sizes{};
  std::vector<AlgebraElement> projections{};
  double gap = 0.0;
  std::vector<ClassPtr> classes{};                     // nontrivial classes of the group
  std::vector<std::vector<CD>> multiplicities{};  // [class][eigenvalue] = tr_gamma(P_j), complex off real classes

  std::size_t class_index(const Element& gamma) const;
  const std::vector<CD>& multiplicities_of(const Element& gamma) const;
  void require_gap() const;
};

SpectralModel eigendecompose(const AlgebraElement& D);

// sum_j f(lambda_j) P_j.
AlgebraElement functional_calculus(const SpectralModel& model, const std::function<CD(double)>& f);

// F_t(x) = (1 + erf(t x)) / 2 and u_t = exp(2 pi i F_t).
double normalizing_F(double t, double x);

struct EtaPathPoint {
  AlgebraElement u;
  AlgebraElement u_inv;
  AlgebraElement du_u_inv;  // closed form 2 i sqrt(pi) x exp(-t^2 x^2)
};

EtaPathPoint eta_path_u(const SpectralModel& model, double t);

// Spectrum ingestion: eigenvalues with per-class delocalized multiplicities.
struct SpectrumMode {
  double lambda = 0.0;
  std::map<std::string, double> mult;

  friend bool operator==(const SpectrumMode&, const SpectrumMode&) = default;
};

struct SpectrumFile {
  std::vector<std::string> classes;
  std::vector<SpectrumMode> modes;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const SpectrumFile&, const SpectrumFile&) = default;
};

// Zero eigenvalues are rejected when the spectrum is headed for eta.
void check_spectrum(const SpectrumFile& s, bool for_eta);

}  // namespace deloc
