#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "deloc/spectral.hpp"

namespace deloc {

struct IdentityCheck {
  std::string name;
  CD lhs;
  CD rhs;
  double diff = 0.0;
  double tol = 0.0;
  bool passed = false;
  bool required = true;  // informational checks never fail a report
};

struct PairingReport {
  std::string invariant;
  CD value;
  double error = 0.0;  // quadrature error estimate
  double T = 0.0;      // tail cutoff (0 when not applicable)
  double tol = 0.0;
  std::vector<IdentityCheck> checks;
  std::map<std::string, std::string> provenance;

  bool passed() const;
  void add_check(std::string name, CD lhs, CD rhs, double tol, bool required = true);
};

struct Quadrature {
  CD value;
  double error = 0.0;
  double T = 0.0;
};

// Gauss-Kronrod on [0,1] and [1,T], T = 2 sqrt(ln(C/tol))/gap with C the
// integrand's maximum on [0,1]; convergence failure if the estimate exceeds tol.
Quadrature integrate_half_line(const std::function<CD(double)>& f, double gap, double tol);
Quadrature integrate_interval(const std::function<CD(double)>& f, double a, double b, double tol);

inline constexpr int kMaxPairingM = 2;
inline constexpr unsigned kQuadratureMaxDepth = 20;  // bisection levels per interval

// phi(udot u^{-1} (x) ((u - 1) (x) (u^{-1} - 1))^{(x) m}) at parameter t.
CD eta_integrand(const FloatCochain& phi, const SpectralModel& model, int m, double t);

// m!/(pi i) times the integral of the integrand over (0, inf).
PairingReport eta_invariant(const FloatCochain& phi, const SpectralModel& model, int m, double tol);

// Sign-sum oracle for m = 0 and phi the class trace: sum_j sign(lambda_j) m_j^gamma.
CD eta_sign_sum(const SpectralModel& model, const Element& gamma);

// Trace pairing straight from an ingested spectrum.
PairingReport eta_from_spectrum(const SpectrumFile& s, const std::string& class_id, double tol);

struct PathPoint {
  AlgebraElement w;         // unitized: lambda carries the unit
  AlgebraElement w_inv;
  AlgebraElement w_inv_dw;  // w^{-1} dw/ds in the integration variable
};

enum class PathKind { Sampled, Connecting, Rho };

// A path of invertibles starting at the unit. Analytic paths carry an
// evaluator in the integration variable s; rho paths integrate in r = 1/t,
// which flips the orientation of the parameter (sign = -1).
struct InvertiblePath {
  PathKind kind = PathKind::Sampled;
  std::vector<double> grid;
  std::vector<AlgebraElement> samples;
  std::function<PathPoint(double)> eval;
  double s_end = 1.0;  // infinity for rho paths
  double sign = 1.0;
  double gap = 0.0;    // tail decay rate for infinite paths
  std::string orientation;
  double fd_step = 0.0;  // recorded when derivatives come from differences

  // Path value at the original parameter t.
  AlgebraElement at(double t) const;
};

std::string path_kind_name(PathKind k);

void check_idempotent(const AlgebraElement& p, double tol = 1e-8);

// w(t) = exp(2 pi i (1-t) p) on [0,1], unit afterwards.
InvertiblePath connecting_path(const AlgebraElement& p);

// U(t) = exp(2 pi i psi(D/t)); inverse = true gives U^{-1}.
InvertiblePath rho_path(const SpectralModel& model, bool inverse = false);

// Grid samples with differences for derivatives; validates start and invertibility.
InvertiblePath sampled_path(std::vector<double> grid, std::vector<AlgebraElement> samples);

// (-1)^m m!/(pi i) integral of phi-bar(w^{-1} w' (x) (w^{-1} (x) w)^{(x) m}).
PairingReport determinant_tau(const FloatCochain& phi, const InvertiblePath& path, int m, double tol);

// (-1)^m (2m)!/m! phi(p^{(x) 2m+1}).
CD chern_character(const FloatCochain& phi, const AlgebraElement& p, int m);
QC chern_character_exact(const Cochain& phi, const ExactElement& p, int m);
bool is_idempotent_exact(const Group& G, const ExactElement& p);

// Max over the grid of |m eta_{b phi}(D,t) - d/dt phi((u-1)(x)(u^{-1}-1))^{(x)m}|.
PairingReport verify_transgression(const Cochain& phi, const SpectralModel& model, int m,
                                   const std::vector<double>& grid, double step = 1e-3);

// eta and ch of phi against those of S phi (degree raised by two, m by one).
PairingReport verify_s_invariance(const Cochain& phi, const SpectralModel& model, int m,
                                  const std::vector<ExactElement>& idempotents, double tol);

// ch(p) against ((-1)^{m+1}/2) eta, once with the connecting path of p standing
// in for the rho path and once with p the negative spectral projection of D.
PairingReport aps_model_check(const Cochain& phi, const AlgebraElement& p, const SpectralModel& model,
                              int m, double tol);

AlgebraElement negative_projection(const SpectralModel& model);

std::string csv_header();
std::string csv_row(const PairingReport& r, const std::string& group, const std::string& gamma, int m);

}  // namespace deloc
