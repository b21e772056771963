#include "deloc/pairings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace deloc {

using std::numbers::pi;

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

constexpr unsigned kMaxDepth = kQuadratureMaxDepth;
constexpr double kTermination = 1e-15;

double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double sgn_pow(int m) { return m % 2 ? -1.0 : 1.0; }

void check_m(int m) {
  if (m < 0 || m > kMaxPairingM)
    throw ValidationError("m must be in 0.." + std::to_string(kMaxPairingM));
}

AlgebraElement minus_identity(const AlgebraElement& a) {
  return a.folded() - AlgebraElement::identity(a.group(), a.N());
}

// 1 + (a - e): the same operator written against the adjoined unit.
AlgebraElement as_unitized(const AlgebraElement& a) {
  AlgebraElement out = minus_identity(a);
  out.set_lambda(1.0);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Every tuple of the given length whose product lies in the class, or every
// tuple when the cochain is not delocalized; sampled past the cap.
std::vector<Tuple> cocycle_test_tuples(const Cochain& phi, std::size_t len) {
  const Group& G = phi.group();
  const auto elems = G.elements();
  std::vector<Tuple> out;
  double total = std::pow(static_cast<double>(elems.size()), static_cast<double>(len));
  if (total > 2e5) {
    std::uint64_t state = 0x243f6a8885a308d3ull;
    for (int s = 0; s < 4000; ++s) {
      Tuple t(len);
      for (auto& g : t) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        g = elems[(state >> 33) % elems.size()];
      }
      out.push_back(std::move(t));
    }
    return out;
  }
  std::vector<std::size_t> idx(len, 0);
  Tuple t(len);
  while (true) {
    for (std::size_t k = 0; k < len; ++k) t[k] = elems[idx[k]];
    if (phi.flavor() != Flavor::CyclicDelocalized || phi.cls()->contains(G.product_of(t)))
      out.push_back(t);
    std::size_t k = 0;
    while (k < len && ++idx[k] == elems.size()) idx[k++] = 0;
    if (k == len) break;
  }
  return out;
}

void require_cocycle(const Cochain& phi) {
  Cochain b = cyclic_coboundary(phi);
  for (const auto& t : cocycle_test_tuples(phi, static_cast<std::size_t>(phi.degree()) + 2))
    if (!b(t).is_zero()) throw ValidationError("input cochain is not a cocycle");
}

}  // namespace

bool PairingReport::passed() const {
  for (const auto& c : checks)
    if (c.required && !c.passed) return false;
  return true;
}

void PairingReport::add_check(std::string name, CD lhs, CD rhs, double tolerance, bool required) {
  IdentityCheck c{std::move(name), lhs, rhs, std::abs(lhs - rhs), tolerance, false, required};
  c.passed = c.diff <= tolerance;
  checks.push_back(std::move(c));
}

namespace {

// Bisection over Gauss-Kronrod panels against an absolute target; the panel
// tree depends only on the integrand, so results are reproducible.
void adaptive_panel(const std::function<CD(double)>& f, double a, double b, double target,
                    unsigned depth, CD& value, double& error) {
  double err = 0.0;
  CD v = GK::integrate(f, a, b, 0, 0.0, &err);
  if (err <= target || depth == kMaxDepth) {
    value += v;
    error += err;
    return;
  }
  const double mid = 0.5 * (a + b);
  adaptive_panel(f, a, mid, target / 2, depth + 1, value, error);
  adaptive_panel(f, mid, b, target / 2, depth + 1, value, error);
}

}  // namespace

Quadrature integrate_interval(const std::function<CD(double)>& f, double a, double b, double tol) {
  Quadrature q;
  adaptive_panel(f, a, b, std::max(tol * 1e-3, kTermination), 0, q.value, q.error);
  q.T = b;
  if (!(q.error <= tol))
    throw ConvergenceFailure("quadrature error " + fmt(q.error) + " above tolerance " + fmt(tol) +
                             " on [" + fmt(a) + ", " + fmt(b) + "]");
  return q;
}

Quadrature integrate_half_line(const std::function<CD(double)>& f, double gap, double tol) {
  if (!(gap > 0)) throw GapError("half-line quadrature needs a positive gap");
  double C = 0.0;
  for (int k = 0; k <= 64; ++k) C = std::max(C, std::abs(f(k / 64.0)));
  double T = 1.0;
  if (C > tol) T = std::max(1.0, 2.0 * std::sqrt(std::log(C / tol)) / gap);
  Quadrature head = integrate_interval(f, 0.0, 1.0, tol / 2);
  Quadrature q = head;
  if (T > 1.0) {
    Quadrature tail = integrate_interval(f, 1.0, T, tol / 2);
    q.value += tail.value;
    q.error += tail.error;
  }
  q.T = T;
  return q;
}

CD eta_integrand(const FloatCochain& phi, const SpectralModel& model, int m, double t) {
  check_m(m);
  if (phi.degree() != 2 * m) throw DegreeError("eta needs a cocycle of degree 2m");
  auto pt = eta_path_u(model, t);
  std::vector<AlgebraElement> args{pt.du_u_inv};
  AlgebraElement a = minus_identity(pt.u), b = minus_identity(pt.u_inv);
  for (int k = 0; k < m; ++k) {
    args.push_back(a);
    args.push_back(b);
  }
  return extend_cocycle_eval(phi, args, false);
}

PairingReport eta_invariant(const FloatCochain& phi_in, const SpectralModel& model, int m, double tol) {
  check_m(m);
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  if (phi_in.degree() != 2 * m) throw DegreeError("eta needs a cocycle of degree 2m");
  model.require_gap();
  FloatCochain phi = phi_in.memoized();
  const CD coef = factorial(m) / CD(0.0, pi);
  auto f = [&](double t) { return eta_integrand(phi, model, m, t); };
  Quadrature q = integrate_half_line(f, model.gap, tol / std::abs(coef));

  PairingReport r;
  r.invariant = "eta";
  r.value = coef * q.value;
  r.error = q.error * std::abs(coef);
  r.T = q.T;
  r.tol = tol;
  r.provenance["m"] = std::to_string(m);
  r.provenance["gap"] = fmt(model.gap);

  // Gaussian tail shape: |f(t)| <= C exp(-(t^2 - 1) gap^2 / 2) past t = 1.
  double C = 0.0;
  for (int k = 0; k <= 64; ++k) C = std::max(C, std::abs(f(k / 64.0)));
  double worst = 0.0;
  for (double t : {1.25, 1.5, 2.0, 3.0, 4.0}) {
    double bound = C * std::exp(-(t * t - 1.0) * model.gap * model.gap / 2.0);
    worst = std::max(worst, std::abs(f(t)) - bound);
  }
  r.add_check("integrand_gaussian_decay", std::max(worst, 0.0), 0.0, 1e-14);
  return r;
}

CD eta_sign_sum(const SpectralModel& model, const Element& gamma) {
  const auto& mult = model.multiplicities_of(gamma);
  CD s = 0.0;
  for (std::size_t j = 0; j < model.eigenvalues.size(); ++j)
    s += (model.eigenvalues[j] > 0 ? 1.0 : -1.0) * mult[j];
  return s;
}

PairingReport eta_from_spectrum(const SpectrumFile& s, const std::string& class_id, double tol) {
  check_spectrum(s, true);
  if (std::find(s.classes.begin(), s.classes.end(), class_id) == s.classes.end())
    throw ValidationError("class " + class_id + " not listed in the spectrum");
  PairingReport r;
  r.invariant = "eta";
  r.tol = tol;
  r.provenance["source"] = "spectrum";
  r.provenance["class"] = class_id;
  if (s.modes.empty()) return r;
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& md : s.modes) gap = std::min(gap, std::abs(md.lambda));
  auto f = [&](double t) {
    CD acc{};
    for (const auto& md : s.modes) {
      auto it = md.mult.find(class_id);
      if (it == md.mult.end()) continue;
      acc += CD(0.0, 2.0 * std::sqrt(pi)) * it->second * md.lambda *
             std::exp(-t * t * md.lambda * md.lambda);
    }
    return acc;
  };
  const CD coef = 1.0 / CD(0.0, pi);
  Quadrature q = integrate_half_line(f, gap, tol / std::abs(coef));
  r.value = coef * q.value;
  r.error = q.error * std::abs(coef);
  r.T = q.T;
  double sign_sum = 0.0;
  for (const auto& md : s.modes) {
    auto it = md.mult.find(class_id);
    if (it != md.mult.end()) sign_sum += (md.lambda > 0 ? 1.0 : -1.0) * it->second;
  }
  r.add_check("sign_sum", r.value, sign_sum, std::max(tol, 1e-12));
  return r;
}

AlgebraElement InvertiblePath::at(double t) const {
  switch (kind) {
    case PathKind::Connecting:
      return eval(std::min(t, 1.0)).w;
    case PathKind::Rho:
      if (t <= 0.0) return eval(std::numeric_limits<double>::infinity()).w;
      return eval(1.0 / t).w;
    case PathKind::Sampled:
      break;
  }
  auto it = std::lower_bound(grid.begin(), grid.end(), t);
  if (it == grid.end()) return samples.back();
  return samples[static_cast<std::size_t>(it - grid.begin())];
}

std::string path_kind_name(PathKind k) {
  switch (k) {
    case PathKind::Sampled:
      return "none";
    case PathKind::Connecting:
      return "connecting";
    case PathKind::Rho:
      return "rho";
  }
  return "none";
}

void check_idempotent(const AlgebraElement& p, double tol) {
  double defect;
  if (p.group().is_finite()) {
    Mat P = regular_representation(p.folded());
    defect = (P * P - P).norm();
  } else {
    AlgebraElement q = p.folded();
    defect = (q * q - q).max_abs();
  }
  if (!(defect < tol)) throw NotIdempotentError("p^2 - p has norm " + fmt(defect));
}

InvertiblePath connecting_path(const AlgebraElement& p_in) {
  check_idempotent(p_in);
  AlgebraElement p = p_in.folded();
  InvertiblePath path;
  path.kind = PathKind::Connecting;
  path.s_end = 1.0;
  path.orientation = "exp(2 pi i (1-t) p)";
  const Group G = p.group();
  const Eigen::Index N = p.N();
  path.eval = [p, G, N](double s) {
    s = std::clamp(s, 0.0, 1.0);
    const double theta = 2.0 * pi * (1.0 - s);
    const CD e = std::exp(CD(0.0, theta));
    AlgebraElement w = p * (e - 1.0);
    w.set_lambda(1.0);
    AlgebraElement wi = p * (std::conj(e) - 1.0);
    wi.set_lambda(1.0);
    AlgebraElement d = p * CD(0.0, -2.0 * pi);
    if (s >= 1.0) d = AlgebraElement(G, N);
    return PathPoint{w, wi, d};
  };
  for (int k = 0; k <= 8; ++k) path.grid.push_back(k / 8.0);
  return path;
}

InvertiblePath rho_path(const SpectralModel& model, bool inverse) {
  model.require_gap();
  InvertiblePath path;
  path.kind = PathKind::Rho;
  path.s_end = std::numeric_limits<double>::infinity();
  path.sign = -1.0;
  path.gap = model.gap;
  path.orientation = inverse ? "U^-1" : "U";
  const SpectralModel* mp = &model;
  const double dir = inverse ? -1.0 : 1.0;
  path.eval = [mp, dir](double r) {
    const Group& G = mp->D.group();
    const Eigen::Index N = mp->D.N();
    if (std::isinf(r)) {
      AlgebraElement one = AlgebraElement::unit(G, N);
      return PathPoint{one, one, AlgebraElement(G, N)};
    }
    const CD i2pi(0.0, 2.0 * pi * dir);
    AlgebraElement u = functional_calculus(*mp, [&](double x) { return std::exp(i2pi * normalizing_F(r, x)); });
    AlgebraElement ui = functional_calculus(*mp, [&](double x) { return std::exp(-i2pi * normalizing_F(r, x)); });
    AlgebraElement d = functional_calculus(*mp, [&](double x) {
      return dir * CD(0.0, 2.0 * std::sqrt(pi)) * x * std::exp(-r * r * x * x);
    });
    return PathPoint{as_unitized(u), as_unitized(ui), d};
  };
  for (double t : {0.0, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) path.grid.push_back(t);
  return path;
}

InvertiblePath sampled_path(std::vector<double> grid, std::vector<AlgebraElement> samples) {
  if (grid.size() != samples.size() || grid.size() < 3)
    throw ValidationError("sampled path needs at least 3 matching grid points and samples");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ValidationError("grid must be strictly increasing");
  if (grid.front() != 0.0) throw ValidationError("grid must start at t = 0");
  const AlgebraElement& w0 = samples.front();
  if ((w0.folded() - AlgebraElement::identity(w0.group(), w0.N())).max_abs() > 1e-10)
    throw ValidationError("path must start at the unit");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Mat M = regular_representation(samples[i].folded());
    Eigen::JacobiSVD<Mat> svd(M);
    if (svd.singularValues().minCoeff() <= 1e-8)
      throw ComputationError("sample " + std::to_string(i) + " is not invertible");
  }
  InvertiblePath path;
  path.kind = PathKind::Sampled;
  path.s_end = grid.back();
  path.fd_step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  path.orientation = "as sampled";
  path.grid = std::move(grid);
  path.samples = std::move(samples);
  return path;
}

namespace {

// Derivative of the samples: five-point stencil on uniform stretches, three-point
// otherwise, one-sided at the ends.
std::vector<AlgebraElement> sample_derivatives(const InvertiblePath& path) {
  const auto& x = path.grid;
  const auto& y = path.samples;
  const std::size_t n = x.size();
  std::vector<AlgebraElement> d;
  auto uniform = [&](std::size_t a, std::size_t b) {
    const double h = x[a + 1] - x[a];
    for (std::size_t i = a + 1; i < b; ++i)
      if (std::abs((x[i + 1] - x[i]) - h) > 1e-12 * std::max(1.0, h)) return false;
    return true;
  };
  for (std::size_t i = 0; i < n; ++i) {
    AlgebraElement yi = y[i].folded();
    if (i >= 2 && i + 2 < n && uniform(i - 2, i + 2)) {
      const double h = x[i + 1] - x[i];
      d.push_back((y[i - 2].folded() - y[i + 2].folded() + (y[i + 1].folded() - y[i - 1].folded()) * 8.0) *
                  (1.0 / (12.0 * h)));
    } else if (i == 0) {
      const double h1 = x[1] - x[0], h2 = x[2] - x[0];
      // second-order one-sided
      CD a = -(h1 + h2) / (h1 * h2), b = h2 / (h1 * (h2 - h1)), c = -h1 / (h2 * (h2 - h1));
      d.push_back(yi * a + y[1].folded() * b + y[2].folded() * c);
    } else if (i == n - 1) {
      const double h1 = x[n - 1] - x[n - 2], h2 = x[n - 1] - x[n - 3];
      CD a = (h1 + h2) / (h1 * h2), b = -h2 / (h1 * (h2 - h1)), c = h1 / (h2 * (h2 - h1));
      d.push_back(yi * a + y[n - 2].folded() * b + y[n - 3].folded() * c);
    } else {
      const double hm = x[i] - x[i - 1], hp = x[i + 1] - x[i];
      CD a = -hp / (hm * (hm + hp)), b = (hp - hm) / (hm * hp), c = hm / (hp * (hm + hp));
      d.push_back(y[i - 1].folded() * a + yi * b + y[i + 1].folded() * c);
    }
  }
  return d;
}

}  // namespace

PairingReport determinant_tau(const FloatCochain& phi_in, const InvertiblePath& path, int m, double tol) {
  check_m(m);
  if (phi_in.degree() != 2 * m) throw DegreeError("tau needs a cocycle of degree 2m");
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  FloatCochain phi = phi_in.memoized();
  const CD coef = sgn_pow(m) * factorial(m) / CD(0.0, pi);
  auto integrand = [&](const PathPoint& p) {
    std::vector<AlgebraElement> args{p.w_inv_dw};
    for (int k = 0; k < m; ++k) {
      args.push_back(p.w_inv);
      args.push_back(p.w);
    }
    return extend_cocycle_eval(phi, args, true);
  };

  PairingReport r;
  r.invariant = "tau";
  r.tol = tol;
  r.provenance["path"] = path_kind_name(path.kind);
  r.provenance["orientation"] = path.orientation;
  r.provenance["m"] = std::to_string(m);
  Quadrature q;
  if (path.kind == PathKind::Sampled) {
    auto d = sample_derivatives(path);
    std::vector<CD> vals;
    for (std::size_t i = 0; i < path.grid.size(); ++i) {
      AlgebraElement w = path.samples[i].folded();
      AlgebraElement wi = algebra_inverse(w);
      vals.push_back(integrand({as_unitized(w), as_unitized(wi), wi * d[i]}));
    }
    CD trap{}, simpson{};
    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
      trap += 0.5 * (path.grid[i + 1] - path.grid[i]) * (vals[i] + vals[i + 1]);
    bool odd_uniform = vals.size() % 2 == 1;
    for (std::size_t i = 0; odd_uniform && i + 2 < vals.size(); i += 2) {
      double h0 = path.grid[i + 1] - path.grid[i], h1 = path.grid[i + 2] - path.grid[i + 1];
      if (std::abs(h0 - h1) > 1e-12) odd_uniform = false;
      simpson += h0 / 3.0 * (vals[i] + 4.0 * vals[i + 1] + vals[i + 2]);
    }
    q.value = odd_uniform ? simpson : trap;
    q.error = odd_uniform ? std::abs(simpson - trap) : 0.0;
    q.T = path.grid.back();
    r.provenance["derivative"] = "finite differences";
    r.provenance["step"] = fmt(path.fd_step);
  } else {
    auto f = [&](double s) { return path.sign * integrand(path.eval(s)); };
    q = std::isinf(path.s_end) ? integrate_half_line(f, path.gap, tol / std::abs(coef))
                               : integrate_interval(f, 0.0, path.s_end, tol / std::abs(coef));
    r.provenance["derivative"] = "analytic";
    if (path.kind == PathKind::Rho) r.provenance["variable"] = "r = 1/t";
  }
  r.value = coef * q.value;
  r.error = q.error * std::abs(coef);
  r.T = q.T;
  return r;
}

CD chern_character(const FloatCochain& phi, const AlgebraElement& p, int m) {
  check_m(m);
  if (phi.degree() != 2 * m) throw DegreeError("ch needs a cocycle of degree 2m");
  check_idempotent(p);
  std::vector<AlgebraElement> args(static_cast<std::size_t>(2 * m + 1), p.folded());
  return sgn_pow(m) * factorial(2 * m) / factorial(m) * extend_cocycle_eval(phi, args, false);
}

bool is_idempotent_exact(const Group& G, const ExactElement& p) {
  return exact_multiply(G, p, p) == p;
}

QC chern_character_exact(const Cochain& phi, const ExactElement& p, int m) {
  if (m < 0) throw ValidationError("m must be >= 0");
  if (phi.degree() != 2 * m) throw DegreeError("ch needs a cocycle of degree 2m");
  if (!is_idempotent_exact(phi.group(), p)) throw NotIdempotentError("p is not idempotent");
  std::vector<ExactElement> args(static_cast<std::size_t>(2 * m + 1), p);
  long coef = 1;
  for (int k = m + 1; k <= 2 * m; ++k) coef *= k;
  if (m % 2) coef = -coef;
  return QC(coef) * extend_cocycle_exact(phi, args);
}

PairingReport verify_transgression(const Cochain& phi, const SpectralModel& model, int m,
                                   const std::vector<double>& grid, double step) {
  if (m < 1 || m > kMaxPairingM) throw ValidationError("transgression needs 1 <= m <= 2");
  if (phi.degree() != 2 * m - 1) throw DegreeError("transgression needs a cochain of degree 2m-1");
  model.require_gap();
  FloatCochain bphi = to_float(cyclic_coboundary(phi)).memoized();
  FloatCochain fphi = to_float(phi).memoized();
  auto G = [&](double t) {
    auto pt = eta_path_u(model, t);
    AlgebraElement a = minus_identity(pt.u), b = minus_identity(pt.u_inv);
    std::vector<AlgebraElement> args;
    for (int k = 0; k < m; ++k) {
      args.push_back(a);
      args.push_back(b);
    }
    return extend_cocycle_eval(fphi, args, false);
  };
  PairingReport r;
  r.invariant = "transgression";
  r.tol = 1e-6;
  r.provenance["m"] = std::to_string(m);
  r.provenance["step"] = fmt(step);
  double worst = 0.0;
  CD worst_l{}, worst_r{};
  for (double t : grid) {
    CD lhs = static_cast<double>(m) * eta_integrand(bphi, model, m, t);
    CD rhs = (-G(t + 2 * step) + 8.0 * G(t + step) - 8.0 * G(t - step) + G(t - 2 * step)) /
             (12.0 * step);
    if (std::abs(lhs - rhs) >= worst) {
      worst = std::abs(lhs - rhs);
      worst_l = lhs;
      worst_r = rhs;
    }
  }
  r.value = worst;
  r.add_check("pointwise", worst_l, worst_r, 1e-6);
  PairingReport eb = eta_invariant(bphi, model, m, 1e-9);
  r.add_check("eta_of_coboundary", eb.value, 0.0, 1e-6);
  return r;
}

PairingReport verify_s_invariance(const Cochain& phi, const SpectralModel& model, int m,
                                  const std::vector<ExactElement>& idempotents, double tol) {
  if (m < 0 || m + 1 > kMaxPairingM) throw ValidationError("S-invariance supports m in 0..1");
  if (phi.degree() != 2 * m) throw DegreeError("S-invariance needs a cocycle of degree 2m");
  if (phi.flavor() != Flavor::CyclicDelocalized)
    throw FlavorError("S-invariance needs a cyclic-delocalized cocycle");
  require_cocycle(phi);
  Cochain S = periodicity_S(phi, true);
  PairingReport r;
  r.invariant = "s_invariance";
  r.tol = tol;
  r.provenance["m"] = std::to_string(m);
  PairingReport e0 = eta_invariant(to_float(phi), model, m, tol * 1e-2);
  PairingReport e1 = eta_invariant(to_float(S), model, m + 1, tol * 1e-2);
  r.value = e1.value - e0.value;
  r.error = e0.error + e1.error;
  r.add_check("eta", e1.value, e0.value, tol);
  r.add_check("eta_negated", e1.value, -e0.value, tol, false);
  for (std::size_t i = 0; i < idempotents.size(); ++i) {
    QC c0 = chern_character_exact(phi, idempotents[i], m);
    QC c1 = chern_character_exact(S, idempotents[i], m + 1);
    r.add_check("ch[" + std::to_string(i) + "]", to_complex(c1), to_complex(c0), 0.0);
    r.checks.back().passed = (c0 == c1);
  }
  return r;
}

AlgebraElement negative_projection(const SpectralModel& model) {
  AlgebraElement p(model.D.group(), model.D.N());
  for (std::size_t j = 0; j < model.eigenvalues.size(); ++j)
    if (model.eigenvalues[j] < 0) p += model.projections[j];
  return p;
}

PairingReport aps_model_check(const Cochain& phi, const AlgebraElement& p, const SpectralModel& model,
                              int m, double tol) {
  check_m(m);
  if (phi.degree() != 2 * m) throw DegreeError("APS check needs a cocycle of degree 2m");
  FloatCochain f = to_float(phi).memoized();
  const double c = sgn_pow(m + 1) / 2.0;
  PairingReport r;
  r.invariant = "aps_model";
  r.tol = tol;
  r.provenance["m"] = std::to_string(m);
  r.provenance["coefficient"] = fmt(c);

  CD ch = chern_character(f, p, m);
  PairingReport tau = determinant_tau(f, connecting_path(p), m, tol * 1e-2);
  CD eta_standin = sgn_pow(m) * tau.value;
  r.value = ch;
  r.error = tau.error;
  r.add_check("connecting_stand_in", ch, c * eta_standin, tol);

  AlgebraElement pm = negative_projection(model);
  CD ch_minus = chern_character(f, pm, m);
  PairingReport eta = eta_invariant(f, model, m, tol * 1e-2);
  r.add_check("negative_spectral_projection", ch_minus, c * eta.value, tol);
  return r;
}

std::string csv_header() { return "invariant,group,gamma,m,value_re,value_im,err,T,passed"; }

std::string csv_row(const PairingReport& r, const std::string& group, const std::string& gamma, int m) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  return r.invariant + "," + quote(group) + "," + quote(gamma) + "," + std::to_string(m) + "," +
         fmt(r.value.real()) + "," + fmt(r.value.imag()) + "," + fmt(r.error) + "," + fmt(r.T) + "," +
         (r.passed() ? "true" : "false");
}

}  // namespace deloc
