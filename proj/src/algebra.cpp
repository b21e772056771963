#include "deloc/algebra.hpp"

#include <unordered_map>

namespace deloc {

AlgebraElement::AlgebraElement(Group group, Eigen::Index N) : group_(std::move(group)), N_(N) {
  if (N_ < 1) throw ValidationError("matrix size N must be >= 1");
}

AlgebraElement AlgebraElement::identity(Group group, Eigen::Index N) {
  AlgebraElement a(group, N);
  a.add(group.identity(), Mat::Identity(N, N));
  return a;
}

AlgebraElement AlgebraElement::unit(Group group, Eigen::Index N) {
  AlgebraElement a(std::move(group), N);
  a.lambda_ = 1.0;
  return a;
}

AlgebraElement AlgebraElement::basis(Group group, const Element& g, Mat m) {
  AlgebraElement a(std::move(group), m.rows());
  a.add(g, m);
  return a;
}

Mat AlgebraElement::coeff(const Element& g) const {
  auto it = coeffs_.find(g);
  return it == coeffs_.end() ? Mat::Zero(N_, N_) : it->second;
}

void AlgebraElement::add(const Element& g, const Mat& m) {
  if (m.rows() != N_ || m.cols() != N_) throw StructuralError("coefficient has the wrong size");
  if (!group_.contains(g)) throw StructuralError("support element outside the group");
  auto it = coeffs_.find(g);
  if (it == coeffs_.end()) coeffs_.emplace(g, m);
  else it->second += m;
}

void AlgebraElement::check(const AlgebraElement& o) const {
  if (!(group_ == o.group_)) throw StructuralError("algebra elements over different groups");
  if (N_ != o.N_) throw StructuralError("algebra elements with different matrix sizes");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  check(o);
  for (const auto& [g, m] : o.coeffs_) add(g, m);
  lambda_ += o.lambda_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  check(o);
  for (const auto& [g, m] : o.coeffs_) add(g, -m);
  lambda_ -= o.lambda_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(CD s) {
  for (auto& [g, m] : coeffs_) m *= s;
  lambda_ *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  a.check(b);
  const Group& G = a.group_;
  AlgebraElement out(G, a.N_);
  for (const auto& [g, x] : a.coeffs_)
    for (const auto& [h, y] : b.coeffs_) out.add(G.multiply(g, h), x * y);
  if (b.lambda_ != CD{})
    for (const auto& [g, x] : a.coeffs_) out.add(g, b.lambda_ * x);
  if (a.lambda_ != CD{})
    for (const auto& [h, y] : b.coeffs_) out.add(h, a.lambda_ * y);
  out.lambda_ = a.lambda_ * b.lambda_;
  return out;
}

AlgebraElement AlgebraElement::adjoint() const {
  AlgebraElement out(group_, N_);
  for (const auto& [g, m] : coeffs_) out.add(group_.inverse(g), m.adjoint());
  out.lambda_ = std::conj(lambda_);
  return out;
}

bool AlgebraElement::is_hermitian(double tol) const {
  AlgebraElement d = *this - adjoint();
  return d.max_abs() <= tol;
}

AlgebraElement AlgebraElement::non_scalar() const {
  AlgebraElement out = *this;
  out.lambda_ = 0.0;
  return out;
}

AlgebraElement AlgebraElement::folded() const {
  AlgebraElement out = non_scalar();
  if (lambda_ != CD{}) out.add(group_.identity(), lambda_ * Mat::Identity(N_, N_));
  return out;
}

double AlgebraElement::max_abs() const {
  double m = std::abs(lambda_);
  for (const auto& [g, x] : coeffs_)
    if (x.size() > 0) m = std::max(m, x.cwiseAbs().maxCoeff());
  return m;
}

AlgebraElement AlgebraElement::pruned(double tol) const {
  AlgebraElement out(group_, N_);
  for (const auto& [g, x] : coeffs_)
    if (x.cwiseAbs().maxCoeff() > tol) out.coeffs_.emplace(g, x);
  out.lambda_ = lambda_;
  return out;
}

Mat regular_representation(const AlgebraElement& A) {
  const Group& G = A.group();
  if (!G.is_finite()) throw ComputationError("regular representation needs a finite group");
  const auto elems = G.elements();
  const Eigen::Index N = A.N();
  const auto n = static_cast<Eigen::Index>(elems.size());
  std::unordered_map<Element, Eigen::Index, ElementHash> pos;
  for (Eigen::Index i = 0; i < n; ++i) pos[elems[static_cast<std::size_t>(i)]] = i;
  Mat M = Mat::Zero(n * N, n * N);
  // block(h, g) = A_x with x = h g^{-1}, i.e. h = x g.
  for (const auto& [x, m] : A.coeffs())
    for (Eigen::Index gi = 0; gi < n; ++gi) {
      Eigen::Index hi = pos.at(G.multiply(x, elems[static_cast<std::size_t>(gi)]));
      M.block(hi * N, gi * N, N, N) += m;
    }
  if (A.lambda() != CD{}) M.diagonal().array() += A.lambda();
  return M;
}

AlgebraElement from_regular(const Group& G, Eigen::Index N, const Mat& M) {
  const auto elems = G.elements();
  const auto n = static_cast<Eigen::Index>(elems.size());
  if (M.rows() != n * N || M.cols() != n * N) throw StructuralError("matrix size mismatch");
  std::unordered_map<Element, Eigen::Index, ElementHash> pos;
  for (Eigen::Index i = 0; i < n; ++i) pos[elems[static_cast<std::size_t>(i)]] = i;
  AlgebraElement out(G, N);
  for (const auto& x : elems) {
    Mat acc = Mat::Zero(N, N);
    const Element xinv = G.inverse(x);
    for (Eigen::Index hi = 0; hi < n; ++hi) {
      const Element& h = elems[static_cast<std::size_t>(hi)];
      Eigen::Index gi = pos.at(G.multiply(xinv, h));
      acc += M.block(hi * N, gi * N, N, N);
    }
    acc /= static_cast<double>(n);
    out.add(x, acc);
  }
  return out;
}

AlgebraElement algebra_inverse(const AlgebraElement& A) {
  Mat M = regular_representation(A.folded());
  Eigen::PartialPivLU<Mat> lu(M);
  Mat inv = lu.inverse();
  return from_regular(A.group(), A.N(), inv);
}

CD delocalized_trace(const AlgebraElement& A, const ConjugacyClass& cl) {
  CD acc{};
  for (const auto& [g, m] : A.coeffs())
    if (cl.contains(g)) acc += m.trace();
  return acc;
}

namespace {

struct Slot {
  std::vector<Element> g;
  std::vector<Mat> m;
};

}  // namespace

CD extend_cocycle_eval(const FloatCochain& phi, const std::vector<AlgebraElement>& args,
                       bool unitized) {
  if (static_cast<int>(args.size()) != phi.degree() + 1)
    throw DegreeError("cocycle of degree " + std::to_string(phi.degree()) + " needs " +
                      std::to_string(phi.degree() + 1) + " arguments");
  const Group& G = phi.group();
  std::vector<Slot> slots;
  for (const auto& a : args) {
    if (!(a.group() == G)) throw StructuralError("argument over a different group");
    AlgebraElement b = unitized ? a.non_scalar() : a.folded();
    Slot s;
    for (const auto& [g, m] : b.coeffs()) {
      if (m.cwiseAbs().maxCoeff() == 0.0) continue;
      s.g.push_back(g);
      s.m.push_back(m);
    }
    if (s.g.empty()) return CD{};
    slots.push_back(std::move(s));
  }
  const bool deloc = phi.flavor() == Flavor::CyclicDelocalized && phi.cls();
  const ConjugacyClass* cl = deloc ? phi.cls().get() : nullptr;
  const std::size_t n = slots.size();

  CD total{};
  Tuple t(n);
  std::vector<Element> prefix(n + 1);
  std::vector<Mat> pm(n + 1);
  prefix[0] = G.identity();
  const Eigen::Index N = args.front().N();
  pm[0] = Mat::Identity(N, N);
  std::vector<std::size_t> idx(n, 0);
  // Depth-first over the supports with running products.
  std::size_t depth = 0;
  while (true) {
    if (depth == n) {
      if (!cl || cl->contains(prefix[n])) {
        CD tr = pm[n].trace();
        if (tr != CD{}) total += tr * phi(t);
      }
      --depth;
      ++idx[depth];
    }
    if (idx[depth] == slots[depth].g.size()) {
      if (depth == 0) break;
      idx[depth] = 0;
      --depth;
      ++idx[depth];
      continue;
    }
    t[depth] = slots[depth].g[idx[depth]];
    prefix[depth + 1] = G.multiply(prefix[depth], t[depth]);
    pm[depth + 1] = pm[depth] * slots[depth].m[idx[depth]];
    ++depth;
  }
  return total;
}

ExactElement exact_multiply(const Group& G, const ExactElement& a, const ExactElement& b) {
  ExactElement out;
  for (const auto& [g, x] : a)
    for (const auto& [h, y] : b) out[G.multiply(g, h)] += x * y;
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : ++it;
  return out;
}

QC extend_cocycle_exact(const Cochain& phi, const std::vector<ExactElement>& args) {
  if (static_cast<int>(args.size()) != phi.degree() + 1)
    throw DegreeError("wrong number of arguments for the cocycle degree");
  const Group& G = phi.group();
  const bool deloc = phi.flavor() == Flavor::CyclicDelocalized && phi.cls();
  QC total;
  Tuple t(args.size());
  std::function<void(std::size_t, const Element&, const QC&)> rec =
      [&](std::size_t k, const Element& prod, const QC& coef) {
        if (k == args.size()) {
          if (!deloc || phi.cls()->contains(prod)) total += coef * phi(t);
          return;
        }
        for (const auto& [g, x] : args[k]) {
          t[k] = g;
          rec(k + 1, G.multiply(prod, g), coef * x);
        }
      };
  rec(0, G.identity(), QC(1));
  return total;
}

AlgebraElement to_algebra(const Group& G, const ExactElement& a) {
  AlgebraElement out(G, 1);
  for (const auto& [g, x] : a) out.add(g, Mat::Constant(1, 1, to_complex(x)));
  return out;
}

}  // namespace deloc
