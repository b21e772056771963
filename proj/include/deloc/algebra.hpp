#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "deloc/cochain.hpp"

namespace deloc {

using Mat = Eigen::MatrixXcd;

// Element of CG (x) M_N with an optional adjoined unit: sum_g g (x) A_g + lambda 1.
// Coefficients live in an ordered map so every traversal is deterministic.
class AlgebraElement {
 public:
  AlgebraElement(Group group, Eigen::Index N);

  static AlgebraElement identity(Group group, Eigen::Index N);  // e (x) I
  static AlgebraElement unit(Group group, Eigen::Index N);      // adjoined unit, lambda = 1
  static AlgebraElement basis(Group group, const Element& g, Mat m);

  const Group& group() const { return group_; }
  Eigen::Index N() const { return N_; }
  const std::map<Element, Mat>& coeffs() const { return coeffs_; }
  CD lambda() const { return lambda_; }
  void set_lambda(CD l) { lambda_ = l; }

  Mat coeff(const Element& g) const;
  void add(const Element& g, const Mat& m);

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(CD s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, CD s) { return a *= s; }
  friend AlgebraElement operator*(CD s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

  // (A*)_g = (A_{g^{-1}})^dagger, lambda conjugated.
  AlgebraElement adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;

  // Non-scalar part only (lambda dropped), and lambda folded into e (x) I.
  AlgebraElement non_scalar() const;
  AlgebraElement folded() const;

  double max_abs() const;
  AlgebraElement pruned(double tol = 0.0) const;

 private:
  void check(const AlgebraElement& o) const;

  Group group_;
  Eigen::Index N_;
  std::map<Element, Mat> coeffs_;
  CD lambda_{0.0, 0.0};
};

// Dense action on l^2(G) (x) C^N: block (h, g) = A_{h g^{-1}}; lambda adds lambda I.
Mat regular_representation(const AlgebraElement& A);

// Inverse of the regular representation on its image: A_x = (1/|G|) sum_h block(h, x^{-1} h).
AlgebraElement from_regular(const Group& G, Eigen::Index N, const Mat& M);

// Inverse inside the algebra via the representation.
AlgebraElement algebra_inverse(const AlgebraElement& A);

// sum_{g in cl} trace(A_g); lambda never contributes since e is not in cl.
CD delocalized_trace(const AlgebraElement& A, const ConjugacyClass& cl);

// sum over tuples in the supports of trace(A_0(g_0)...A_n(g_n)) phi(g_0..g_n),
// restricted to products in cl(gamma) for delocalized cochains. Unitized mode
// drops every lambda first; otherwise lambda is folded into e (x) I.
CD extend_cocycle_eval(const FloatCochain& phi, const std::vector<AlgebraElement>& args,
                       bool unitized);

// Exact scalar group-algebra elements (N = 1) for rational pairings.
using ExactElement = std::map<Element, QC>;
ExactElement exact_multiply(const Group& G, const ExactElement& a, const ExactElement& b);
QC extend_cocycle_exact(const Cochain& phi, const std::vector<ExactElement>& args);
AlgebraElement to_algebra(const Group& G, const ExactElement& a);

}  // namespace deloc
