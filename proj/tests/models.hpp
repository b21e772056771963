#pragma once

#include <Eigen/Eigenvalues>

#include "deloc/io.hpp"
#include "deloc/orbits.hpp"
#include "deloc/random.hpp"

namespace deloc::testing {

inline Group small_group(std::size_t i) {
  switch (i % 5) {
    case 0: return Group::cyclic(2);
    case 1: return Group::cyclic(3);
    case 2: return Group::cyclic(4);
    case 3: return Group::symmetric3();
    default: return Group::cyclic(5);
  }
}

// D = e (x) I + 2 gamma (x) I on Z/2: spectrum {3, -1}.
inline AlgebraElement z2_operator() {
  Group G = Group::cyclic(2);
  AlgebraElement D = AlgebraElement::identity(G, 1);
  D.add(G.parse("1"), Mat::Constant(1, 1, 2.0));
  return D;
}

// Random Hermitian operator whose spectrum is pushed away from zero by at least
// min_gap. The push goes through the functional calculus, so the spectral
// projections are those of the random operator.
inline AlgebraElement random_gapped_operator(const Group& G, Eigen::Index N, Rng& rng, double min_gap) {
  AlgebraElement A(G, N);
  for (const auto& g : G.elements()) {
    Mat m(N, N);
    for (Eigen::Index r = 0; r < N; ++r)
      for (Eigen::Index c = 0; c < N; ++c) m(r, c) = CD(rng.normal(), rng.normal());
    A.add(g, m);
  }
  AlgebraElement H = (A + A.adjoint()) * CD(0.5);
  SpectralModel sm = eigendecompose(H);
  AlgebraElement D = functional_calculus(sm, [min_gap](double x) {
    return CD(x >= 0 ? x + min_gap : x - min_gap);
  });
  return ((D + D.adjoint()) * CD(0.5)).pruned(1e-14);
}

// Independent oracle: class trace of sign(D) built from the dense representation.
// Complex whenever gamma is not conjugate to its inverse.
inline CD dense_sign_oracle(const AlgebraElement& D, const ConjugacyClass& cl) {
  const Group& G = D.group();
  Mat M = regular_representation(D);
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  Mat S = es.eigenvectors() * es.eigenvalues().cwiseSign().cast<CD>().asDiagonal() * es.eigenvectors().adjoint();
  AlgebraElement sgn = from_regular(G, D.N(), S);
  return delocalized_trace(sgn, cl);
}

}  // namespace deloc::testing
