#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <gmpxx.h>

#include "deloc/orbits.hpp"

namespace deloc {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Finite-dimensional truncation of a cochain complex over a finite group:
// orbit bases in degrees 0..max_degree+1 and the coboundary matrices between
// them (rows index the target basis, columns the source basis).
struct ComplexTruncation {
  Group group;
  Flavor flavor;
  ClassPtr cls;
  int max_degree = 0;
  std::vector<std::vector<Tuple>> basis;
  std::vector<IntMatrix> coboundary;  // coboundary[n] : C^n -> C^{n+1}
};

ComplexTruncation build_truncation(const OrbitStructure& orbits, int max_degree,
                                   std::size_t cap = 100000);

// Exact rank by fraction-free (Bareiss) elimination over the integers.
template <class Derived>
std::size_t exact_rank(const Eigen::MatrixBase<Derived>& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(rows),
                                        std::vector<mpz_class>(static_cast<std::size_t>(cols)));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      a[i][j] = static_cast<long>(m(i, j));
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (Eigen::Index col = 0; col < cols && static_cast<Eigen::Index>(rank) < rows; ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      for (Eigen::Index j = col + 1; j < cols; ++j) {
        a[i][j] = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

// dim ker(d_n) - dim im(d_{n-1}).
std::size_t cohomology_rank(const ComplexTruncation& trunc, int degree);

}  // namespace deloc
