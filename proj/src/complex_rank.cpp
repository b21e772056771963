#include "deloc/complex_rank.hpp"

#include <map>

namespace deloc {

ComplexTruncation build_truncation(const OrbitStructure& orbits, int max_degree, std::size_t cap) {
  if (max_degree < 0) throw DegreeError("max degree must be >= 0");
  ComplexTruncation tr{orbits.group(), orbits.flavor(), orbits.cls(), max_degree, {}, {}};
  for (int n = 0; n <= max_degree + 1; ++n) tr.basis.push_back(orbits.basis(n, cap));

  const Group& G = tr.group;
  const bool cyclic = is_cyclic(tr.flavor);
  for (int n = 0; n <= max_degree; ++n) {
    const auto& src = tr.basis[n];
    const auto& dst = tr.basis[n + 1];
    std::map<Tuple, Eigen::Index> col_of;
    for (std::size_t j = 0; j < src.size(); ++j) col_of.emplace(src[j], static_cast<Eigen::Index>(j));
    IntMatrix d = IntMatrix::Zero(static_cast<Eigen::Index>(dst.size()),
                                  static_cast<Eigen::Index>(src.size()));
    for (std::size_t r = 0; r < dst.size(); ++r) {
      const Tuple& T = dst[r];
      for (std::size_t i = 0; i < T.size(); ++i) {
        Tuple face = cyclic ? cyclic_face(G, T, i) : delete_slot(T, i);
        auto c = orbits.canonicalize(face);
        if (c.sign == 0) continue;
        auto it = col_of.find(c.rep);
        if (it == col_of.end()) continue;
        d(static_cast<Eigen::Index>(r), it->second) += alt(i) * c.sign;
      }
    }
    tr.coboundary.push_back(std::move(d));
  }
  return tr;
}

std::size_t cohomology_rank(const ComplexTruncation& trunc, int degree) {
  if (degree < 0 || degree > trunc.max_degree)
    throw DegreeError("degree outside the truncation");
  std::size_t dim = trunc.basis[degree].size();
  std::size_t rank_out = exact_rank(trunc.coboundary[degree]);
  std::size_t rank_in = degree > 0 ? exact_rank(trunc.coboundary[degree - 1]) : 0;
  return dim - rank_out - rank_in;
}

}  // namespace deloc
