#include <doctest.h>

#include "deloc/complex_rank.hpp"

using namespace deloc;

namespace {

bool composes_to_zero(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix p = a * b;
  return p.size() == 0 || p.cwiseAbs().maxCoeff() == 0;
}

std::vector<std::size_t> ranks(const OrbitStructure& orbits, int max_degree) {
  ComplexTruncation tr = build_truncation(orbits, max_degree);
  std::vector<std::size_t> out;
  for (int n = 0; n <= max_degree; ++n) out.push_back(cohomology_rank(tr, n));
  return out;
}

}  // namespace

TEST_CASE("exact rank by fraction-free elimination") {
  IntMatrix m(3, 3);
  m << 2, 4, 6, 1, 2, 3, 0, 1, 1;
  CHECK(exact_rank(m) == 2);
  IntMatrix big(4, 5);
  big << 1, 2, 3, 4, 5, 2, 4, 6, 8, 10, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0;
  CHECK(exact_rank(big) == 3);
  CHECK(exact_rank(IntMatrix::Zero(3, 2)) == 0);
  // Large entries stay exact.
  IntMatrix h(2, 2);
  h << 1000000007LL, 999999937LL, 2000000014LL, 1999999874LL;
  CHECK(exact_rank(h) == 1);
}

TEST_CASE("consecutive coboundary matrices compose to zero") {
  for (Group G : {Group::cyclic(3), Group::symmetric3()}) {
    for (Flavor f : {Flavor::Cyclic, Flavor::HomogeneousGroup}) {
      ComplexTruncation tr = build_truncation(OrbitStructure(G, f), 2);
      for (std::size_t n = 0; n + 1 < tr.coboundary.size(); ++n)
        CHECK(composes_to_zero(tr.coboundary[n + 1], tr.coboundary[n]));
    }
    auto cl = std::make_shared<ConjugacyClass>(nontrivial_classes(G).front());
    ComplexTruncation tr = build_truncation(OrbitStructure(G, Flavor::CyclicDelocalized, cl), 3);
    for (std::size_t n = 0; n + 1 < tr.coboundary.size(); ++n)
      CHECK(composes_to_zero(tr.coboundary[n + 1], tr.coboundary[n]));
  }
}

TEST_CASE("delocalized cyclic ranks over finite cyclic groups") {
  Group Z2 = Group::cyclic(2);
  auto cl = std::make_shared<ConjugacyClass>(conjugacy_class(Z2, Z2.parse("1"), 2));
  CHECK(ranks(OrbitStructure(Z2, Flavor::CyclicDelocalized, cl), 2) == std::vector<std::size_t>{1, 0, 1});
  for (int k : {2, 3, 4}) {
    Group G = Group::cyclic(k);
    for (const auto& c : nontrivial_classes(G)) {
      auto cp = std::make_shared<ConjugacyClass>(c);
      CHECK(ranks(OrbitStructure(G, Flavor::CyclicDelocalized, cp), 3) ==
            std::vector<std::size_t>{1, 0, 1, 0});
    }
  }
}

TEST_CASE("group cohomology of finite groups vanishes in positive degrees") {
  for (Group G : {Group::cyclic(3), Group::symmetric3(), Group::dihedral4()}) {
    CHECK(ranks(OrbitStructure(G, Flavor::HomogeneousGroup), 3) == std::vector<std::size_t>{1, 0, 0, 0});
  }
}

TEST_CASE("size cap") {
  Group D4 = Group::dihedral4();
  CHECK_THROWS_AS(build_truncation(OrbitStructure(D4, Flavor::Cyclic), 6, 1000), CapacityError);
}
