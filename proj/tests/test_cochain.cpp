#include <doctest.h>

#include "deloc/io.hpp"
#include "deloc/orbits.hpp"

using namespace deloc;

namespace {

std::shared_ptr<ConjugacyClass> cls_of(const Group& G, const std::string& gamma) {
  return std::make_shared<ConjugacyClass>(conjugacy_class(G, G.parse(gamma), full_radius(G)));
}

std::vector<Tuple> all_tuples(const Group& G, std::size_t len) { return enumerate_tuples(G, len, nullptr); }

bool zero_on(const Cochain& c, const std::vector<Tuple>& ts) {
  for (const auto& t : ts)
    if (!c(t).is_zero()) return false;
  return true;
}

bool equal_on(const Cochain& a, const Cochain& b, const std::vector<Tuple>& ts) {
  for (const auto& t : ts)
    if (!(a(t) == b(t))) return false;
  return true;
}

// Sampled tuples when full enumeration is too large.
std::vector<Tuple> some_tuples(const Group& G, std::size_t len, Rng& rng, std::size_t cap = 300) {
  const auto elems = G.elements();
  if (std::pow(static_cast<double>(elems.size()), static_cast<double>(len)) <= cap) return all_tuples(G, len);
  std::vector<Tuple> out;
  for (std::size_t s = 0; s < cap; ++s) {
    Tuple t(len);
    for (auto& g : t) g = elems[rng.below(elems.size())];
    out.push_back(t);
  }
  return out;
}

Cochain arbitrary(const Group& G, int degree, Rng& rng, Flavor f = Flavor::HomogeneousGroup,
                  ClassPtr cl = nullptr) {
  const auto elems = G.elements();
  Cochain::Table tab;
  for (int k = 0; k < 10; ++k) {
    Tuple t(static_cast<std::size_t>(degree) + 1);
    for (auto& g : t) g = elems[rng.below(elems.size())];
    tab[t] = random_rational(rng);
  }
  return Cochain::from_table(G, degree, f, tab, cl);
}

}  // namespace

TEST_CASE("cyclic coboundary squares to zero") {
  Rng rng(1);
  for (Group G : {Group::cyclic(2), Group::cyclic(4), Group::symmetric3(), Group::dihedral4()}) {
    for (int n = 0; n <= 2; ++n) {
      OrbitStructure cyc(G, Flavor::Cyclic);
      Cochain phi = random_cochain(cyc, n, rng, 6);
      CHECK(zero_on(cyclic_coboundary(cyclic_coboundary(phi)), some_tuples(G, n + 3, rng)));
      auto cl = std::make_shared<ConjugacyClass>(nontrivial_classes(G).back());
      OrbitStructure del(G, Flavor::CyclicDelocalized, cl);
      Cochain psi = random_cochain(del, n, rng, 6);
      CHECK(zero_on(cyclic_coboundary(cyclic_coboundary(psi)), some_tuples(G, n + 3, rng)));
    }
  }
}

TEST_CASE("group coboundary squares to zero") {
  Rng rng(2);
  for (Group G : {Group::cyclic(3), Group::symmetric3()}) {
    for (int n = 0; n <= 2; ++n) {
      Cochain phi = arbitrary(G, n, rng);
      CHECK(zero_on(group_coboundary(group_coboundary(phi)), some_tuples(G, n + 3, rng)));
    }
  }
}

TEST_CASE("coboundary of degree-zero class functions") {
  Group Z2 = Group::cyclic(2);
  Cochain::Table tab{{{Z2.identity()}, QC(1)}};
  Cochain phi = Cochain::from_table(Z2, 0, Flavor::Cyclic, tab);
  CHECK(zero_on(cyclic_coboundary(phi), all_tuples(Z2, 2)));

  Group S3 = Group::symmetric3();
  Cochain tr = trace_cocycle(cls_of(S3, "(12)"));
  CHECK(zero_on(cyclic_coboundary(tr), all_tuples(S3, 2)));
}

TEST_CASE("group coboundary examples") {
  Group Z2 = Group::cyclic(2);
  Element e = Z2.identity(), g = Z2.parse("1");
  Cochain::Table tab{{{e, g}, QC(1)}, {{g, e}, QC(-1)}};
  Cochain phi = Cochain::from_table(Z2, 1, Flavor::HomogeneousGroup, tab);
  CHECK(group_coboundary(phi)({e, g, e}).is_zero());
  Cochain c(Z2, 0, Flavor::HomogeneousGroup, [](const Tuple&) { return QC(mpq_class(7, 3)); });
  CHECK(zero_on(group_coboundary(c), all_tuples(Z2, 2)));
}

TEST_CASE("coboundary preserves the delocalized subcomplex") {
  Rng rng(3);
  Group S3 = Group::symmetric3();
  auto cl = cls_of(S3, "(123)");
  OrbitStructure del(S3, Flavor::CyclicDelocalized, cl);
  Cochain phi = random_cochain(del, 1, rng, 8);
  Cochain b = cyclic_coboundary(phi);
  for (const auto& t : all_tuples(S3, 3))
    if (!cl->contains(S3.product_of(t))) CHECK(b(t).is_zero());
}

TEST_CASE("cyclic cochains are invariant under the signed shift") {
  Rng rng(4);
  Group D4 = Group::dihedral4();
  for (int n = 0; n <= 3; ++n) {
    Cochain phi = random_cochain(OrbitStructure(D4, Flavor::Cyclic), n, rng, 10);
    CHECK(equal_on(cyclic_operator_t(phi), phi, some_tuples(D4, n + 1, rng)));
  }
}

TEST_CASE("skew symmetrization") {
  Rng rng(5);
  Group S3 = Group::symmetric3();
  Cochain phi = arbitrary(S3, 1, rng);
  Cochain F = skew_symmetrize(phi);
  for (const auto& t : all_tuples(S3, 2)) CHECK(F(t) == (phi(t) - phi({t[1], t[0]})) / 2);
  for (int n = 0; n <= 3; ++n) {
    Cochain psi = arbitrary(S3, n, rng);
    Cochain Fp = skew_symmetrize(psi);
    auto ts = some_tuples(S3, n + 1, rng);
    CHECK(equal_on(skew_symmetrize(Fp), Fp, ts));
    // Skewness: a transposition of the first two slots flips the sign.
    if (n >= 1)
      for (const auto& t : ts) {
        Tuple u = t;
        std::swap(u[0], u[1]);
        CHECK(Fp(u) == -Fp(t));
      }
  }
  Cochain big = Cochain::zero(S3, 7, Flavor::HomogeneousGroup);
  CHECK_THROWS_AS(skew_symmetrize(big), PermutationCapError);
  CHECK_THROWS_AS(skew_symmetrize(Cochain::zero(S3, 1, Flavor::Cyclic)), FlavorError);
}

TEST_CASE("chain homotopy identity") {
  Rng rng(6);
  Group Z2 = Group::cyclic(2);
  Cochain phi = arbitrary(Z2, 1, rng);
  Cochain lhs = skew_symmetrize(phi) - phi;
  Cochain rhs = group_coboundary(chain_homotopy_p(phi)) + chain_homotopy_p(group_coboundary(phi));
  CHECK(equal_on(lhs, rhs, all_tuples(Z2, 2)));

  for (Group G : {Group::cyclic(3), Group::symmetric3()}) {
    for (int n = 1; n <= 4; ++n) {
      Cochain psi = arbitrary(G, n, rng);
      Cochain l = skew_symmetrize(psi) - psi;
      Cochain r = group_coboundary(chain_homotopy_p(psi)) + chain_homotopy_p(group_coboundary(psi));
      CHECK(equal_on(l, r, some_tuples(G, n + 1, rng, 60)));
    }
  }

  Cochain skew = skew_symmetrize(arbitrary(Z2, 2, rng));
  auto ts = all_tuples(Z2, 3);
  CHECK(zero_on(skew_symmetrize(skew) - skew, ts));
  CHECK(zero_on(group_coboundary(chain_homotopy_p(skew)) + chain_homotopy_p(group_coboundary(skew)), ts));
  CHECK(zero_on(chain_homotopy_p(Cochain::zero(Z2, 2, Flavor::HomogeneousGroup)), all_tuples(Z2, 2)));
  CHECK_THROWS_AS(chain_homotopy_p(Cochain::zero(Z2, 0, Flavor::HomogeneousGroup)), DegreeError);
}

TEST_CASE("literal extra slot breaks the homotopy identity") {
  Rng rng(7);
  Group Z2 = Group::cyclic(2);
  bool any_failure = false;
  for (int s = 0; s < 5; ++s) {
    Cochain phi = arbitrary(Z2, 1, rng);
    Cochain l = skew_symmetrize(phi) - phi;
    Cochain r = group_coboundary(chain_homotopy_p(phi, HomotopySlot::RepeatLast)) +
                chain_homotopy_p(group_coboundary(phi), HomotopySlot::RepeatLast);
    any_failure = any_failure || !equal_on(l, r, all_tuples(Z2, 2));
  }
  CHECK(any_failure);
}

TEST_CASE("averaging after inclusion") {
  Group C4 = Group::cyclic(4);
  auto cl = cls_of(C4, "2");
  REQUIRE(cl->order == 2);
  // gamma-invariant alpha: depends on residues mod 2 only.
  Cochain alpha(C4, 0, Flavor::Relative, [](const Tuple& t) { return QC(t[0].c[0] % 2 + 1); }, cl);
  Cochain R = averaging_R(inclusion_iota(alpha));
  for (const auto& t : all_tuples(C4, 1)) CHECK(R(t) == QC(2) * alpha(t));

  Rng rng(8);
  for (Group G : {Group::cyclic(4), Group::cyclic(6)}) {
    for (const auto& c : nontrivial_classes(G)) {
      auto cp = std::make_shared<ConjugacyClass>(c);
      for (int n = 0; n <= 2; ++n) {
        Cochain beta = arbitrary(G, n, rng, Flavor::RelativeNoGamma, cp);
        Cochain Rb = averaging_R(beta);
        for (const auto& t : all_tuples(G, static_cast<std::size_t>(n) + 1)) {
          Tuple u = t;
          u[static_cast<std::size_t>(n)] = G.multiply(cp->gamma, u[static_cast<std::size_t>(n)]);
          CHECK(Rb(u) == Rb(t));
        }
      }
    }
  }
  CHECK(zero_on(averaging_R(Cochain::zero(C4, 1, Flavor::RelativeNoGamma, cl)), all_tuples(C4, 2)));
  Group H = Group::heisenberg();
  auto inf = std::make_shared<ConjugacyClass>(conjugacy_class(H, H.parse("(0,0,1)"), 2));
  CHECK_THROWS_AS(averaging_R(Cochain::zero(H, 0, Flavor::RelativeNoGamma, inf)), UnsupportedOrder);
}

TEST_CASE("explicit delocalized cocycle") {
  Group C4 = Group::cyclic(4);
  auto cl = cls_of(C4, "1");
  Cochain::Table tab{{{C4.identity()}, QC(1)}};
  Cochain alpha = Cochain::from_table(C4, 0, Flavor::Relative, tab, cl);
  Cochain phi = build_delocalized_cocycle(alpha, cl);
  for (const auto& g : C4.elements()) CHECK(phi({g}) == QC(g == C4.parse("1") ? 1 : 0));

  Rng rng(9);
  for (Group G : {Group::cyclic(3), Group::symmetric3(), Group::cyclic(6)}) {
    for (const auto& c : nontrivial_classes(G)) {
      auto cp = std::make_shared<ConjugacyClass>(c);
      OrbitStructure rel(G, Flavor::Relative, cp);
      for (int n = 1; n <= 2; ++n) {
        // A relative coboundary is a relative cocycle.
        Cochain a = group_coboundary(random_cochain(rel, n - 1, rng, 4));
        CHECK(zero_on(group_coboundary(a), some_tuples(G, n + 2, rng)));
        Cochain p = build_delocalized_cocycle(a, cp);
        CHECK(zero_on(cyclic_coboundary(p), some_tuples(G, n + 2, rng)));
        for (const auto& t : some_tuples(G, n + 1, rng))
          if (!cp->contains(G.product_of(t))) CHECK(p(t).is_zero());
      }
    }
  }
}

TEST_CASE("cocycle values do not depend on witnesses within the centralizer coset") {
  Rng rng(10);
  Group S3 = Group::symmetric3();
  auto cl = cls_of(S3, "(12)");
  Cochain a = random_cochain(OrbitStructure(S3, Flavor::Relative, cl), 1, rng, 6);
  Cochain p = build_delocalized_cocycle(a, cl);
  // Shift every witness by gamma, and separately by a centralizer element.
  for (const auto& z : cl->centralizer) {
    auto alt = std::make_shared<ConjugacyClass>(*cl);
    for (auto& h : alt->witnesses) h = S3.multiply(z, h);
    Cochain q = build_delocalized_cocycle(a, alt);
    CHECK(equal_on(p, q, all_tuples(S3, 2)));
  }
}

TEST_CASE("normalization") {
  Rng rng(11);
  Group S3 = Group::symmetric3();
  auto cl = cls_of(S3, "(123)");
  Cochain a = random_cochain(OrbitStructure(S3, Flavor::Relative, cl), 2, rng, 8);
  Cochain p = build_delocalized_cocycle(a, cl);
  Cochain N = normalize_cocycle(p, cl);
  for (const auto& t : all_tuples(S3, 3)) {
    Element y = S3.product_of(t);
    if (!cl->contains(y)) {
      CHECK(N(t).is_zero());
      continue;
    }
    Element h = cl->witness(y);
    CHECK(N(t) == a({h, S3.multiply(h, t[0]), S3.multiply(S3.multiply(h, t[0]), t[1])}));
    if (t[0] == S3.identity() || t[1] == S3.identity()) CHECK(N(t).is_zero());
  }
  CHECK(zero_on(normalize_cocycle(Cochain::zero(S3, 1, Flavor::CyclicDelocalized, cl), cl), all_tuples(S3, 2)));
}

TEST_CASE("truncated classes refuse to guess witnesses") {
  Group H = Group::heisenberg();
  auto cl = std::make_shared<ConjugacyClass>(conjugacy_class(H, H.parse("(1,0,0)"), 1));
  REQUIRE_FALSE(cl->closed);
  Cochain alpha = Cochain::zero(H, 0, Flavor::Relative, cl);
  Cochain phi = build_delocalized_cocycle(alpha, cl);
  CHECK_THROWS_AS(phi({H.parse("(1,0,7)")}), WitnessNotFound);
}

TEST_CASE("periodicity operator") {
  Group Z2 = Group::cyclic(2);
  auto cl = cls_of(Z2, "1");
  Cochain tr = trace_cocycle(cl);
  Cochain S = periodicity_S(tr, true);
  // Two-path oracle: compose beta and b separately.
  Cochain two = connes_beta(cyclic_coboundary(tr)) + cyclic_coboundary(connes_beta(tr));
  for (const auto& t : all_tuples(Z2, 3)) CHECK(S(t) == two(t) / 2);
  CHECK(zero_on(periodicity_S(Cochain::zero(Z2, 0, Flavor::Cyclic), false), all_tuples(Z2, 3)));

  Rng rng(12);
  for (Group G : {Group::cyclic(3), Group::cyclic(4), Group::finite_table({"e", "a", "b", "c"},
                                                                         {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}})}) {
    for (const auto& c : nontrivial_classes(G)) {
      auto cp = std::make_shared<ConjugacyClass>(c);
      Cochain t0 = trace_cocycle(cp);
      Cochain St = periodicity_S(t0, true);
      CHECK(zero_on(cyclic_coboundary(St), all_tuples(G, 4)));
      for (const auto& t : all_tuples(G, 3))
        if (!cp->contains(G.product_of(t))) CHECK(St(t).is_zero());
      // Degree-one oracle for the double-sum expansion of b beta and beta b.
      Cochain psi = random_cochain(OrbitStructure(G, Flavor::CyclicDelocalized, cp), 1, rng, 4);
      auto ts = all_tuples(G, 4);
      CHECK(equal_on(b_beta(psi), cyclic_coboundary(connes_beta(psi)), ts));
      CHECK(equal_on(beta_b(psi), connes_beta(cyclic_coboundary(psi)), ts));
    }
  }
}

TEST_CASE("flavor and degree checks") {
  Group Z2 = Group::cyclic(2);
  CHECK_THROWS_AS(cyclic_coboundary(Cochain::zero(Z2, 0, Flavor::HomogeneousGroup)), FlavorError);
  CHECK_THROWS_AS(group_coboundary(Cochain::zero(Z2, 0, Flavor::Cyclic)), FlavorError);
  CHECK_THROWS_AS(Cochain::zero(Z2, 1, Flavor::Cyclic)({Z2.identity()}), DegreeError);
  CHECK_THROWS_AS(Cochain::zero(Z2, 0, Flavor::CyclicDelocalized), ValidationError);
  CHECK_THROWS_AS(Cochain::zero(Z2, 0, Flavor::Cyclic) + Cochain::zero(Z2, 1, Flavor::Cyclic), DegreeError);
}
