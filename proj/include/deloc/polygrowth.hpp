#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "deloc/cochain.hpp"

namespace deloc {

// Shortlex-least z in Z_gamma minimizing d(z, g) subject to d(z, g) <= |g|.
// Candidates satisfy |z| <= 2|g|, so the class must carry its centralizer
// to that radius (or be complete).
Element lex_min_f(const ConjugacyClass& cl, const Element& g);

// f(hz) for the z in Z_gamma minimizing d(hz, f(hz)); ties go to the
// shortlex-least value so every representative of the coset agrees.
Element coset_min_f(const ConjugacyClass& cl, const Element& h);

// Distance between cosets g Z_gamma and h Z_gamma over the enumerated centralizer.
std::size_t coset_distance(const ConjugacyClass& cl, const Element& g, const Element& h);

struct WeightedVertex {
  mpq_class weight;
  Element vertex;
};

struct SimplexPoint {
  std::vector<WeightedVertex> vertices;
  Element coset;  // representative h of h Z_gamma
};

// Vertexwise f, coset slot through coset_min_f. Zero weights are dropped and
// repeated vertices merged, keeping first-appearance order.
SimplexPoint simplex_map_psi(const ConjugacyClass& cl, const SimplexPoint& p);
bool weights_sum_to_one(const SimplexPoint& p);

struct GrowthBound {
  mpq_class R{1, 64};
  std::size_t k = 0;
  std::size_t max_radius_checked = 0;
  double fitted_degree = 0.0;  // log-log slope of shell maxima of |phi|
  bool exhaustive = true;      // false when tuples were sampled
  std::size_t tuples_checked = 0;
  std::optional<Tuple> witness;  // tuple attaining the bound
};

inline constexpr std::size_t kMaxGrowthK = 8;
inline constexpr long kGrowthDenominator = 64;
inline constexpr std::size_t kGrowthTupleCap = 200000;

// Polynomial weight exponent k from the fitted degree of |phi| against the
// largest slot norm, then the least rational R with denominator <= 64 such
// that |phi(t)| <= R prod (1 + |t_i|)^{2k} on every checked tuple.
GrowthBound growth_bound_estimate(const Cochain& phi, std::size_t radius,
                                  std::uint64_t seed = 42);

// Exact re-check of a bound on the given tuples; returns the first violation.
std::optional<Tuple> check_growth_bound(const Cochain& phi, const GrowthBound& bound,
                                        const std::vector<Tuple>& tuples);

struct LipschitzResult {
  mpq_class max_ratio{0};
  std::pair<Element, Element> witness_pair;
  std::size_t pairs = 0;
  bool fixes_centralizer = true;   // f(z) == z on every enumerated z in the ball
  bool equivariant = true;         // f(z g) == z f(g) on sampled z, g
  std::size_t max_norm_ratio_violations = 0;  // count of |f(g)| > 2|g|
};

// Max over pairs g != h in ball(radius) of d(f(g), f(h)) / d(g, h).
LipschitzResult lipschitz_check(const ConjugacyClass& cl, std::size_t radius);

// Same ratio for coset_min_f over pairs of distinct cosets (finite groups).
LipschitzResult coset_lipschitz_check(const ConjugacyClass& cl);

}  // namespace deloc
