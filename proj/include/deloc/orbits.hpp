#pragma once

#include <unordered_map>
#include <vector>

#include "deloc/cochain.hpp"
#include "deloc/random.hpp"

namespace deloc {

// Orbit bookkeeping for the symmetry conditions of each flavor: cyclic
// rotations with sign, skewness plus homogeneity, and the relative conditions.
// canonicalize() returns the orbit representative and the sign s with
// phi(t) = s * phi(rep) for every cochain of the flavor (s = 0 forces zero).
class OrbitStructure {
 public:
  struct Canon {
    Tuple rep;
    int sign = 0;
  };

  OrbitStructure(Group group, Flavor flavor, ClassPtr cls = nullptr);

  Canon canonicalize(const Tuple& t) const;

  // Finite groups: the canonical representatives of the given degree, sorted.
  std::vector<Tuple> basis(int degree, std::size_t cap = 100000) const;

  const Group& group() const { return group_; }
  Flavor flavor() const { return flavor_; }
  const ClassPtr& cls() const { return cls_; }

 private:
  Canon canonical_cyclic(const Tuple& t) const;
  Canon canonical_homogeneous(const Tuple& t) const;
  Canon canonical_relative(const Tuple& t, bool reduce) const;
  Element coset_min(const Element& g) const;

  Group group_;
  Flavor flavor_;
  ClassPtr cls_;
  std::vector<Element> gamma_powers_;
};

using RepValues = std::unordered_map<Tuple, QC, TupleHash>;

// Cochain determined by its values on orbit representatives.
Cochain orbit_cochain(const OrbitStructure& orbits, int degree, RepValues values);

QC random_rational(Rng& rng, bool complex_part = true);

// Sparse random cochain satisfying the flavor's symmetry conditions.
Cochain random_cochain(const OrbitStructure& orbits, int degree, Rng& rng, std::size_t nonzeros,
                       std::size_t sample_radius = 3);

// Random tuple of the given length; cl-supported when the flavor is delocalized.
Tuple random_tuple(const OrbitStructure& orbits, std::size_t length, Rng& rng,
                   std::size_t sample_radius = 3);

}  // namespace deloc
