#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "deloc/group.hpp"

namespace deloc {

// A conjugacy class enumerated within a radius, with shortlex-minimal
// conjugating witnesses and the centralizer over the same ball.
struct ConjugacyClass {
  Group group;
  Element gamma;
  std::uint64_t order = 0;  // 0 means infinite (iteration cap reached)
  std::size_t radius = 0;
  std::vector<Element> members{};    // discovery order; members[0] == gamma
  std::vector<Element> witnesses{};  // witnesses[i]^{-1} gamma witnesses[i] == members[i]
  std::vector<Element> centralizer{};
  bool nontrivial = false;
  bool complete = false;  // finite group, ball covers the whole group
  bool closed = false;    // members are stable under conjugation by generators

  bool contains(const Element& g) const;
  const Element& witness(const Element& member) const;
  std::size_t index_of(const Element& member) const;

  std::unordered_map<Element, std::size_t, ElementHash> lookup{};
};

inline constexpr std::uint64_t kOrderCap = 10'000;

std::uint64_t element_order(const Group& G, const Element& g, std::uint64_t cap = kOrderCap);

// Radius that reaches every element of a finite group, default radius otherwise.
std::size_t full_radius(const Group& G);

ConjugacyClass conjugacy_class(const Group& G, const Element& gamma, std::size_t radius);
std::vector<Element> centralizer(const Group& G, const Element& gamma, std::size_t radius);

// All conjugacy classes of a finite group except {e}, ordered by shortlex
// position of their least member (which becomes the representative).
std::vector<ConjugacyClass> nontrivial_classes(const Group& G);

}  // namespace deloc
