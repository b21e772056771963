#include "deloc/conjugacy.hpp"

#include <unordered_set>

#include "deloc/errors.hpp"

namespace deloc {

bool ConjugacyClass::contains(const Element& g) const { return lookup.count(g) != 0; }

std::size_t ConjugacyClass::index_of(const Element& member) const {
  auto it = lookup.find(member);
  if (it == lookup.end())
    throw WitnessNotFound("no witness for " + group.name(member) + " within radius " +
                          std::to_string(radius));
  return it->second;
}

const Element& ConjugacyClass::witness(const Element& member) const {
  return witnesses[index_of(member)];
}

std::uint64_t element_order(const Group& G, const Element& g, std::uint64_t cap) {
  Element e = G.identity();
  Element acc = g;
  for (std::uint64_t r = 1; r <= cap; ++r) {
    if (acc == e) return r;
    acc = G.multiply(acc, g);
  }
  return 0;
}

std::size_t full_radius(const Group& G) {
  if (auto n = G.order()) return *n;
  return Group::default_radius();
}

ConjugacyClass conjugacy_class(const Group& G, const Element& gamma, std::size_t radius) {
  if (!G.contains(gamma)) throw StructuralError("gamma does not belong to the group");
  ConjugacyClass cl{.group = G, .gamma = gamma};
  cl.radius = radius;
  cl.nontrivial = !(gamma == G.identity());
  cl.order = element_order(G, gamma);
  auto ball = G.ball(radius);
  cl.complete = G.order() && ball.size() == *G.order();
  // Ball is in shortlex order, so the first conjugator hitting a member is minimal.
  for (const auto& h : ball) {
    Element y = G.conjugate(gamma, h);
    if (cl.lookup.emplace(y, cl.members.size()).second) {
      cl.members.push_back(y);
      cl.witnesses.push_back(h);
    }
    if (G.multiply(h, gamma) == G.multiply(gamma, h)) cl.centralizer.push_back(h);
  }
  cl.closed = true;
  for (const auto& y : cl.members)
    for (const auto& s : G.generators())
      cl.closed = cl.closed && cl.contains(G.conjugate(y, s));
  return cl;
}

std::vector<Element> centralizer(const Group& G, const Element& gamma, std::size_t radius) {
  std::vector<Element> out;
  for (const auto& z : G.ball(radius))
    if (G.multiply(z, gamma) == G.multiply(gamma, z)) out.push_back(z);
  return out;
}

std::vector<ConjugacyClass> nontrivial_classes(const Group& G) {
  if (!G.is_finite()) throw ComputationError("nontrivial_classes needs a finite group");
  std::vector<ConjugacyClass> out;
  std::unordered_set<Element, ElementHash> covered;
  std::size_t R = full_radius(G);
  for (const auto& g : G.elements()) {
    if (g == G.identity() || covered.count(g)) continue;
    auto cl = conjugacy_class(G, g, R);
    for (const auto& y : cl.members) covered.insert(y);
    out.push_back(std::move(cl));
  }
  return out;
}

}  // namespace deloc
