#include "deloc/cochain.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace deloc {

std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Cyclic:
      return "cyclic";
    case Flavor::CyclicDelocalized:
      return "cyclic-delocalized";
    case Flavor::HomogeneousGroup:
      return "homogeneous-group";
    case Flavor::Relative:
      return "relative";
    case Flavor::RelativeNoGamma:
      return "relative-without-gamma";
  }
  return "unknown";
}

std::optional<Flavor> parse_flavor(const std::string& s) {
  for (Flavor f : {Flavor::Cyclic, Flavor::CyclicDelocalized, Flavor::HomogeneousGroup,
                   Flavor::Relative, Flavor::RelativeNoGamma})
    if (flavor_name(f) == s) return f;
  return std::nullopt;
}

const std::vector<SignedPermutation>& permutations(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<SignedPermutation>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<SignedPermutation> out;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    out.push_back({p, inversions % 2 ? -1 : 1});
  } while (std::next_permutation(p.begin(), p.end()));
  return cache.emplace(n, std::move(out)).first->second;
}

FloatCochain to_float(const Cochain& c) {
  FloatCochain f(
      c.group(), c.degree(), c.flavor(), [c](const Tuple& t) { return to_complex(c(t)); },
      c.cls());
  return f;
}

Cochain trace_cocycle(ClassPtr cl) {
  if (!cl || !cl->nontrivial) throw ValidationError("trace cocycle needs a nontrivial class");
  if (!cl->closed) throw WitnessNotFound("trace cocycle needs a fully enumerated class");
  return Cochain(
      cl->group, 0, Flavor::CyclicDelocalized,
      [cl](const Tuple& t) { return cl->contains(t[0]) ? QC(1) : QC(0); }, cl);
}

}  // namespace deloc
