#include "deloc/orbits.hpp"

#include <algorithm>
#include <set>

namespace deloc {

namespace {

// Sorts in place and returns the permutation parity, or 0 on a repeated entry.
int sort_with_sign(Tuple& u) {
  int sign = 1;
  for (std::size_t i = 1; i < u.size(); ++i) {
    for (std::size_t j = i; j > 0 && u[j] < u[j - 1]; --j) {
      std::swap(u[j], u[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < u.size(); ++i)
    if (u[i] == u[i - 1]) return 0;
  return sign;
}

// Keeps the least candidate; a repeat with the opposite sign forces zero.
struct Best {
  Tuple rep;
  int sign = 0;
  bool conflict = false;
  bool set = false;

  void offer(const Tuple& cand, int s) {
    if (!set || cand < rep) {
      if (set && cand == rep) return;
      rep = cand;
      sign = s;
      set = true;
      return;
    }
    if (cand == rep && s != sign) conflict = true;
  }
  void offer_checked(const Tuple& cand, int s) {
    if (set && cand == rep) {
      if (s != sign) conflict = true;
      return;
    }
    offer(cand, s);
  }
  OrbitStructure::Canon result() const { return {rep, conflict ? 0 : sign}; }
};

std::size_t checked_pow(std::size_t b, std::size_t e, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > cap / std::max<std::size_t>(b, 1)) return cap + 1;
    r *= b;
  }
  return r;
}

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  long double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  return r > static_cast<long double>(cap) ? cap + 1 : static_cast<std::size_t>(r + 0.5L);
}

template <class F>
void for_each_combination(const std::vector<Element>& pool, std::size_t k, F&& f) {
  if (k > pool.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  Tuple t(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) t[i] = pool[idx[i]];
    f(t);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

OrbitStructure::OrbitStructure(Group group, Flavor flavor, ClassPtr cls)
    : group_(std::move(group)), flavor_(flavor), cls_(std::move(cls)) {
  if ((flavor_ == Flavor::CyclicDelocalized || flavor_ == Flavor::Relative ||
       flavor_ == Flavor::RelativeNoGamma) &&
      !cls_)
    throw ValidationError(flavor_name(flavor_) + " needs a conjugacy class");
  if (flavor_ == Flavor::Relative) {
    if (cls_->order == 0) throw UnsupportedOrder("relative flavor needs gamma of finite order");
    for (std::uint64_t r = 0; r < cls_->order; ++r)
      gamma_powers_.push_back(group_.power(cls_->gamma, static_cast<std::int64_t>(r)));
  }
}

Element OrbitStructure::coset_min(const Element& g) const {
  Element best = g;
  for (const auto& p : gamma_powers_) best = std::min(best, group_.multiply(p, g));
  return best;
}

OrbitStructure::Canon OrbitStructure::canonicalize(const Tuple& t) const {
  switch (flavor_) {
    case Flavor::Cyclic:
    case Flavor::CyclicDelocalized:
      return canonical_cyclic(t);
    case Flavor::HomogeneousGroup:
      return canonical_homogeneous(t);
    case Flavor::Relative:
      return canonical_relative(t, true);
    case Flavor::RelativeNoGamma:
      return canonical_relative(t, false);
  }
  return {t, 0};
}

OrbitStructure::Canon OrbitStructure::canonical_cyclic(const Tuple& t) const {
  if (flavor_ == Flavor::CyclicDelocalized) {
    Element y = group_.product_of(t);
    if (!cls_->contains(y)) {
      if (!cls_->closed)
        throw WitnessNotFound("cannot decide class membership of " + group_.name(y));
      return {t, 0};
    }
  }
  const std::size_t n = t.size() - 1;
  Best best;
  best.offer(t, 1);
  Tuple r = t;
  for (std::size_t k = 1; k <= n; ++k) {
    std::rotate(r.rbegin(), r.rbegin() + 1, r.rend());
    int s = (n * k) % 2 ? -1 : 1;
    if (r == t && s == -1) best.conflict = true;
    best.offer_checked(r, s);
  }
  return best.result();
}

OrbitStructure::Canon OrbitStructure::canonical_homogeneous(const Tuple& t) const {
  Best best;
  Tuple c(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    Element inv = group_.inverse(t[i]);
    for (std::size_t k = 0; k < t.size(); ++k) c[k] = group_.multiply(inv, t[k]);
    int s = sort_with_sign(c);
    if (s == 0) return {t, 0};
    best.offer_checked(c, s);
  }
  return best.result();
}

OrbitStructure::Canon OrbitStructure::canonical_relative(const Tuple& t, bool reduce) const {
  Tuple u = t;
  if (reduce)
    for (auto& g : u) g = coset_min(g);
  {
    Tuple probe = u;
    if (sort_with_sign(probe) == 0) return {t, 0};
  }
  Best best;
  Tuple v(u.size());
  for (const auto& z : cls_->centralizer) {
    for (std::size_t k = 0; k < u.size(); ++k) {
      Element w = group_.multiply(z, u[k]);
      v[k] = reduce ? coset_min(w) : w;
    }
    int s = sort_with_sign(v);
    if (s == 0) return {t, 0};
    best.offer_checked(v, s);
  }
  return best.result();
}

std::vector<Tuple> OrbitStructure::basis(int degree, std::size_t cap) const {
  if (!group_.is_finite()) throw ComputationError("orbit basis needs a finite group");
  const auto elems = group_.elements();
  const std::size_t len = static_cast<std::size_t>(degree) + 1;
  std::set<Tuple> reps;
  auto keep = [&](const Tuple& t) {
    auto c = canonicalize(t);
    if (c.sign != 0 && c.rep == t) reps.insert(t);
  };

  switch (flavor_) {
    case Flavor::Cyclic:
    case Flavor::CyclicDelocalized: {
      const bool deloc = flavor_ == Flavor::CyclicDelocalized;
      std::size_t free_slots = deloc ? len - 1 : len;
      std::size_t count = checked_pow(elems.size(), free_slots, cap);
      if (deloc && count <= cap) count *= cls_->members.size();
      if (count > cap)
        throw CapacityError("complex truncation exceeds " + std::to_string(cap) + " tuples");
      std::vector<std::size_t> idx(free_slots, 0);
      Tuple t(len);
      while (true) {
        for (std::size_t k = 0; k < free_slots; ++k) t[k] = elems[idx[k]];
        if (deloc) {
          Element prefix = group_.identity();
          for (std::size_t k = 0; k + 1 < len; ++k) prefix = group_.multiply(prefix, t[k]);
          Element pinv = group_.inverse(prefix);
          for (const auto& y : cls_->members) {
            t[len - 1] = group_.multiply(pinv, y);
            keep(t);
          }
        } else {
          keep(t);
        }
        std::size_t k = 0;
        while (k < free_slots && ++idx[k] == elems.size()) idx[k++] = 0;
        if (k == free_slots) break;
      }
      break;
    }
    case Flavor::HomogeneousGroup: {
      std::vector<Element> others;
      for (const auto& g : elems)
        if (!(g == group_.identity())) others.push_back(g);
      if (binomial_capped(others.size(), len - 1, cap) > cap)
        throw CapacityError("complex truncation exceeds " + std::to_string(cap) + " tuples");
      for_each_combination(others, len - 1, [&](const Tuple& c) {
        Tuple t = c;
        t.push_back(group_.identity());
        std::sort(t.begin(), t.end());
        keep(t);
      });
      break;
    }
    case Flavor::Relative:
    case Flavor::RelativeNoGamma: {
      std::set<Element> pool_set;
      for (const auto& g : elems)
        pool_set.insert(flavor_ == Flavor::Relative ? coset_min(g) : g);
      std::vector<Element> pool(pool_set.begin(), pool_set.end());
      if (binomial_capped(pool.size(), len, cap) > cap)
        throw CapacityError("complex truncation exceeds " + std::to_string(cap) + " tuples");
      for_each_combination(pool, len, keep);
      break;
    }
  }
  return {reps.begin(), reps.end()};
}

Cochain orbit_cochain(const OrbitStructure& orbits, int degree, RepValues values) {
  auto vals = std::make_shared<const RepValues>(std::move(values));
  auto orb = std::make_shared<const OrbitStructure>(orbits);
  return Cochain(
      orbits.group(), degree, orbits.flavor(),
      [vals, orb](const Tuple& t) {
        auto c = orb->canonicalize(t);
        if (c.sign == 0) return QC(0);
        auto it = vals->find(c.rep);
        if (it == vals->end()) return QC(0);
        return c.sign > 0 ? it->second : -it->second;
      },
      orbits.cls());
}

QC random_rational(Rng& rng, bool complex_part) {
  mpq_class re(rng.range(-5, 5), rng.range(1, 4));
  re.canonicalize();
  mpq_class im(0);
  if (complex_part) {
    im = mpq_class(rng.range(-3, 3), rng.range(1, 3));
    im.canonicalize();
  }
  return QC(re, im);
}

Tuple random_tuple(const OrbitStructure& orbits, std::size_t length, Rng& rng,
                   std::size_t sample_radius) {
  const Group& G = orbits.group();
  const auto pool = G.is_finite() ? G.elements() : G.ball(sample_radius);
  Tuple t(length);
  for (auto& g : t) g = pool[rng.below(pool.size())];
  if (orbits.flavor() == Flavor::CyclicDelocalized) {
    Element prefix = G.identity();
    for (std::size_t k = 0; k + 1 < length; ++k) prefix = G.multiply(prefix, t[k]);
    const auto& mem = orbits.cls()->members;
    t[length - 1] = G.multiply(G.inverse(prefix), mem[rng.below(mem.size())]);
  }
  return t;
}

Cochain random_cochain(const OrbitStructure& orbits, int degree, Rng& rng, std::size_t nonzeros,
                       std::size_t sample_radius) {
  RepValues values;
  for (std::size_t s = 0; s < nonzeros; ++s) {
    Tuple t = random_tuple(orbits, static_cast<std::size_t>(degree) + 1, rng, sample_radius);
    auto c = orbits.canonicalize(t);
    QC v = random_rational(rng);
    if (c.sign == 0 || v.is_zero()) continue;
    values[c.rep] = v;
  }
  return orbit_cochain(orbits, degree, std::move(values));
}

}  // namespace deloc
