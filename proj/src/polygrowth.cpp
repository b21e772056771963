#include "deloc/polygrowth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "deloc/random.hpp"

namespace deloc {

namespace {

void require_centralizer_radius(const ConjugacyClass& cl, std::size_t need) {
  if (!cl.complete && cl.radius < need)
    throw RadiusExceeded("centralizer enumerated only to radius " + std::to_string(cl.radius) +
                             ", need " + std::to_string(need),
                         cl.radius);
}

std::size_t search_radius(const ConjugacyClass& cl, std::size_t hint) {
  if (auto n = cl.group.order()) return *n;
  return hint;
}

mpq_class abs2(const QC& v) { return v.re * v.re + v.im * v.im; }

// Least p/q (q <= 64) with (p/q)^2 >= x.
mpq_class grid_ceiling_sqrt(const mpq_class& x) {
  if (sgn(x) == 0) return mpq_class(1, kGrowthDenominator);
  mpq_class best;
  bool have = false;
  for (long q = 1; q <= kGrowthDenominator; ++q) {
    // smallest p with p^2 * den >= q^2 * num
    mpz_class lhs = mpz_class(q) * q * x.get_num();
    mpz_class p;
    mpz_class t = lhs / x.get_den();
    mpz_sqrt(p.get_mpz_t(), t.get_mpz_t());
    while (p * p * x.get_den() < lhs) ++p;
    while (p > 0 && (p - 1) * (p - 1) * x.get_den() >= lhs) --p;
    mpq_class cand(p, q);
    cand.canonicalize();
    if (!have || cand < best) {
      best = cand;
      have = true;
    }
  }
  return best;
}

mpz_class weight(const Tuple& t, const std::vector<std::size_t>& norms, std::size_t k) {
  mpz_class w = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mpz_class b = 1 + norms[i];
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), 2 * k);
    w *= p;
  }
  return w;
}

}  // namespace

Element lex_min_f(const ConjugacyClass& cl, const Element& g) {
  const Group& G = cl.group;
  const std::size_t len = G.word_length(g, search_radius(cl, Group::default_radius() * 4));
  require_centralizer_radius(cl, 2 * len);
  std::optional<Element> best;
  std::size_t best_d = len + 1;
  // The centralizer list is in shortlex order, so strict improvement keeps the least minimizer.
  for (const auto& z : cl.centralizer) {
    if (!cl.complete && G.word_length(z, cl.radius) > 2 * len) continue;
    auto d = G.try_word_length(G.multiply(G.inverse(z), g), len);
    if (d && *d < best_d) {
      best_d = *d;
      best = z;
      if (best_d == 0) break;
    }
  }
  if (!best) throw ComputationError("no admissible centralizer element for " + G.name(g));
  return *best;
}

Element coset_min_f(const ConjugacyClass& cl, const Element& h) {
  const Group& G = cl.group;
  std::optional<Element> best;
  std::size_t best_d = 0;
  std::size_t best_rank = 0;
  const std::size_t R = search_radius(cl, 4 * cl.radius);
  for (const auto& z : cl.centralizer) {
    Element x = G.multiply(h, z);
    auto lx = G.try_word_length(x, R);
    if (!lx || (!cl.complete && 2 * *lx > cl.radius)) continue;
    Element fx = lex_min_f(cl, x);
    std::size_t d = G.word_length(G.multiply(G.inverse(x), fx), R);
    std::size_t rank = G.shortlex_rank(fx, R);
    if (!best || d < best_d || (d == best_d && rank < best_rank)) {
      best = fx;
      best_d = d;
      best_rank = rank;
    }
  }
  if (!best) throw RadiusExceeded("no coset representative within the centralizer radius", cl.radius);
  return *best;
}

std::size_t coset_distance(const ConjugacyClass& cl, const Element& g, const Element& h) {
  const Group& G = cl.group;
  const std::size_t R = search_radius(cl, 4 * cl.radius);
  std::optional<std::size_t> best;
  const Element ginv = G.inverse(g);
  for (const auto& z : cl.centralizer)
    for (const auto& w : cl.centralizer) {
      Element x = G.multiply(G.multiply(G.inverse(z), ginv), G.multiply(h, w));
      auto d = G.try_word_length(x, R);
      if (d && (!best || *d < *best)) best = d;
    }
  if (!best) throw RadiusExceeded("coset distance beyond search radius", R);
  return *best;
}

SimplexPoint simplex_map_psi(const ConjugacyClass& cl, const SimplexPoint& p) {
  if (!weights_sum_to_one(p)) throw ValidationError("barycentric weights must sum to 1");
  SimplexPoint out;
  for (const auto& wv : p.vertices) {
    if (sgn(wv.weight) < 0) throw ValidationError("barycentric weights must be nonnegative");
    if (sgn(wv.weight) == 0) continue;
    Element v = lex_min_f(cl, wv.vertex);
    auto it = std::find_if(out.vertices.begin(), out.vertices.end(),
                           [&](const WeightedVertex& o) { return o.vertex == v; });
    if (it == out.vertices.end()) out.vertices.push_back({wv.weight, v});
    else it->weight += wv.weight;
  }
  out.coset = coset_min_f(cl, p.coset);
  return out;
}

bool weights_sum_to_one(const SimplexPoint& p) {
  mpq_class s = 0;
  for (const auto& wv : p.vertices) s += wv.weight;
  return s == 1;
}

GrowthBound growth_bound_estimate(const Cochain& phi, std::size_t radius, std::uint64_t seed) {
  const Group& G = phi.group();
  const auto ball = G.ball(radius);
  std::unordered_map<Element, std::size_t, ElementHash> norm;
  for (const auto& g : ball) norm[g] = G.word_length(g, radius);

  const std::size_t len = static_cast<std::size_t>(phi.degree()) + 1;
  GrowthBound out;
  out.max_radius_checked = radius;

  long double total = std::pow(static_cast<long double>(ball.size()), static_cast<long double>(len));
  std::vector<Tuple> tuples;
  if (total <= static_cast<long double>(kGrowthTupleCap)) {
    std::vector<std::size_t> idx(len, 0);
    Tuple t(len);
    while (true) {
      for (std::size_t i = 0; i < len; ++i) t[i] = ball[idx[i]];
      tuples.push_back(t);
      std::size_t i = 0;
      while (i < len && ++idx[i] == ball.size()) idx[i++] = 0;
      if (i == len) break;
    }
  } else {
    out.exhaustive = false;
    Rng rng(seed);
    for (std::size_t s = 0; s < kGrowthTupleCap; ++s) {
      Tuple t(len);
      for (auto& g : t) g = ball[rng.below(ball.size())];
      tuples.push_back(std::move(t));
    }
  }
  out.tuples_checked = tuples.size();

  struct Sample {
    mpq_class a2;  // |phi|^2
    std::vector<std::size_t> norms;
    std::size_t top;
  };
  std::vector<Sample> samples;
  std::vector<std::size_t> sample_index;
  std::vector<double> shell_max(radius + 1, 0.0);
  for (std::size_t s = 0; s < tuples.size(); ++s) {
    QC v = phi(tuples[s]);
    if (v.is_zero()) continue;
    Sample sm{abs2(v), {}, 0};
    for (const auto& g : tuples[s]) {
      sm.norms.push_back(norm.at(g));
      sm.top = std::max(sm.top, sm.norms.back());
    }
    shell_max[sm.top] = std::max(shell_max[sm.top], std::sqrt(sm.a2.get_d()));
    samples.push_back(std::move(sm));
    sample_index.push_back(s);
  }
  if (samples.empty()) return out;

  // Degree fit over the upper half of the radii, same rule as the ball-growth fit.
  std::vector<double> xs, ys;
  double running = 0.0;
  for (std::size_t r = 0; r <= radius; ++r) {
    running = std::max(running, shell_max[r]);
    if (2 * r >= radius && running > 0.0) {
      xs.push_back(std::log(static_cast<double>(r + 1)));
      ys.push_back(std::log(running));
    }
  }
  double slope = 0.0;
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= xs.size();
    my /= xs.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      num += (xs[i] - mx) * (ys[i] - my);
      den += (xs[i] - mx) * (xs[i] - mx);
    }
    slope = den > 0 ? num / den : 0.0;
  }
  out.fitted_degree = slope;
  long e = std::lround(slope);
  out.k = e <= 0 ? 0 : std::min<std::size_t>(kMaxGrowthK, static_cast<std::size_t>((e + 1) / 2));

  mpq_class worst = 0;
  std::size_t worst_at = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    mpz_class w = weight(tuples[sample_index[i]], samples[i].norms, out.k);
    mpq_class r2 = samples[i].a2 / mpq_class(w * w);
    if (r2 > worst) {
      worst = r2;
      worst_at = sample_index[i];
    }
  }
  out.R = grid_ceiling_sqrt(worst);
  out.witness = tuples[worst_at];
  return out;
}

std::optional<Tuple> check_growth_bound(const Cochain& phi, const GrowthBound& bound,
                                        const std::vector<Tuple>& tuples) {
  const Group& G = phi.group();
  const mpq_class R2 = bound.R * bound.R;
  for (const auto& t : tuples) {
    std::vector<std::size_t> norms;
    for (const auto& g : t) norms.push_back(G.word_length(g, bound.max_radius_checked));
    mpz_class w = weight(t, norms, bound.k);
    if (abs2(phi(t)) > R2 * mpq_class(w * w)) return t;
  }
  return std::nullopt;
}

LipschitzResult lipschitz_check(const ConjugacyClass& cl, std::size_t radius) {
  const Group& G = cl.group;
  require_centralizer_radius(cl, 2 * radius);
  const auto ball = G.ball(radius);
  const std::size_t R = search_radius(cl, 4 * radius);

  std::vector<Element> f(ball.size());
  std::unordered_map<Element, std::size_t, ElementHash> pos;
  LipschitzResult out;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    pos[ball[i]] = i;
    f[i] = lex_min_f(cl, ball[i]);
    if (G.word_length(f[i], R) > 2 * G.word_length(ball[i], R)) ++out.max_norm_ratio_violations;
  }
  std::unordered_map<Element, bool, ElementHash> in_centralizer;
  for (const auto& z : cl.centralizer) in_centralizer[z] = true;
  for (std::size_t i = 0; i < ball.size(); ++i)
    if (in_centralizer.count(ball[i]) && !(f[i] == ball[i])) out.fixes_centralizer = false;

  // f(z g) = z f(g) for z in the centralizer and g with z g still in the ball.
  for (const auto& z : cl.centralizer) {
    if (G.word_length(z, R) > radius) continue;
    for (std::size_t i = 0; i < ball.size(); ++i) {
      auto it = pos.find(G.multiply(z, ball[i]));
      if (it == pos.end()) continue;
      if (!(f[it->second] == G.multiply(z, f[i]))) out.equivariant = false;
    }
  }

  bool have = false;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const Element inv_g = G.inverse(ball[i]);
    const Element inv_fg = G.inverse(f[i]);
    for (std::size_t j = i + 1; j < ball.size(); ++j) {
      std::size_t d = G.word_length(G.multiply(inv_g, ball[j]), R);
      std::size_t df = G.word_length(G.multiply(inv_fg, f[j]), R);
      mpq_class ratio(static_cast<long>(df), static_cast<long>(d));
      ratio.canonicalize();
      ++out.pairs;
      if (!have || ratio > out.max_ratio) {
        out.max_ratio = ratio;
        out.witness_pair = {ball[i], ball[j]};
        have = true;
      }
    }
  }
  return out;
}

LipschitzResult coset_lipschitz_check(const ConjugacyClass& cl) {
  const Group& G = cl.group;
  if (!cl.complete) throw ComputationError("coset Lipschitz check needs a complete finite class");
  std::vector<Element> reps;
  std::unordered_map<Element, bool, ElementHash> covered;
  for (const auto& g : G.elements()) {
    if (covered.count(g)) continue;
    reps.push_back(g);
    for (const auto& z : cl.centralizer) covered[G.multiply(g, z)] = true;
  }
  std::vector<Element> f;
  for (const auto& h : reps) f.push_back(coset_min_f(cl, h));
  LipschitzResult out;
  bool have = false;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      std::size_t d = coset_distance(cl, reps[i], reps[j]);
      std::size_t df = G.distance(f[i], f[j]);
      if (d == 0) continue;
      mpq_class ratio(static_cast<long>(df), static_cast<long>(d));
      ratio.canonicalize();
      ++out.pairs;
      if (!have || ratio > out.max_ratio) {
        out.max_ratio = ratio;
        out.witness_pair = {reps[i], reps[j]};
        have = true;
      }
    }
  return out;
}

}  // namespace deloc
