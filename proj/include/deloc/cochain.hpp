#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "deloc/conjugacy.hpp"
#include "deloc/errors.hpp"
#include "deloc/group.hpp"
#include "deloc/rational.hpp"

namespace deloc {

enum class Flavor { Cyclic, CyclicDelocalized, HomogeneousGroup, Relative, RelativeNoGamma };

std::string flavor_name(Flavor f);
std::optional<Flavor> parse_flavor(const std::string& s);

inline bool is_cyclic(Flavor f) { return f == Flavor::Cyclic || f == Flavor::CyclicDelocalized; }
inline bool is_group_flavor(Flavor f) {
  return f == Flavor::HomogeneousGroup || f == Flavor::Relative || f == Flavor::RelativeNoGamma;
}

using ClassPtr = std::shared_ptr<const ConjugacyClass>;

// A multilinear functional on (n+1)-tuples of group elements, evaluated
// lazily. Sparse tables back the leaf cochains; every map below composes
// evaluators pointwise, so infinite groups work as long as evaluation does.
template <class S>
class BasicCochain {
 public:
  using Scalar = S;
  using Eval = std::function<S(const Tuple&)>;
  using Table = std::unordered_map<Tuple, S, TupleHash>;

  BasicCochain(Group group, int degree, Flavor flavor, Eval eval, ClassPtr cls = nullptr)
      : group_(std::move(group)),
        degree_(degree),
        flavor_(flavor),
        cls_(std::move(cls)),
        eval_(std::make_shared<Eval>(std::move(eval))) {
    if (degree_ < 0) throw DegreeError("cochain degree must be >= 0");
    if (flavor_ == Flavor::CyclicDelocalized || flavor_ == Flavor::Relative ||
        flavor_ == Flavor::RelativeNoGamma) {
      if (!cls_) throw ValidationError(flavor_name(flavor_) + " cochain needs a conjugacy class");
    }
  }

  static BasicCochain from_table(Group group, int degree, Flavor flavor, Table table,
                                 ClassPtr cls = nullptr) {
    auto tab = std::make_shared<const Table>(std::move(table));
    BasicCochain c(
        std::move(group), degree, flavor,
        [tab](const Tuple& t) {
          auto it = tab->find(t);
          return it == tab->end() ? ScalarOps<S>::zero() : it->second;
        },
        std::move(cls));
    c.table_ = tab;
    return c;
  }

  static BasicCochain zero(Group group, int degree, Flavor flavor, ClassPtr cls = nullptr) {
    return from_table(std::move(group), degree, flavor, {}, std::move(cls));
  }

  S operator()(const Tuple& t) const {
    if (static_cast<int>(t.size()) != degree_ + 1)
      throw DegreeError("cochain of degree " + std::to_string(degree_) + " evaluated on a " +
                        std::to_string(t.size()) + "-tuple");
    return (*eval_)(t);
  }

  const Group& group() const { return group_; }
  int degree() const { return degree_; }
  Flavor flavor() const { return flavor_; }
  const ClassPtr& cls() const { return cls_; }
  const Table* table() const { return table_.get(); }
  const std::shared_ptr<const BasicCochain>& source() const { return source_; }

  BasicCochain with_flavor(Flavor f, ClassPtr cls = nullptr) const {
    BasicCochain c = *this;
    c.flavor_ = f;
    if (cls) c.cls_ = std::move(cls);
    return c;
  }
  BasicCochain with_source(BasicCochain src) const {
    BasicCochain c = *this;
    c.source_ = std::make_shared<const BasicCochain>(std::move(src));
    return c;
  }

  // Caches evaluations; useful when a composite map re-reads the same tuples.
  BasicCochain memoized() const {
    struct Memo {
      std::mutex mu;
      Table values;
    };
    auto memo = std::make_shared<Memo>();
    auto inner = eval_;
    BasicCochain c = *this;
    c.eval_ = std::make_shared<Eval>([memo, inner](const Tuple& t) {
      {
        std::lock_guard lock(memo->mu);
        auto it = memo->values.find(t);
        if (it != memo->values.end()) return it->second;
      }
      S v = (*inner)(t);
      std::lock_guard lock(memo->mu);
      memo->values.emplace(t, v);
      return v;
    });
    return c;
  }

  friend BasicCochain operator+(const BasicCochain& a, const BasicCochain& b) {
    a.check_compatible(b);
    auto ea = a.eval_, eb = b.eval_;
    return BasicCochain(a.group_, a.degree_, a.flavor_,
                        [ea, eb](const Tuple& t) { return (*ea)(t) + (*eb)(t); }, a.cls_);
  }
  friend BasicCochain operator-(const BasicCochain& a, const BasicCochain& b) {
    a.check_compatible(b);
    auto ea = a.eval_, eb = b.eval_;
    return BasicCochain(a.group_, a.degree_, a.flavor_,
                        [ea, eb](const Tuple& t) { return (*ea)(t) - (*eb)(t); }, a.cls_);
  }
  BasicCochain scaled(S k) const {
    auto e = eval_;
    return BasicCochain(group_, degree_, flavor_, [e, k](const Tuple& t) { return k * (*e)(t); },
                        cls_);
  }

 private:
  void check_compatible(const BasicCochain& b) const {
    if (!(group_ == b.group_)) throw StructuralError("cochains over different groups");
    if (degree_ != b.degree_) throw DegreeError("cochains of different degrees");
  }

  Group group_;
  int degree_;
  Flavor flavor_;
  ClassPtr cls_;
  std::shared_ptr<const Eval> eval_;
  std::shared_ptr<const Table> table_;
  std::shared_ptr<const BasicCochain> source_;
};

using Cochain = BasicCochain<QC>;
using FloatCochain = BasicCochain<CD>;

FloatCochain to_float(const Cochain& c);

// ---------------------------------------------------------------------------
// Faces and permutations.

// Cyclic faces of an (n+1)-tuple: d_i merges slots i,i+1 for i<n; d_n wraps.
inline Tuple cyclic_face(const Group& G, const Tuple& t, std::size_t i) {
  const std::size_t n = t.size() - 1;
  Tuple out;
  out.reserve(n);
  if (i < n) {
    for (std::size_t k = 0; k < i; ++k) out.push_back(t[k]);
    out.push_back(G.multiply(t[i], t[i + 1]));
    for (std::size_t k = i + 2; k <= n; ++k) out.push_back(t[k]);
  } else {
    out.push_back(G.multiply(t[n], t[0]));
    for (std::size_t k = 1; k < n; ++k) out.push_back(t[k]);
  }
  return out;
}

inline Tuple delete_slot(const Tuple& t, std::size_t i) {
  Tuple out;
  out.reserve(t.size() - 1);
  for (std::size_t k = 0; k < t.size(); ++k)
    if (k != i) out.push_back(t[k]);
  return out;
}

struct SignedPermutation {
  std::vector<std::size_t> p;
  int sign;
};

// All permutations of {0..n-1} with signs; cached per n.
const std::vector<SignedPermutation>& permutations(std::size_t n);

inline constexpr int kPermutationDegreeCap = 6;

inline long alt(std::size_t i) { return (i % 2 == 0) ? 1 : -1; }

// ---------------------------------------------------------------------------
// Cyclic complex.

template <class S>
BasicCochain<S> cyclic_operator_t(const BasicCochain<S>& phi) {
  if (!is_cyclic(phi.flavor())) throw FlavorError("cyclic operator needs a cyclic cochain");
  const long s = alt(static_cast<std::size_t>(phi.degree()));
  return BasicCochain<S>(
      phi.group(), phi.degree(), phi.flavor(),
      [phi, s](const Tuple& t) {
        Tuple r;
        r.reserve(t.size());
        r.push_back(t.back());
        r.insert(r.end(), t.begin(), t.end() - 1);
        return ScalarOps<S>::from_int(s) * phi(r);
      },
      phi.cls());
}

template <class S>
BasicCochain<S> cyclic_coboundary(const BasicCochain<S>& phi) {
  if (!is_cyclic(phi.flavor()))
    throw FlavorError("cyclic coboundary needs a cyclic or cyclic-delocalized cochain");
  const Group G = phi.group();
  return BasicCochain<S>(
      G, phi.degree() + 1, phi.flavor(),
      [phi, G](const Tuple& t) {
        S acc = ScalarOps<S>::zero();
        for (std::size_t i = 0; i < t.size(); ++i) {
          S v = phi(cyclic_face(G, t, i));
          if (i % 2) acc -= v;
          else acc += v;
        }
        return acc;
      },
      phi.cls());
}

// (beta phi)(g_0..g_{k+1}) = sum_i (-1)^i i phi(d_i g).
template <class S>
BasicCochain<S> connes_beta(const BasicCochain<S>& phi) {
  if (!is_cyclic(phi.flavor())) throw FlavorError("beta needs a cyclic cochain");
  const Group G = phi.group();
  return BasicCochain<S>(
      G, phi.degree() + 1, phi.flavor(),
      [phi, G](const Tuple& t) {
        S acc = ScalarOps<S>::zero();
        for (std::size_t i = 1; i < t.size(); ++i)
          acc += ScalarOps<S>::from_int(alt(i) * static_cast<long>(i)) *
                 phi(cyclic_face(G, t, i));
        return acc;
      },
      phi.cls());
}

// sum_{0<=i<j<=n+2} (-1)^{i+j} c(i,j) phi(d_i d_j t), d_j applied first.
template <class S, class Coef>
BasicCochain<S> double_face_sum(const BasicCochain<S>& phi, Coef coef, long denom) {
  const Group G = phi.group();
  return BasicCochain<S>(
      G, phi.degree() + 2, phi.flavor(),
      [phi, G, coef, denom](const Tuple& t) {
        S acc = ScalarOps<S>::zero();
        for (std::size_t j = 0; j < t.size(); ++j) {
          Tuple dj = cyclic_face(G, t, j);
          for (std::size_t i = 0; i < j; ++i) {
            long c = coef(static_cast<long>(i), static_cast<long>(j));
            if (c == 0) continue;
            acc += ScalarOps<S>::from_int(alt(i + j) * c) * phi(cyclic_face(G, dj, i));
          }
        }
        return ScalarOps<S>::divide(acc, denom);
      },
      phi.cls());
}

// b o beta as a double face sum; coefficient (i - j + 1) with d_j applied first.
template <class S>
BasicCochain<S> b_beta(const BasicCochain<S>& phi) {
  if (!is_cyclic(phi.flavor())) throw FlavorError("b beta needs a cyclic cochain");
  return double_face_sum(phi, [](long i, long j) { return i - j + 1; }, 1);
}

// beta o b as a double face sum; coefficient (j - i) with d_j applied first.
template <class S>
BasicCochain<S> beta_b(const BasicCochain<S>& phi) {
  if (!is_cyclic(phi.flavor())) throw FlavorError("beta b needs a cyclic cochain");
  return double_face_sum(phi, [](long i, long j) { return j - i; }, 1);
}

// S = (beta b + b beta) / ((n+1)(n+2)); the two coefficients sum to 1.
template <class S>
BasicCochain<S> periodicity_S(const BasicCochain<S>& phi, bool delocalized) {
  if (!is_cyclic(phi.flavor())) throw FlavorError("periodicity needs a cyclic cochain");
  if (delocalized && phi.flavor() != Flavor::CyclicDelocalized)
    throw FlavorError("delocalized periodicity needs a cyclic-delocalized cochain");
  const long n = phi.degree();
  auto out = double_face_sum(phi, [](long, long) { return 1L; }, (n + 1) * (n + 2));
  return delocalized ? out : out.with_flavor(Flavor::Cyclic);
}

// ---------------------------------------------------------------------------
// Group complexes.

template <class S>
BasicCochain<S> group_coboundary(const BasicCochain<S>& phi) {
  if (!is_group_flavor(phi.flavor()))
    throw FlavorError("group coboundary needs a homogeneous-group or relative cochain");
  return BasicCochain<S>(
      phi.group(), phi.degree() + 1, phi.flavor(),
      [phi](const Tuple& t) {
        S acc = ScalarOps<S>::zero();
        for (std::size_t i = 0; i < t.size(); ++i) {
          S v = phi(delete_slot(t, i));
          if (i % 2) acc -= v;
          else acc += v;
        }
        return acc;
      },
      phi.cls());
}

template <class S>
S skew_value(const BasicCochain<S>& phi, const Tuple& t) {
  const auto& perms = permutations(t.size());
  S acc = ScalarOps<S>::zero();
  Tuple u(t.size());
  for (const auto& sp : perms) {
    for (std::size_t k = 0; k < t.size(); ++k) u[k] = t[sp.p[k]];
    S v = phi(u);
    if (sp.sign > 0) acc += v;
    else acc -= v;
  }
  long fact = 1;
  for (std::size_t k = 2; k <= t.size(); ++k) fact *= static_cast<long>(k);
  return ScalarOps<S>::divide(acc, fact);
}

template <class S>
BasicCochain<S> skew_symmetrize(const BasicCochain<S>& phi) {
  if (!is_group_flavor(phi.flavor()))
    throw FlavorError("skew symmetrization needs a homogeneous-group or relative cochain");
  if (phi.degree() > kPermutationDegreeCap)
    throw PermutationCapError("skew symmetrization capped at degree 6");
  return BasicCochain<S>(
      phi.group(), phi.degree(), phi.flavor(), [phi](const Tuple& t) { return skew_value(phi, t); },
      phi.cls());
}

// What goes into the extra slot of the homotopy p_n.
enum class HomotopySlot {
  Identity,  // (h_0..h_{n-1}, e): a genuine chain homotopy F ~ Id
  RepeatLast  // (h_0..h_{n-1}, h_{n-1}): literal reading, identity fails
};

// (p_n phi)(h_0..h_{n-1}) = (-1)^n [ (F phi)(h, x) - phi(h, x) ].
template <class S>
BasicCochain<S> chain_homotopy_p(const BasicCochain<S>& phi,
                                 HomotopySlot slot = HomotopySlot::Identity) {
  if (!is_group_flavor(phi.flavor()))
    throw FlavorError("chain homotopy needs a homogeneous-group cochain");
  const int n = phi.degree();
  if (n < 1) throw DegreeError("chain homotopy p_n needs n >= 1");
  if (n > kPermutationDegreeCap) throw PermutationCapError("chain homotopy capped at degree 6");
  const Group G = phi.group();
  const long s = alt(static_cast<std::size_t>(n));
  return BasicCochain<S>(
      G, n - 1, phi.flavor(),
      [phi, G, s, slot](const Tuple& h) {
        Tuple x = h;
        x.push_back(slot == HomotopySlot::Identity ? G.identity() : h.back());
        return ScalarOps<S>::from_int(s) * (skew_value(phi, x) - phi(x));
      },
      phi.cls());
}

// (R alpha)(g) = sum_{r_i=1}^{ord} alpha(gamma^{r_0} g_0, ..., gamma^{r_n} g_n).
template <class S>
BasicCochain<S> averaging_R(const BasicCochain<S>& alpha) {
  if (alpha.flavor() != Flavor::RelativeNoGamma && alpha.flavor() != Flavor::Relative)
    throw FlavorError("averaging needs a relative cochain");
  const auto& cl = alpha.cls();
  if (cl->order == 0) throw UnsupportedOrder("averaging needs gamma of finite order");
  const Group G = alpha.group();
  std::vector<Element> powers;
  for (std::uint64_t r = 1; r <= cl->order; ++r)
    powers.push_back(G.power(cl->gamma, static_cast<std::int64_t>(r)));
  return BasicCochain<S>(
      G, alpha.degree(), Flavor::Relative,
      [alpha, G, powers](const Tuple& g) {
        const std::size_t m = g.size();
        const std::size_t q = powers.size();
        std::vector<std::size_t> idx(m, 0);
        Tuple u(m);
        S acc = ScalarOps<S>::zero();
        while (true) {
          for (std::size_t k = 0; k < m; ++k) u[k] = G.multiply(powers[idx[k]], g[k]);
          acc += alpha(u);
          std::size_t k = 0;
          while (k < m && ++idx[k] == q) idx[k++] = 0;
          if (k == m) break;
        }
        return acc;
      },
      cl);
}

template <class S>
BasicCochain<S> inclusion_iota(const BasicCochain<S>& alpha) {
  if (alpha.flavor() != Flavor::Relative) throw FlavorError("inclusion needs a relative cochain");
  return alpha.with_flavor(Flavor::RelativeNoGamma);
}

// phi_{alpha,gamma}(g) = alpha(h, h g_0, ..., h g_0...g_{n-1}) when g_0...g_n = h^{-1} gamma h.
template <class S>
BasicCochain<S> build_delocalized_cocycle(const BasicCochain<S>& alpha, ClassPtr cl) {
  if (alpha.flavor() != Flavor::Relative)
    throw FlavorError("delocalized cocycle construction needs a relative cochain");
  if (!cl || !cl->nontrivial) throw ValidationError("construction needs a nontrivial class");
  const Group G = alpha.group();
  auto closed = std::make_shared<const bool>(cl->closed);
  BasicCochain<S> out(
      G, alpha.degree(), Flavor::CyclicDelocalized,
      [alpha, G, cl, closed](const Tuple& g) {
        Element y = G.product_of(g);
        if (!cl->contains(y)) {
          if (*closed) return ScalarOps<S>::zero();
          throw WitnessNotFound("product " + G.name(y) +
                                " is not a known class member and the class is truncated");
        }
        Element h = cl->witness(y);
        Tuple args;
        args.reserve(g.size());
        args.push_back(h);
        for (std::size_t i = 0; i + 1 < g.size(); ++i) args.push_back(G.multiply(args.back(), g[i]));
        return alpha(args);
      },
      cl);
  return out.with_source(alpha);
}

// Precomposition with g_i -> h^{y_0} g_0...g_{i-1}; uses the stored source
// cochain when the input was built from one.
template <class S>
BasicCochain<S> normalize_cocycle(const BasicCochain<S>& phi, ClassPtr cl) {
  if (phi.flavor() != Flavor::CyclicDelocalized)
    throw FlavorError("normalization needs a cyclic-delocalized cochain");
  if (!cl) throw ValidationError("normalization needs a conjugacy class");
  const Group G = phi.group();
  BasicCochain<S> base = phi.source() ? *phi.source() : phi;
  auto closed = std::make_shared<const bool>(cl->closed);
  return BasicCochain<S>(
      G, phi.degree(), Flavor::CyclicDelocalized,
      [base, G, cl, closed](const Tuple& g) {
        Element y = G.product_of(g);
        if (!cl->contains(y)) {
          if (*closed) return ScalarOps<S>::zero();
          throw WitnessNotFound("product " + G.name(y) + " outside the enumerated class");
        }
        Tuple args;
        args.reserve(g.size());
        args.push_back(cl->witness(y));
        for (std::size_t i = 0; i + 1 < g.size(); ++i) args.push_back(G.multiply(args.back(), g[i]));
        return base(args);
      },
      cl);
}

// Indicator of cl(gamma) on 1-tuples: the delocalized trace as a 0-cocycle.
Cochain trace_cocycle(ClassPtr cl);

}  // namespace deloc
