#include "deloc/group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "deloc/errors.hpp"

namespace deloc {

struct Group::Impl {
  GroupKind kind = GroupKind::Cyclic;
  std::int64_t k = 1;      // cyclic order
  std::size_t rank = 0;    // free abelian rank
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::size_t> table_inverse;
  std::size_t table_identity = 0;
  std::string preset;
  std::vector<Group> factors;
  std::vector<std::size_t> offsets;
  std::size_t arity = 0;

  std::vector<Element> gens;
  bool default_gens = true;

  // Lazily grown BFS over the Cayley graph.
  mutable std::mutex mu;
  mutable std::unordered_map<Element, std::pair<std::uint32_t, std::uint64_t>, ElementHash> seen;
  mutable std::vector<Element> order;
  mutable std::vector<std::size_t> level_end;
  mutable bool saturated = false;

  Element identity() const;
  Element multiply(const Element& g, const Element& h) const;
  Element inverse(const Element& g) const;
  Element factor_part(const Element& g, std::size_t i) const;
  void explore(std::size_t r) const;  // requires mu held
};

namespace {

Element make(std::initializer_list<std::int64_t> v) {
  Element e;
  e.size = static_cast<std::uint8_t>(v.size());
  std::copy(v.begin(), v.end(), e.c.begin());
  return e;
}

std::int64_t mod(std::int64_t a, std::int64_t k) {
  std::int64_t r = a % k;
  return r < 0 ? r + k : r;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Splits on top-level separators, respecting (), [] nesting.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw ValidationError("not an integer: '" + s + "'");
  return v;
}

std::vector<std::int64_t> parse_tuple(const std::string& text, std::size_t n) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw ValidationError("expected a tuple like (1,0), got '" + text + "'");
  auto parts = split_top(s.substr(1, s.size() - 2), ',');
  if (parts.size() != n)
    throw ValidationError("expected " + std::to_string(n) + " components in '" + text + "'");
  std::vector<std::int64_t> v;
  for (const auto& p : parts) v.push_back(parse_int(p));
  return v;
}

std::string join_tuple(const Element& g) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < g.size; ++i) os << (i ? "," : "") << g.c[i];
  os << ')';
  return os.str();
}

}  // namespace

Element Group::Impl::identity() const {
  Element e;
  switch (kind) {
    case GroupKind::FiniteTable:
      e.size = 1;
      e.c[0] = static_cast<std::int64_t>(table_identity);
      break;
    case GroupKind::Product:
      e.size = static_cast<std::uint8_t>(arity);
      for (std::size_t i = 0; i < factors.size(); ++i) {
        Element f = factors[i].identity();
        for (std::size_t j = 0; j < f.size; ++j) e.c[offsets[i] + j] = f.c[j];
      }
      break;
    default:
      e.size = static_cast<std::uint8_t>(arity);
      break;
  }
  return e;
}

Element Group::Impl::factor_part(const Element& g, std::size_t i) const {
  Element e;
  std::size_t a = factors[i].arity();
  e.size = static_cast<std::uint8_t>(a);
  for (std::size_t j = 0; j < a; ++j) e.c[j] = g.c[offsets[i] + j];
  return e;
}

Element Group::Impl::multiply(const Element& g, const Element& h) const {
  if (g.size != arity || h.size != arity)
    throw StructuralError("element does not belong to this group");
  Element r;
  r.size = static_cast<std::uint8_t>(arity);
  switch (kind) {
    case GroupKind::Cyclic:
      r.c[0] = mod(g.c[0] + h.c[0], k);
      break;
    case GroupKind::FreeAbelian:
      for (std::size_t i = 0; i < rank; ++i) r.c[i] = g.c[i] + h.c[i];
      break;
    case GroupKind::Heisenberg:
      r.c[0] = g.c[0] + h.c[0];
      r.c[1] = g.c[1] + h.c[1];
      r.c[2] = g.c[2] + h.c[2] + g.c[0] * h.c[1];
      break;
    case GroupKind::FiniteTable:
      r.c[0] = static_cast<std::int64_t>(
          table[static_cast<std::size_t>(g.c[0])][static_cast<std::size_t>(h.c[0])]);
      break;
    case GroupKind::Product:
      for (std::size_t i = 0; i < factors.size(); ++i) {
        Element p = factors[i].multiply(factor_part(g, i), factor_part(h, i));
        for (std::size_t j = 0; j < p.size; ++j) r.c[offsets[i] + j] = p.c[j];
      }
      break;
  }
  return r;
}

Element Group::Impl::inverse(const Element& g) const {
  if (g.size != arity) throw StructuralError("element does not belong to this group");
  Element r;
  r.size = static_cast<std::uint8_t>(arity);
  switch (kind) {
    case GroupKind::Cyclic:
      r.c[0] = mod(-g.c[0], k);
      break;
    case GroupKind::FreeAbelian:
      for (std::size_t i = 0; i < rank; ++i) r.c[i] = -g.c[i];
      break;
    case GroupKind::Heisenberg:
      r.c[0] = -g.c[0];
      r.c[1] = -g.c[1];
      r.c[2] = -g.c[2] + g.c[0] * g.c[1];
      break;
    case GroupKind::FiniteTable:
      r.c[0] = static_cast<std::int64_t>(table_inverse[static_cast<std::size_t>(g.c[0])]);
      break;
    case GroupKind::Product:
      for (std::size_t i = 0; i < factors.size(); ++i) {
        Element p = factors[i].inverse(factor_part(g, i));
        for (std::size_t j = 0; j < p.size; ++j) r.c[offsets[i] + j] = p.c[j];
      }
      break;
  }
  return r;
}

void Group::Impl::explore(std::size_t r) const {
  if (order.empty()) {
    Element e = identity();
    seen.emplace(e, std::make_pair(0u, 0ull));
    order.push_back(e);
    level_end.push_back(1);
  }
  while (!saturated && level_end.size() <= r) {
    std::size_t level = level_end.size();
    std::size_t begin = level >= 2 ? level_end[level - 2] : 0;
    std::size_t end = level_end.back();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& s : gens) {
        Element h = multiply(order[i], s);
        if (seen.find(h) != seen.end()) continue;
        if (order.size() >= Group::kBallCap) {
          // Roll back the partial level so the cache stays consistent.
          for (std::size_t j = end; j < order.size(); ++j) seen.erase(order[j]);
          order.resize(end);
          throw CapacityError("ball exceeds " + std::to_string(Group::kBallCap) + " elements");
        }
        seen.emplace(h, std::make_pair(static_cast<std::uint32_t>(level),
                                       static_cast<std::uint64_t>(order.size())));
        order.push_back(h);
      }
    }
    if (order.size() == end) {
      saturated = true;
      break;
    }
    level_end.push_back(order.size());
  }
}

Group::Group(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

Group Group::cyclic(std::int64_t k) {
  if (k < 1) throw ValidationError("cyclic order must be >= 1");
  auto p = std::make_shared<Impl>();
  p->kind = GroupKind::Cyclic;
  p->k = k;
  p->arity = 1;
  if (k > 1) {
    p->gens.push_back(make({1}));
    if (k - 1 != 1) p->gens.push_back(make({k - 1}));
  }
  return Group(p);
}

Group Group::free_abelian(std::size_t n) {
  if (n < 1 || n > kMaxComponents) throw ValidationError("free abelian rank must be in [1,8]");
  auto p = std::make_shared<Impl>();
  p->kind = GroupKind::FreeAbelian;
  p->rank = n;
  p->arity = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::int64_t s : {1, -1}) {
      Element e;
      e.size = static_cast<std::uint8_t>(n);
      e.c[i] = s;
      p->gens.push_back(e);
    }
  }
  return Group(p);
}

Group Group::heisenberg() {
  auto p = std::make_shared<Impl>();
  p->kind = GroupKind::Heisenberg;
  p->arity = 3;
  p->gens = {make({1, 0, 0}), make({-1, 0, 0}), make({0, 1, 0}), make({0, -1, 0})};
  return Group(p);
}

Group Group::finite_table(std::vector<std::string> names,
                          std::vector<std::vector<std::size_t>> table, std::string preset) {
  const std::size_t n = table.size();
  if (n == 0) throw ValidationError("finite_table: empty table");
  if (names.size() != n) throw ValidationError("finite_table: names and table sizes differ");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw ValidationError("finite_table: table is not square");
    for (auto v : table[i])
      if (v >= n) throw ValidationError("finite_table: entry out of range (closure fails)");
  }
  std::optional<std::size_t> id;
  for (std::size_t i = 0; i < n && !id; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
    if (ok) id = i;
  }
  if (!id) throw ValidationError("finite_table: no identity element");
  std::vector<std::size_t> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] == *id && table[j][i] == *id) inv[i] = j;
  for (std::size_t i = 0; i < n; ++i)
    if (inv[i] == n) throw ValidationError("finite_table: element without inverse");
  // Exhaustive associativity for small tables, seeded sample otherwise.
  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    return table[table[a][b]][c] == table[a][table[b][c]];
  };
  if (n <= 64) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!assoc(a, b, c)) throw ValidationError("finite_table: not associative");
  } else {
    std::mt19937_64 rng(7);
    for (int s = 0; s < 200000; ++s)
      if (!assoc(rng() % n, rng() % n, rng() % n))
        throw ValidationError("finite_table: not associative");
  }
  auto p = std::make_shared<Impl>();
  p->kind = GroupKind::FiniteTable;
  p->names = std::move(names);
  p->table = std::move(table);
  p->table_inverse = std::move(inv);
  p->table_identity = *id;
  p->preset = std::move(preset);
  p->arity = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (i != *id) p->gens.push_back(make({static_cast<std::int64_t>(i)}));
  return Group(p);
}

Group Group::product(std::vector<Group> factors) {
  if (factors.empty()) throw ValidationError("product: no factors");
  auto p = std::make_shared<Impl>();
  p->kind = GroupKind::Product;
  std::size_t off = 0;
  for (const auto& f : factors) {
    p->offsets.push_back(off);
    off += f.arity();
  }
  if (off > kMaxComponents)
    throw ValidationError("product: more than 8 normal-form components");
  p->arity = off;
  p->factors = std::move(factors);
  for (std::size_t i = 0; i < p->factors.size(); ++i) {
    for (const auto& s : p->factors[i].generators()) {
      Element e = p->identity();
      for (std::size_t j = 0; j < s.size; ++j) e.c[p->offsets[i] + j] = s.c[j];
      p->gens.push_back(e);
    }
  }
  return Group(p);
}

Group Group::symmetric3() {
  // Permutations of {1,2,3}: e, (12), (13), (23), (123), (132).
  std::vector<std::string> names = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  using P = std::array<int, 3>;
  std::vector<P> perms = {P{0, 1, 2}, P{1, 0, 2}, P{2, 1, 0}, P{0, 2, 1}, P{1, 2, 0}, P{2, 0, 1}};
  // Composition (a*b)(x) = a(b(x)).
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      P c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  Group g = finite_table(names, t, "s3");
  return g.with_generators({make({1}), make({3})});
}

Group Group::dihedral4() {
  // Elements r^i s^j encoded as index i + 4j; s r s = r^{-1}.
  std::vector<std::string> names = {"e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"};
  std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      std::size_t i1 = a % 4, j1 = a / 4, i2 = b % 4, j2 = b / 4;
      std::size_t i = j1 == 0 ? (i1 + i2) % 4 : (i1 + 4 - i2) % 4;
      t[a][b] = i + 4 * ((j1 + j2) % 2);
    }
  Group g = finite_table(names, t, "d4");
  return g.with_generators({make({1}), make({3}), make({4})});
}

Group Group::with_generators(std::vector<Element> gens) const {
  for (const auto& s : gens) {
    if (!contains(s)) throw ValidationError("generator is not a group element");
    if (s == identity()) throw ValidationError("identity is not allowed as a generator");
  }
  for (const auto& s : gens)
    if (std::find(gens.begin(), gens.end(), inverse(s)) == gens.end())
      throw ValidationError("generating set is not closed under inversion: " + name(s));
  std::vector<Element> dedup;
  for (const auto& s : gens)
    if (std::find(dedup.begin(), dedup.end(), s) == dedup.end()) dedup.push_back(s);
  auto p = std::make_shared<Impl>();
  p->kind = impl_->kind;
  p->k = impl_->k;
  p->rank = impl_->rank;
  p->names = impl_->names;
  p->table = impl_->table;
  p->table_inverse = impl_->table_inverse;
  p->table_identity = impl_->table_identity;
  p->preset = impl_->preset;
  p->factors = impl_->factors;
  p->offsets = impl_->offsets;
  p->arity = impl_->arity;
  p->default_gens = dedup == impl_->gens && impl_->default_gens;
  p->gens = std::move(dedup);
  return Group(p);
}

GroupKind Group::kind() const { return impl_->kind; }

std::string Group::label() const {
  switch (impl_->kind) {
    case GroupKind::Cyclic:
      return "cyclic:" + std::to_string(impl_->k);
    case GroupKind::FreeAbelian:
      return "free_abelian:" + std::to_string(impl_->rank);
    case GroupKind::Heisenberg:
      return "heisenberg";
    case GroupKind::FiniteTable:
      return impl_->preset.empty() ? "finite_table:" + std::to_string(impl_->names.size())
                                   : impl_->preset;
    case GroupKind::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < impl_->factors.size(); ++i)
        s += (i ? "," : "") + impl_->factors[i].label();
      return s + ")";
    }
  }
  return {};
}

std::size_t Group::arity() const { return impl_->arity; }

bool Group::is_finite() const {
  switch (impl_->kind) {
    case GroupKind::Cyclic:
    case GroupKind::FiniteTable:
      return true;
    case GroupKind::Product:
      return std::all_of(impl_->factors.begin(), impl_->factors.end(),
                         [](const Group& f) { return f.is_finite(); });
    default:
      return false;
  }
}

std::optional<std::size_t> Group::order() const {
  switch (impl_->kind) {
    case GroupKind::Cyclic:
      return static_cast<std::size_t>(impl_->k);
    case GroupKind::FiniteTable:
      return impl_->names.size();
    case GroupKind::Product: {
      std::size_t n = 1;
      for (const auto& f : impl_->factors) {
        auto o = f.order();
        if (!o) return std::nullopt;
        n *= *o;
      }
      return n;
    }
    default:
      return std::nullopt;
  }
}

bool Group::uses_default_generators() const { return impl_->default_gens; }

std::vector<Element> Group::elements() const {
  auto n = order();
  if (!n) throw ComputationError("elements(): group is infinite");
  std::lock_guard lock(impl_->mu);
  impl_->explore(*n);
  if (impl_->order.size() != *n)
    throw ValidationError("generating set does not generate the group");
  return impl_->order;
}

Element Group::identity() const { return impl_->identity(); }
Element Group::multiply(const Element& g, const Element& h) const { return impl_->multiply(g, h); }
Element Group::inverse(const Element& g) const { return impl_->inverse(g); }

Element Group::power(const Element& g, std::int64_t r) const {
  Element base = r < 0 ? inverse(g) : g;
  std::uint64_t e = static_cast<std::uint64_t>(r < 0 ? -r : r);
  Element acc = identity();
  while (e) {
    if (e & 1u) acc = multiply(acc, base);
    base = multiply(base, base);
    e >>= 1u;
  }
  return acc;
}

Element Group::conjugate(const Element& gamma, const Element& h) const {
  return multiply(multiply(inverse(h), gamma), h);
}

Element Group::product_of(const Tuple& t) const {
  Element acc = identity();
  for (const auto& g : t) acc = multiply(acc, g);
  return acc;
}

bool Group::contains(const Element& g) const {
  if (g.size != impl_->arity) return false;
  switch (impl_->kind) {
    case GroupKind::Cyclic:
      return g.c[0] >= 0 && g.c[0] < impl_->k;
    case GroupKind::FiniteTable:
      return g.c[0] >= 0 && static_cast<std::size_t>(g.c[0]) < impl_->names.size();
    case GroupKind::Product:
      for (std::size_t i = 0; i < impl_->factors.size(); ++i)
        if (!impl_->factors[i].contains(impl_->factor_part(g, i))) return false;
      return true;
    default:
      return true;
  }
}

std::string Group::name(const Element& g) const {
  switch (impl_->kind) {
    case GroupKind::Cyclic:
      return std::to_string(g.c[0]);
    case GroupKind::FreeAbelian:
    case GroupKind::Heisenberg:
      return join_tuple(g);
    case GroupKind::FiniteTable:
      return impl_->names.at(static_cast<std::size_t>(g.c[0]));
    case GroupKind::Product: {
      std::string s = "[";
      for (std::size_t i = 0; i < impl_->factors.size(); ++i)
        s += (i ? ";" : "") + impl_->factors[i].name(impl_->factor_part(g, i));
      return s + "]";
    }
  }
  return {};
}

Element Group::parse(const std::string& text) const {
  std::string s = trim(text);
  Element g;
  g.size = static_cast<std::uint8_t>(impl_->arity);
  switch (impl_->kind) {
    case GroupKind::Cyclic:
      g.c[0] = mod(parse_int(s), impl_->k);
      return g;
    case GroupKind::FreeAbelian:
    case GroupKind::Heisenberg: {
      auto v = parse_tuple(s, impl_->arity);
      std::copy(v.begin(), v.end(), g.c.begin());
      return g;
    }
    case GroupKind::FiniteTable: {
      auto it = std::find(impl_->names.begin(), impl_->names.end(), s);
      if (it == impl_->names.end()) throw ValidationError("unknown element name '" + s + "'");
      g.c[0] = it - impl_->names.begin();
      return g;
    }
    case GroupKind::Product: {
      if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ValidationError("expected a product element like [1;0], got '" + text + "'");
      auto parts = split_top(s.substr(1, s.size() - 2), ';');
      if (parts.size() != impl_->factors.size())
        throw ValidationError("wrong number of factor components in '" + text + "'");
      for (std::size_t i = 0; i < parts.size(); ++i) {
        Element p = impl_->factors[i].parse(parts[i]);
        for (std::size_t j = 0; j < p.size; ++j) g.c[impl_->offsets[i] + j] = p.c[j];
      }
      return g;
    }
  }
  return g;
}

const std::vector<Element>& Group::generators() const { return impl_->gens; }

std::vector<std::string> Group::generator_names() const {
  std::vector<std::string> out;
  for (const auto& s : impl_->gens) out.push_back(name(s));
  return out;
}

const std::vector<Group>& Group::factors() const { return impl_->factors; }
const std::vector<std::string>& Group::table_names() const { return impl_->names; }
const std::vector<std::vector<std::size_t>>& Group::table() const { return impl_->table; }

std::optional<std::int64_t> Group::cyclic_order() const {
  if (impl_->kind != GroupKind::Cyclic) return std::nullopt;
  return impl_->k;
}

std::size_t Group::lattice_rank() const { return impl_->rank; }

std::size_t Group::default_radius() {
  if (const char* env = std::getenv("DELOC_RADIUS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 8;
}

std::size_t Group::word_length(const Element& g) const { return word_length(g, default_radius()); }

std::size_t Group::word_length(const Element& g, std::size_t radius) const {
  auto r = try_word_length(g, radius);
  if (!r) throw RadiusExceeded("word length of " + name(g) + " exceeds the search radius", radius);
  return *r;
}

std::optional<std::size_t> Group::try_word_length(const Element& g, std::size_t radius) const {
  if (!contains(g)) throw StructuralError("element does not belong to this group");
  if (impl_->default_gens) {
    if (impl_->kind == GroupKind::FreeAbelian) {
      std::size_t l = 0;
      for (std::size_t i = 0; i < impl_->rank; ++i)
        l += static_cast<std::size_t>(std::llabs(g.c[i]));
      return l <= radius ? std::optional<std::size_t>(l) : std::nullopt;
    }
    if (impl_->kind == GroupKind::Cyclic) {
      auto r = static_cast<std::size_t>(std::min<std::int64_t>(g.c[0], impl_->k - g.c[0]));
      return r <= radius ? std::optional<std::size_t>(r) : std::nullopt;
    }
  }
  std::lock_guard lock(impl_->mu);
  auto it = impl_->seen.find(g);
  if (it == impl_->seen.end() && !impl_->saturated) {
    impl_->explore(radius);
    it = impl_->seen.find(g);
  }
  if (it == impl_->seen.end()) return std::nullopt;
  std::size_t d = it->second.first;
  return d <= radius ? std::optional<std::size_t>(d) : std::nullopt;
}

std::size_t Group::distance(const Element& g, const Element& h) const {
  return word_length(multiply(inverse(g), h));
}

std::vector<Element> Group::ball(std::size_t r) const {
  std::lock_guard lock(impl_->mu);
  impl_->explore(r);
  std::size_t end = r < impl_->level_end.size() ? impl_->level_end[r] : impl_->order.size();
  return {impl_->order.begin(), impl_->order.begin() + static_cast<std::ptrdiff_t>(end)};
}

std::size_t Group::ball_size(std::size_t r) const {
  std::lock_guard lock(impl_->mu);
  impl_->explore(r);
  return r < impl_->level_end.size() ? impl_->level_end[r] : impl_->order.size();
}

std::size_t Group::shortlex_rank(const Element& g, std::size_t radius) const {
  std::lock_guard lock(impl_->mu);
  auto it = impl_->seen.find(g);
  if (it == impl_->seen.end() && !impl_->saturated) {
    impl_->explore(radius);
    it = impl_->seen.find(g);
  }
  if (it == impl_->seen.end() || it->second.first > radius)
    throw RadiusExceeded("shortlex rank of " + name(g) + " beyond search radius", radius);
  return static_cast<std::size_t>(it->second.second);
}

bool Group::shortlex_less(const Element& a, const Element& b, std::size_t radius) const {
  return shortlex_rank(a, radius) < shortlex_rank(b, radius);
}

bool operator==(const Group& a, const Group& b) {
  if (a.impl_ == b.impl_) return true;
  return a.label() == b.label() && a.impl_->gens == b.impl_->gens &&
         a.impl_->table == b.impl_->table;
}

GrowthFit growth_degree_fit(const Group& G, std::size_t max_radius) {
  if (max_radius < 3) throw ValidationError("growth_degree_fit needs maxR >= 3");
  GrowthFit fit;
  for (std::size_t r = 0; r <= max_radius; ++r) fit.ball_sizes.push_back(G.ball_size(r));
  const auto& b = fit.ball_sizes;
  if (b[max_radius] == b[max_radius - 1]) {
    fit.m = 0;
    fit.C0 = b[max_radius];
    return fit;
  }
  // Least-squares slope of log|B(r)| against log(r+1) on the upper half of radii.
  std::size_t lo = (max_radius + 1) / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double cnt = 0;
  for (std::size_t r = lo; r <= max_radius; ++r) {
    double x = std::log(static_cast<double>(r + 1));
    double y = std::log(static_cast<double>(b[r]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    cnt += 1;
  }
  double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  fit.m = static_cast<std::size_t>(std::max(0.0, std::round(slope)));
  double c0 = 0;
  for (std::size_t r = 0; r <= max_radius; ++r)
    c0 = std::max(c0, static_cast<double>(b[r]) / std::pow(static_cast<double>(r + 1), fit.m));
  fit.C0 = static_cast<std::size_t>(std::ceil(c0 - 1e-12));
  return fit;
}

}  // namespace deloc
