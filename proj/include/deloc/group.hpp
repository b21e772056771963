#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace deloc {

inline constexpr std::size_t kMaxComponents = 8;

// Normal form of a group element: a short integer vector whose meaning depends
// on the group kind (residue, lattice vector, Heisenberg triple, table index,
// or the concatenation of factor components).
struct Element {
  std::array<std::int64_t, kMaxComponents> c{};
  std::uint8_t size = 0;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct ElementHash {
  std::size_t operator()(const Element& g) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ g.size;
    for (std::size_t i = 0; i < g.size; ++i) {
      h ^= static_cast<std::uint64_t>(g.c[i]) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

using Tuple = std::vector<Element>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::size_t h = t.size();
    ElementHash eh;
    for (const auto& g : t) h ^= eh(g) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

enum class GroupKind { Cyclic, FreeAbelian, Heisenberg, FiniteTable, Product };

// A finitely generated group given by evaluable normal forms and an ordered
// symmetric generating set. Copies share state; the BFS cache is internally
// synchronized so concurrent queries return identical results.
class Group {
 public:
  static Group cyclic(std::int64_t k);
  static Group free_abelian(std::size_t n);
  static Group heisenberg();
  static Group finite_table(std::vector<std::string> names,
                            std::vector<std::vector<std::size_t>> table,
                            std::string preset = {});
  static Group product(std::vector<Group> factors);
  static Group symmetric3();
  static Group dihedral4();

  // Same group with a different ordered generating set (must be symmetric).
  Group with_generators(std::vector<Element> gens) const;

  GroupKind kind() const;
  std::string label() const;
  std::size_t arity() const;
  bool is_finite() const;
  std::optional<std::size_t> order() const;
  bool uses_default_generators() const;

  // Finite kinds only: every element in shortlex order.
  std::vector<Element> elements() const;

  Element identity() const;
  Element multiply(const Element& g, const Element& h) const;
  Element inverse(const Element& g) const;
  Element power(const Element& g, std::int64_t r) const;
  Element conjugate(const Element& gamma, const Element& h) const;  // h^{-1} gamma h
  Element product_of(const Tuple& t) const;
  bool contains(const Element& g) const;

  std::string name(const Element& g) const;
  Element parse(const std::string& text) const;

  const std::vector<Element>& generators() const;
  std::vector<std::string> generator_names() const;
  const std::vector<Group>& factors() const;

  // Finite-table data (empty for other kinds).
  const std::vector<std::string>& table_names() const;
  const std::vector<std::vector<std::size_t>>& table() const;
  std::optional<std::int64_t> cyclic_order() const;
  std::size_t lattice_rank() const;

  std::size_t word_length(const Element& g) const;
  std::size_t word_length(const Element& g, std::size_t radius) const;
  std::optional<std::size_t> try_word_length(const Element& g, std::size_t radius) const;
  std::size_t distance(const Element& g, const Element& h) const;  // ||g^{-1} h||
  std::vector<Element> ball(std::size_t r) const;
  std::size_t ball_size(std::size_t r) const;
  // Position in shortlex order; BFS discovery order over the ordered generators.
  std::size_t shortlex_rank(const Element& g, std::size_t radius) const;
  bool shortlex_less(const Element& a, const Element& b, std::size_t radius) const;

  static std::size_t default_radius();
  static constexpr std::size_t kBallCap = 4'000'000;

  friend bool operator==(const Group& a, const Group& b);

  struct Impl;

 private:
  explicit Group(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

struct GrowthFit {
  std::size_t C0 = 0;
  std::size_t m = 0;
  std::vector<std::size_t> ball_sizes;
};

GrowthFit growth_degree_fit(const Group& G, std::size_t max_radius);

}  // namespace deloc
