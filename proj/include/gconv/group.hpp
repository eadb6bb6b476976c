#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gconv {

using Element = std::uint32_t;

/// How a group was built. Kept with the group so that files round-trip.
struct GroupDescriptor {
  enum class Kind { cyclic, product, table };
  Kind kind = Kind::cyclic;
  std::size_t n = 1;                      // cyclic only
  std::vector<GroupDescriptor> factors;   // product only
  bool operator==(const GroupDescriptor&) const = default;
};

/// Raw, unvalidated Cayley table: entries[g * size + h] = g·h.
struct CayleyTable {
  std::size_t size = 0;
  std::vector<std::int64_t> entries;
};

/// A finite group stored as its full Cayley table. The identity is always
/// element 0. Instances are immutable; share them through GroupPtr.
class FiniteGroup {
 public:
  /// Validates the table and throws InvalidStructure on the first violated axiom.
  static FiniteGroup from_table(const CayleyTable& table);

  std::size_t size() const noexcept { return size_; }
  Element identity() const noexcept { return 0; }
  Element mul(Element g, Element h) const noexcept { return table_[g * size_ + h]; }
  Element inverse(Element g) const noexcept { return inverse_[g]; }

  std::span<const Element> table() const noexcept { return table_; }
  std::span<const Element> inverses() const noexcept { return inverse_; }
  const GroupDescriptor& descriptor() const noexcept { return descriptor_; }

  bool operator==(const FiniteGroup& other) const noexcept {
    return size_ == other.size_ && table_ == other.table_;
  }

 private:
  friend FiniteGroup make_cyclic_group(std::size_t);
  friend FiniteGroup make_product_group(const FiniteGroup&, const FiniteGroup&);
  FiniteGroup(std::size_t size, std::vector<Element> table, GroupDescriptor descriptor);

  std::size_t size_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  GroupDescriptor descriptor_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

FiniteGroup make_cyclic_group(std::size_t n);
FiniteGroup make_product_group(const FiniteGroup& first, const FiniteGroup& second);

/// Z_n with g·h = (g + h) mod n.
GroupPtr make_cyclic(std::size_t n);
/// Direct product, element (i1, i2) stored at index i1 * |G2| + i2.
GroupPtr make_product(const GroupPtr& first, const GroupPtr& second);
GroupPtr make_from_table(const CayleyTable& table);
GroupPtr make_from_descriptor(const GroupDescriptor& descriptor);

bool same_group(const GroupPtr& a, const GroupPtr& b) noexcept;

enum class GroupAxiom { square, closure, identity, inverse, associativity };

std::string to_string(GroupAxiom axiom);

struct AxiomViolation {
  GroupAxiom axiom;
  // Witness elements; unused slots are -1.
  std::int64_t a = -1;
  std::int64_t b = -1;
  std::int64_t c = -1;
};

struct GroupValidation {
  std::vector<AxiomViolation> violations;  // at most one witness per axiom
  bool ok() const noexcept { return violations.empty(); }
};

/// Exhaustive check of the group axioms (associativity is O(|G|^3)).
GroupValidation validate_group(const CayleyTable& candidate);

CayleyTable to_cayley_table(const FiniteGroup& group);

/// A real-valued function on G.
class GroupSignal {
 public:
  GroupSignal(GroupPtr group, std::vector<double> values);
  static GroupSignal zeros(GroupPtr group);
  static GroupSignal delta(GroupPtr group, Element at = 0);

  const GroupPtr& group() const noexcept { return group_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](Element g) const noexcept { return values_[g]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  GroupPtr group_;
  std::vector<double> values_;
};

/// (a * b)(g) = sum_h a(h) b(h^{-1} g).
GroupSignal convolve(const GroupSignal& a, const GroupSignal& b);

/// v*(g) = v(g^{-1}).
GroupSignal involute(const GroupSignal& v);

/// (S_g x)(h) = x(g^{-1} h).
GroupSignal shift(Element g, const GroupSignal& x);

}  // namespace gconv
