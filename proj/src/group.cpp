#include "gconv/group.hpp"

#include <string>
#include <utility>

#include "gconv/error.hpp"
#include "gconv/kernels.hpp"

namespace gconv {

namespace {

std::vector<Element> compute_inverses(std::size_t n, const std::vector<Element>& table) {
  std::vector<Element> inv(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) {
      if (table[g * n + h] == 0) {
        inv[g] = static_cast<Element>(h);
        break;
      }
    }
  }
  return inv;
}

}  // namespace

FiniteGroup::FiniteGroup(std::size_t size, std::vector<Element> table, GroupDescriptor descriptor)
    : size_(size),
      table_(std::move(table)),
      inverse_(compute_inverses(size_, table_)),
      descriptor_(std::move(descriptor)) {}

FiniteGroup FiniteGroup::from_table(const CayleyTable& candidate) {
  const auto validation = validate_group(candidate);
  if (!validation.ok()) {
    const auto& v = validation.violations.front();
    throw InvalidStructure("Cayley table violates the " + to_string(v.axiom) + " axiom (witness " +
                           std::to_string(v.a) + ", " + std::to_string(v.b) + ", " +
                           std::to_string(v.c) + ")");
  }
  std::vector<Element> table(candidate.entries.begin(), candidate.entries.end());
  GroupDescriptor d;
  d.kind = GroupDescriptor::Kind::table;
  d.n = candidate.size;
  return FiniteGroup(candidate.size, std::move(table), std::move(d));
}

FiniteGroup make_cyclic_group(std::size_t n) {
  if (n == 0) throw InvalidParameter("cyclic group order must be positive");
  std::vector<Element> table(n * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) table[g * n + h] = static_cast<Element>((g + h) % n);
  GroupDescriptor d;
  d.kind = GroupDescriptor::Kind::cyclic;
  d.n = n;
  return FiniteGroup(n, std::move(table), std::move(d));
}

FiniteGroup make_product_group(const FiniteGroup& first, const FiniteGroup& second) {
  const std::size_t n1 = first.size(), n2 = second.size(), n = n1 * n2;
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto a1 = static_cast<Element>(a / n2), a2 = static_cast<Element>(a % n2);
    for (std::size_t b = 0; b < n; ++b) {
      const auto b1 = static_cast<Element>(b / n2), b2 = static_cast<Element>(b % n2);
      table[a * n + b] = static_cast<Element>(first.mul(a1, b1) * n2 + second.mul(a2, b2));
    }
  }
  GroupDescriptor d;
  d.kind = GroupDescriptor::Kind::product;
  d.n = n;
  d.factors = {first.descriptor(), second.descriptor()};
  if (first.descriptor().kind == GroupDescriptor::Kind::product) {
    d.factors = first.descriptor().factors;
    d.factors.push_back(second.descriptor());
  }
  return FiniteGroup(n, std::move(table), std::move(d));
}

GroupPtr make_cyclic(std::size_t n) { return std::make_shared<const FiniteGroup>(make_cyclic_group(n)); }

GroupPtr make_product(const GroupPtr& first, const GroupPtr& second) {
  return std::make_shared<const FiniteGroup>(make_product_group(*first, *second));
}

GroupPtr make_from_table(const CayleyTable& table) {
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(table));
}

GroupPtr make_from_descriptor(const GroupDescriptor& d) {
  switch (d.kind) {
    case GroupDescriptor::Kind::cyclic:
      return make_cyclic(d.n);
    case GroupDescriptor::Kind::product: {
      if (d.factors.empty()) throw InvalidParameter("product group needs at least one factor");
      GroupPtr g = make_from_descriptor(d.factors.front());
      for (std::size_t i = 1; i < d.factors.size(); ++i)
        g = make_product(g, make_from_descriptor(d.factors[i]));
      return g;
    }
    case GroupDescriptor::Kind::table:
      break;
  }
  throw InvalidParameter("table groups are built from their table, not a descriptor");
}

bool same_group(const GroupPtr& a, const GroupPtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::string to_string(GroupAxiom axiom) {
  switch (axiom) {
    case GroupAxiom::square: return "square";
    case GroupAxiom::closure: return "closure";
    case GroupAxiom::identity: return "identity";
    case GroupAxiom::inverse: return "inverse";
    case GroupAxiom::associativity: return "associativity";
  }
  return "unknown";
}

GroupValidation validate_group(const CayleyTable& candidate) {
  GroupValidation result;
  const std::size_t n = candidate.size;
  const auto& t = candidate.entries;
  if (n == 0 || t.size() != n * n) {
    result.violations.push_back({GroupAxiom::square, static_cast<std::int64_t>(n),
                                 static_cast<std::int64_t>(t.size()), -1});
    return result;
  }
  const auto sn = static_cast<std::int64_t>(n);
  for (std::size_t i = 0; i < n * n; ++i) {
    if (t[i] < 0 || t[i] >= sn) {
      result.violations.push_back(
          {GroupAxiom::closure, static_cast<std::int64_t>(i / n), static_cast<std::int64_t>(i % n), t[i]});
      // The remaining checks index through the table.
      return result;
    }
  }
  auto at = [&](std::int64_t a, std::int64_t b) { return t[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)]; };

  for (std::int64_t g = 0; g < sn; ++g) {
    if (at(0, g) != g || at(g, 0) != g) {
      result.violations.push_back({GroupAxiom::identity, g, at(0, g), at(g, 0)});
      break;
    }
  }
  for (std::int64_t g = 0; g < sn; ++g) {
    std::int64_t inv = -1;
    for (std::int64_t h = 0; h < sn; ++h)
      if (at(g, h) == 0) {
        inv = h;
        break;
      }
    if (inv < 0 || at(inv, g) != 0) {
      result.violations.push_back({GroupAxiom::inverse, g, inv, -1});
      break;
    }
  }
  bool found = false;
  for (std::int64_t a = 0; a < sn && !found; ++a)
    for (std::int64_t b = 0; b < sn && !found; ++b)
      for (std::int64_t c = 0; c < sn; ++c)
        if (at(at(a, b), c) != at(a, at(b, c))) {
          result.violations.push_back({GroupAxiom::associativity, a, b, c});
          found = true;
          break;
        }
  return result;
}

CayleyTable to_cayley_table(const FiniteGroup& group) {
  CayleyTable t;
  t.size = group.size();
  t.entries.assign(group.table().begin(), group.table().end());
  return t;
}

GroupSignal::GroupSignal(GroupPtr group, std::vector<double> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (!group_) throw InvalidParameter("signal needs a group");
  if (values_.size() != group_->size())
    throw IncompatibleOperands("signal length " + std::to_string(values_.size()) +
                               " differs from |G| = " + std::to_string(group_->size()));
}

GroupSignal GroupSignal::zeros(GroupPtr group) {
  const auto n = group->size();
  return GroupSignal(std::move(group), std::vector<double>(n, 0.0));
}

GroupSignal GroupSignal::delta(GroupPtr group, Element at) {
  if (at >= group->size()) throw InvalidParameter("delta position outside the group");
  std::vector<double> v(group->size(), 0.0);
  v[at] = 1.0;
  return GroupSignal(std::move(group), std::move(v));
}

GroupSignal convolve(const GroupSignal& a, const GroupSignal& b) {
  if (!same_group(a.group(), b.group())) throw IncompatibleOperands("convolution of signals on different groups");
  std::vector<double> out(a.size());
  kernels::serial::convolve(kernels::GroupView(*a.group()), a.values(), b.values(), out);
  return GroupSignal(a.group(), std::move(out));
}

GroupSignal involute(const GroupSignal& v) {
  const auto& g = *v.group();
  std::vector<double> out(g.size());
  for (Element e = 0; e < g.size(); ++e) out[e] = v[g.inverse(e)];
  return GroupSignal(v.group(), std::move(out));
}

GroupSignal shift(Element g, const GroupSignal& x) {
  const auto& grp = *x.group();
  if (g >= grp.size()) throw InvalidParameter("shift element " + std::to_string(g) + " outside the group");
  const Element gi = grp.inverse(g);
  std::vector<double> out(grp.size());
  for (Element h = 0; h < grp.size(); ++h) out[h] = x[grp.mul(gi, h)];
  return GroupSignal(x.group(), std::move(out));
}

}  // namespace gconv
