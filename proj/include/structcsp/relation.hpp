#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "structcsp/model.hpp"

namespace structcsp {

/// Hash for projected rows used as semijoin/grouping keys.
struct RowHash {
  std::size_t operator()(const Row& row) const noexcept {
    std::size_t h = row.size();
    for (ValueId v : row) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

using RowSet = std::unordered_set<Row, RowHash>;

/// A set of rows over a scope kept sorted by VarId. Working representation
/// for semijoins, joins and projections.
struct Relation {
  std::vector<VarId> scope;
  std::vector<Row> rows;

  bool empty() const noexcept { return rows.empty(); }
  std::size_t size() const noexcept { return rows.size(); }
};

/// Columns of `r.scope` holding each of `vars` (all must be present).
std::vector<std::size_t> column_positions(std::span<const VarId> scope, std::span<const VarId> vars);

Row project_row(const Row& row, std::span<const std::size_t> columns);

/// Sorted intersection of two sorted scopes.
std::vector<VarId> shared_variables(std::span<const VarId> a, std::span<const VarId> b);

/// The relation of a constraint, columns reordered to sorted scope.
Relation relation_of(const Constraint& constraint);

/// Keeps the rows of `target` that also occur in `other` (same scope).
void intersect_with(Relation& target, const Relation& other);

/// Removes from `target` every row with no partner in `filter` agreeing on
/// the shared variables. Returns true when rows were removed.
bool semijoin(Relation& target, const Relation& filter);

/// Natural join on the shared variables.
Relation natural_join(const Relation& a, const Relation& b);

/// Projection onto `vars` (sorted, subset of scope), duplicates removed, first-occurrence order.
Relation project(const Relation& r, std::span<const VarId> vars);

/// Sorts rows by the instance's canonical tuple order.
void sort_canonical(Relation& r, const CspInstance& instance);

/// Comparator of two rows over the same scope under the canonical order.
class CanonicalRowLess {
 public:
  CanonicalRowLess(const CspInstance& instance, std::span<const VarId> scope);
  bool operator()(const Row& a, const Row& b) const;

 private:
  const CspInstance* instance_;
  std::vector<std::size_t> name_order_;
};

}  // namespace structcsp
