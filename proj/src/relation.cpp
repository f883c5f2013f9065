#include "structcsp/relation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace structcsp {

std::vector<std::size_t> column_positions(std::span<const VarId> scope, std::span<const VarId> vars) {
  std::vector<std::size_t> cols;
  cols.reserve(vars.size());
  for (VarId v : vars) {
    auto it = std::find(scope.begin(), scope.end(), v);
    if (it == scope.end()) throw std::logic_error("column_positions: variable outside scope");
    cols.push_back(static_cast<std::size_t>(it - scope.begin()));
  }
  return cols;
}

Row project_row(const Row& row, std::span<const std::size_t> columns) {
  Row out;
  out.reserve(columns.size());
  for (std::size_t c : columns) out.push_back(row[c]);
  return out;
}

std::vector<VarId> shared_variables(std::span<const VarId> a, std::span<const VarId> b) {
  std::vector<VarId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Relation relation_of(const Constraint& constraint) {
  Relation r;
  r.scope = constraint.scope;
  std::sort(r.scope.begin(), r.scope.end());
  const auto cols = column_positions(constraint.scope, r.scope);
  r.rows.reserve(constraint.tuples.size());
  for (const Row& t : constraint.tuples) r.rows.push_back(project_row(t, cols));
  return r;
}

void intersect_with(Relation& target, const Relation& other) {
  if (target.scope != other.scope) throw std::logic_error("intersect_with: scope mismatch");
  RowSet keep(other.rows.begin(), other.rows.end());
  std::erase_if(target.rows, [&](const Row& row) { return keep.count(row) == 0; });
}

bool semijoin(Relation& target, const Relation& filter) {
  const auto shared = shared_variables(target.scope, filter.scope);
  const auto tcols = column_positions(target.scope, shared);
  const auto fcols = column_positions(filter.scope, shared);
  RowSet keys;
  keys.reserve(filter.rows.size());
  for (const Row& row : filter.rows) keys.insert(project_row(row, fcols));
  const std::size_t before = target.rows.size();
  std::erase_if(target.rows, [&](const Row& row) { return keys.count(project_row(row, tcols)) == 0; });
  return target.rows.size() != before;
}

Relation natural_join(const Relation& a, const Relation& b) {
  Relation out;
  std::set_union(a.scope.begin(), a.scope.end(), b.scope.begin(), b.scope.end(), std::back_inserter(out.scope));
  const auto shared = shared_variables(a.scope, b.scope);
  const auto acols = column_positions(a.scope, shared);
  const auto bcols = column_positions(b.scope, shared);

  std::unordered_map<Row, std::vector<std::size_t>, RowHash> index;
  for (std::size_t i = 0; i < b.rows.size(); ++i) index[project_row(b.rows[i], bcols)].push_back(i);

  // For each output column: take it from a (>= 0) or from b (encoded as ~col).
  std::vector<std::ptrdiff_t> source;
  for (VarId v : out.scope) {
    auto ia = std::find(a.scope.begin(), a.scope.end(), v);
    if (ia != a.scope.end()) {
      source.push_back(ia - a.scope.begin());
    } else {
      auto ib = std::find(b.scope.begin(), b.scope.end(), v);
      source.push_back(~(ib - b.scope.begin()));
    }
  }
  for (const Row& ra : a.rows) {
    auto it = index.find(project_row(ra, acols));
    if (it == index.end()) continue;
    for (std::size_t j : it->second) {
      const Row& rb = b.rows[j];
      Row row;
      row.reserve(source.size());
      for (auto s : source) row.push_back(s >= 0 ? ra[s] : rb[~s]);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

Relation project(const Relation& r, std::span<const VarId> vars) {
  Relation out;
  out.scope.assign(vars.begin(), vars.end());
  const auto cols = column_positions(r.scope, vars);
  RowSet seen;
  for (const Row& row : r.rows) {
    Row p = project_row(row, cols);
    if (seen.insert(p).second) out.rows.push_back(std::move(p));
  }
  return out;
}

CanonicalRowLess::CanonicalRowLess(const CspInstance& instance, std::span<const VarId> scope)
    : instance_(&instance), name_order_(scope.size()) {
  std::iota(name_order_.begin(), name_order_.end(), std::size_t{0});
  std::sort(name_order_.begin(), name_order_.end(), [&](std::size_t x, std::size_t y) {
    return instance.variable_rank(scope[x]) < instance.variable_rank(scope[y]);
  });
}

bool CanonicalRowLess::operator()(const Row& a, const Row& b) const {
  for (std::size_t col : name_order_) {
    if (a[col] == b[col]) continue;
    return instance_->value_rank(a[col]) < instance_->value_rank(b[col]);
  }
  return false;
}

void sort_canonical(Relation& r, const CspInstance& instance) {
  std::sort(r.rows.begin(), r.rows.end(), CanonicalRowLess(instance, r.scope));
}

}  // namespace structcsp
