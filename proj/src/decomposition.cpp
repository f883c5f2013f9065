#include "structcsp/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "structcsp/errors.hpp"

namespace structcsp {

std::size_t TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.empty() ? std::size_t{0} : b.size() - 1);
  return w;
}

std::size_t GeneralizedHypertreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& l : lambda) w = std::max(w, l.size());
  return w;
}

namespace {

using AdjSets = std::vector<std::set<std::size_t>>;

AdjSets adjacency_sets(const Graph& g) {
  AdjSets adj(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  return adj;
}

std::size_t fill_in(const AdjSets& adj, std::size_t v) {
  std::size_t missing = 0;
  for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
    for (auto b = std::next(a); b != adj[v].end(); ++b)
      if (!adj[*a].count(*b)) ++missing;
  return missing;
}

std::vector<std::size_t> name_ranks(const Graph& g) {
  std::vector<std::size_t> order(g.num_vertices());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return g.vertex_name(a) < g.vertex_name(b); });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

// Position-by-name comparison of two bags.
bool bag_name_less(const Graph& g, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  auto names = [&](const std::vector<std::size_t>& bag) {
    std::vector<std::string_view> out;
    for (auto v : bag) out.push_back(g.vertex_name(v));
    std::sort(out.begin(), out.end());
    return out;
  };
  return names(a) < names(b);
}

// Shared connectedness test over a labelled tree: for every vertex, nodes
// containing it must induce exactly (count - 1) tree edges.
std::optional<std::size_t> disconnected_vertex(std::size_t num_vertices, const Tree& tree,
                                               const std::vector<std::vector<std::size_t>>& bags) {
  std::vector<std::size_t> nodes_with(num_vertices, 0), edges_with(num_vertices, 0);
  for (const auto& bag : bags)
    for (auto x : bag) ++nodes_with[x];
  for (auto [a, b] : tree.edges) {
    std::vector<std::size_t> common;
    std::set_intersection(bags[a].begin(), bags[a].end(), bags[b].begin(), bags[b].end(),
                          std::back_inserter(common));
    for (auto x : common) ++edges_with[x];
  }
  for (std::size_t x = 0; x < num_vertices; ++x)
    if (nodes_with[x] > 0 && edges_with[x] != nodes_with[x] - 1) return x;
  return std::nullopt;
}

}  // namespace

std::vector<std::size_t> minfill_order(const Graph& g) {
  const std::size_t n = g.num_vertices();
  AdjSets adj = adjacency_sets(g);
  const auto rank = name_ranks(g);
  std::vector<std::size_t> fill(n);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> queue;  // (fill, name rank, vertex)
  for (std::size_t v = 0; v < n; ++v) {
    fill[v] = fill_in(adj, v);
    queue.emplace(fill[v], rank[v], v);
  }
  std::vector<bool> done(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!queue.empty()) {
    const std::size_t v = std::get<2>(*queue.begin());
    queue.erase(queue.begin());
    done[v] = true;
    order.push_back(v);
    std::vector<std::size_t> nbrs(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      adj[nbrs[i]].erase(v);
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        adj[nbrs[i]].insert(nbrs[j]);
        adj[nbrs[j]].insert(nbrs[i]);
      }
    }
    std::set<std::size_t> affected(nbrs.begin(), nbrs.end());
    for (auto a : nbrs) affected.insert(adj[a].begin(), adj[a].end());
    for (auto a : affected) {
      if (done[a]) continue;
      queue.erase({fill[a], rank[a], a});
      fill[a] = fill_in(adj, a);
      queue.emplace(fill[a], rank[a], a);
    }
  }
  return order;
}

TreeDecomposition elimination_tree_decomposition(const Graph& g, std::span<const std::size_t> order) {
  const std::size_t n = g.num_vertices();
  if (order.size() != n) throw InputError("elimination order is not a permutation of the vertices");
  std::vector<std::size_t> position(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || position[order[i]] != n)
      throw InputError("elimination order is not a permutation of the vertices");
    position[order[i]] = i;
  }
  TreeDecomposition d;
  if (n == 0) return d;

  AdjSets adj = adjacency_sets(g);
  std::vector<std::vector<std::size_t>> bags(n);
  std::vector<std::size_t> link(n, RootedTree::kNoParent);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = order[i];
    std::vector<std::size_t> nbrs(adj[v].begin(), adj[v].end());
    bags[i] = nbrs;
    bags[i].push_back(v);
    std::sort(bags[i].begin(), bags[i].end());
    std::size_t first = n;
    for (auto a : nbrs) first = std::min(first, position[a]);
    if (first < n) link[i] = first;
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      adj[nbrs[x]].erase(v);
      for (std::size_t y = x + 1; y < nbrs.size(); ++y) {
        adj[nbrs[x]].insert(nbrs[y]);
        adj[nbrs[y]].insert(nbrs[x]);
      }
    }
  }

  // Tree over elimination steps; component roots are chained together.
  std::vector<std::set<std::size_t>> tree(n);
  std::size_t previous_root = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (link[i] != RootedTree::kNoParent) {
      tree[i].insert(link[i]);
      tree[link[i]].insert(i);
    } else {
      if (previous_root != n) {
        tree[i].insert(previous_root);
        tree[previous_root].insert(i);
      }
      previous_root = i;
    }
  }

  // Contract bags contained in a neighbouring bag.
  std::vector<bool> alive(n, true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n && !changed; ++a) {
      if (!alive[a]) continue;
      for (std::size_t b : tree[a]) {
        if (!std::includes(bags[b].begin(), bags[b].end(), bags[a].begin(), bags[a].end())) continue;
        for (std::size_t c : tree[a])
          if (c != b) {
            tree[c].erase(a);
            tree[c].insert(b);
            tree[b].insert(c);
          }
        tree[b].erase(a);
        tree[a].clear();
        alive[a] = false;
        changed = true;
        break;
      }
    }
  }

  std::vector<std::size_t> index(n, n);
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) {
      index[i] = d.bags.size();
      d.bags.push_back(bags[i]);
    }
  d.tree.node_names = Tree::default_names(d.bags.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : tree[i])
      if (alive[i] && i < j) d.tree.edges.emplace_back(index[i], index[j]);
  std::size_t root = 0;
  for (std::size_t p = 1; p < d.bags.size(); ++p)
    if (bag_name_less(g, d.bags[p], d.bags[root])) root = p;
  d.tree.root = root;
  return d;
}

TreeDecomposition minfill_tree_decomposition(const Graph& g) {
  const auto order = minfill_order(g);
  TreeDecomposition d = elimination_tree_decomposition(g, order);
  if (auto check = check_tree_decomposition(g, d); !check)
    throw std::logic_error("min-fill produced an invalid decomposition: " + check.message);
  return d;
}

DecompositionCheck check_tree_decomposition(const Graph& g, const TreeDecomposition& d) {
  DecompositionCheck r;
  if (auto defect = d.tree.structural_defect(); !defect.empty()) {
    r.message = "not a tree: " + defect;
    return r;
  }
  if (d.bags.size() != d.tree.size()) {
    r.message = "bag count does not match the tree size";
    return r;
  }
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::size_t>> bags = d.bags;
  for (std::size_t p = 0; p < bags.size(); ++p) {
    auto& bag = bags[p];
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    if (!bag.empty() && bag.back() >= n) {
      r.node = p;
      r.message = "bag '" + d.tree.node_names[p] + "' references an unknown vertex";
      return r;
    }
  }
  std::vector<bool> covered(n, false);
  for (const auto& bag : bags)
    for (auto x : bag) covered[x] = true;
  for (std::size_t x = 0; x < n; ++x)
    if (!covered[x]) {
      r.vertex = x;
      r.message = "condition 1 (vertex coverage): '" + g.vertex_name(x) + "' is in no bag";
      return r;
    }
  for (auto [a, b] : g.edges()) {
    bool ok = false;
    for (const auto& bag : bags)
      if (std::binary_search(bag.begin(), bag.end(), a) && std::binary_search(bag.begin(), bag.end(), b)) {
        ok = true;
        break;
      }
    if (!ok) {
      r.vertex = a;
      r.message = "condition 2 (edge coverage): edge {" + g.vertex_name(a) + "," + g.vertex_name(b) +
                  "} is in no bag";
      return r;
    }
  }
  if (auto x = disconnected_vertex(n, d.tree, bags)) {
    r.vertex = *x;
    r.message = "condition 3 (connectedness): bags containing '" + g.vertex_name(*x) + "' are disconnected";
    return r;
  }
  r.valid = true;
  r.width = d.width();
  return r;
}

std::size_t exact_treewidth(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kExactTreewidthLimit)
    throw TooLarge("exact_treewidth supports at most " + std::to_string(kExactTreewidthLimit) + " vertices, got " +
                   std::to_string(n));
  if (n == 0) return 0;
  std::vector<std::uint32_t> nbr(n, 0);
  for (auto [a, b] : g.edges()) {
    nbr[a] |= 1u << b;
    nbr[b] |= 1u << a;
  }
  const std::uint32_t full = (1u << n) - 1;
  // Vertices outside S + {v} reachable from v through S.
  auto q = [&](std::uint32_t s, std::size_t v) {
    std::uint32_t reached = 1u << v, frontier = 1u << v;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= nbr[std::countr_zero(f)];
      next &= ~reached;
      reached |= next;
      frontier = next & s;
    }
    return static_cast<std::size_t>(std::popcount(reached & ~s & ~(1u << v)));
  };
  std::vector<std::size_t> best(std::size_t{1} << n, std::numeric_limits<std::size_t>::max());
  best[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s)
    for (std::uint32_t bits = s; bits; bits &= bits - 1) {
      const std::size_t v = std::countr_zero(bits);
      const std::uint32_t rest = s & ~(1u << v);
      best[s] = std::min(best[s], std::max(best[rest], q(rest, v)));
    }
  return best[full];
}

GeneralizedHypertreeDecomposition greedy_cover_lambda(const Hypergraph& h, const TreeDecomposition& d) {
  GeneralizedHypertreeDecomposition out{d, {}};
  out.lambda.reserve(d.bags.size());
  for (std::size_t p = 0; p < d.bags.size(); ++p) {
    std::vector<std::size_t> residual = d.bags[p];
    std::vector<std::size_t> chosen;
    while (!residual.empty()) {
      std::size_t best = h.num_edges(), best_gain = 0;
      for (std::size_t e = 0; e < h.num_edges(); ++e) {
        const auto& ev = h.edge(e).vertices;
        std::size_t gain = 0;
        for (auto x : residual) gain += std::binary_search(ev.begin(), ev.end(), x);
        if (gain > best_gain || (gain == best_gain && gain > 0 && h.edge_rank(e) < h.edge_rank(best))) {
          best = e;
          best_gain = gain;
        }
      }
      if (best_gain == 0)
        throw std::logic_error("bag '" + d.tree.node_names[p] + "' cannot be covered by hyperedges");
      chosen.push_back(best);
      const auto& ev = h.edge(best).vertices;
      std::erase_if(residual, [&](auto x) { return std::binary_search(ev.begin(), ev.end(), x); });
    }
    std::sort(chosen.begin(), chosen.end());
    out.lambda.push_back(std::move(chosen));
  }
  return out;
}

GeneralizedHypertreeDecomposition heuristic_ghd(const Hypergraph& h) {
  return greedy_cover_lambda(h, minfill_tree_decomposition(primal_graph(h)));
}

GeneralizedHypertreeDecomposition ghd_from_join_tree(const Hypergraph& h, const JoinTree& t) {
  GeneralizedHypertreeDecomposition d;
  d.base.tree = t.tree;
  for (std::size_t e : t.edge_of_node) {
    d.base.bags.push_back(h.edge(e).vertices);
    d.lambda.push_back({e});
  }
  return d;
}

DecompositionCheck check_ghd(const Hypergraph& h, const GeneralizedHypertreeDecomposition& d) {
  DecompositionCheck r = check_tree_decomposition(primal_graph(h), d.base);
  if (!r) return r;
  r.valid = false;
  if (d.lambda.size() != d.base.bags.size()) {
    r.message = "lambda labelling does not match the tree size";
    return r;
  }
  for (std::size_t p = 0; p < d.lambda.size(); ++p) {
    for (auto e : d.lambda[p])
      if (e >= h.num_edges()) {
        r.node = p;
        r.message = "lambda of '" + d.base.tree.node_names[p] + "' references an unknown hyperedge";
        return r;
      }
    for (auto x : d.base.bags[p]) {
      bool covered = false;
      for (auto e : d.lambda[p]) {
        const auto& ev = h.edge(e).vertices;
        if (std::binary_search(ev.begin(), ev.end(), x)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        r.node = p;
        r.vertex = x;
        r.message = "'" + h.vertices()[x] + "' in chi('" + d.base.tree.node_names[p] + "') is not covered by lambda";
        return r;
      }
    }
  }
  r.valid = true;
  r.width = d.width();
  return r;
}

DecompositionCheck check_descendant_condition(const Hypergraph& h, const GeneralizedHypertreeDecomposition& d) {
  DecompositionCheck r;
  const RootedTree rooted(d.base.tree);
  std::vector<std::vector<std::size_t>> subtree(d.base.bags.size());
  for (std::size_t p : rooted.postorder) {
    std::set<std::size_t> acc(d.base.bags[p].begin(), d.base.bags[p].end());
    for (std::size_t c : rooted.children[p]) acc.insert(subtree[c].begin(), subtree[c].end());
    subtree[p].assign(acc.begin(), acc.end());
  }
  for (std::size_t p : rooted.preorder) {
    const auto& bag = d.base.bags[p];
    for (std::size_t e : d.lambda[p])
      for (std::size_t x : h.edge(e).vertices) {
        if (!std::binary_search(subtree[p].begin(), subtree[p].end(), x)) continue;
        if (std::find(bag.begin(), bag.end(), x) != bag.end()) continue;
        r.node = p;
        r.edge = e;
        r.vertex = x;
        r.message = "hyperedge '" + h.edge(e).id + "' at '" + d.base.tree.node_names[p] + "' meets '" +
                    h.vertices()[x] + "' below the node but not in its bag";
        return r;
      }
  }
  r.valid = true;
  r.width = d.width();
  return r;
}

}  // namespace structcsp
