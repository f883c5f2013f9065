#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "structcsp/hypergraph.hpp"
#include "structcsp/model.hpp"

namespace structcsp::generate {

using Rng = std::mt19937_64;

struct Params {
  std::size_t variables = 6;
  std::size_t domain = 3;
  std::size_t constraints = 4;
  std::size_t max_arity = 3;
  /// Fraction of |U|^arity tuples kept per relation.
  double density = 0.5;
  /// Plant a hidden solution into every relation with this probability.
  double plant_probability = 0.8;
  /// Draw unary weights (integers and small fractions in [-5, 5]).
  bool unary_weights = true;
  bool tuple_weights = false;
};

/// Binary chain X1-X2-...-X(length+1). Each relation keeps exactly `tuples_per_constraint`
/// of the |U|^2 pairs (0 = use density).
Problem chain(std::size_t length, std::size_t domain, std::uint64_t seed,
              std::size_t tuples_per_constraint = 0, double density = 0.5, bool tuple_weights = false);

/// Alpha-acyclic instance grown by attaching ears.
Problem acyclic(const Params& params, std::uint64_t seed);

/// A triangle {A,B},{B,C},{C,A} with ears attached; never acyclic.
Problem triangle_core(const Params& params, std::uint64_t seed);

/// Random scopes; every variable is constrained.
Problem random(const Params& params, std::uint64_t seed);

/// Random hypergraph over at most `vertices` vertices; every vertex in some edge.
Hypergraph random_hypergraph(Rng& rng, std::size_t vertices, std::size_t edges, std::size_t max_arity);

/// Random hypergraph grown from ears; always acyclic.
Hypergraph random_acyclic_hypergraph(Rng& rng, std::size_t vertices, std::size_t edges,
                                     std::size_t max_arity);

/// Random tree on n vertices (Pruefer sequence).
Graph random_tree(Rng& rng, std::size_t n);

/// Complete graph K_n.
Graph complete_graph(std::size_t n);

}  // namespace structcsp::generate
