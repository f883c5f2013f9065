#pragma once

#include <string>
#include <string_view>

#include "structcsp/decomposition.hpp"
#include "structcsp/hypergraph.hpp"
#include "structcsp/reduce.hpp"

namespace structcsp {

/// `.hg.json`: {"vertices":[...], "edges":{"id":[vertex,...], ...}}
Hypergraph parse_hypergraph(std::string_view text);
std::string serialize_hypergraph(const Hypergraph& h);

/// {"nodes":{"n1":"edge-id",...}, "tree_edges":[["n1","n2"],...], "root":"n1"}
JoinTree parse_join_tree(std::string_view text, const Hypergraph& h);
std::string serialize_join_tree(const JoinTree& t, const Hypergraph& h);

/// `.ghd.json`: {"nodes":{"n1":{"chi":[...], "lambda":["edge-id",...]},...},
///               "tree_edges":[...], "root":"n1"}.
/// chi entries name vertices of `g`; lambda entries name edges of `h`.
/// A file without any "lambda" yields an empty lambda vector.
GeneralizedHypertreeDecomposition parse_decomposition(std::string_view text, const Graph& g,
                                                      const Hypergraph* h = nullptr);
/// `h` may be null to write a plain tree decomposition.
std::string serialize_decomposition(const TreeDecomposition& d, const Graph& g);
std::string serialize_decomposition(const GeneralizedHypertreeDecomposition& d, const Graph& g,
                                    const Hypergraph& h);

/// `.map.json` back-mapping artifact.
std::string serialize_artifacts(const ReductionArtifacts& a);
ReductionArtifacts parse_artifacts(std::string_view text);

}  // namespace structcsp
