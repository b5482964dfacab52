#pragma once
#include <string>
#include <vector>

#include "qmaps/forest.hpp"
#include "qmaps/gtree.hpp"

namespace qmaps {

// One-face map with every vertex of degree >= 3, stored as a rooted pairing.
struct Scheme {
  GTree tree;
  bool dominant = false;       // all degrees exactly 3
  std::vector<int> orientation;  // one half-edge per edge, first in facial order

  bool operator==(const Scheme& o) const { return tree.pairing == o.tree.pairing; }
};

// Decomposition of a well-labeled g-tree into scheme + per-half-edge data.
// Half-edge e of the scheme (= polygon side e) carries the chain of sigma_e
// tree edges traversed in its direction, the forest of pruned subtrees hanging
// along that traversal, and the bridge of chain-vertex labels.
struct DecompositionQuadruple {
  Scheme scheme;
  std::vector<MotzkinBridge> bridges;      // per half-edge; lifetime sigma_e
  std::vector<WellLabeledForest> forests;  // per half-edge; sigma_e trees, m_e edges
  int root_offset = 0;                     // u, position of the tree root in block 0
  std::vector<int> vertex_labels;          // per scheme vertex; root origin = 0

  int sigma(int e) const { return forests[e].forest.sigma; }
  int m(int e) const { return forests[e].forest.m; }
  int n_tree_edges() const;
};

// Leaf-prune to exhaustion, then contract maximal chains through degree-2
// vertices. The scheme root is the chain containing the first surviving
// half-edge at or after the tree root in facial order, in that direction.
// node_map[scheme vertex id] = tree vertex id.
struct SchemeExtraction {
  Scheme scheme;
  std::vector<int> node_map;
};
// Errors: NoSchemeExists.
SchemeExtraction extract_scheme(const GTree& tree);

// All rooted schemes of the genus, ordered by edge count then pairing.
std::vector<Scheme> enumerate_schemes(int genus, bool dominant_only = false);

DecompositionQuadruple decompose(const WellLabeledGTree& wlt);
// Errors: IncompatibleQuadruple(reason).
WellLabeledGTree recompose(const DecompositionQuadruple& quad);

// Checks the compatibility relations; diagnostics name the failing one.
bool validate_compatible(const DecompositionQuadruple& quad,
                         std::vector<std::string>* diagnostics = nullptr);

std::string quadruple_to_json(const DecompositionQuadruple& quad);
DecompositionQuadruple quadruple_from_json(const std::string& text);

}  // namespace qmaps
