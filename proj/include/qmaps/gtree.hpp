#pragma once
#include <functional>
#include <string>
#include <vector>

#include "qmaps/map_core.hpp"

namespace qmaps {

// One-face map of genus g stored as a pairing (chord diagram) of the sides of
// the 2n-gon, root at side 0. Side i is glued to side pairing[i]. The derived
// combinatorial map has facial successor i -> i+1 mod 2n, which forces
// sigma(j) = pairing(j-1 mod 2n).
struct GTree {
  int n_edges = 0;
  std::vector<int> pairing;
  CombinatorialMap map;

  bool operator==(const GTree& o) const { return pairing == o.pairing; }
};

struct WellLabeledGTree {
  GTree tree;
  std::vector<int> labels;  // indexed by canonical vertex id of tree.map

  bool operator==(const WellLabeledGTree& o) const {
    return tree == o.tree && labels == o.labels;
  }
  bool operator<(const WellLabeledGTree& o) const {
    if (tree.pairing != o.tree.pairing) return tree.pairing < o.tree.pairing;
    return labels < o.labels;
  }
};

struct FacialSequence {
  std::vector<int> vertices;  // t(0)..t(2n), t(0)=t(2n)
};

// Errors: InvalidInvolution, OneFaceViolation.
GTree from_pairing(int n_edges, std::vector<int> pairing);

FacialSequence facial_sequence(const GTree& t);

// Errors: RootLabelNonzero, IncrementTooLarge.
WellLabeledGTree validate_labels(const GTree& tree, std::vector<int> labels);

// Exhaustive T_n for the given genus; canonical order (lexicographic by
// pairing then by label vector). Guarded by a cap on n.
// Errors: SizeTooLargeForExhaustive.
std::vector<WellLabeledGTree> enumerate_well_labeled_gtrees(int genus, int n_edges,
                                                            int cap = 8);

// All fixed-point-free involutions on [0, 2n), lexicographic.
void for_each_pairing(int n_edges, const std::function<void(const std::vector<int>&)>& fn);

std::string gtree_to_json(const WellLabeledGTree& t, int genus);
WellLabeledGTree gtree_from_json(const std::string& text);

}  // namespace qmaps
