#pragma once
#include <string>
#include <vector>

#include "qmaps/util.hpp"

namespace qmaps {

// Forest in the word (Neveu) formalism: nodes are sequences of positive
// integers; the floor is {(1),...,(sigma+1)} and the last floor vertex has no
// children. Nodes are kept sorted in depth-first (facial) order of the
// forest: floor vertex 1, then its subtree, then floor vertex 2, ...
struct Forest {
  int sigma = 0;  // number of trees t(f); the floor has sigma+1 vertices
  int m = 0;      // number of tree (non-floor) edges
  std::vector<std::vector<int>> nodes;
};

struct WellLabeledForest {
  Forest forest;
  std::vector<int> labels;  // aligned with forest.nodes; 0 on the floor

  bool operator==(const WellLabeledForest& o) const {
    return forest.nodes == o.forest.nodes && labels == o.labels;
  }
};

// Contour pair (C, L): C has +-1 steps from C(0)=sigma first-passing 0 at the
// final index; L carries the labels along the facial sequence.
struct ContourPair {
  std::vector<int> contour;
  std::vector<int> spatial;
};

struct MotzkinBridge {
  std::vector<int> values;  // M(0..sigma), M(0)=0, steps in {-1,0,1}
  int lifetime() const { return (int)values.size() - 1; }
  int final() const { return values.back(); }
};

struct LatticeBridgePath {
  std::vector<int> values;  // S(0..m), S(0)=0, +-1 steps
};

// |F_sigma^m| = (sigma/(2m+sigma)) C(2m+sigma, m), exactly.
mpz_class count_forests(int sigma, long m);
// 3^m * count_forests
mpz_class count_well_labeled_forests(int sigma, long m);

ContourPair encode_contour(const WellLabeledForest& wlf);
// Errors: MalformedContour (with offending index in the message).
WellLabeledForest decode_contour(const ContourPair& pair);

// Exactly uniform on Motzkin bridges [0,sigma] from 0 to target, by
// sequential exact conditioning on trinomial path counts.
// Errors: UnreachableTarget.
MotzkinBridge sample_motzkin_bridge(int sigma, int target, Rng& rng);
// Number of such bridges.
mpz_class count_motzkin_bridges(int sigma, int target);

// Uniform +-1 bridge of length m_steps ending at -sigma (multiset shuffle by
// sequential binomial conditioning). Exposed for the derandomized tests.
LatticeBridgePath uniform_bridge(int m_steps, int sigma, Rng& rng);
// Cyclic shift of the bridge at the first time it attains min+nu.
LatticeBridgePath theta_transform(const LatticeBridgePath& bridge, int nu, int sigma);
// Uniform first-passage path to -sigma in m_steps via the two steps above.
// Errors: InfeasibleParameters.
LatticeBridgePath bcp_first_passage_bridge(int m_steps, int sigma, Rng& rng);

// Exactly uniform well-labeled forest with sigma trees and m tree edges.
WellLabeledForest sample_well_labeled_forest(int sigma, long m, Rng& rng);

// Lambda(t) = L(t) + M(sigma - min C[0..t]); bridge lifetime must equal the
// forest's tree count. Errors: LifetimeMismatch.
std::vector<int> shifted_label_process(const WellLabeledForest& wlf,
                                       const MotzkinBridge& bridge);
std::vector<int> shifted_label_process(const ContourPair& pair,
                                       const MotzkinBridge& bridge);

// W(i,j) = L(sup{k <= i : C(k) = j}) for 0 <= j <= C(i); label 0 where the
// level was never visited. Errors: IndexOutOfRange.
std::vector<int> discrete_snake_path(const ContourPair& pair, int i);

// Exhaustive enumeration of well-labeled forests (test oracle).
std::vector<WellLabeledForest> enumerate_well_labeled_forests(int sigma, int m);
std::vector<Forest> enumerate_forests(int sigma, int m);

std::string contour_to_json(const ContourPair& pair);
ContourPair contour_from_json(const std::string& text);

}  // namespace qmaps
