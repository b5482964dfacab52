#pragma once
#include <string>
#include <utility>
#include <vector>

#include "qmaps/gtree.hpp"

namespace qmaps {

struct PointedQuadrangulation {
  CombinatorialMap map;            // bipartite, all faces of degree 4
  int pointed_vertex = 0;          // v*
  int epsilon = -1;                // root arc orientation
  std::vector<int> correspondence;  // i in [0,2n] -> map vertex at tree corner i
  std::vector<int> shifted_labels;  // per map vertex; distance from v*
};

// Draw the successor arc of every tree corner (to v* at level 1) and keep
// only the arcs; the root arc is the one at corner 0, oriented by epsilon.
PointedQuadrangulation cms_forward(const WellLabeledGTree& wlt, int epsilon);

// Inverse via BFS labels and the face-local chord rules; validated by the
// round-trip property. Errors: NotAQuadrangulation, NotBipartite.
std::pair<WellLabeledGTree, int> cms_inverse(const PointedQuadrangulation& pq);

// true iff the stored labels equal the BFS distances from v*.
bool check_label_distance(const PointedQuadrangulation& pq);

// Cyclic-interval label bound on d(q(i), q(j)).
int distance_upper_bound(const PointedQuadrangulation& pq, long i, long j);

std::string quadrangulation_to_json(const PointedQuadrangulation& pq);
PointedQuadrangulation quadrangulation_from_json(const std::string& text);

}  // namespace qmaps
