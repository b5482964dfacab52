#pragma once
#include <string>
#include <vector>

#include "qmaps/util.hpp"

namespace qmaps {

// Rooted combinatorial map on an orientable surface, stored as dense
// half-edge permutations. alpha is the edge involution (e <-> reverse of e),
// sigma the rotation (next half-edge counterclockwise around the origin
// vertex). Faces are the cycles of phi := sigma^{-1} o alpha; with this
// convention a one-face map whose half-edges are numbered in facial order has
// phi(i) = i+1 mod 2n, which makes the glued-polygon picture literal.
struct CombinatorialMap {
  int n_edges = 0;
  std::vector<int> alpha;
  std::vector<int> sigma;
  int root = 0;

  // Derived at construction. Vertex and face ids are canonical: numbered in
  // increasing order of their smallest half-edge.
  std::vector<int> vertex_of;  // half-edge -> vertex id
  std::vector<int> face_of;    // half-edge -> face id
  int n_vertices = 0;
  int n_faces = 0;

  int half_edges() const { return 2 * n_edges; }
  int phi(int h) const { return sigma_inv[alpha[h]]; }  // facial successor
  std::vector<int> sigma_inv;
};

// Errors: InvalidInvolution, Disconnected, HalfEdgeOutOfRange.
CombinatorialMap build_map(int n_edges, std::vector<int> alpha, std::vector<int> sigma,
                           int root);

int genus(const CombinatorialMap& m);
int face_count(const CombinatorialMap& m);

// Degree of each vertex (number of incident half-edges).
std::vector<int> vertex_degrees(const CombinatorialMap& m);

// JSON round-trip per the documented schema
// {"n_edges": int, "alpha": [int], "sigma": [int], "root": int}.
std::string map_to_json(const CombinatorialMap& m);
CombinatorialMap map_from_json(const std::string& text);

// Canonical key of a rooted map: half-edges relabeled by first visit of a
// deterministic traversal from the root; two rooted maps are isomorphic iff
// their keys are equal.
std::vector<int> canonical_key(const CombinatorialMap& m);

}  // namespace qmaps
