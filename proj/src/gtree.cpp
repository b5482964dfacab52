#include "qmaps/gtree.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace qmaps {

GTree from_pairing(int n_edges, std::vector<int> pairing) {
  int H = 2 * n_edges;
  if ((int)pairing.size() != H)
    throw DomainError("InvalidInvolution", "pairing has wrong length");
  for (int i = 0; i < H; ++i) {
    if (pairing[i] < 0 || pairing[i] >= H || pairing[i] == i ||
        pairing[pairing[i]] != i)
      throw DomainError("InvalidInvolution", "pairing must be a fixed-point-free involution");
  }
  std::vector<int> sigma(H);
  for (int j = 0; j < H; ++j) sigma[j] = pairing[(j - 1 + H) % H];
  GTree t;
  t.n_edges = n_edges;
  t.pairing = pairing;
  t.map = build_map(n_edges, pairing, sigma, 0);
  if (t.map.n_faces != 1)
    throw DomainError("OneFaceViolation", "pairing does not describe a one-face map");
  return t;
}

FacialSequence facial_sequence(const GTree& t) {
  int H = 2 * t.n_edges;
  FacialSequence fs;
  fs.vertices.resize(H + 1);
  for (int i = 0; i <= H; ++i) fs.vertices[i] = t.map.vertex_of[i % H];
  return fs;
}

WellLabeledGTree validate_labels(const GTree& tree, std::vector<int> labels) {
  if ((int)labels.size() != tree.map.n_vertices)
    throw DomainError("IncrementTooLarge", "label vector has wrong length");
  int root_vertex = tree.map.vertex_of[0];
  if (labels[root_vertex] != 0)
    throw DomainError("RootLabelNonzero", "root origin must carry label 0");
  for (int h = 0; h < tree.map.half_edges(); ++h) {
    int u = tree.map.vertex_of[h], v = tree.map.vertex_of[tree.map.alpha[h]];
    if (std::abs(labels[u] - labels[v]) > 1)
      throw DomainError("IncrementTooLarge",
                        "edge at half-edge " + std::to_string(h) + " has label gap > 1");
  }
  return WellLabeledGTree{tree, std::move(labels)};
}

void for_each_pairing(int n_edges, const std::function<void(const std::vector<int>&)>& fn) {
  int H = 2 * n_edges;
  std::vector<int> pairing(H, -1);
  std::function<void()> rec = [&]() {
    int i = 0;
    while (i < H && pairing[i] >= 0) ++i;
    if (i == H) {
      fn(pairing);
      return;
    }
    for (int j = i + 1; j < H; ++j) {
      if (pairing[j] >= 0) continue;
      pairing[i] = j;
      pairing[j] = i;
      rec();
      pairing[i] = -1;
      pairing[j] = -1;
    }
  };
  rec();
}

// Enumerate every labeling of a connected graph with root label 0 and
// increments in {-1,0,1} across edges, by BFS-ordered backtracking.
static void enumerate_labelings(const CombinatorialMap& map,
                                const std::function<void(const std::vector<int>&)>& fn) {
  int V = map.n_vertices;
  std::vector<std::vector<int>> adj(V);
  for (int h = 0; h < map.half_edges(); ++h) {
    int u = map.vertex_of[h], v = map.vertex_of[map.alpha[h]];
    adj[u].push_back(v);
  }
  int root = map.vertex_of[map.root];
  std::vector<int> order{root};
  std::vector<char> seen(V, 0);
  seen[root] = 1;
  for (size_t q = 0; q < order.size(); ++q)
    for (int v : adj[order[q]])
      if (!seen[v]) {
        seen[v] = 1;
        order.push_back(v);
      }
  std::vector<int> labels(V, 0);
  std::vector<char> assigned(V, 0);
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == order.size()) {
      fn(labels);
      return;
    }
    int v = order[idx];
    int lo = -2 * V, hi = 2 * V;
    for (int w : adj[v]) {
      if (!assigned[w]) continue;
      lo = std::max(lo, labels[w] - 1);
      hi = std::min(hi, labels[w] + 1);
    }
    if (idx == 0) lo = hi = 0;
    assigned[v] = 1;
    for (int l = lo; l <= hi; ++l) {
      labels[v] = l;
      rec(idx + 1);
    }
    assigned[v] = 0;
  };
  rec(0);
}

std::vector<WellLabeledGTree> enumerate_well_labeled_gtrees(int genus, int n_edges,
                                                            int cap) {
  if (genus < 1) throw DomainError("BadArgument", "genus must be >= 1");
  if (n_edges < 1) throw DomainError("BadArgument", "n_edges must be >= 1");
  if (n_edges > cap)
    throw DomainError("SizeTooLargeForExhaustive",
                      "n_edges exceeds the exhaustive enumeration cap");
  std::vector<WellLabeledGTree> out;
  for_each_pairing(n_edges, [&](const std::vector<int>& pairing) {
    GTree t = from_pairing(n_edges, pairing);
    if (::qmaps::genus(t.map) != genus) return;
    enumerate_labelings(t.map, [&](const std::vector<int>& labels) {
      out.push_back(WellLabeledGTree{t, labels});
    });
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::string gtree_to_json(const WellLabeledGTree& t, int genus) {
  nlohmann::json j;
  j["genus"] = genus;
  j["n_edges"] = t.tree.n_edges;
  j["pairing"] = t.tree.pairing;
  j["labels"] = t.labels;
  return j.dump();
}

WellLabeledGTree gtree_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GTree t = from_pairing(j.at("n_edges").get<int>(), j.at("pairing").get<std::vector<int>>());
  return validate_labels(t, j.at("labels").get<std::vector<int>>());
}

}  // namespace qmaps
