#include "qmaps/map_core.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace qmaps {

static void label_cycles(const std::vector<int>& perm, std::vector<int>& id_of, int& count) {
  int n = (int)perm.size();
  id_of.assign(n, -1);
  count = 0;
  for (int h = 0; h < n; ++h) {
    if (id_of[h] >= 0) continue;
    int c = count++;
    int x = h;
    do {
      id_of[x] = c;
      x = perm[x];
    } while (x != h);
  }
}

CombinatorialMap build_map(int n_edges, std::vector<int> alpha, std::vector<int> sigma,
                           int root) {
  int H = 2 * n_edges;
  if (n_edges <= 0 || (int)alpha.size() != H || (int)sigma.size() != H || root < 0 ||
      root >= H)
    throw DomainError("HalfEdgeOutOfRange", "array sizes or root out of range");
  std::vector<char> seen(H, 0);
  for (int h = 0; h < H; ++h) {
    if (alpha[h] < 0 || alpha[h] >= H || sigma[h] < 0 || sigma[h] >= H)
      throw DomainError("HalfEdgeOutOfRange", "permutation entry out of range");
    if (alpha[h] == h || alpha[alpha[h]] != h)
      throw DomainError("InvalidInvolution", "alpha must be a fixed-point-free involution");
    seen[sigma[h]]++;
  }
  for (int h = 0; h < H; ++h)
    if (seen[h] != 1) throw DomainError("InvalidInvolution", "sigma is not a permutation");

  CombinatorialMap m;
  m.n_edges = n_edges;
  m.alpha = std::move(alpha);
  m.sigma = std::move(sigma);
  m.root = root;
  m.sigma_inv.assign(H, 0);
  for (int h = 0; h < H; ++h) m.sigma_inv[m.sigma[h]] = h;

  // connectedness under <alpha, sigma>
  std::vector<char> vis(H, 0);
  std::vector<int> stack{0};
  vis[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int h = stack.back();
    stack.pop_back();
    for (int nh : {m.alpha[h], m.sigma[h]}) {
      if (!vis[nh]) {
        vis[nh] = 1;
        reached++;
        stack.push_back(nh);
      }
    }
  }
  if (reached != H) throw DomainError("Disconnected", "map is not connected");

  label_cycles(m.sigma, m.vertex_of, m.n_vertices);
  std::vector<int> phi(H);
  for (int h = 0; h < H; ++h) phi[h] = m.sigma_inv[m.alpha[h]];
  label_cycles(phi, m.face_of, m.n_faces);

  int euler = m.n_vertices - m.n_edges + m.n_faces;
  if ((2 - euler) % 2 != 0 || euler > 2)
    throw DomainError("InvalidInvolution", "non-orientable Euler characteristic");
  return m;
}

int genus(const CombinatorialMap& m) {
  return (2 - (m.n_vertices - m.n_edges + m.n_faces)) / 2;
}

int face_count(const CombinatorialMap& m) { return m.n_faces; }

std::vector<int> vertex_degrees(const CombinatorialMap& m) {
  std::vector<int> deg(m.n_vertices, 0);
  for (int h = 0; h < m.half_edges(); ++h) deg[m.vertex_of[h]]++;
  return deg;
}

std::string map_to_json(const CombinatorialMap& m) {
  nlohmann::json j;
  j["n_edges"] = m.n_edges;
  j["alpha"] = m.alpha;
  j["sigma"] = m.sigma;
  j["root"] = m.root;
  return j.dump();
}

CombinatorialMap map_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return build_map(j.at("n_edges").get<int>(), j.at("alpha").get<std::vector<int>>(),
                   j.at("sigma").get<std::vector<int>>(), j.at("root").get<int>());
}

std::vector<int> canonical_key(const CombinatorialMap& m) {
  // Relabel half-edges by first visit of the deterministic traversal that
  // explores sigma first then alpha, starting at the root. The key is the
  // concatenated relabeled (alpha, sigma) arrays; equal keys <=> root-preserving
  // isomorphism.
  int H = m.half_edges();
  std::vector<int> order(H, -1);
  order[m.root] = 0;
  int next_id = 1;
  std::vector<int> bfs{m.root};
  for (size_t q = 0; q < bfs.size(); ++q) {
    int h = bfs[q];
    for (int nh : {m.sigma[h], m.alpha[h]}) {
      if (order[nh] < 0) {
        order[nh] = next_id++;
        bfs.push_back(nh);
      }
    }
  }
  std::vector<int> key(2 * H);
  for (int h = 0; h < H; ++h) {
    key[order[h]] = order[m.alpha[h]];
    key[H + order[h]] = order[m.sigma[h]];
  }
  return key;
}

}  // namespace qmaps
