#include "qmaps/cms.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <queue>

namespace qmaps {

PointedQuadrangulation cms_forward(const WellLabeledGTree& wlt, int epsilon) {
  if (epsilon != 1 && epsilon != -1)
    throw DomainError("BadArgument", "epsilon must be +1 or -1");
  const CombinatorialMap& tm = wlt.tree.map;
  int H = 2 * wlt.tree.n_edges;
  int minl = *std::min_element(wlt.labels.begin(), wlt.labels.end());
  std::vector<int> lt(tm.n_vertices);  // shifted labels, >= 1
  for (int v = 0; v < tm.n_vertices; ++v) lt[v] = wlt.labels[v] - minl + 1;
  int maxl = *std::max_element(lt.begin(), lt.end());
  // successor corner of every corner, via one right-to-left sweep over the
  // doubled facial sequence
  std::vector<int> succ(H, -1);
  {
    std::vector<int> last(maxl + 2, -1);
    for (int i = 2 * H - 1; i >= 0; --i) {
      int lev = lt[tm.vertex_of[i % H]];
      if (i < H && lev > 1) {
        if (last[lev - 1] < 0)
          throw DomainError("BadArgument", "no successor corner: labels not contiguous");
        succ[i] = last[lev - 1] % H;
      }
      last[lev] = i;
    }
  }
  // arc i has half-edges 2i (at corner i) and 2i+1 (at the successor)
  int HQ = 2 * H;
  std::vector<int> alpha(HQ), sigma(HQ, -1);
  for (int i = 0; i < H; ++i) {
    alpha[2 * i] = 2 * i + 1;
    alpha[2 * i + 1] = 2 * i;
  }
  // arc-ends per corner, ordered by the cyclic distance of the far endpoint
  std::vector<std::vector<std::pair<int, int>>> at(H);  // (key, half-edge)
  for (int i = 0; i < H; ++i) {
    // the arc to v* sorts first within its corner (key 0); the others by the
    // cyclic distance of the far endpoint
    int key = succ[i] < 0 ? 0 : (succ[i] - i + H) % H;
    at[i].push_back({key, 2 * i});
    if (succ[i] >= 0) at[succ[i]].push_back({(i - succ[i] + H) % H, 2 * i + 1});
  }
  for (auto& v : at) std::sort(v.begin(), v.end());
  // rotation: concatenate corner bundles around each tree vertex, and take
  // the arcs at v* in ascending corner order
  std::vector<char> seen(H, 0);
  for (int c0 = 0; c0 < H; ++c0) {
    if (seen[c0]) continue;
    std::vector<int> ends;
    int c = c0;
    do {
      seen[c] = 1;
      for (auto& [key, e] : at[c]) ends.push_back(e);
      c = wlt.tree.map.sigma[c];
    } while (c != c0);
    for (size_t k = 0; k < ends.size(); ++k) sigma[ends[k]] = ends[(k + 1) % ends.size()];
  }
  {
    std::vector<int> ends;
    for (int i = 0; i < H; ++i)
      if (succ[i] < 0) ends.push_back(2 * i + 1);
    for (size_t k = 0; k < ends.size(); ++k) sigma[ends[k]] = ends[(k + 1) % ends.size()];
  }
  int root = epsilon == -1 ? 0 : 1;
  PointedQuadrangulation pq;
  pq.map = build_map(H, alpha, sigma, root);
  pq.epsilon = epsilon;
  pq.correspondence.resize(H + 1);
  for (int i = 0; i <= H; ++i) pq.correspondence[i] = pq.map.vertex_of[2 * (i % H)];
  for (int i = 0; i < H; ++i)
    if (succ[i] < 0) pq.pointed_vertex = pq.map.vertex_of[2 * i + 1];
  pq.shifted_labels.assign(pq.map.n_vertices, 0);
  for (int i = 0; i < H; ++i) pq.shifted_labels[pq.correspondence[i]] = lt[tm.vertex_of[i]];
  pq.shifted_labels[pq.pointed_vertex] = 0;
  return pq;
}

static std::vector<int> bfs_distances(const CombinatorialMap& m, int source) {
  std::vector<int> d(m.n_vertices, -1);
  d[source] = 0;
  std::queue<int> q;
  q.push(source);
  std::vector<std::vector<int>> adj(m.n_vertices);
  for (int h = 0; h < m.half_edges(); ++h)
    adj[m.vertex_of[h]].push_back(m.vertex_of[m.alpha[h]]);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        q.push(w);
      }
  }
  return d;
}

bool check_label_distance(const PointedQuadrangulation& pq) {
  auto d = bfs_distances(pq.map, pq.pointed_vertex);
  return d == pq.shifted_labels;
}

int distance_upper_bound(const PointedQuadrangulation& pq, long i, long j) {
  long H = (long)pq.correspondence.size() - 1;
  auto lab = [&](long k) { return pq.shifted_labels[pq.correspondence[k % H]]; };
  if (i == j) return 2;
  long a = i % H, b = j % H;
  int m1 = lab(a), m2 = lab(b);
  for (long k = a; k % H != b % H; ++k) m1 = std::min(m1, (int)lab(k));
  for (long k = b; k % H != a % H; ++k) m2 = std::min(m2, (int)lab(k));
  return lab(a) + lab(b) - 2 * std::max(m1, m2) + 2;
}

std::pair<WellLabeledGTree, int> cms_inverse(const PointedQuadrangulation& pq) {
  const CombinatorialMap& m = pq.map;
  int HQ = m.half_edges();
  // structural checks
  {
    std::vector<char> seen(HQ, 0);
    for (int h = 0; h < HQ; ++h) {
      if (seen[h]) continue;
      int c = h, deg = 0;
      do {
        seen[c] = 1;
        ++deg;
        c = m.phi(c);
      } while (c != h);
      if (deg != 4) throw DomainError("NotAQuadrangulation", "face of degree != 4");
    }
  }
  auto d = bfs_distances(m, pq.pointed_vertex);
  for (int h = 0; h < HQ; ++h)
    if (d[m.vertex_of[h]] == d[m.vertex_of[m.alpha[h]]])
      throw DomainError("NotBipartite", "edge within a distance class");
  int n = HQ / 4;  // q has 2n edges and n faces; the tree has n edges
  // one chord per face, ends assigned to q-corners (identified by the
  // half-edge whose corner hosts the end); at most one end per corner
  std::vector<int> chord_at(HQ, -1);  // q half-edge -> tree half-edge id
  std::vector<char> seen(HQ, 0);
  int face = 0;
  std::vector<int> tvert(2 * n, -1);  // tree half-edge -> q vertex
  for (int h0 = 0; h0 < HQ; ++h0) {
    if (seen[h0]) continue;
    int f[4], lab[4];
    int c = h0;
    for (int k = 0; k < 4; ++k) {
      seen[c] = 1;
      f[k] = c;
      lab[k] = d[m.vertex_of[c]];
      c = m.phi(c);
    }
    int a, b;  // corners carrying the chord ends
    int mx = std::max({lab[0], lab[1], lab[2], lab[3]});
    int mn = std::min({lab[0], lab[1], lab[2], lab[3]});
    if (mx - mn == 2) {
      int p = 0;
      while (lab[p] != mx) ++p;
      // the chord joins the max corner and the corner preceding it in the face
      a = f[p];
      b = f[(p + 3) % 4];
    } else {
      // confluent face (d, d+1, d, d+1): join the two d+1 corners
      int p = lab[0] == mx ? 0 : 1;
      a = f[p];
      b = f[p + 2];
    }
    if (chord_at[a] >= 0 || chord_at[b] >= 0)
      throw DomainError("NotAQuadrangulation", "chord corner collision");
    chord_at[a] = 2 * face;
    chord_at[b] = 2 * face + 1;
    tvert[2 * face] = m.vertex_of[a];
    tvert[2 * face + 1] = m.vertex_of[b];
    ++face;
  }
  // tree rotation: chord ends around each vertex in the order of their
  // corners around that vertex
  std::vector<int> tsigma(2 * n, -1), talpha(2 * n);
  for (int e = 0; e < 2 * n; ++e) talpha[e] = e ^ 1;
  {
    std::vector<char> vseen(HQ, 0);
    for (int h0 = 0; h0 < HQ; ++h0) {
      if (vseen[h0]) continue;
      std::vector<int> ends;
      int c = h0;
      do {
        vseen[c] = 1;
        if (chord_at[c] >= 0) ends.push_back(chord_at[c]);
        c = m.sigma[c];
      } while (c != h0);
      for (size_t k = 0; k < ends.size(); ++k) tsigma[ends[k]] = ends[(k + 1) % ends.size()];
    }
  }
  // root: the higher end of the root arc is at the root tree corner; the tree
  // root half-edge is the first chord in the gaps before it, scanning the
  // rotation backwards (a chord stored at carrier c sits in the gap after c)
  int r = m.root;
  int hr = d[m.vertex_of[r]] > d[m.vertex_of[m.alpha[r]]] ? r : m.alpha[r];
  int eps = hr == r ? -1 : 1;
  int troot = -1;
  {
    int c = m.sigma_inv[hr];
    for (int guard = 0; guard < HQ + 1; ++guard) {
      if (chord_at[c] >= 0) {
        troot = chord_at[c];
        break;
      }
      c = m.sigma_inv[c];
    }
    if (troot < 0) throw DomainError("NotAQuadrangulation", "no chord at root vertex");
  }
  CombinatorialMap tmap = build_map(n, talpha, tsigma, troot);
  if (tmap.n_faces != 1)
    throw DomainError("NotAQuadrangulation", "reconstructed tree is not one-face");
  // read off the polygon-side pairing along the unique face
  std::vector<int> tour(2 * n), pos(2 * n);
  {
    int h = tmap.root;
    for (int k = 0; k < 2 * n; ++k) {
      tour[k] = h;
      pos[h] = k;
      h = tmap.phi(h);
    }
  }
  std::vector<int> pairing(2 * n);
  for (int k = 0; k < 2 * n; ++k) pairing[k] = pos[talpha[tour[k]]];
  GTree gt = from_pairing(n, pairing);
  int base = d[tvert[tour[0]]];
  std::vector<int> labels(gt.map.n_vertices, 0);
  for (int k = 0; k < 2 * n; ++k) labels[gt.map.vertex_of[k]] = d[tvert[tour[k]]] - base;
  return {validate_labels(gt, labels), eps};
}

std::string quadrangulation_to_json(const PointedQuadrangulation& pq) {
  nlohmann::json j = nlohmann::json::parse(map_to_json(pq.map));
  j["pointed_vertex"] = pq.pointed_vertex;
  j["epsilon"] = pq.epsilon;
  j["correspondence"] = pq.correspondence;
  j["labels_shifted"] = pq.shifted_labels;
  return j.dump();
}

PointedQuadrangulation quadrangulation_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PointedQuadrangulation pq;
  pq.map = map_from_json(text);
  pq.pointed_vertex = j.at("pointed_vertex").get<int>();
  pq.epsilon = j.at("epsilon").get<int>();
  pq.correspondence = j.at("correspondence").get<std::vector<int>>();
  pq.shifted_labels = j.at("labels_shifted").get<std::vector<int>>();
  return pq;
}

}  // namespace qmaps
