#include "qmaps/scheme.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace qmaps {

int DecompositionQuadruple::n_tree_edges() const {
  int twice = 0;
  for (int e = 0; e < (int)forests.size(); ++e) twice += 2 * m(e) + sigma(e);
  return twice / 2;
}

namespace {

Scheme make_scheme(GTree t) {
  Scheme s;
  int H = 2 * t.n_edges;
  s.dominant = true;
  std::vector<int> deg(t.map.n_vertices, 0);
  for (int h = 0; h < H; ++h) ++deg[t.map.vertex_of[h]];
  for (int d : deg) {
    if (d < 3) throw DomainError("NoSchemeExists", "vertex of degree < 3");
    if (d != 3) s.dominant = false;
  }
  for (int h = 0; h < H; ++h)
    if (h < t.pairing[h]) s.orientation.push_back(h);
  s.tree = std::move(t);
  return s;
}

struct ChainStructure {
  std::vector<char> alive;               // per tree half-edge
  std::vector<std::vector<int>> chains;  // chains[j] = tree half-edges of scheme side j
  Scheme scheme;
  std::vector<int> node_map;  // scheme vertex -> tree vertex
};

ChainStructure chain_structure(const GTree& tree) {
  const CombinatorialMap& map = tree.map;
  int H = 2 * tree.n_edges;
  ChainStructure cs;
  // leaf pruning to exhaustion
  std::vector<int> deg(map.n_vertices, 0);
  for (int h = 0; h < H; ++h) ++deg[map.vertex_of[h]];
  cs.alive.assign(H, 1);
  std::vector<int> todo;
  for (int v = 0; v < map.n_vertices; ++v)
    if (deg[v] == 1) todo.push_back(v);
  std::vector<std::vector<int>> at(map.n_vertices);
  for (int h = 0; h < H; ++h) at[map.vertex_of[h]].push_back(h);
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    if (deg[v] != 1) continue;
    for (int h : at[v]) {
      if (!cs.alive[h]) continue;
      cs.alive[h] = cs.alive[map.alpha[h]] = 0;
      --deg[v];
      int w = map.vertex_of[map.alpha[h]];
      if (--deg[w] == 1) todo.push_back(w);
      break;
    }
  }
  std::vector<int> alive_pos;
  for (int h = 0; h < H; ++h)
    if (cs.alive[h]) alive_pos.push_back(h);
  if (alive_pos.empty())
    throw DomainError("NoSchemeExists", "pruning removed every edge");
  // scheme vertices (nodes) have surviving degree >= 3
  std::vector<char> is_node(map.n_vertices, 0);
  for (int v = 0; v < map.n_vertices; ++v)
    if (deg[v] >= 3) is_node[v] = 1;
  auto head = [&](int h) { return map.vertex_of[map.alpha[h]]; };
  // cut the cyclic tour of surviving half-edges at the nodes
  int A = (int)alive_pos.size();
  int b = -1;
  for (int idx = 0; idx < A; ++idx)
    if (is_node[head(alive_pos[idx])]) {
      b = idx;
      break;
    }
  if (b < 0) throw DomainError("NoSchemeExists", "core has no vertex of degree >= 3");
  std::vector<int> cur;
  for (int k = 1; k <= A; ++k) {
    int h = alive_pos[(b + k) % A];
    cur.push_back(h);
    if (is_node[head(h)]) {
      cs.chains.push_back(cur);
      cur.clear();
    }
  }
  // the scheme root is the chain carrying the first surviving half-edge at or
  // after the tree root in facial order
  int c0 = -1;
  for (int j = 0; j < (int)cs.chains.size(); ++j)
    for (int h : cs.chains[j])
      if (h == alive_pos[0]) c0 = j;
  std::rotate(cs.chains.begin(), cs.chains.begin() + c0, cs.chains.end());
  // glue scheme sides: the reverse of a chain starts at the flip of its last
  // half-edge
  int B = (int)cs.chains.size();
  std::vector<int> first_of(H, -1);
  for (int j = 0; j < B; ++j) first_of[cs.chains[j][0]] = j;
  std::vector<int> pairing(B);
  for (int j = 0; j < B; ++j) pairing[j] = first_of[map.alpha[cs.chains[j].back()]];
  cs.scheme = make_scheme(from_pairing(B / 2, pairing));
  cs.node_map.assign(cs.scheme.tree.map.n_vertices, -1);
  for (int j = 0; j < B; ++j)
    cs.node_map[cs.scheme.tree.map.vertex_of[j]] = map.vertex_of[cs.chains[j][0]];
  return cs;
}

}  // namespace

SchemeExtraction extract_scheme(const GTree& tree) {
  ChainStructure cs = chain_structure(tree);
  return SchemeExtraction{std::move(cs.scheme), std::move(cs.node_map)};
}

std::vector<Scheme> enumerate_schemes(int genus, bool dominant_only) {
  if (genus < 1) throw DomainError("BadArgument", "genus must be >= 1");
  std::vector<Scheme> out;
  for (int E = 2 * genus; E <= 6 * genus - 3; ++E) {
    for_each_pairing(E, [&](const std::vector<int>& p) {
      int H = 2 * E;
      // cheap filter: vertex cycles of sigma(j) = p(j-1) give degrees and V
      std::vector<char> seen(H, 0);
      int V = 0;
      for (int h = 0; h < H; ++h) {
        if (seen[h]) continue;
        ++V;
        int c = h, d = 0;
        do {
          seen[c] = 1;
          ++d;
          c = p[(c - 1 + H) % H];
        } while (c != h);
        if (d < 3) return;
      }
      if (E + 1 - V != 2 * genus) return;
      Scheme s = make_scheme(from_pairing(E, p));
      if (dominant_only && !s.dominant) return;
      out.push_back(std::move(s));
    });
  }
  return out;
}

DecompositionQuadruple decompose(const WellLabeledGTree& wlt) {
  const GTree& tree = wlt.tree;
  const CombinatorialMap& map = tree.map;
  int H = 2 * tree.n_edges;
  ChainStructure cs = chain_structure(tree);
  int B = (int)cs.chains.size();
  // block j ends right after the last half-edge of chain j
  std::vector<int> bstart(B);
  for (int j = 0; j < B; ++j) bstart[j] = (cs.chains[(j - 1 + B) % B].back() + 1) % H;
  DecompositionQuadruple q;
  q.scheme = cs.scheme;
  q.bridges.resize(B);
  q.forests.resize(B);
  q.root_offset = (H - bstart[0]) % H;
  for (int j = 0; j < B; ++j) {
    int start = bstart[j];
    int len = (bstart[(j + 1) % B] - start + H) % H;
    int sigma = (int)cs.chains[j].size();
    std::vector<int> C(len + 1), raw(len + 1);
    C[0] = sigma;
    for (int i = 0; i < len; ++i) {
      int pos = (start + i) % H;
      int step;
      if (cs.alive[pos]) {
        step = -1;  // chain traversal: floor step
      } else {
        int mate = (map.alpha[pos] - start + H) % H;
        step = mate > i ? 1 : -1;  // pruned edge opens then closes in-block
      }
      C[i + 1] = C[i] + step;
    }
    for (int i = 0; i <= len; ++i) raw[i] = wlt.labels[map.vertex_of[(start + i) % H]];
    // floor labels, read when the contour first reaches each floor level;
    // forest labels are re-based tree by tree to their floor vertex
    std::vector<int> fl(sigma + 2, 0), L(len + 1);
    int runmin = sigma;
    fl[1] = raw[0];
    L[0] = 0;
    for (int i = 1; i <= len; ++i) {
      if (C[i] < runmin) {
        runmin = C[i];
        fl[sigma + 1 - runmin] = raw[i];
      }
      L[i] = raw[i] - fl[sigma + 1 - runmin];
    }
    q.bridges[j].values.resize(sigma + 1);
    for (int i = 0; i <= sigma; ++i) q.bridges[j].values[i] = fl[i + 1] - fl[1];
    q.forests[j] = decode_contour(ContourPair{C, L});
  }
  q.vertex_labels.assign(q.scheme.tree.map.n_vertices, 0);
  int base = wlt.labels[map.vertex_of[cs.chains[0][0]]];
  for (int j = 0; j < B; ++j)
    q.vertex_labels[q.scheme.tree.map.vertex_of[j]] =
        wlt.labels[map.vertex_of[cs.chains[j][0]]] - base;
  return q;
}

bool validate_compatible(const DecompositionQuadruple& q,
                         std::vector<std::string>* diagnostics) {
  std::vector<std::string> diag;
  const Scheme& s = q.scheme;
  int B = 2 * s.tree.n_edges;
  if ((int)q.bridges.size() != B || (int)q.forests.size() != B) {
    diag.push_back("wrong number of per-half-edge entries");
  } else {
    for (int j = 0; j < B; ++j) {
      const auto& v = q.bridges[j].values;
      if (q.bridges[j].lifetime() != q.sigma(j) || v.empty() || v[0] != 0)
        diag.push_back("bridge shape wrong at half-edge " + std::to_string(j));
      for (size_t i = 0; i + 1 < v.size(); ++i)
        if (std::abs(v[i + 1] - v[i]) > 1) {
          diag.push_back("bridge step exceeds 1 at half-edge " + std::to_string(j));
          break;
        }
    }
    for (int j = 0; j < B && diag.empty(); ++j) {
      int jb = s.tree.pairing[j];
      if (q.sigma(j) != q.sigma(jb)) {
        diag.push_back("sigma differs across edge (consig) at half-edge " +
                       std::to_string(j));
        continue;
      }
      int sig = q.sigma(j), le = q.bridges[j].final();
      for (int i = 0; i <= sig; ++i)
        if (q.bridges[jb].values[i] != q.bridges[j].values[sig - i] - le) {
          diag.push_back("bridge reversal (mm) fails at half-edge " + std::to_string(j));
          break;
        }
    }
    if ((int)q.vertex_labels.size() != s.tree.map.n_vertices) {
      diag.push_back("vertex label vector has wrong length");
    } else if (diag.empty()) {
      if (q.vertex_labels[s.tree.map.vertex_of[0]] != 0)
        diag.push_back("root origin label is not 0 (ev)");
      for (int j = 0; j < B; ++j) {
        int tail = s.tree.map.vertex_of[j];
        int headv = s.tree.map.vertex_of[(j + 1) % B];
        if (q.bridges[j].final() != q.vertex_labels[headv] - q.vertex_labels[tail])
          diag.push_back("bridge endpoint differs from label increment (ev) at half-edge " +
                         std::to_string(j));
      }
      int k0 = 2 * q.m(0) + q.sigma(0);
      if (q.root_offset < 0 || q.root_offset >= k0)
        diag.push_back("root offset out of range (conu)");
    }
  }
  if (diagnostics) *diagnostics = diag;
  return diag.empty();
}

WellLabeledGTree recompose(const DecompositionQuadruple& q) {
  std::vector<std::string> diag;
  if (!validate_compatible(q, &diag))
    throw DomainError("IncompatibleQuadruple", diag.empty() ? "invalid" : diag[0]);
  const Scheme& s = q.scheme;
  int B = 2 * s.tree.n_edges;
  int n = q.n_tree_edges(), H = 2 * n;
  std::vector<ContourPair> pairs(B);
  std::vector<int> bstart(B);
  int acc = 0;
  for (int j = 0; j < B; ++j) {
    pairs[j] = encode_contour(q.forests[j]);
    bstart[j] = acc;
    acc += (int)pairs[j].contour.size() - 1;
  }
  // glue: pruned edges match like brackets inside a block; chain steps pair
  // floor step t of a side with floor step sigma-1-t of the flipped side
  std::vector<int> lay(H, -1);
  std::vector<std::vector<int>> floor_pos(B);
  for (int j = 0; j < B; ++j) {
    const auto& C = pairs[j].contour;
    int len = (int)C.size() - 1, runmin = C[0];
    std::vector<int> open;
    for (int i = 0; i < len; ++i) {
      if (C[i + 1] < runmin) {
        runmin = C[i + 1];
        floor_pos[j].push_back(bstart[j] + i);
      } else if (C[i + 1] > C[i]) {
        open.push_back(bstart[j] + i);
      } else {
        int o = open.back();
        open.pop_back();
        lay[o] = bstart[j] + i;
        lay[bstart[j] + i] = o;
      }
    }
  }
  for (int j = 0; j < B; ++j) {
    int jb = s.tree.pairing[j], sig = q.sigma(j);
    for (int t = 0; t < sig; ++t) {
      int a = floor_pos[j][t], b2 = floor_pos[jb][sig - 1 - t];
      lay[a] = b2;
      lay[b2] = a;
    }
  }
  int u = q.root_offset;
  std::vector<int> pairing(H);
  for (int L = 0; L < H; ++L) pairing[(L - u + H) % H] = (lay[L] - u + H) % H;
  GTree t = from_pairing(n, pairing);
  std::vector<int> labels(t.map.n_vertices, 0);
  for (int j = 0; j < B; ++j) {
    const auto& C = pairs[j].contour;
    const auto& Lw = pairs[j].spatial;
    int len = (int)C.size() - 1, sig = q.sigma(j);
    int base = q.vertex_labels[s.tree.map.vertex_of[j]];
    int runmin = sig;
    for (int i = 0; i <= len; ++i) {
      runmin = std::min(runmin, C[i]);
      int tp = (bstart[j] + i - u + H) % H;
      labels[t.map.vertex_of[tp % H]] = Lw[i] + base + q.bridges[j].values[sig - runmin];
    }
  }
  int shift = labels[t.map.vertex_of[0]];
  for (int& l : labels) l -= shift;
  return validate_labels(t, labels);
}

std::string quadruple_to_json(const DecompositionQuadruple& q) {
  nlohmann::json j;
  j["scheme"] = {{"n_edges", q.scheme.tree.n_edges}, {"pairing", q.scheme.tree.pairing}};
  j["root_offset"] = q.root_offset;
  j["vertex_labels"] = q.vertex_labels;
  j["bridges"] = nlohmann::json::array();
  j["forests"] = nlohmann::json::array();
  for (const auto& b : q.bridges) j["bridges"].push_back(b.values);
  for (const auto& f : q.forests) {
    auto pair = encode_contour(f);
    j["forests"].push_back({{"contour", pair.contour}, {"spatial", pair.spatial}});
  }
  return j.dump();
}

DecompositionQuadruple quadruple_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  DecompositionQuadruple q;
  q.scheme = make_scheme(from_pairing(j.at("scheme").at("n_edges").get<int>(),
                                      j.at("scheme").at("pairing").get<std::vector<int>>()));
  q.root_offset = j.at("root_offset").get<int>();
  q.vertex_labels = j.at("vertex_labels").get<std::vector<int>>();
  for (const auto& b : j.at("bridges"))
    q.bridges.push_back(MotzkinBridge{b.get<std::vector<int>>()});
  for (const auto& f : j.at("forests")) {
    ContourPair pair{f.at("contour").get<std::vector<int>>(),
                     f.at("spatial").get<std::vector<int>>()};
    q.forests.push_back(decode_contour(pair));
  }
  return q;
}

}  // namespace qmaps
