#include "qmaps/forest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace qmaps {

mpz_class count_forests(int sigma, long m) {
  if (sigma < 1 || m < 0) throw DomainError("BadArgument", "count_forests domain");
  mpz_class r = binomial((unsigned long)(2 * m + sigma), (unsigned long)m) * sigma;
  mpz_class q;
  mpz_divexact_ui(q.get_mpz_t(), r.get_mpz_t(), (unsigned long)(2 * m + sigma));
  return q;
}

mpz_class count_well_labeled_forests(int sigma, long m) {
  mpz_class p3;
  mpz_ui_pow_ui(p3.get_mpz_t(), 3, (unsigned long)m);
  return p3 * count_forests(sigma, m);
}

ContourPair encode_contour(const WellLabeledForest& wlf) {
  const Forest& f = wlf.forest;
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < f.nodes.size(); ++i) index[f.nodes[i]] = (int)i;
  // facial walk: floor 1, its subtree, floor 2, ...
  std::vector<int> seq;  // node indices along the walk
  std::function<void(const std::vector<int>&)> walk = [&](const std::vector<int>& u) {
    std::vector<int> child = u;
    child.push_back(1);
    while (true) {
      auto it = index.find(child);
      if (it == index.end()) break;
      seq.push_back(it->second);
      walk(child);
      seq.push_back(index.at(u));
      child.back()++;
    }
  };
  for (int j = 1; j <= f.sigma; ++j) {
    std::vector<int> fl{j};
    if (j == 1) seq.push_back(index.at(fl));
    walk(fl);
    seq.push_back(index.at(std::vector<int>{j + 1}));
  }
  ContourPair pair;
  pair.contour.reserve(seq.size());
  pair.spatial.reserve(seq.size());
  for (int idx : seq) {
    const auto& w = f.nodes[idx];
    pair.contour.push_back((int)w.size() + f.sigma - w[0]);
    pair.spatial.push_back(wlf.labels[idx]);
  }
  return pair;
}

static void malformed(int i, const std::string& why) {
  throw DomainError("MalformedContour", why + " at index " + std::to_string(i));
}

WellLabeledForest decode_contour(const ContourPair& pair) {
  const auto& C = pair.contour;
  const auto& L = pair.spatial;
  if (C.empty() || C.size() != L.size()) malformed(0, "empty or mismatched lengths");
  int sigma = C[0];
  int len = (int)C.size() - 1;
  if (sigma < 1) malformed(0, "contour must start positive");
  if (C[len] != 0) malformed(len, "contour must end at 0");
  if (L[0] != 0) malformed(0, "labels must start at 0");
  int runmin = C[0];
  for (int i = 0; i < len; ++i) {
    int d = C[i + 1] - C[i];
    if (d != 1 && d != -1) malformed(i + 1, "contour step not +-1");
    if (i + 1 < len && C[i + 1] <= 0) malformed(i + 1, "interior zero before the end");
    if (std::abs(L[i + 1] - L[i]) > 1) malformed(i + 1, "label step exceeds 1");
    if (C[i + 1] < runmin) {  // floor step
      runmin = C[i + 1];
      if (L[i + 1] != 0) malformed(i + 1, "floor visit with nonzero label");
    }
  }
  if ((len - sigma) % 2 != 0) malformed(len, "length parity");

  WellLabeledForest wlf;
  wlf.forest.sigma = sigma;
  wlf.forest.m = (len - sigma) / 2;
  std::vector<std::vector<int>> stack{{1}};
  std::vector<int> childcount{0};
  std::vector<int> labstack{0};
  wlf.forest.nodes.push_back({1});
  wlf.labels.push_back(0);
  runmin = C[0];
  for (int i = 0; i < len; ++i) {
    if (C[i + 1] > C[i]) {
      childcount.back()++;
      std::vector<int> w = stack.back();
      w.push_back(childcount.back());
      stack.push_back(w);
      childcount.push_back(0);
      labstack.push_back(L[i + 1]);
      wlf.forest.nodes.push_back(w);
      wlf.labels.push_back(L[i + 1]);
    } else if (C[i + 1] >= runmin) {  // return to parent
      stack.pop_back();
      childcount.pop_back();
      labstack.pop_back();
      if (L[i + 1] != labstack.back()) malformed(i + 1, "label inconsistent on descent");
    } else {  // floor step
      runmin = C[i + 1];
      int next_floor = stack[0][0] + 1;
      stack.assign(1, {next_floor});
      childcount.assign(1, 0);
      labstack.assign(1, 0);
      wlf.forest.nodes.push_back({next_floor});
      wlf.labels.push_back(0);
    }
  }
  // sort into canonical (depth-first / lexicographic) order
  std::vector<size_t> order(wlf.forest.nodes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return wlf.forest.nodes[a] < wlf.forest.nodes[b];
  });
  WellLabeledForest out;
  out.forest.sigma = sigma;
  out.forest.m = wlf.forest.m;
  for (size_t i : order) {
    out.forest.nodes.push_back(wlf.forest.nodes[i]);
    out.labels.push_back(wlf.labels[i]);
  }
  return out;
}

mpz_class count_motzkin_bridges(int sigma, int target) {
  return trinomial_count(sigma, target);
}

MotzkinBridge sample_motzkin_bridge(int sigma, int target, Rng& rng) {
  if (std::abs(target) > sigma)
    throw DomainError("UnreachableTarget", "|target| exceeds lifetime");
  MotzkinBridge b;
  b.values.push_back(0);
  int pos = 0;
  for (int k = 0; k < sigma; ++k) {
    int rem = sigma - k - 1;
    std::vector<mpz_class> w(3);
    for (int d = -1; d <= 1; ++d) w[d + 1] = trinomial_count(rem, target - pos - d);
    int step = (int)pick_weighted(rng, w) - 1;
    pos += step;
    b.values.push_back(pos);
  }
  return b;
}

LatticeBridgePath uniform_bridge(int m_steps, int sigma, Rng& rng) {
  if (sigma < 1 || m_steps < sigma || (m_steps - sigma) % 2 != 0)
    throw DomainError("InfeasibleParameters", "bridge to -sigma needs m >= sigma, same parity");
  int ups = (m_steps - sigma) / 2;
  LatticeBridgePath p;
  p.values.push_back(0);
  int pos = 0;
  for (int i = 0; i < m_steps; ++i) {
    int rem = m_steps - i;
    int step = (rng.below((uint64_t)rem) < (uint64_t)ups) ? +1 : -1;
    if (step == 1) ups--;
    pos += step;
    p.values.push_back(pos);
  }
  return p;
}

LatticeBridgePath theta_transform(const LatticeBridgePath& bridge, int nu, int sigma) {
  int m = (int)bridge.values.size() - 1;
  const auto& B = bridge.values;
  int minB = *std::min_element(B.begin(), B.end());
  int level = minB + nu;
  int k = 0;
  while (B[k] != level) ++k;
  LatticeBridgePath out;
  out.values.reserve(m + 1);
  for (int x = 0; x <= m - k; ++x) out.values.push_back(B[k + x] - level);
  for (int x = 1; x <= k; ++x) out.values.push_back(-sigma - level + B[x]);
  return out;
}

LatticeBridgePath bcp_first_passage_bridge(int m_steps, int sigma, Rng& rng) {
  LatticeBridgePath b = uniform_bridge(m_steps, sigma, rng);
  int nu = (int)rng.below((uint64_t)sigma);
  return theta_transform(b, nu, sigma);
}

WellLabeledForest sample_well_labeled_forest(int sigma, long m, Rng& rng) {
  if (sigma < 1 || m < 0) throw DomainError("BadArgument", "sample_well_labeled_forest");
  LatticeBridgePath S = bcp_first_passage_bridge((int)(2 * m + sigma), sigma, rng);
  ContourPair pair;
  int len = (int)S.values.size() - 1;
  pair.contour.resize(len + 1);
  for (int i = 0; i <= len; ++i) pair.contour[i] = S.values[i] + sigma;
  pair.spatial.resize(len + 1);
  std::vector<int> labstack{0};
  pair.spatial[0] = 0;
  for (int i = 0; i < len; ++i) {
    if (pair.contour[i + 1] > pair.contour[i]) {
      int inc = (int)rng.below(3) - 1;  // i.i.d. uniform on {-1,0,1}, walk order
      labstack.push_back(labstack.back() + inc);
    } else {
      labstack.pop_back();
      if (labstack.empty()) labstack.push_back(0);  // next floor vertex
    }
    pair.spatial[i + 1] = labstack.back();
  }
  return decode_contour(pair);
}

std::vector<int> shifted_label_process(const ContourPair& pair,
                                       const MotzkinBridge& bridge) {
  int sigma = pair.contour.empty() ? 0 : pair.contour[0];
  if (bridge.lifetime() != sigma)
    throw DomainError("LifetimeMismatch", "bridge lifetime must equal tree count");
  std::vector<int> lambda(pair.contour.size());
  int runmin = sigma;
  for (size_t t = 0; t < pair.contour.size(); ++t) {
    runmin = std::min(runmin, pair.contour[t]);
    lambda[t] = pair.spatial[t] + bridge.values[sigma - runmin];
  }
  return lambda;
}

std::vector<int> shifted_label_process(const WellLabeledForest& wlf,
                                       const MotzkinBridge& bridge) {
  return shifted_label_process(encode_contour(wlf), bridge);
}

std::vector<int> discrete_snake_path(const ContourPair& pair, int i) {
  if (i < 0 || i >= (int)pair.contour.size())
    throw DomainError("IndexOutOfRange", "snake index outside lifetime");
  std::vector<int> last(pair.contour[0] + 1, 0);
  int maxlevel = pair.contour[0];
  for (int k = 0; k <= i; ++k) {
    int c = pair.contour[k];
    if (c > maxlevel) {
      last.resize(c + 1, 0);
      maxlevel = c;
    }
    last[c] = pair.spatial[k];
  }
  return std::vector<int>(last.begin(), last.begin() + pair.contour[i] + 1);
}

static void enumerate_contours(int sigma, int m,
                               const std::function<void(const std::vector<int>&)>& fn) {
  int len = 2 * m + sigma;
  std::vector<int> C{sigma};
  std::function<void()> rec = [&]() {
    int i = (int)C.size() - 1;
    if (i == len) {
      if (C.back() == 0) fn(C);
      return;
    }
    for (int d : {+1, -1}) {
      int v = C.back() + d;
      if (v < 0) continue;
      if (v == 0 && i + 1 != len) continue;
      // prune: must be able to reach 0 at len
      if (v > len - (i + 1)) continue;
      C.push_back(v);
      rec();
      C.pop_back();
    }
  };
  rec();
  (void)len;
}

std::vector<Forest> enumerate_forests(int sigma, int m) {
  std::vector<Forest> out;
  enumerate_contours(sigma, m, [&](const std::vector<int>& C) {
    ContourPair p;
    p.contour = C;
    p.spatial.assign(C.size(), 0);
    out.push_back(decode_contour(p).forest);
  });
  return out;
}

std::vector<WellLabeledForest> enumerate_well_labeled_forests(int sigma, int m) {
  std::vector<WellLabeledForest> out;
  enumerate_contours(sigma, m, [&](const std::vector<int>& C) {
    int len = (int)C.size() - 1;
    // enumerate label increments on the m up-steps
    std::vector<int> L(C.size(), 0);
    std::function<void(int, std::vector<int>&)> rec = [&](int i, std::vector<int>& stack) {
      if (i == len) {
        ContourPair p{C, L};
        out.push_back(decode_contour(p));
        return;
      }
      if (C[i + 1] > C[i]) {
        for (int inc = -1; inc <= 1; ++inc) {
          stack.push_back(stack.back() + inc);
          L[i + 1] = stack.back();
          rec(i + 1, stack);
          stack.pop_back();
        }
      } else {
        int saved = stack.back();
        stack.pop_back();
        bool floored = stack.empty();
        if (floored) stack.push_back(0);
        L[i + 1] = stack.back();
        rec(i + 1, stack);
        if (floored) stack.pop_back();
        stack.push_back(saved);
      }
    };
    std::vector<int> stack{0};
    rec(0, stack);
  });
  return out;
}

std::string contour_to_json(const ContourPair& pair) {
  nlohmann::json j;
  j["contour"] = pair.contour;
  j["spatial"] = pair.spatial;
  return j.dump();
}

ContourPair contour_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return ContourPair{j.at("contour").get<std::vector<int>>(),
                     j.at("spatial").get<std::vector<int>>()};
}

}  // namespace qmaps
