#include "qmaps/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace qmaps {

namespace {

mpz_class pow3(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, e);
  return r;
}

// exact Motzkin bridge counts mot[s][|l|], built by the 3-point recursion
struct MotTable {
  std::vector<std::vector<mpz_class>> v;
  void build(int smax) {
    v.assign(smax + 1, {});
    v[0] = {mpz_class(1)};
    for (int s = 1; s <= smax; ++s) {
      v[s].assign(s + 1, 0);
      const auto& p = v[s - 1];
      int pl = (int)p.size() - 1;
      for (int l = 0; l <= s; ++l) {
        mpz_class acc;
        if (std::abs(l - 1) <= pl) acc += p[std::abs(l - 1)];
        if (l <= pl) acc += p[l];
        if (l + 1 <= pl) acc += p[l + 1];
        v[s][l] = acc;
      }
    }
  }
  const mpz_class& get(int s, int l) const {
    static const mpz_class zero = 0;
    l = std::abs(l);
    if (s < 0 || s > (int)v.size() - 1 || l > s) return zero;
    return v[s][l];
  }
};

// float analogue, scaled by 3^{-s} (a lazy-walk probability), truncated at
// |l| <= lcap; the discarded tail is far beyond the sampling range
struct MotTableF {
  std::vector<std::vector<double>> v;
  int lcap = 0;
  void build(int smax, int lc) {
    lcap = lc;
    v.assign(smax + 1, {});
    v[0] = {1.0};
    for (int s = 1; s <= smax; ++s) {
      int lm = std::min(s, lcap);
      v[s].assign(lm + 1, 0.0);
      const auto& p = v[s - 1];
      int pl = (int)p.size() - 1;
      for (int l = 0; l <= lm; ++l) {
        double acc = 0;
        if (std::abs(l - 1) <= pl) acc += p[std::abs(l - 1)];
        if (l <= pl) acc += p[l];
        if (l + 1 <= pl) acc += p[l + 1];
        v[s][l] = acc / 3.0;
      }
    }
  }
  double get(int s, int l) const {
    l = std::abs(l);
    if (s < 0 || s > (int)v.size() - 1 || l > (int)v[s].size() - 1) return 0.0;
    return v[s][l];
  }
};

// 3^{(k-sigma)/2} (sigma/k) C(k, (k-sigma)/2): well-labeled forests with
// sigma trees whose contour has k steps
mpz_class fpw(int sigma, long k) {
  if (sigma == 0) return k == 0 ? 1 : 0;
  if (k < sigma || (k - sigma) % 2) return 0;
  unsigned long m = (unsigned long)((k - sigma) / 2);
  mpz_class r = binomial(k, m) * sigma;
  mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), k);
  return r * pow3(m);
}

double lfpw(int sigma, long k) {
  if (sigma == 0) return k == 0 ? 0.0 : -HUGE_VAL;
  if (k < sigma || (k - sigma) % 2) return -HUGE_VAL;
  double m = (k - sigma) / 2.0;
  return m * std::log(3.0) + std::log((double)sigma) - std::log((double)k) +
         std::lgamma(k + 1.0) - std::lgamma(m + 1.0) - std::lgamma(k - m + 1.0);
}

void fill_lambdas(const Scheme& s, int lmax, std::vector<std::vector<int>>& out) {
  int V = s.tree.map.n_vertices;
  int root = s.tree.map.vertex_of[0];
  std::vector<int> free_v;
  for (int v = 0; v < V; ++v)
    if (v != root) free_v.push_back(v);
  double count = 1;
  for (size_t i = 0; i < free_v.size(); ++i) count *= 2.0 * lmax + 1;
  if (count > 4e6)
    throw DomainError("SizeTooLargeForExact",
                      "label enumeration too large for this genus/size");
  std::vector<int> lab(V, 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == free_v.size()) {
      out.push_back(lab);
      return;
    }
    for (int l = -lmax; l <= lmax; ++l) {
      lab[free_v[i]] = l;
      rec(i + 1);
    }
    lab[free_v[i]] = 0;
  };
  rec(0);
}

}  // namespace

WeightTable build_weight_table(int genus, long n, Mode mode) {
  if (genus < 1) throw DomainError("BadArgument", "genus must be >= 1");
  if (n < 1) throw DomainError("BadArgument", "n must be >= 1");
  WeightTable t;
  t.genus = genus;
  t.n = n;
  t.mode = mode;
  if (mode == Mode::exact) {
    t.zmax = (int)n;
    t.lmax = (int)n;
  } else {
    t.zmax = (int)std::min<long>(n, (long)std::ceil(7.5 * std::sqrt((double)n)) + 10);
    t.lmax = std::min(t.zmax, (int)std::ceil(6.5 * std::sqrt((double)t.zmax)) + 4);
  }
  MotTable mot;
  MotTableF motf;
  if (mode == Mode::exact) {
    mot.build(t.zmax);
    t.wz.assign(t.zmax + 1, 0);
    for (int Z = 0; Z <= t.zmax && Z <= n; ++Z)
      t.wz[Z] = pow3((unsigned long)(n - Z)) * binomial(2 * n, n - Z);
  } else {
    motf.build(t.zmax, std::min(t.zmax, 2 * t.lmax));
    t.wz_f.assign(t.zmax + 1, 0.0);
    double w = 1;
    for (int Z = 0; Z <= t.zmax && Z <= n; ++Z) {
      t.wz_f[Z] = w;
      w *= (double)(n - Z) / (double)(n + 1 + Z);
    }
  }
  t.total = 0;
  t.total_f = 0;
  for (auto& s : enumerate_schemes(genus)) {
    SchemeTable st;
    st.scheme = s;
    int B = 2 * s.tree.n_edges, E = s.tree.n_edges;
    st.edge_of.assign(B, -1);
    for (int d = 0; d < E; ++d) {
      st.edge_of[s.orientation[d]] = d;
      st.edge_of[s.tree.pairing[s.orientation[d]]] = d;
    }
    fill_lambdas(s, t.lmax, st.lambdas);
    const auto& sv = s.tree.map.vertex_of;
    for (auto& lab : st.lambdas) {
      std::vector<int> target(E);
      for (int d = 0; d < E; ++d) {
        int e = s.orientation[d];
        target[d] = std::abs(lab[sv[(e + 1) % B]] - lab[sv[e]]);
      }
      if (mode == Mode::exact) {
        std::vector<mpz_class> P(t.zmax + 1);
        for (int z = 1; z <= t.zmax; ++z) P[z] = mot.get(z, target[0]) * z;
        for (int d = 1; d < E; ++d) {
          std::vector<mpz_class> Q(t.zmax + 1);
          for (int z = d + 1; z <= t.zmax; ++z) {
            mpz_class acc;
            for (int sg = std::max(1, target[d]); sg < z; ++sg)
              if (P[z - sg] != 0) acc += mot.get(sg, target[d]) * P[z - sg];
            Q[z] = acc;
          }
          P.swap(Q);
        }
        mpz_class lw;
        for (int z = E; z <= t.zmax && z <= n; ++z) lw += t.wz[z] * P[z];
        t.total += lw;
        st.pe.push_back(std::move(P));
        st.lw.push_back(std::move(lw));
      } else {
        std::vector<double> P(t.zmax + 1, 0.0);
        for (int z = 1; z <= t.zmax; ++z) P[z] = motf.get(z, target[0]) * z;
        for (int d = 1; d < E; ++d) {
          std::vector<double> Q(t.zmax + 1, 0.0);
          for (int z = d + 1; z <= t.zmax; ++z) {
            double acc = 0;
            for (int sg = std::max(1, target[d]); sg < z; ++sg)
              acc += motf.get(sg, target[d]) * P[z - sg];
            Q[z] = acc;
          }
          P.swap(Q);
        }
        double lw = 0;
        for (int z = E; z <= t.zmax && z <= n; ++z) lw += t.wz_f[z] * P[z];
        t.total_f += lw;
        st.pe_f.push_back(std::move(P));
        st.lw_f.push_back(lw);
      }
    }
    t.schemes.push_back(std::move(st));
  }
  // natural log of |T_n|
  if (mode == Mode::exact) {
    if (t.total > 0) {
      signed long exp2;
      double d = mpz_get_d_2exp(&exp2, t.total.get_mpz_t());
      t.log_total = std::log(d) + exp2 * std::log(2.0);
    } else {
      t.log_total = -HUGE_VAL;
    }
  } else {
    t.log_total = t.total_f > 0
                      ? n * std::log(3.0) + std::lgamma(2.0 * n + 1) -
                            2 * std::lgamma(n + 1.0) + std::log(t.total_f)
                      : -HUGE_VAL;
  }
  return t;
}

mpz_class count_gtrees(int genus, long n) {
  return build_weight_table(genus, n, Mode::exact).total;
}

double count_gtrees_log(int genus, long n) {
  return build_weight_table(genus, n, Mode::floating).log_total;
}

double count_gtrees_float(int genus, long n) { return std::exp(count_gtrees_log(genus, n)); }

mpz_class count_quadrangulations(int genus, long n) {
  long verts = n + 2 - 2 * genus;
  if (verts < 1) throw DomainError("BadArgument", "n + 2 - 2g must be >= 1");
  mpz_class twice = 2 * count_gtrees(genus, n);
  if (!mpz_divisible_ui_p(twice.get_mpz_t(), (unsigned long)verts))
    throw DomainError("NonIntegerResult", "2|T_n| not divisible by n+2-2g");
  return twice / verts;
}

StructureVector sample_structure(const WeightTable& t, Rng& rng) {
  bool exact = t.mode == Mode::exact;
  if ((exact && t.total == 0) || (!exact && t.total_f <= 0))
    throw DomainError("EmptySupport", "no well-labeled g-trees of this size");
  // joint pick of (scheme, lambda)
  size_t si = 0, li = 0;
  {
    std::vector<size_t> owner_s, owner_l;
    size_t pick;
    if (exact) {
      std::vector<mpz_class> w;
      for (size_t a = 0; a < t.schemes.size(); ++a)
        for (size_t b = 0; b < t.schemes[a].lw.size(); ++b) {
          w.push_back(t.schemes[a].lw[b]);
          owner_s.push_back(a);
          owner_l.push_back(b);
        }
      pick = pick_weighted(rng, w);
    } else {
      std::vector<double> w;
      for (size_t a = 0; a < t.schemes.size(); ++a)
        for (size_t b = 0; b < t.schemes[a].lw_f.size(); ++b) {
          w.push_back(t.schemes[a].lw_f[b]);
          owner_s.push_back(a);
          owner_l.push_back(b);
        }
      pick = pick_weighted(rng, w);
    }
    si = owner_s[pick];
    li = owner_l[pick];
  }
  const SchemeTable& st = t.schemes[si];
  const Scheme& s = st.scheme;
  int B = 2 * s.tree.n_edges, E = s.tree.n_edges;
  const auto& sv = s.tree.map.vertex_of;
  const auto& lab = st.lambdas[li];
  std::vector<int> target(E);
  for (int d = 0; d < E; ++d) {
    int e = s.orientation[d];
    target[d] = std::abs(lab[sv[(e + 1) % B]] - lab[sv[e]]);
  }
  // pick Z, then split it over the edges backward through the convolution
  int Z;
  std::vector<int> sig_edge(E);
  if (exact) {
    MotTable mot;
    mot.build(t.zmax);
    {
      std::vector<mpz_class> w(t.zmax + 1);
      for (int z = 0; z <= t.zmax; ++z)
        if (t.wz[z] != 0) w[z] = t.wz[z] * st.pe[li][z];
      Z = (int)pick_weighted(rng, w);
    }
    std::vector<std::vector<mpz_class>> part(E);
    part[0].assign(t.zmax + 1, 0);
    for (int z = 1; z <= t.zmax; ++z) part[0][z] = mot.get(z, target[0]) * z;
    for (int d = 1; d < E; ++d) {
      part[d].assign(t.zmax + 1, 0);
      for (int z = 0; z <= t.zmax; ++z) {
        mpz_class acc;
        for (int sg = std::max(1, target[d]); sg < z; ++sg)
          acc += mot.get(sg, target[d]) * part[d - 1][z - sg];
        part[d][z] = acc;
      }
    }
    int rem = Z;
    for (int d = E - 1; d >= 1; --d) {
      std::vector<mpz_class> w(rem + 1);
      for (int sg = 1; sg < rem; ++sg) w[sg] = mot.get(sg, target[d]) * part[d - 1][rem - sg];
      sig_edge[d] = (int)pick_weighted(rng, w);
      rem -= sig_edge[d];
    }
    sig_edge[0] = rem;
  } else {
    MotTableF motf;
    motf.build(t.zmax, std::min(t.zmax, 2 * t.lmax));
    {
      std::vector<double> w(t.zmax + 1, 0.0);
      for (int z = 0; z <= t.zmax && z <= t.n; ++z) w[z] = t.wz_f[z] * st.pe_f[li][z];
      Z = (int)pick_weighted(rng, w);
    }
    std::vector<std::vector<double>> part(E);
    part[0].assign(t.zmax + 1, 0.0);
    for (int z = 1; z <= t.zmax; ++z) part[0][z] = motf.get(z, target[0]) * z;
    for (int d = 1; d < E; ++d) {
      part[d].assign(t.zmax + 1, 0.0);
      for (int z = 0; z <= t.zmax; ++z) {
        double acc = 0;
        for (int sg = std::max(1, target[d]); sg < z; ++sg)
          acc += motf.get(sg, target[d]) * part[d - 1][z - sg];
        part[d][z] = acc;
      }
    }
    int rem = Z;
    for (int d = E - 1; d >= 1; --d) {
      std::vector<double> w(rem + 1, 0.0);
      for (int sg = 1; sg < rem; ++sg) w[sg] = motf.get(sg, target[d]) * part[d - 1][rem - sg];
      sig_edge[d] = (int)pick_weighted(rng, w);
      rem -= sig_edge[d];
    }
    sig_edge[0] = rem;
  }
  // chain lengths per half-edge, then block sizes k_e by sequential
  // conditioning on first-passage concatenation counts; the root block gets
  // an extra factor k for the root position
  std::vector<int> sig_he(B);
  for (int e = 0; e < B; ++e) sig_he[e] = sig_edge[st.edge_of[e]];
  long T = 2 * t.n;
  long S = 0;
  for (int e = 0; e < B; ++e) S += sig_he[e];
  std::vector<long> k(B);
  long t_rem = T, s_rem = S;
  for (int e = 0; e < B; ++e) {
    int sg = sig_he[e];
    long s_rest = s_rem - sg;
    if (e == B - 1) {
      k[e] = t_rem;
      break;
    }
    std::vector<long> kv;
    for (long kk = sg; kk <= t_rem - s_rest; kk += 2) kv.push_back(kk);
    size_t pick;
    if (exact) {
      std::vector<mpz_class> w(kv.size());
      for (size_t i = 0; i < kv.size(); ++i) {
        w[i] = fpw(sg, kv[i]) * fpw((int)s_rest, t_rem - kv[i]);
        if (e == 0) w[i] *= kv[i];
      }
      pick = pick_weighted(rng, w);
    } else {
      std::vector<double> lw(kv.size());
      double best = -HUGE_VAL;
      for (size_t i = 0; i < kv.size(); ++i) {
        lw[i] = lfpw(sg, kv[i]) + lfpw((int)s_rest, t_rem - kv[i]);
        if (e == 0) lw[i] += std::log((double)kv[i]);
        best = std::max(best, lw[i]);
      }
      std::vector<double> w(kv.size(), 0.0);
      for (size_t i = 0; i < kv.size(); ++i)
        if (lw[i] > -HUGE_VAL) w[i] = std::exp(lw[i] - best);
      pick = pick_weighted(rng, w);
    }
    k[e] = kv[pick];
    t_rem -= k[e];
    s_rem = s_rest;
  }
  StructureVector out;
  out.scheme = s;
  out.sigma = sig_he;
  out.m.resize(B);
  for (int e = 0; e < B; ++e) out.m[e] = (int)((k[e] - sig_he[e]) / 2);
  out.labels = lab;
  out.u = (int)rng.below((unsigned long)k[0]);
  return out;
}

WellLabeledGTree sample_gtree(const WeightTable& t, Rng& rng) {
  StructureVector sv = sample_structure(t, rng);
  const Scheme& s = sv.scheme;
  int B = 2 * s.tree.n_edges, E = s.tree.n_edges;
  const auto& vof = s.tree.map.vertex_of;
  DecompositionQuadruple q;
  q.scheme = s;
  q.vertex_labels = sv.labels;
  q.root_offset = sv.u;
  q.bridges.resize(B);
  q.forests.resize(B);
  for (int d = 0; d < E; ++d) {
    int e = s.orientation[d], eb = s.tree.pairing[e];
    int sg = sv.sigma[e];
    int target = sv.labels[vof[(e + 1) % B]] - sv.labels[vof[e]];
    q.bridges[e] = sample_motzkin_bridge(sg, target, rng);
    q.bridges[eb].values.assign(sg + 1, 0);
    for (int i = 0; i <= sg; ++i)
      q.bridges[eb].values[i] = q.bridges[e].values[sg - i] - q.bridges[e].values[sg];
  }
  for (int e = 0; e < B; ++e)
    q.forests[e] = sample_well_labeled_forest(sv.sigma[e], sv.m[e], rng);
  return recompose(q);
}

// One-shot helpers: exact for moderate n, float tables beyond (where the
// exact convolution tables get expensive).
static Mode default_mode(long n) { return n <= 320 ? Mode::exact : Mode::floating; }

StructureVector sample_structure(int genus, long n, Rng& rng) {
  auto t = build_weight_table(genus, n, default_mode(n));
  return sample_structure(t, rng);
}

WellLabeledGTree sample_gtree(int genus, long n, Rng& rng) {
  auto t = build_weight_table(genus, n, default_mode(n));
  return sample_gtree(t, rng);
}

}  // namespace qmaps
