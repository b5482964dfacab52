#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <queue>
#include <set>

#include "qmaps/cms.hpp"
#include "qmaps/sampler.hpp"

using namespace qmaps;

static std::vector<int> bfs_from(const CombinatorialMap& m, int source) {
  std::vector<std::vector<int>> adj(m.n_vertices);
  for (int h = 0; h < m.half_edges(); ++h)
    adj[m.vertex_of[h]].push_back(m.vertex_of[m.alpha[h]]);
  std::vector<int> d(m.n_vertices, -1);
  d[source] = 0;
  std::queue<int> q;
  q.push(source);
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

// canonical form of a rooted map with a marked vertex: relabel half-edges in
// discovery order of a deterministic traversal from the root
static std::vector<int> pointed_key(const CombinatorialMap& m, int marked) {
  int H = m.half_edges();
  std::vector<int> newid(H, -1), order;
  order.reserve(H);
  newid[m.root] = 0;
  order.push_back(m.root);
  for (size_t k = 0; k < order.size(); ++k) {
    for (int h : {m.sigma[order[k]], m.alpha[order[k]]})
      if (newid[h] < 0) {
        newid[h] = (int)order.size();
        order.push_back(h);
      }
  }
  std::vector<int> key(2 * H + 1);
  for (int h = 0; h < H; ++h) {
    key[newid[h]] = newid[m.sigma[h]];
    key[H + newid[h]] = newid[m.alpha[h]];
  }
  int mv = H;
  for (int h = 0; h < H; ++h)
    if (m.vertex_of[h] == marked) mv = std::min(mv, newid[h]);
  key[2 * H] = mv;
  return key;
}

TEST_CASE("forward output is a pointed bipartite quadrangulation") {
  for (int n = 2; n <= 4; ++n)
    for (auto& t : enumerate_well_labeled_gtrees(1, n))
      for (int eps : {-1, 1}) {
        auto pq = cms_forward(t, eps);
        CHECK(pq.map.half_edges() == 4 * n);  // 2n edges
        CHECK(pq.map.n_vertices == n);        // n + 2 - 2g
        CHECK(pq.map.n_faces == n);
        CHECK(genus(pq.map) == 1);
        CHECK(pq.epsilon == eps);
        // every face has degree 4
        std::vector<char> seen(pq.map.half_edges(), 0);
        for (int h0 = 0; h0 < pq.map.half_edges(); ++h0) {
          if (seen[h0]) continue;
          int c = h0, deg = 0;
          do {
            seen[c] = 1;
            ++deg;
            c = pq.map.phi(c);
          } while (c != h0);
          CHECK(deg == 4);
        }
        CHECK(check_label_distance(pq));
        CHECK(pq.shifted_labels[pq.pointed_vertex] == 0);
        // the correspondence covers every vertex except v*
        std::set<int> hit(pq.correspondence.begin(), pq.correspondence.end());
        CHECK((int)hit.size() == pq.map.n_vertices - 1);
        CHECK(hit.count(pq.pointed_vertex) == 0);
      }
  CHECK_THROWS_WITH_AS(cms_forward(enumerate_well_labeled_gtrees(1, 2)[0], 0),
                       doctest::Contains("BadArgument"), DomainError);
}

TEST_CASE("bouquet maps to the two-face two-vertex quadrangulation") {
  auto bouquet = enumerate_well_labeled_gtrees(1, 2)[0];
  auto pq = cms_forward(bouquet, -1);
  CHECK(pq.map.n_vertices == 2);
  CHECK(pq.map.n_faces == 2);
  CHECK(genus(pq.map) == 1);
  // all four tree corners sit on the same non-pointed vertex
  for (int i = 0; i <= 4; ++i) CHECK(pq.correspondence[i] != pq.pointed_vertex);
}

TEST_CASE("round trip is the identity on both sides") {
  for (int n = 2; n <= 4; ++n)
    for (auto& t : enumerate_well_labeled_gtrees(1, n))
      for (int eps : {-1, 1}) {
        auto pq = cms_forward(t, eps);
        auto [t2, e2] = cms_inverse(pq);
        CHECK(t2 == t);
        CHECK(e2 == eps);
      }
}

TEST_CASE("round trip holds on larger sampled trees") {
  Rng rng(2024);
  for (long n : {50L, 200L}) {
    auto table = build_weight_table(1, n, Mode::exact);
    for (int i = 0; i < 5; ++i) {
      auto t = sample_gtree(table, rng);
      for (int eps : {-1, 1}) {
        auto pq = cms_forward(t, eps);
        CHECK(check_label_distance(pq));
        auto [t2, e2] = cms_inverse(pq);
        CHECK(t2 == t);
        CHECK(e2 == eps);
      }
    }
  }
}

TEST_CASE("injectivity and the pointed-count identity") {
  // distinct images number 2|T_n|; grouped by underlying rooted map, every
  // group has size n+2-2g = n, so the number of groups is |Q_n|
  for (int n = 2; n <= 4; ++n) {
    auto all = enumerate_well_labeled_gtrees(1, n);
    std::set<std::vector<int>> images;
    std::map<std::vector<int>, int> by_map;
    for (auto& t : all)
      for (int eps : {-1, 1}) {
        auto pq = cms_forward(t, eps);
        // epsilon is not folded in: the rooted map already determines it via
        // the orientation of the root arc, so images must be distinct as maps
        auto key = pointed_key(pq.map, pq.pointed_vertex);
        CHECK(images.insert(key).second);
        ++by_map[canonical_key(pq.map)];
      }
    CHECK((long)images.size() == 2 * (long)all.size());
    CHECK((long)by_map.size() == count_quadrangulations(1, n).get_si());
    for (auto& [k, c] : by_map) CHECK(c == n);  // n+2-2g pointings each
  }
}

TEST_CASE("non-quadrangulation and non-bipartite inputs are rejected") {
  // triangle: two faces of degree 3
  PointedQuadrangulation bad;
  bad.map = build_map(3, {1, 0, 3, 2, 5, 4}, {5, 2, 1, 4, 3, 0}, 0);
  bad.pointed_vertex = 0;
  CHECK_THROWS_WITH_AS(cms_inverse(bad), doctest::Contains("NotAQuadrangulation"),
                       DomainError);
  // one-vertex genus-1 map: a single face of degree 4, but loops are odd cycles
  PointedQuadrangulation loops;
  loops.map = build_map(2, {2, 3, 0, 1}, {1, 2, 3, 0}, 0);
  loops.pointed_vertex = 0;
  CHECK_THROWS_WITH_AS(cms_inverse(loops), doctest::Contains("NotBipartite"), DomainError);
}

TEST_CASE("check_label_distance detects corruption") {
  auto pq = cms_forward(enumerate_well_labeled_gtrees(1, 3)[0], 1);
  REQUIRE(check_label_distance(pq));
  pq.shifted_labels[pq.pointed_vertex] += 1;
  CHECK(!check_label_distance(pq));
}

TEST_CASE("label-distance sweep at n=1000") {
  Rng rng(909);
  auto table = build_weight_table(1, 1000, Mode::floating);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    auto pq = cms_forward(sample_gtree(table, rng), rng.below(2) ? 1 : -1);
    if (!check_label_distance(pq)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("distance upper bound dominates the true distance") {
  for (int n = 2; n <= 4; ++n)
    for (auto& t : enumerate_well_labeled_gtrees(1, n)) {
      auto pq = cms_forward(t, -1);
      int H = 2 * n;
      for (int i = 0; i <= H; ++i) {
        auto d = bfs_from(pq.map, pq.correspondence[i]);
        for (int j = 0; j <= H; ++j) {
          int bound = distance_upper_bound(pq, i, j);
          if (i == j) CHECK(bound == 2);
          CHECK(bound >= d[pq.correspondence[j]]);
          CHECK(bound == distance_upper_bound(pq, j, i));
        }
      }
    }
}

TEST_CASE("distance upper bound at n=10^4") {
  Rng rng(31337);
  auto table = build_weight_table(1, 10000, Mode::floating);
  auto pq = cms_forward(sample_gtree(table, rng), -1);
  REQUIRE(check_label_distance(pq));
  long H = 2 * 10000;
  for (int rep = 0; rep < 20; ++rep) {
    long i = (long)rng.below(H + 1);
    auto d = bfs_from(pq.map, pq.correspondence[i]);
    for (int k = 0; k < 50; ++k) {
      long j = (long)rng.below(H + 1);
      CHECK(distance_upper_bound(pq, i, j) >= d[pq.correspondence[j]]);
    }
  }
}

TEST_CASE("json round trip") {
  auto pq = cms_forward(enumerate_well_labeled_gtrees(1, 3)[7], 1);
  auto pq2 = quadrangulation_from_json(quadrangulation_to_json(pq));
  CHECK(pq2.map.alpha == pq.map.alpha);
  CHECK(pq2.map.sigma == pq.map.sigma);
  CHECK(pq2.map.root == pq.map.root);
  CHECK(pq2.pointed_vertex == pq.pointed_vertex);
  CHECK(pq2.epsilon == pq.epsilon);
  CHECK(pq2.correspondence == pq.correspondence);
  CHECK(pq2.shifted_labels == pq.shifted_labels);
}
