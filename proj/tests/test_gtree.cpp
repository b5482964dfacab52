#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "qmaps/gtree.hpp"

using namespace qmaps;

TEST_CASE("one edge pairing is a planar tree") {
  auto t = from_pairing(1, {1, 0});
  CHECK(genus(t.map) == 0);
  CHECK(t.map.n_vertices == 2);
  auto fs = facial_sequence(t);
  REQUIRE(fs.vertices.size() == 3);
  CHECK(fs.vertices[0] == fs.vertices[2]);
  CHECK(fs.vertices[0] != fs.vertices[1]);
}

TEST_CASE("square gluings") {
  auto bouquet = from_pairing(2, {2, 3, 0, 1});
  CHECK(genus(bouquet.map) == 1);
  CHECK(bouquet.map.n_vertices == 1);
  auto fs = facial_sequence(bouquet);
  for (int v : fs.vertices) CHECK(v == fs.vertices[0]);

  // nested gluing gives a genus-0 path on 3 vertices
  auto path = from_pairing(2, {3, 2, 1, 0});
  CHECK(genus(path.map) == 0);
  CHECK(path.map.n_vertices == 3);
}

TEST_CASE("bad pairings rejected") {
  CHECK_THROWS_WITH_AS(from_pairing(1, {0, 1}), doctest::Contains("InvalidInvolution"),
                       DomainError);
  CHECK_THROWS_WITH_AS(from_pairing(2, {1, 0, 2, 3}), doctest::Contains("InvalidInvolution"),
                       DomainError);
}

TEST_CASE("label validation") {
  auto bouquet = from_pairing(2, {2, 3, 0, 1});
  auto wl = validate_labels(bouquet, {0});
  CHECK(wl.labels == std::vector<int>{0});
  CHECK_THROWS_WITH_AS(validate_labels(bouquet, {1}), doctest::Contains("RootLabelNonzero"),
                       DomainError);

  auto path = from_pairing(2, {3, 2, 1, 0});
  int root_v = path.map.vertex_of[0];
  std::vector<int> labels(3, 0);
  labels[root_v] = 0;
  // find the two non-root vertices along the path
  int mid = path.map.vertex_of[path.map.alpha[0]];
  int far = -1;
  for (int v = 0; v < 3; ++v)
    if (v != root_v && v != mid) far = v;
  labels[mid] = 1;
  labels[far] = 2;
  CHECK_NOTHROW(validate_labels(path, labels));
  labels[far] = 3;
  CHECK_THROWS_WITH_AS(validate_labels(path, labels), doctest::Contains("IncrementTooLarge"),
                       DomainError);
}

TEST_CASE("exhaustive counts in genus 1") {
  CHECK(enumerate_well_labeled_gtrees(1, 1).empty());
  CHECK(enumerate_well_labeled_gtrees(1, 2).size() == 1);
  CHECK(enumerate_well_labeled_gtrees(1, 3).size() == 30);
  CHECK_THROWS_WITH_AS(enumerate_well_labeled_gtrees(1, 9, 8),
                       doctest::Contains("SizeTooLargeForExhaustive"), DomainError);
}

TEST_CASE("n=3 genus-1 pairings all have two vertices") {
  // one-face maps satisfy V = n + 1 - 2g, so genus 1 at n=3 forces V=2;
  // Harer-Zagier gives 10 genus-1 gluings of the hexagon (15 total, 5 planar).
  int genus1 = 0, planar = 0, total = 0;
  for_each_pairing(3, [&](const std::vector<int>& p) {
    GTree t = from_pairing(3, p);
    ++total;
    if (genus(t.map) == 1) {
      ++genus1;
      CHECK(t.map.n_vertices == 2);
    } else {
      CHECK(genus(t.map) == 0);
      ++planar;
    }
  });
  CHECK(total == 15);
  CHECK(genus1 == 10);
  CHECK(planar == 5);
}

TEST_CASE("facial sequence neighbors are adjacent and closed") {
  for (auto& wl : enumerate_well_labeled_gtrees(1, 3)) {
    auto fs = facial_sequence(wl.tree);
    REQUIRE(fs.vertices.size() == 7);
    CHECK(fs.vertices.front() == fs.vertices.back());
    for (size_t i = 0; i + 1 < fs.vertices.size(); ++i) {
      int d = wl.labels[fs.vertices[i]] - wl.labels[fs.vertices[i + 1]];
      CHECK(std::abs(d) <= 1);
    }
  }
}

TEST_CASE("json round trip") {
  auto trees = enumerate_well_labeled_gtrees(1, 3);
  auto& wl = trees[5];
  auto text = gtree_to_json(wl, 1);
  auto back = gtree_from_json(text);
  CHECK(back == wl);
  CHECK(gtree_to_json(back, 1) == text);
}
