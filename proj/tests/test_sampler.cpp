#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include "qmaps/sampler.hpp"

using namespace qmaps;

TEST_CASE("exact counts match exhaustive enumeration") {
  CHECK(count_gtrees(1, 1) == 0);
  CHECK(count_gtrees(1, 2) == 1);
  CHECK(count_gtrees(1, 3) == 30);
  for (int n = 2; n <= 5; ++n)
    CHECK(count_gtrees(1, n) == (mpz_class)enumerate_well_labeled_gtrees(1, n).size());
}

TEST_CASE("quadrangulation counts") {
  CHECK(count_quadrangulations(1, 1) == 0);
  CHECK(count_quadrangulations(1, 2) == 1);
  CHECK(count_quadrangulations(1, 3) == 20);
  for (int n = 2; n <= 30; ++n) {
    mpz_class q = count_quadrangulations(1, n);
    CHECK(q * n == 2 * count_gtrees(1, n));  // n+2-2g = n at g=1
  }
}

TEST_CASE("float counts agree with exact counts") {
  for (long n : {2L, 3L, 5L, 10L, 40L, 120L}) {
    auto exact = build_weight_table(1, n, Mode::exact);
    double lg = count_gtrees_log(1, n);
    CHECK(std::abs(lg - exact.log_total) < 1e-9 * std::max(1.0, std::abs(exact.log_total)));
  }
  // small n also directly comparable as doubles
  CHECK(count_gtrees_float(1, 3) == doctest::Approx(30.0).epsilon(1e-9));
}

TEST_CASE("unique structure at n=2") {
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    auto sv = sample_structure(1, 2, rng);
    CHECK(sv.scheme.tree.pairing == std::vector<int>{2, 3, 0, 1});
    CHECK(sv.sigma == std::vector<int>{1, 1, 1, 1});
    CHECK(sv.m == std::vector<int>{0, 0, 0, 0});
    CHECK(sv.labels == std::vector<int>{0});
    CHECK(sv.u == 0);
  }
}

TEST_CASE("scheme marginal at n=3 matches enumeration exactly") {
  // the per-scheme aggregate weights are exact integers; compare them with
  // the scheme split of the 30 enumerated trees
  auto table = build_weight_table(1, 3, Mode::exact);
  REQUIRE(table.schemes.size() == 2);
  std::map<std::vector<int>, long> split;
  for (auto& wlt : enumerate_well_labeled_gtrees(1, 3))
    ++split[decompose(wlt).scheme.tree.pairing];
  for (auto& st : table.schemes) {
    mpz_class w = 0;
    for (auto& x : st.lw) w += x;
    CHECK(w == split[st.scheme.tree.pairing]);
  }
  CHECK(table.total == 30);
}

TEST_CASE("fixed seed reproduces the sample") {
  Rng a(42), b(42);
  auto ta = sample_gtree(1, 7, a);
  auto tb = sample_gtree(1, 7, b);
  CHECK(ta == tb);
  auto sa = Rng(99), sb = Rng(99);
  CHECK(sample_structure(1, 9, sa).u == sample_structure(1, 9, sb).u);
}

TEST_CASE("n=2 sampling always yields the bouquet") {
  Rng rng(7);
  auto bouquet = enumerate_well_labeled_gtrees(1, 2)[0];
  for (int i = 0; i < 10; ++i) CHECK(sample_gtree(1, 2, rng) == bouquet);
}

TEST_CASE("n=3 empirical law is uniform over the 30 trees") {
  auto all = enumerate_well_labeled_gtrees(1, 3);
  auto table = build_weight_table(1, 3, Mode::exact);
  Rng rng(20240817);
  std::map<std::string, long> counts;
  long draws = 30000;
  for (long i = 0; i < draws; ++i) ++counts[gtree_to_json(sample_gtree(table, rng), 1)];
  REQUIRE(counts.size() == all.size());
  double expect = (double)draws / all.size(), stat = 0;
  for (auto& [k, c] : counts) stat += (c - expect) * (c - expect) / expect;
  CHECK(gamma_q((all.size() - 1) / 2.0, stat / 2.0) > 0.001);
}

TEST_CASE("sampled trees pass all validators") {
  Rng rng(11);
  for (long n : {20L, 60L}) {
    auto table = build_weight_table(1, n, Mode::exact);
    for (int i = 0; i < 5; ++i) {
      auto wlt = sample_gtree(table, rng);
      CHECK(wlt.tree.n_edges == n);
      CHECK(genus(wlt.tree.map) == 1);
      CHECK(wlt.tree.map.n_faces == 1);
      CHECK_NOTHROW(validate_labels(wlt.tree, wlt.labels));
    }
  }
  // float mode at n=1000
  auto table = build_weight_table(1, 1000, Mode::floating);
  for (int i = 0; i < 3; ++i) {
    auto wlt = sample_gtree(table, rng);
    CHECK(wlt.tree.n_edges == 1000);
    CHECK(genus(wlt.tree.map) == 1);
  }
}

TEST_CASE("empty support is reported") {
  auto table = build_weight_table(1, 1, Mode::exact);
  Rng rng(1);
  CHECK_THROWS_WITH_AS(sample_structure(table, rng), doctest::Contains("EmptySupport"),
                       DomainError);
}

TEST_CASE("structure is consistent with its own tree") {
  // decompose(sample_gtree) must reproduce the sampled structure data
  Rng rng(314);
  auto table = build_weight_table(1, 12, Mode::exact);
  for (int i = 0; i < 50; ++i) {
    Rng probe = derive_stream(314159, i);
    auto sv = sample_structure(table, probe);
    Rng probe2 = derive_stream(314159, i);
    auto wlt = sample_gtree(table, probe2);
    auto q = decompose(wlt);
    CHECK(q.scheme.tree.pairing == sv.scheme.tree.pairing);
    CHECK(q.root_offset == sv.u);
    CHECK(q.vertex_labels == sv.labels);
    for (int e = 0; e < 2 * q.scheme.tree.n_edges; ++e) {
      CHECK(q.sigma(e) == sv.sigma[e]);
      CHECK(q.m(e) == sv.m[e]);
    }
  }
}
