#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include "qmaps/forest.hpp"

using namespace qmaps;

TEST_CASE("forest counts") {
  CHECK(count_forests(2, 1) == 2);
  CHECK(count_forests(1, 2) == 2);
  CHECK(count_forests(1, 0) == 1);
  CHECK(count_well_labeled_forests(2, 1) == 6);
  CHECK(count_well_labeled_forests(1, 2) == 18);
  // closed form vs direct enumeration
  for (int sigma = 1; sigma <= 4; ++sigma)
    for (int m = 0; 2 * m + sigma <= 12; ++m) {
      CHECK(count_forests(sigma, m) == (mpz_class)enumerate_forests(sigma, m).size());
      CHECK(count_well_labeled_forests(sigma, m) ==
            (mpz_class)enumerate_well_labeled_forests(sigma, m).size());
    }
}

TEST_CASE("trivial forest contour") {
  WellLabeledForest wlf;
  wlf.forest.sigma = 1;
  wlf.forest.m = 0;
  wlf.forest.nodes = {{1}, {2}};
  wlf.labels = {0, 0};
  auto pair = encode_contour(wlf);
  CHECK(pair.contour == std::vector<int>{1, 0});
  CHECK(pair.spatial == std::vector<int>{0, 0});
  auto back = decode_contour(pair);
  CHECK(back == wlf);
}

TEST_CASE("decode two trivial trees") {
  ContourPair pair;
  pair.contour = {2, 1, 0};
  pair.spatial = {0, 0, 0};
  auto wlf = decode_contour(pair);
  CHECK(wlf.forest.sigma == 2);
  CHECK(wlf.forest.m == 0);
  CHECK(wlf.forest.nodes == std::vector<std::vector<int>>{{1}, {2}, {3}});
}

TEST_CASE("encode/decode identity over all small forests") {
  for (int sigma = 1; sigma <= 3; ++sigma)
    for (int m = 0; 2 * m + sigma <= 11; ++m)
      for (auto& wlf : enumerate_well_labeled_forests(sigma, m)) {
        auto pair = encode_contour(wlf);
        REQUIRE((int)pair.contour.size() == 2 * m + sigma + 1);
        CHECK(pair.contour.front() == sigma);
        CHECK(pair.contour.back() == 0);
        CHECK(decode_contour(pair) == wlf);
      }
}

TEST_CASE("malformed contours rejected") {
  // hits 0 before the end
  ContourPair early{{2, 1, 0, 1, 0}, {0, 0, 0, 0, 0}};
  CHECK_THROWS_WITH_AS(decode_contour(early), doctest::Contains("MalformedContour"),
                       DomainError);
  // label jump of 2 along a tree edge
  ContourPair jump{{1, 2, 1, 0}, {0, 2, 0, 0}};
  CHECK_THROWS_WITH_AS(decode_contour(jump), doctest::Contains("MalformedContour"),
                       DomainError);
  // nonzero label on the floor
  ContourPair floorlab{{2, 1, 0}, {0, 1, 0}};
  CHECK_THROWS_WITH_AS(decode_contour(floorlab), doctest::Contains("MalformedContour"),
                       DomainError);
  // bad step size
  ContourPair step{{2, 0}, {0, 0}};
  CHECK_THROWS_WITH_AS(decode_contour(step), doctest::Contains("MalformedContour"),
                       DomainError);
}

static std::vector<MotzkinBridge> all_motzkin_bridges(int sigma, int target) {
  std::vector<MotzkinBridge> out;
  std::vector<int> vals{0};
  std::function<void()> rec = [&]() {
    if ((int)vals.size() == sigma + 1) {
      if (vals.back() == target) out.push_back(MotzkinBridge{vals});
      return;
    }
    for (int s = -1; s <= 1; ++s) {
      vals.push_back(vals.back() + s);
      rec();
      vals.pop_back();
    }
  };
  rec();
  return out;
}

TEST_CASE("motzkin bridge counts") {
  CHECK(count_motzkin_bridges(2, 0) == 3);
  for (int sigma = 1; sigma <= 7; ++sigma)
    for (int target = -sigma; target <= sigma; ++target)
      CHECK(count_motzkin_bridges(sigma, target) ==
            (mpz_class)all_motzkin_bridges(sigma, target).size());
}

TEST_CASE("motzkin sampler conditional weights telescope to the uniform law") {
  // The sampler picks step s at time i with weight = #completions; the
  // product of those conditional probabilities must equal 1/#bridges for
  // every bridge, which is exact uniformity over the enumerated randomness.
  for (int sigma = 1; sigma <= 8; ++sigma)
    for (int target = -sigma; target <= sigma; target += 2) {
      mpz_class total = count_motzkin_bridges(sigma, target);
      if (total == 0) continue;
      for (auto& b : all_motzkin_bridges(sigma, target)) {
        mpq_class prob = 1;
        for (int i = 0; i < sigma; ++i) {
          mpz_class num = count_motzkin_bridges(sigma - i - 1, target - b.values[i + 1]);
          mpz_class den = 0;
          for (int s = -1; s <= 1; ++s)
            den += count_motzkin_bridges(sigma - i - 1, target - (b.values[i] + s));
          prob *= mpq_class(num, den);
        }
        prob.canonicalize();
        CHECK(prob == mpq_class(1, total));
      }
    }
}

TEST_CASE("motzkin sampler hits every bridge roughly uniformly") {
  int sigma = 4, target = 0;
  mpz_class total = count_motzkin_bridges(sigma, target);
  long k = total.get_si();
  std::map<std::vector<int>, long> counts;
  Rng rng(777);
  long draws = 4000 * k;
  for (long i = 0; i < draws; ++i) ++counts[sample_motzkin_bridge(sigma, target, rng).values];
  REQUIRE((long)counts.size() == k);
  double expect = (double)draws / k, stat = 0;
  for (auto& [path, c] : counts) stat += (c - expect) * (c - expect) / expect;
  // chi-square with k-1 dof; p-value must not be absurdly small
  CHECK(gamma_q((k - 1) / 2.0, stat / 2.0) > 1e-9);
}

TEST_CASE("cycle-shift construction is exactly uniform on first-passage paths") {
  // enumerate every bridge and every shift index; the pushforward through the
  // shift must weight each first-passage path equally.
  for (auto [m_steps, sigma] : {std::pair{4, 2}, {8, 2}, {9, 3}, {7, 1}}) {
    std::map<std::vector<int>, long> hits;
    std::vector<int> vals{0};
    std::function<void(int, int)> rec = [&](int ups_left, int downs_left) {
      if (ups_left == 0 && downs_left == 0) {
        for (int nu = 0; nu < sigma; ++nu)
          ++hits[theta_transform(LatticeBridgePath{vals}, nu, sigma).values];
        return;
      }
      if (ups_left > 0) {
        vals.push_back(vals.back() + 1);
        rec(ups_left - 1, downs_left);
        vals.pop_back();
      }
      if (downs_left > 0) {
        vals.push_back(vals.back() - 1);
        rec(ups_left, downs_left - 1);
        vals.pop_back();
      }
    };
    int ups = (m_steps - sigma) / 2;
    rec(ups, m_steps - ups);
    // count of first-passage paths: (sigma/m) C(m, ups)
    mpz_class fp = binomial(m_steps, ups) * sigma / m_steps;
    REQUIRE((long)hits.size() == fp.get_si());
    long expect = hits.begin()->second;
    for (auto& [path, c] : hits) {
      CHECK(c == expect);
      // every output really is a first-passage path to -sigma
      REQUIRE((int)path.size() == m_steps + 1);
      CHECK(path.front() == 0);
      CHECK(path.back() == -sigma);
      for (int i = 0; i < m_steps; ++i) CHECK(path[i] > -sigma);
    }
  }
}

TEST_CASE("bcp sampler outputs valid first-passage paths") {
  Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    int sigma = 1 + (int)rng.below(4);
    int m_steps = sigma + 2 * (int)rng.below(6);
    auto p = bcp_first_passage_bridge(m_steps, sigma, rng);
    REQUIRE((int)p.values.size() == m_steps + 1);
    CHECK(p.values.front() == 0);
    CHECK(p.values.back() == -sigma);
    for (int i = 0; i < m_steps; ++i) {
      CHECK(p.values[i] > -sigma);
      CHECK(std::abs(p.values[i + 1] - p.values[i]) == 1);
    }
  }
  CHECK_THROWS_WITH_AS(bcp_first_passage_bridge(3, 2, rng),
                       doctest::Contains("InfeasibleParameters"), DomainError);
}

TEST_CASE("well-labeled forest sampler") {
  Rng rng(2024);
  auto trivial = sample_well_labeled_forest(1, 0, rng);
  CHECK(trivial.forest.nodes == std::vector<std::vector<int>>{{1}, {2}});

  // every sample is a valid member; empirical law is plausibly uniform
  int sigma = 2, m = 1;
  auto all = enumerate_well_labeled_forests(sigma, m);
  std::map<std::string, long> counts;
  long draws = 6000;
  for (long i = 0; i < draws; ++i) {
    auto wlf = sample_well_labeled_forest(sigma, m, rng);
    auto key = contour_to_json(encode_contour(wlf));
    ++counts[key];
  }
  REQUIRE(counts.size() == all.size());
  double expect = (double)draws / all.size(), stat = 0;
  for (auto& [k, c] : counts) stat += (c - expect) * (c - expect) / expect;
  CHECK(gamma_q((all.size() - 1) / 2.0, stat / 2.0) > 1e-9);
}

TEST_CASE("shifted label process") {
  WellLabeledForest trivial;
  trivial.forest.sigma = 1;
  trivial.forest.m = 0;
  trivial.forest.nodes = {{1}, {2}};
  trivial.labels = {0, 0};
  MotzkinBridge b{{0, 1}};
  CHECK(shifted_label_process(trivial, b) == std::vector<int>{0, 1});

  // zero bridge leaves the labels unchanged
  for (auto& wlf : enumerate_well_labeled_forests(2, 2)) {
    auto pair = encode_contour(wlf);
    MotzkinBridge zero{{0, 0, 0}};
    CHECK(shifted_label_process(pair, zero) == pair.spatial);
  }

  MotzkinBridge wrong{{0, 1, 0}};
  CHECK_THROWS_WITH_AS(shifted_label_process(trivial, wrong),
                       doctest::Contains("LifetimeMismatch"), DomainError);
}

TEST_CASE("snake path") {
  for (auto& wlf : enumerate_well_labeled_forests(1, 3)) {
    auto pair = encode_contour(wlf);
    for (int i = 0; i < (int)pair.contour.size(); ++i) {
      auto w = discrete_snake_path(pair, i);
      REQUIRE((int)w.size() == pair.contour[i] + 1);
      // top of the snake is the current label
      CHECK(w.back() == pair.spatial[i]);
    }
    CHECK_THROWS_WITH_AS(discrete_snake_path(pair, (int)pair.contour.size()),
                         doctest::Contains("IndexOutOfRange"), DomainError);
  }
}

TEST_CASE("contour json round trip") {
  auto all = enumerate_well_labeled_forests(2, 2);
  auto pair = encode_contour(all[3]);
  auto text = contour_to_json(pair);
  auto back = contour_from_json(text);
  CHECK(back.contour == pair.contour);
  CHECK(back.spatial == pair.spatial);
  CHECK(contour_to_json(back) == text);
}
