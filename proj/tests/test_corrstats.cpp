#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "test_util.hpp"
#include "vqcd/corrstats.hpp"

using namespace vqcd;

namespace {

// Independent Pearson formula, element by element; the oracle never goes
// through sample_correlation's centering/normalization path.
double pearson_oracle(const DataBlock& b, std::size_t i, std::size_t j) {
  const double n = static_cast<double>(b.n);
  double mx = 0, my = 0;
  for (std::size_t r = 0; r < b.n; ++r) {
    mx += b(r, i);
    my += b(r, j);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t r = 0; r < b.n; ++r) {
    sxy += (b(r, i) - mx) * (b(r, j) - my);
    sxx += (b(r, i) - mx) * (b(r, i) - mx);
    syy += (b(r, j) - my) * (b(r, j) - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

DataBlock block_from(std::size_t n, std::size_t p,
                     std::initializer_list<double> vals) {
  DataBlock b;
  b.n = n;
  b.p = p;
  b.values = vals;
  return b;
}

}  // namespace

TEST_CASE("sample_correlation: affine copy of a column gives r = 1") {
  auto rng = std::mt19937_64(7);
  auto b = test::random_block(6, 4, rng);
  for (std::size_t r = 0; r < b.n; ++r) b(r, 3) = 2.5 * b(r, 1) + 3.0;
  const auto cm = sample_correlation(b);
  CHECK(cm(1, 3) == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t i = 0; i < b.p; ++i) CHECK(cm(i, i) == 1.0);
}

TEST_CASE("sample_correlation: frozen 3x2 Pearson value") {
  // columns (1,2,3) and (1,2,4); r = sqrt(27/28) from the direct formula
  const auto b = block_from(3, 2, {1, 1, 2, 2, 3, 4});
  const auto cm = sample_correlation(b);
  CHECK(cm(0, 1) == doctest::Approx(0.9819805060619657).epsilon(1e-12));
}

TEST_CASE("sample_correlation matches the Pearson oracle on random blocks") {
  auto rng = std::mt19937_64(11);
  for (int rep = 0; rep < 20; ++rep) {
    const auto b = test::random_block(5, 7, rng);
    const auto cm = sample_correlation(b);
    for (std::size_t i = 0; i < b.p; ++i)
      for (std::size_t j = i + 1; j < b.p; ++j)
        CHECK(cm(i, j) ==
              doctest::Approx(pearson_oracle(b, i, j)).epsilon(1e-12));
  }
}

TEST_CASE("sample_correlation: basic matrix invariants") {
  auto rng = std::mt19937_64(13);
  const auto cm = sample_correlation(test::random_block(4, 10, rng));
  for (std::size_t i = 0; i < cm.p; ++i) {
    CHECK(std::fabs(cm(i, i) - 1.0) < 1e-12);
    for (std::size_t j = 0; j < cm.p; ++j) {
      CHECK(cm(i, j) == cm(j, i));
      CHECK(std::fabs(cm(i, j)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("sample_correlation: zero-variance column names the culprit") {
  auto rng = std::mt19937_64(17);
  auto b = test::random_block(5, 4, rng);
  for (std::size_t r = 0; r < b.n; ++r) b(r, 2) = 42.0;
  CHECK_THROWS_AS(sample_correlation(b), DegenerateColumnError);
  try {
    sample_correlation(b);
  } catch (const DegenerateColumnError& e) {
    CHECK(e.column() == 2);
  }
}

TEST_CASE("DataBlock validation rejects bad shapes and non-finite entries") {
  CHECK_THROWS_AS(block_from(2, 2, {1, 2, 3, 4}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(block_from(3, 1, {1, 2, 3}).validate(),
                  std::invalid_argument);
  auto b = block_from(3, 2, {1, 1, 2, 2, 3, 4});
  b.values[3] = std::nan("");
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
}

TEST_CASE("knn_corr_distance: p = 2 returns the only neighbor") {
  const auto b = block_from(3, 2, {1, 1, 2, 2, 3, 4});
  const auto cm = sample_correlation(b);
  CHECK(knn_corr_distance(cm, 1, 0) == doctest::Approx(std::fabs(cm(0, 1))));
}

TEST_CASE("knn_corr_distance: order statistic by inspection") {
  CorrelationMatrix cm;
  cm.p = 4;
  cm.entries = {1.0, 0.9, -0.5, 0.1,  //
                0.9, 1.0, 0.2,  0.3,  //
                -0.5, 0.2, 1.0, 0.4,  //
                0.1, 0.3, 0.4,  1.0};
  CHECK(knn_corr_distance(cm, 2, 0) == doctest::Approx(0.5));
  CHECK(knn_corr_distance(cm, 1, 0) == doctest::Approx(0.9));
  CHECK(knn_corr_distance(cm, 3, 0) == doctest::Approx(0.1));
  CHECK_THROWS_AS(knn_corr_distance(cm, 4, 0), std::invalid_argument);
}

TEST_CASE("knn_corr_distance matches a full-sort oracle") {
  auto rng = std::mt19937_64(19);
  for (int rep = 0; rep < 25; ++rep) {
    const auto cm = sample_correlation(test::random_block(4, 6, rng));
    for (std::size_t i = 0; i < cm.p; ++i)
      for (std::size_t k = 1; k <= cm.p - 1; ++k) {
        std::vector<double> mags;
        for (std::size_t j = 0; j < cm.p; ++j)
          if (j != i) mags.push_back(std::fabs(cm(i, j)));
        std::sort(mags.rbegin(), mags.rend());
        CHECK(knn_corr_distance(cm, k, i) == doctest::Approx(mags[k - 1]));
      }
  }
}

TEST_CASE("summary_statistic: two identical columns force v = 1") {
  auto rng = std::mt19937_64(23);
  auto b = test::random_block(5, 6, rng);
  for (std::size_t r = 0; r < b.n; ++r) b(r, 4) = b(r, 1);
  CHECK(summary_statistic(b, 1).v == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("summary_statistic matches exhaustive-pair and full-sort oracles") {
  auto rng = std::mt19937_64(29);
  for (int rep = 0; rep < 30; ++rep) {
    const auto b = test::random_block(4, 5, rng);
    const auto cm = sample_correlation(b);

    double max_pair = 0.0;
    for (std::size_t i = 0; i < cm.p; ++i)
      for (std::size_t j = i + 1; j < cm.p; ++j)
        max_pair = std::max(max_pair, std::fabs(cm(i, j)));
    CHECK(summary_statistic(b, 1).v == doctest::Approx(max_pair));

    double max_second = 0.0;
    for (std::size_t i = 0; i < cm.p; ++i) {
      std::vector<double> mags;
      for (std::size_t j = 0; j < cm.p; ++j)
        if (j != i) mags.push_back(std::fabs(cm(i, j)));
      std::sort(mags.rbegin(), mags.rend());
      max_second = std::max(max_second, mags[1]);
    }
    CHECK(summary_statistic(b, 2).v == doctest::Approx(max_second));
  }
}

TEST_CASE("degree_profile: rho = 0 makes a complete graph") {
  auto rng = std::mt19937_64(31);
  const auto cm = sample_correlation(test::random_block(4, 6, rng));
  const auto dp = degree_profile(cm, 2, 0.0);
  for (std::size_t i = 0; i < cm.p; ++i) CHECK(dp.degrees[i] == cm.p - 1);
  CHECK(dp.hub_count == cm.p);
}

TEST_CASE("degree_profile: rho above the max leaves an empty graph") {
  auto rng = std::mt19937_64(37);
  const auto b = test::random_block(4, 6, rng);
  const auto cm = sample_correlation(b);
  const double v = summary_statistic(b, 1).v;
  const auto dp = degree_profile(cm, 1, std::min(1.0, v + 1e-9));
  CHECK(dp.hub_count == 0);
}

TEST_CASE("degree_profile matches a brute-force double loop") {
  auto rng = std::mt19937_64(41);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 25; ++rep) {
    const auto cm = sample_correlation(test::random_block(4, 5, rng));
    const double rho = unif(rng);
    const auto dp = degree_profile(cm, 2, rho);
    std::size_t hubs = 0;
    for (std::size_t i = 0; i < cm.p; ++i) {
      std::size_t deg = 0;
      for (std::size_t j = 0; j < cm.p; ++j)
        if (j != i && std::fabs(cm(i, j)) >= rho) ++deg;
      CHECK(dp.degrees[i] == deg);
      if (deg >= 2) ++hubs;
    }
    CHECK(dp.hub_count == hubs);
  }
}

TEST_CASE("property: V >= rho iff the graph has a hub") {
  auto rng = std::mt19937_64(43);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> psize(3, 8);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t p = psize(rng);
    const auto b = test::random_block(4, p, rng);
    const auto cm = sample_correlation(b);
    std::uniform_int_distribution<std::size_t> dsize(1, p - 1);
    const std::size_t delta = dsize(rng);
    const double rho = unif(rng);
    const bool v_hits = summary_statistic(b, delta).v >= rho;
    const bool hub = degree_profile(cm, delta, rho).hub_count > 0;
    CHECK(v_hits == hub);
  }
}

TEST_CASE("property: hub_count non-increasing in rho and in delta") {
  auto rng = std::mt19937_64(47);
  for (int rep = 0; rep < 50; ++rep) {
    const auto cm = sample_correlation(test::random_block(4, 7, rng));
    std::size_t prev = cm.p + 1;
    for (double rho : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      const auto dp = degree_profile(cm, 2, rho);
      CHECK(dp.hub_count <= prev);
      prev = dp.hub_count;
    }
    prev = cm.p + 1;
    for (std::size_t delta = 1; delta < cm.p; ++delta) {
      const auto dp = degree_profile(cm, delta, 0.5);
      CHECK(dp.hub_count <= prev);
      prev = dp.hub_count;
    }
  }
}

TEST_CASE("property: column scale/shift invariance of V") {
  auto rng = std::mt19937_64(53);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  std::uniform_real_distribution<double> shift(-100.0, 100.0);
  for (int rep = 0; rep < 30; ++rep) {
    const auto b = test::random_block(5, 6, rng);
    const double v0 = summary_statistic(b, 1).v;
    auto b2 = b;
    for (std::size_t j = 0; j < b.p; ++j) {
      const double a = scale(rng), c = shift(rng);
      for (std::size_t r = 0; r < b.n; ++r) b2(r, j) = a * b(r, j) + c;
    }
    CHECK(summary_statistic(b2, 1).v == doctest::Approx(v0).epsilon(1e-10));
  }
}

TEST_CASE("property: column permutation invariance of V") {
  auto rng = std::mt19937_64(59);
  for (int rep = 0; rep < 20; ++rep) {
    const auto b = test::random_block(5, 6, rng);
    std::vector<std::size_t> perm(b.p);
    for (std::size_t j = 0; j < b.p; ++j) perm[j] = j;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto b2 = b;
    for (std::size_t j = 0; j < b.p; ++j)
      for (std::size_t r = 0; r < b.n; ++r) b2(r, j) = b(r, perm[j]);
    for (std::size_t delta : {std::size_t{1}, std::size_t{2}})
      CHECK(summary_statistic(b2, delta).v ==
            doctest::Approx(summary_statistic(b, delta).v));
  }
}
