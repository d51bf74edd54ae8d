#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "socnav/analysis/histogram.hpp"
#include "socnav/analysis/human_baseline.hpp"
#include "socnav/analysis/kappa.hpp"
#include "socnav/common/error.hpp"
#include "socnav/common/rng.hpp"

using namespace socnav;
using namespace socnav::analysis;

namespace {

// Independent route: weighted agreement averaged over pairs, chance term
// averaged over the full cross product of the two raters' ratings.
std::optional<double> kappa_brute_force(const std::vector<RatingPair>& pairs, int k) {
  auto weight = [k](int i, int j) {
    return 1.0 - std::abs(i - j) / static_cast<double>(k - 1);
  };
  double observed = 0.0;
  for (const auto& p : pairs)
    observed += weight(category_index(p.rating_a, k), category_index(p.rating_b, k));
  observed /= static_cast<double>(pairs.size());

  double expected = 0.0;
  for (const auto& pa : pairs)
    for (const auto& pb : pairs)
      expected += weight(category_index(pa.rating_a, k), category_index(pb.rating_b, k));
  expected /= static_cast<double>(pairs.size() * pairs.size());

  if (std::abs(1.0 - expected) < 1e-12) return std::nullopt;
  return (observed - expected) / (1.0 - expected);
}

}  // namespace

TEST_CASE("kappa: perfect agreement over several categories gives 1") {
  std::vector<RatingPair> pairs;
  for (double score : {0.0, 20.0, 40.0, 60.0, 80.0, 100.0, 40.0, 60.0})
    pairs.push_back({"s", score, score});
  const auto kappa = linear_weighted_kappa(pairs);
  REQUIRE(kappa.has_value());
  CHECK(*kappa == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kappa: two-category anti-agreement gives -1") {
  std::vector<RatingPair> pairs{
      {"a", 0, 100}, {"b", 0, 100}, {"c", 100, 0}, {"d", 100, 0}};
  const auto kappa = linear_weighted_kappa(pairs, 2);
  REQUIRE(kappa.has_value());
  CHECK(*kappa == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("kappa: degenerate single-cell mass is reported as undefined") {
  std::vector<RatingPair> pairs{{"a", 40, 40}, {"b", 40, 40}};
  CHECK(!linear_weighted_kappa(pairs).has_value());
}

TEST_CASE("kappa: closed form equals brute force on 1000 random fixtures") {
  Rng rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = rng.uniform_int(2, 6);
    const int n = rng.uniform_int(1, 40);
    std::vector<RatingPair> pairs;
    const double step = 100.0 / (k - 1);
    for (int i = 0; i < n; ++i)
      pairs.push_back({"s" + std::to_string(i),
                       step * rng.uniform_int(0, k - 1),
                       step * rng.uniform_int(0, k - 1)});
    const auto closed = linear_weighted_kappa(pairs, k);
    const auto brute = kappa_brute_force(pairs, k);
    REQUIRE(closed.has_value() == brute.has_value());
    if (closed.has_value())
      CHECK(*closed == doctest::Approx(*brute).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("kappa is invariant under order-preserving relabelling") {
  Rng rng(78);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RatingPair> pairs;
    for (int i = 0; i < 30; ++i)
      pairs.push_back({"s", 20.0 * rng.uniform_int(0, 5), 20.0 * rng.uniform_int(0, 5)});
    std::vector<RatingPair> flipped;
    for (const auto& p : pairs)
      flipped.push_back({p.sample_id, 100.0 - p.rating_a, 100.0 - p.rating_b});
    const auto a = linear_weighted_kappa(pairs);
    const auto b = linear_weighted_kappa(flipped);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(*a == doctest::Approx(*b).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("kappa: off-grid scores snap to the nearest category") {
  CHECK(category_index(0.0) == 0);
  CHECK(category_index(9.0) == 0);
  CHECK(category_index(11.0) == 1);
  CHECK(category_index(50.0) == 3);  // ties round up
  CHECK(category_index(100.0) == 5);
}

TEST_CASE("kappa input validation") {
  CHECK_THROWS_AS((void)linear_weighted_kappa({}, 6), Error);
  std::vector<RatingPair> one{{"a", 0, 0}};
  CHECK_THROWS_AS((void)linear_weighted_kappa(one, 1), Error);
}

TEST_CASE("human baseline: identical scores give zero error") {
  std::vector<DuplicatedSample> samples(5);
  for (auto& s : samples)
    for (int r = 0; r < 4; ++r)
      for (int p = 0; p < 2; ++p) s.scores[r][p] = 60.0;
  const HumanBaseline hb = human_baseline_mse(samples);
  for (double v : hb.per_rater_mse) CHECK(v == 0.0);
  CHECK(hb.average_mse == 0.0);
}

TEST_CASE("human baseline: split raters around a 0.5 reference") {
  DuplicatedSample s;
  s.sample_id = "only";
  // Raters 1-2 score 0, raters 3-4 score 100: reference 0.5, each rater's
  // squared error is 0.25 on both passes.
  for (int p = 0; p < 2; ++p) {
    s.scores[0][p] = 0.0;
    s.scores[1][p] = 0.0;
    s.scores[2][p] = 100.0;
    s.scores[3][p] = 100.0;
  }
  const HumanBaseline hb = human_baseline_mse({s});
  for (double v : hb.per_rater_mse) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(hb.average_mse == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("human baseline is invariant to pass order within a rater") {
  Rng rng(79);
  std::vector<DuplicatedSample> samples(8);
  for (auto& s : samples)
    for (int r = 0; r < 4; ++r)
      for (int p = 0; p < 2; ++p) s.scores[r][p] = 20.0 * rng.uniform_int(0, 5);
  std::vector<DuplicatedSample> swapped = samples;
  for (auto& s : swapped)
    for (int r = 0; r < 4; ++r) std::swap(s.scores[r][0], s.scores[r][1]);
  const HumanBaseline a = human_baseline_mse(samples);
  const HumanBaseline b = human_baseline_mse(swapped);
  for (int r = 0; r < 4; ++r)
    CHECK(a.per_rater_mse[static_cast<size_t>(r)] ==
          doctest::Approx(b.per_rater_mse[static_cast<size_t>(r)]).epsilon(1e-15));
}

TEST_CASE("histogram: exact predictions put all mass in bin zero") {
  const std::vector<double> preds{0.1, 0.5, 0.9};
  const ErrorHistogram h = error_histogram(preds, preds, 10);
  CHECK(h.counts[0] == 3);
  CHECK(h.total == 3);
}

TEST_CASE("histogram: 0.05 and 0.15 land in bins 0 and 1 of ten") {
  const ErrorHistogram h = error_histogram({0.05, 0.15}, {0.0, 0.0}, 10);
  CHECK(h.counts[0] == 1);
  CHECK(h.counts[1] == 1);
  CHECK(h.total == 2);
}

TEST_CASE("histogram: right-open bins except the last, counts sum to N") {
  Rng rng(80);
  std::vector<double> errs;
  for (int i = 0; i < 500; ++i) errs.push_back(rng.uniform());
  errs.push_back(1.0);  // exactly on the top edge, lands in the last bin
  const ErrorHistogram h = error_histogram(errs, 7);
  long sum = 0;
  for (long c : h.counts) sum += c;
  CHECK(sum == 501);
  CHECK(h.total == 501);
  CHECK(h.counts.back() >= 1);

  std::vector<double> shuffled = errs;
  rng.shuffle(shuffled);
  const ErrorHistogram h2 = error_histogram(shuffled, 7);
  CHECK(h.counts == h2.counts);
}

TEST_CASE("histogram csv layout") {
  const ErrorHistogram h = error_histogram({0.05}, 2);
  const std::string csv = h.to_csv();
  CHECK(csv.find("bin_low,bin_high,count") == 0);
  CHECK(csv.find("0,0.5,1") != std::string::npos);
}
