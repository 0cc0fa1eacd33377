#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "readeval/error.hpp"
#include "readeval/metrics.hpp"

using namespace readeval;

namespace {

std::vector<WordToken> toks(std::initializer_list<const char*> words) {
  std::vector<WordToken> out;
  for (const char* w : words) out.push_back(token(w));
  return out;
}

}  // namespace

TEST_CASE("kappa on published corpus-level counts") {
  // Percentage rows scaled to integer counts.
  const ConfusionMatrix asr1{724, 99, 76, 100};
  const ConfusionMatrix asr3{673, 153, 23, 151};
  CHECK(*cohens_kappa(asr1) == oracles::approx(0.422).margin(0.005));
  CHECK(*cohens_kappa(asr3) == oracles::approx(0.533).margin(0.005));
  CHECK(*mcc(asr1) == oracles::approx(0.423).margin(0.005));
  CHECK(*mcc(asr3) == oracles::approx(0.568).margin(0.005));
}

TEST_CASE("kappa boundary cases") {
  CHECK(*cohens_kappa(ConfusionMatrix{50, 50, 0, 0}) == oracles::approx(1.0).margin(1e-12));
  // independent marginals: po = pe = 0.5
  CHECK(*cohens_kappa(ConfusionMatrix{45, 5, 5, 45}) == oracles::approx(0.0).margin(1e-12));
  // all agreement in one class: pe = 1, undefined
  CHECK_FALSE(cohens_kappa(ConfusionMatrix{10, 0, 0, 0}).has_value());
  CHECK_THROWS_AS(cohens_kappa(ConfusionMatrix{}), ComputeError);
}

TEST_CASE("mcc boundary cases") {
  CHECK(*mcc(ConfusionMatrix{45, 5, 5, 45}) == oracles::approx(0.0).margin(1e-12));
  CHECK_FALSE(mcc(ConfusionMatrix{10, 0, 0, 0}).has_value());
  CHECK_FALSE(mcc(ConfusionMatrix{5, 0, 0, 5}).has_value());  // reference is constant
  CHECK_THROWS_AS(mcc(ConfusionMatrix{}), ComputeError);
}

TEST_CASE("precision/recall/F against the published table") {
  const ConfusionMatrix asr1{724, 99, 76, 100};
  const Prf ca1 = precision_recall_f(asr1, MetricClass::ca);
  const Prf cr1 = precision_recall_f(asr1, MetricClass::cr);
  CHECK(*ca1.precision == oracles::approx(0.905).margin(0.002));
  CHECK(*ca1.recall == oracles::approx(0.879).margin(0.002));
  CHECK(*ca1.f1 == oracles::approx(0.892).margin(0.002));
  CHECK(*cr1.precision == oracles::approx(0.497).margin(0.002));
  CHECK(*cr1.recall == oracles::approx(0.566).margin(0.002));
  CHECK(*cr1.f1 == oracles::approx(0.529).margin(0.002));

  const ConfusionMatrix asr3{673, 153, 23, 151};
  CHECK(*precision_recall_f(asr3, MetricClass::cr).recall == oracles::approx(0.871).margin(0.002));

  const Prf degenerate_ca = precision_recall_f(ConfusionMatrix{10, 0, 0, 0}, MetricClass::ca);
  CHECK(*degenerate_ca.precision == 1.0);
  CHECK(*degenerate_ca.recall == 1.0);
  CHECK(*degenerate_ca.f1 == 1.0);
  const Prf degenerate_cr = precision_recall_f(ConfusionMatrix{10, 0, 0, 0}, MetricClass::cr);
  CHECK_FALSE(degenerate_cr.precision.has_value());
  CHECK_FALSE(degenerate_cr.recall.has_value());
  CHECK_FALSE(degenerate_cr.f1.has_value());
}

TEST_CASE("kappa and mcc agree with their definitional oracles") {
  Rng rng(60622);
  int compared = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const std::size_t n = 1 + rng.below(50);
    const BinaryLabels a = oracles::random_labels(rng, n, 0.75);
    const BinaryLabels b = oracles::random_labels(rng, n, 0.65);
    const ConfusionMatrix cm = confusion(a, b);

    const auto k = cohens_kappa(cm);
    const auto ok = oracles::oracle_kappa(a, b);
    REQUIRE(k.has_value() == ok.has_value());
    if (k) {
      CHECK(*k == oracles::approx(*ok).margin(1e-9));
      ++compared;
    }

    const auto m = mcc(cm);
    const auto op = oracles::oracle_pearson(a, b);
    REQUIRE(m.has_value() == op.has_value());
    if (m) CHECK(*m == oracles::approx(*op).margin(1e-9));
  }
  CHECK(compared > 800);  // the generator rarely produces degenerate pairs
}

TEST_CASE("scale invariance") {
  const ConfusionMatrix base{31, 7, 5, 11};
  const auto k0 = *cohens_kappa(base);
  const auto m0 = *mcc(base);
  const auto ca0 = precision_recall_f(base, MetricClass::ca);
  const auto cr0 = precision_recall_f(base, MetricClass::cr);
  for (std::uint64_t k : {2ull, 10ull, 1000ull}) {
    const ConfusionMatrix scaled{base.ca * k, base.cr * k, base.fa * k, base.fr * k};
    CHECK(std::fabs(*cohens_kappa(scaled) - k0) <= 1e-12);
    CHECK(std::fabs(*mcc(scaled) - m0) <= 1e-12);
    const auto ca = precision_recall_f(scaled, MetricClass::ca);
    const auto cr = precision_recall_f(scaled, MetricClass::cr);
    CHECK(std::fabs(*ca.precision - *ca0.precision) <= 1e-12);
    CHECK(std::fabs(*ca.recall - *ca0.recall) <= 1e-12);
    CHECK(std::fabs(*ca.f1 - *ca0.f1) <= 1e-12);
    CHECK(std::fabs(*cr.precision - *cr0.precision) <= 1e-12);
    CHECK(std::fabs(*cr.recall - *cr0.recall) <= 1e-12);
    CHECK(std::fabs(*cr.f1 - *cr0.f1) <= 1e-12);
  }
}

TEST_CASE("class swap leaves agreement fixed and swaps the class triples") {
  Rng rng(4711);
  for (int iter = 0; iter < 200; ++iter) {
    const ConfusionMatrix cm{1 + rng.below(50), 1 + rng.below(50), rng.below(20),
                             rng.below(20)};
    const ConfusionMatrix swapped{cm.cr, cm.ca, cm.fr, cm.fa};
    CHECK(cohens_kappa(cm) == cohens_kappa(swapped));
    CHECK(mcc(cm) == mcc(swapped));
    const Prf ca = precision_recall_f(cm, MetricClass::ca);
    const Prf cr_sw = precision_recall_f(swapped, MetricClass::cr);
    CHECK(ca.precision == cr_sw.precision);
    CHECK(ca.recall == cr_sw.recall);
    CHECK(ca.f1 == cr_sw.f1);
  }
}

TEST_CASE("agreement is exactly 1 iff both error cells are empty and both classes occur") {
  Rng rng(1213);
  for (int iter = 0; iter < 300; ++iter) {
    const ConfusionMatrix cm{rng.below(8), rng.below(8), rng.below(3), rng.below(3)};
    if (cm.total() == 0) continue;
    const bool perfect = cm.fa == 0 && cm.fr == 0 && cm.ca > 0 && cm.cr > 0;
    const auto k = cohens_kappa(cm);
    const auto m = mcc(cm);
    if (perfect) {
      CHECK(*k == 1.0);
      CHECK(*m == 1.0);
    } else {
      if (k) CHECK(*k < 1.0);
      if (m) CHECK(*m < 1.0);
    }
    if (k) CHECK((*k >= -1.0 - 1e-12 && *k <= 1.0 + 1e-12));
    if (m) CHECK((*m >= -1.0 - 1e-12 && *m <= 1.0 + 1e-12));
  }
}

TEST_CASE("word error rate") {
  const auto ref10 =
      toks({"w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8", "w9", "w10"});

  SUBCASE("identical sequences") { CHECK(wer(ref10, ref10) == 0.0); }
  SUBCASE("two substitutions, one deletion, one insertion") {
    const auto hyp =
        toks({"w1", "x", "w3", "w4", "y", "w6", "w8", "w9", "z", "w10"});
    // sanity-check the construction against the enumeration oracle
    CHECK(oracles::oracle_edit_cost(hyp, ref10) == 4);
    CHECK(wer(ref10, hyp) == oracles::approx(0.4).margin(1e-12));
  }
  SUBCASE("empty hypothesis") { CHECK(wer(ref10, {}) == 1.0); }
  SUBCASE("k substitutions on n words is k/n") {
    Rng rng(5);
    for (int iter = 0; iter < 100; ++iter) {
      const std::size_t n = 1 + rng.below(12);
      const std::size_t k = rng.below(n + 1);
      std::vector<WordToken> ref, hyp;
      for (std::size_t i = 0; i < n; ++i) {
        ref.push_back(token("w" + std::to_string(i)));
        hyp.push_back(i < k ? token("sub" + std::to_string(i)) : ref.back());
      }
      CHECK(wer(ref, hyp) ==
            oracles::approx(static_cast<double>(k) / static_cast<double>(n)).margin(1e-12));
    }
  }
  SUBCASE("empty reference is rejected") { CHECK_THROWS_AS(wer({}, ref10), ComputeError); }
}

TEST_CASE("normal quantile hits the standard values") {
  CHECK(normal_quantile(0.975) == oracles::approx(1.959963985).margin(1e-8));
  CHECK(normal_quantile(0.5) == oracles::approx(0.0).margin(1e-12));
  CHECK(normal_quantile(0.025) == oracles::approx(-1.959963985).margin(1e-8));
  CHECK(normal_quantile(0.995) == oracles::approx(2.575829304).margin(1e-8));
  CHECK_THROWS_AS(normal_quantile(0.0), ComputeError);
  CHECK_THROWS_AS(normal_quantile(1.0), ComputeError);
}

TEST_CASE("error-rate confidence interval") {
  SUBCASE("zero rate collapses to a point") {
    const auto [lo, hi] = wer_interval(0.0, 500, 0.95);
    CHECK(lo == 0.0);
    CHECK(hi == 0.0);
  }
  SUBCASE("half rate on 100 words") {
    const auto [lo, hi] = wer_interval(0.5, 100, 0.95);
    CHECK(lo == oracles::approx(0.402).margin(0.001));
    CHECK(hi == oracles::approx(0.598).margin(0.001));
  }
  SUBCASE("width matches the analytic half-width") {
    const auto [lo, hi] = wer_interval(0.3878, 706, 0.95);
    CHECK((hi - lo) / 2.0 == oracles::approx(0.036).margin(0.001));
  }
  SUBCASE("lower bound clamps at zero") {
    const auto [lo, hi] = wer_interval(0.01, 20, 0.95);
    CHECK(lo == 0.0);
    CHECK(hi > 0.01);
  }
  SUBCASE("invalid level") {
    CHECK_THROWS_AS(wer_interval(0.5, 100, 0.0), ComputeError);
    CHECK_THROWS_AS(wer_interval(0.5, 100, 1.0), ComputeError);
    CHECK_THROWS_AS(wer_interval(0.5, 0, 0.95), ComputeError);
  }
}

TEST_CASE("the full report marks undefined cells and keeps rates summing to one") {
  const ConfusionMatrix cm{724, 99, 76, 100};
  const MetricsReport r = compute_metrics(cm);
  CHECK(r.total_words == 999);
  CHECK(*r.car + *r.crr + *r.far + *r.frr == oracles::approx(1.0).margin(1e-12));
  CHECK(r.kappa.has_value());

  const MetricsReport degenerate = compute_metrics(ConfusionMatrix{10, 0, 0, 0});
  CHECK_FALSE(degenerate.kappa.has_value());
  CHECK_FALSE(degenerate.mcc.has_value());
  CHECK(*degenerate.car == 1.0);

  const MetricsReport empty = compute_metrics(ConfusionMatrix{});
  CHECK(empty.total_words == 0);
  CHECK_FALSE(empty.kappa.has_value());
  CHECK_FALSE(empty.car.has_value());
}

TEST_CASE("rate-space kappa matches count-space kappa") {
  const ConfusionMatrix cm{70, 10, 8, 12};
  const ConfusionRates r{0.70, 0.10, 0.08, 0.12};
  CHECK(*cohens_kappa(cm) == oracles::approx(*cohens_kappa(r)).margin(1e-12));
  CHECK(*mcc(cm) == oracles::approx(*mcc(r)).margin(1e-12));
}
