#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "readeval/classification.hpp"
#include "readeval/error.hpp"

using namespace readeval;

namespace {

Prompt make_prompt(std::initializer_list<const char*> words) {
  Prompt p;
  p.id = "p";
  p.task = TaskType::sentence;
  p.exercise = ExerciseKind::accuracy;
  for (const char* w : words) p.words.push_back(token(w));
  return p;
}

Recording make_recording(const Prompt& p, std::initializer_list<const char*> transcript) {
  Recording r;
  r.id = "r";
  r.prompt_id = p.id;
  r.status = RecordingStatus::ok;
  for (const char* w : transcript) r.transcript.push_back(token(w));
  return r;
}

}  // namespace

TEST_CASE("reference labels from the transcript") {
  const Prompt p = make_prompt({"de", "kat", "zit", "nu"});

  SUBCASE("perfect reading") {
    const Recording r = make_recording(p, {"de", "kat", "zit", "nu"});
    CHECK(reference_labels(r, p) == BinaryLabels{1, 1, 1, 1});
  }
  SUBCASE("empty reading") {
    const Recording r = make_recording(p, {});
    CHECK(reference_labels(r, p) == BinaryLabels{0, 0, 0, 0});
  }
  SUBCASE("one substituted word yields exactly one zero") {
    const Recording r = make_recording(p, {"de", "poes", "zit", "nu"});
    const BinaryLabels l = reference_labels(r, p);
    CHECK(std::count(l.begin(), l.end(), 0) == 1);
    CHECK(l[1] == 0);
  }
}

TEST_CASE("hypothesis labels use the named system output") {
  const Prompt p = make_prompt({"de", "kat", "zit"});
  Recording r = make_recording(p, {"de", "kat", "zit"});
  r.hypotheses["good"] = {token("de"), token("kat"), token("zit")};
  r.hypotheses["short"] = {token("de"), token("kat")};
  r.hypotheses["noisy"] = {token("de"), token("eh"), token("kat"), token("zit")};

  CHECK(hypothesis_labels(r, p, "good") == BinaryLabels{1, 1, 1});
  CHECK(hypothesis_labels(r, p, "short") == BinaryLabels{1, 1, 0});
  CHECK(hypothesis_labels(r, p, "noisy") == BinaryLabels{1, 1, 1});
  CHECK_THROWS_WITH_AS(hypothesis_labels(r, p, "nope"), doctest::Contains("nope"), DataError);
}

TEST_CASE("threshold labels compare scores with >=") {
  CHECK(threshold_labels({46, 45, 100}, 46) == BinaryLabels{1, 0, 1});
  CHECK(threshold_labels({46, 45, 100}, 0) == BinaryLabels{1, 1, 1});
  CHECK(threshold_labels({46, 45, 100}, 101) == BinaryLabels{0, 0, 0});
  CHECK_THROWS_AS(threshold_labels({50, 120}, 40), DataError);
  CHECK_THROWS_AS(threshold_labels({-3}, 40), DataError);
}

TEST_CASE("threshold labels are antitone in the threshold") {
  Rng rng(88);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<double> conf;
    const std::size_t n = 1 + rng.below(20);
    for (std::size_t i = 0; i < n; ++i) conf.push_back(static_cast<double>(rng.below(101)));
    const double t1 = static_cast<double>(rng.below(101));
    const double t2 = t1 + static_cast<double>(rng.below(static_cast<std::uint64_t>(101 - t1 + 1)));
    const BinaryLabels l1 = threshold_labels(conf, t1);
    const BinaryLabels l2 = threshold_labels(conf, t2);
    for (std::size_t i = 0; i < n; ++i)
      if (l2[i]) CHECK(l1[i]);
  }
}

TEST_CASE("confusion counts the four cells") {
  const ConfusionMatrix cm = confusion({1, 1, 0, 1}, {1, 0, 0, 1});
  CHECK(cm == ConfusionMatrix{2, 1, 0, 1});

  CHECK(confusion({1, 1, 1}, {1, 1, 1}) == ConfusionMatrix{3, 0, 0, 0});
  CHECK(confusion({0, 0}, {1, 1}) == ConfusionMatrix{0, 0, 2, 0});
  CHECK(confusion({1, 0}, {0, 1}).total() == 2);

  CHECK_THROWS_AS(confusion({}, {}), ComputeError);
  CHECK_THROWS_AS(confusion({1, 0}, {1}), ComputeError);
}

TEST_CASE("confusion is permutation-equivariant") {
  Rng rng(17);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng.below(30);
    BinaryLabels ref = oracles::random_labels(rng, n, 0.7);
    BinaryLabels pred = oracles::random_labels(rng, n, 0.6);
    const ConfusionMatrix before = confusion(ref, pred);
    // Fisher–Yates over the pairs.
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = rng.below(i);
      std::swap(ref[i - 1], ref[j]);
      std::swap(pred[i - 1], pred[j]);
    }
    CHECK(confusion(ref, pred) == before);
  }
}

TEST_CASE("merge is a commutative monoid and matches concatenation") {
  const ConfusionMatrix zero;
  const ConfusionMatrix x{3, 1, 2, 4};
  CHECK(merge(x, zero) == x);
  CHECK(merge(zero, x) == x);

  Rng rng(2024);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n1 = 1 + rng.below(15);
    const std::size_t n2 = 1 + rng.below(15);
    const BinaryLabels r1 = oracles::random_labels(rng, n1, 0.7);
    const BinaryLabels p1 = oracles::random_labels(rng, n1, 0.6);
    const BinaryLabels r2 = oracles::random_labels(rng, n2, 0.5);
    const BinaryLabels p2 = oracles::random_labels(rng, n2, 0.5);

    const ConfusionMatrix a = confusion(r1, p1);
    const ConfusionMatrix b = confusion(r2, p2);
    CHECK(merge(a, b) == merge(b, a));

    BinaryLabels rc = r1, pc = p1;
    rc.insert(rc.end(), r2.begin(), r2.end());
    pc.insert(pc.end(), p2.begin(), p2.end());
    CHECK(merge(a, b) == confusion(rc, pc));

    const ConfusionMatrix c{1, 2, 3, 4};
    CHECK(merge(merge(a, b), c) == merge(a, merge(b, c)));
  }
}
