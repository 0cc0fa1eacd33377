#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "readeval/alignment.hpp"

namespace readeval {

// Word-level agreement counts between the human reference judgment and a
// system judgment. Reference 1 = read correctly, system 1 = accepted.
//   ca: both 1      cr: both 0
//   fa: ref 0, sys 1 (miscue accepted)    fr: ref 1, sys 0 (correct word rejected)
struct ConfusionMatrix {
  std::uint64_t ca = 0;
  std::uint64_t cr = 0;
  std::uint64_t fa = 0;
  std::uint64_t fr = 0;

  std::uint64_t total() const { return ca + cr + fa + fr; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Human judgment per prompt word: align the transcript to the prompt.
BinaryLabels reference_labels(const Recording& rec, const Prompt& prompt);

// System judgment per prompt word: align the named hypothesis to the prompt.
BinaryLabels hypothesis_labels(const Recording& rec, const Prompt& prompt,
                               const std::string& system);

// System judgment from per-word confidence scores: accept iff score >= threshold.
// Scores must lie in [0, 100].
BinaryLabels threshold_labels(const std::vector<double>& confidences, double threshold);

// Tabulates equally long, non-empty label vectors into the four cells.
ConfusionMatrix confusion(const BinaryLabels& reference, const BinaryLabels& predicted);

// Cellwise sum; associative and commutative, zero matrix as identity.
ConfusionMatrix merge(const ConfusionMatrix& a, const ConfusionMatrix& b);

}  // namespace readeval
