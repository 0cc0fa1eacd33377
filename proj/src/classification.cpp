#include "readeval/classification.hpp"

#include "readeval/error.hpp"

namespace readeval {

BinaryLabels reference_labels(const Recording& rec, const Prompt& prompt) {
  return labels_from_alignment(align(rec.transcript, prompt), prompt);
}

BinaryLabels hypothesis_labels(const Recording& rec, const Prompt& prompt,
                               const std::string& system) {
  auto it = rec.hypotheses.find(system);
  if (it == rec.hypotheses.end())
    throw DataError("recording '" + rec.id + "' has no hypothesis for system '" + system + "'");
  return labels_from_alignment(align(it->second, prompt), prompt);
}

BinaryLabels threshold_labels(const std::vector<double>& confidences, double threshold) {
  BinaryLabels labels(confidences.size(), 0);
  for (std::size_t i = 0; i < confidences.size(); ++i) {
    const double c = confidences[i];
    if (!(c >= 0.0 && c <= 100.0))
      throw DataError("confidence score " + std::to_string(c) + " outside [0,100]");
    labels[i] = c >= threshold ? 1 : 0;
  }
  return labels;
}

ConfusionMatrix confusion(const BinaryLabels& reference, const BinaryLabels& predicted) {
  if (reference.empty()) throw ComputeError("cannot tabulate empty label vectors");
  if (reference.size() != predicted.size())
    throw ComputeError("label vectors differ in length: " + std::to_string(reference.size()) +
                       " vs " + std::to_string(predicted.size()));
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (reference[i]) {
      predicted[i] ? ++cm.ca : ++cm.fr;
    } else {
      predicted[i] ? ++cm.fa : ++cm.cr;
    }
  }
  return cm;
}

ConfusionMatrix merge(const ConfusionMatrix& a, const ConfusionMatrix& b) {
  return {a.ca + b.ca, a.cr + b.cr, a.fa + b.fa, a.fr + b.fr};
}

}  // namespace readeval
