#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "readeval/classification.hpp"

namespace readeval {

struct Prf {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

enum class MetricClass { ca, cr };

// Row shape of a corpus-level result table: agreement scores, per-class
// precision/recall/F, rates, and the underlying counts. Cells with an
// empty denominator stay nullopt — never a silent zero.
struct MetricsReport {
  std::optional<double> kappa;
  std::optional<double> mcc;
  Prf ca_class;
  Prf cr_class;
  std::optional<double> car, crr, far, frr;
  std::uint64_t total_words = 0;
  ConfusionMatrix matrix;
};

// Expected cell fractions of a confusion matrix; same cell order as the
// counts. Useful for analytic results on generator configurations.
struct ConfusionRates {
  double car = 0;
  double crr = 0;
  double far = 0;
  double frr = 0;
};

// Cohen's kappa: (po - pe) / (1 - pe) with
//   po = (ca + cr) / N
//   pe = ((ca+fa)(ca+fr) + (cr+fr)(cr+fa)) / N^2.
// nullopt when pe = 1; throws on an empty matrix.
std::optional<double> cohens_kappa(const ConfusionMatrix& cm);
std::optional<double> cohens_kappa(const ConfusionRates& rates);

// Matthews correlation coefficient:
//   (ca*cr - fa*fr) / sqrt((ca+fa)(ca+fr)(cr+fa)(cr+fr)).
// nullopt when any denominator factor is zero; throws on an empty matrix.
std::optional<double> mcc(const ConfusionMatrix& cm);
std::optional<double> mcc(const ConfusionRates& rates);

// For CA: P = ca/(ca+fa), R = ca/(ca+fr). For CR: P = cr/(cr+fr),
// R = cr/(cr+fa). F = 2PR/(P+R). Zero denominators leave the cell nullopt.
Prf precision_recall_f(const ConfusionMatrix& cm, MetricClass cls);

// Builds the full report. An all-zero matrix yields a null-marked report
// with total 0 (used for empty strata) rather than throwing.
MetricsReport compute_metrics(const ConfusionMatrix& cm);

// Word error rate: minimal (sub + del + ins) / reference length. May
// exceed 1. Throws on an empty reference.
double wer(std::span<const WordToken> reference, std::span<const WordToken> hypothesis);

// Normal-approximation confidence interval for an error rate over
// n_words decisions: rate +- z * sqrt(rate(1-rate)/n), lower bound
// clamped at 0. For rates above 1 the variance term is clamped to the
// [0,1] proportion range, giving a zero-width interval.
std::pair<double, double> wer_interval(double rate, std::uint64_t n_words, double level);

// Inverse standard normal CDF, accurate to machine precision.
double normal_quantile(double p);

}  // namespace readeval
