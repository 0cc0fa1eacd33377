#include "readeval/metrics.hpp"

#include <cmath>

#include "readeval/error.hpp"

namespace readeval {

namespace {

// Shared arithmetic over double-valued cells so the same formulas serve
// integer counts and analytic rate matrices.

std::optional<double> kappa_cells(double ca, double cr, double fa, double fr) {
  const double n = ca + cr + fa + fr;
  const double po = (ca + cr) / n;
  const double pe = ((ca + fa) * (ca + fr) + (cr + fr) * (cr + fa)) / (n * n);
  if (pe >= 1.0) return std::nullopt;
  return (po - pe) / (1.0 - pe);
}

std::optional<double> mcc_cells(double ca, double cr, double fa, double fr) {
  const double d1 = ca + fa;
  const double d2 = ca + fr;
  const double d3 = cr + fa;
  const double d4 = cr + fr;
  if (d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0) return std::nullopt;
  // Pairing the factors keeps perfect matrices at exactly 1: sqrt(d*d)
  // is exact for exactly representable products.
  return (ca * cr - fa * fr) / (std::sqrt(d1 * d2) * std::sqrt(d3 * d4));
}

void require_counts(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw ComputeError("metric requested on an empty confusion matrix");
}

std::optional<double> ratio(double num, double den) {
  if (den == 0) return std::nullopt;
  return num / den;
}

Prf prf_cells(double tp, double fp, double fn) {
  Prf out;
  out.precision = ratio(tp, tp + fp);
  out.recall = ratio(tp, tp + fn);
  if (out.precision && out.recall && (*out.precision + *out.recall) > 0)
    out.f1 = 2.0 * *out.precision * *out.recall / (*out.precision + *out.recall);
  return out;
}

}  // namespace

std::optional<double> cohens_kappa(const ConfusionMatrix& cm) {
  require_counts(cm);
  return kappa_cells(static_cast<double>(cm.ca), static_cast<double>(cm.cr),
                     static_cast<double>(cm.fa), static_cast<double>(cm.fr));
}

std::optional<double> cohens_kappa(const ConfusionRates& r) {
  if (r.car + r.crr + r.far + r.frr <= 0) throw ComputeError("kappa of all-zero rates");
  return kappa_cells(r.car, r.crr, r.far, r.frr);
}

std::optional<double> mcc(const ConfusionMatrix& cm) {
  require_counts(cm);
  return mcc_cells(static_cast<double>(cm.ca), static_cast<double>(cm.cr),
                   static_cast<double>(cm.fa), static_cast<double>(cm.fr));
}

std::optional<double> mcc(const ConfusionRates& r) {
  if (r.car + r.crr + r.far + r.frr <= 0) throw ComputeError("mcc of all-zero rates");
  return mcc_cells(r.car, r.crr, r.far, r.frr);
}

Prf precision_recall_f(const ConfusionMatrix& cm, MetricClass cls) {
  require_counts(cm);
  const double ca = static_cast<double>(cm.ca);
  const double cr = static_cast<double>(cm.cr);
  const double fa = static_cast<double>(cm.fa);
  const double fr = static_cast<double>(cm.fr);
  // For the CA class the false positives are FAs and the misses are FRs;
  // for the CR class the roles swap.
  return cls == MetricClass::ca ? prf_cells(ca, fa, fr) : prf_cells(cr, fr, fa);
}

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
  MetricsReport report;
  report.matrix = cm;
  report.total_words = cm.total();
  if (report.total_words == 0) return report;  // null-marked, zero count

  const double n = static_cast<double>(report.total_words);
  report.kappa = cohens_kappa(cm);
  report.mcc = mcc(cm);
  report.ca_class = precision_recall_f(cm, MetricClass::ca);
  report.cr_class = precision_recall_f(cm, MetricClass::cr);
  report.car = static_cast<double>(cm.ca) / n;
  report.crr = static_cast<double>(cm.cr) / n;
  report.far = static_cast<double>(cm.fa) / n;
  report.frr = static_cast<double>(cm.fr) / n;
  return report;
}

double wer(std::span<const WordToken> reference, std::span<const WordToken> hypothesis) {
  if (reference.empty()) throw ComputeError("WER requires a non-empty reference");
  const AlignmentResult a = align_tokens(hypothesis, reference);
  return static_cast<double>(a.cost) / static_cast<double>(reference.size());
}

std::pair<double, double> wer_interval(double rate, std::uint64_t n_words, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw ComputeError("confidence level must lie strictly between 0 and 1");
  if (n_words == 0) throw ComputeError("confidence interval requires n_words > 0");
  if (rate < 0.0) throw ComputeError("error rate cannot be negative");

  const double z = normal_quantile((1.0 + level) / 2.0);
  const double p = std::min(rate, 1.0);
  const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n_words));
  return {std::max(0.0, rate - half), rate + half};
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ComputeError("normal quantile requires p strictly inside (0,1)");

  // Acklam's rational approximation, then one Halley refinement against
  // the exact CDF (via erfc) to reach machine precision.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

}  // namespace readeval
