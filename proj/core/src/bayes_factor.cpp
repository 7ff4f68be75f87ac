#include "anovabf/bayes_factor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "anovabf/errors.hpp"

namespace anovabf {
namespace {

// exp() clamped to the positive finite double range, so BF fields stay
// positive and finite even when the log value is extreme.
double saturated_exp(double x) {
  const double v = std::exp(x);
  if (v == 0.0) return std::numeric_limits<double>::min();
  if (std::isinf(v)) return std::numeric_limits<double>::max();
  return v;
}

}  // namespace

void AnovaSummary::validate() const {
  if (!std::isfinite(f_value) || f_value < 0.0) {
    throw std::invalid_argument("AnovaSummary: f_value must be finite and >= 0");
  }
  if (df1 < 1) throw std::invalid_argument("AnovaSummary: df1 must be >= 1");
  if (df2 < 1) throw std::invalid_argument("AnovaSummary: df2 must be >= 1");
  if (n && *n < 2) throw std::invalid_argument("AnovaSummary: n must be >= 2");
  if (reported_p && !(*reported_p > 0.0 && *reported_p < 1.0)) {
    throw std::invalid_argument("AnovaSummary: reported_p must lie in (0, 1)");
  }
}

void SumsOfSquares::validate() const {
  if (!std::isfinite(ss_effect) || ss_effect < 0.0) {
    throw std::invalid_argument("SumsOfSquares: ss_effect must be finite and >= 0");
  }
  if (!std::isfinite(ss_error) || ss_error <= 0.0) {
    throw std::invalid_argument("SumsOfSquares: ss_error must be finite and > 0");
  }
}

const char* to_string(EvidenceCategory category) {
  switch (category) {
    case EvidenceCategory::Equivocal: return "equivocal";
    case EvidenceCategory::WeakNull: return "weak evidence for the null";
    case EvidenceCategory::PositiveNull: return "positive evidence for the null";
    case EvidenceCategory::StrongNull: return "strong evidence for the null";
    case EvidenceCategory::VeryStrongNull: return "very strong evidence for the null";
    case EvidenceCategory::WeakAlternative: return "weak evidence for the alternative";
    case EvidenceCategory::PositiveAlternative: return "positive evidence for the alternative";
    case EvidenceCategory::StrongAlternative: return "strong evidence for the alternative";
    case EvidenceCategory::VeryStrongAlternative: return "very strong evidence for the alternative";
  }
  return "unknown";
}

double bic_from_loglik(double log_likelihood, int k, int n) {
  if (!std::isfinite(log_likelihood)) {
    throw std::invalid_argument("bic_from_loglik: log_likelihood must be finite");
  }
  if (k < 1) throw std::invalid_argument("bic_from_loglik: k must be >= 1");
  if (n < 1) throw std::invalid_argument("bic_from_loglik: n must be >= 1");
  return -2.0 * log_likelihood + static_cast<double>(k) * std::log(static_cast<double>(n));
}

double delta_bic_from_sse(double sse_h1, double sse_h0, int n, int k_diff) {
  if (!std::isfinite(sse_h1) || sse_h1 <= 0.0) {
    throw degenerate_data_error("delta_bic_from_sse: sse_h1 must be finite and > 0");
  }
  if (!std::isfinite(sse_h0) || sse_h0 < sse_h1) {
    throw std::invalid_argument(
        "delta_bic_from_sse: sse_h0 must be >= sse_h1 (the alternative cannot "
        "explain less than the null)");
  }
  if (n < 2) throw std::invalid_argument("delta_bic_from_sse: n must be >= 2");
  if (k_diff < 1) throw std::invalid_argument("delta_bic_from_sse: k_diff must be >= 1");

  const double nd = static_cast<double>(n);
  // Log difference, not log of the quotient: keeps accuracy when the two
  // SSE values are nearly equal.
  return nd * (std::log(sse_h1) - std::log(sse_h0)) +
         static_cast<double>(k_diff) * std::log(nd);
}

double delta_bic_from_f(const AnovaSummary& summary) {
  summary.validate();
  if (!summary.n) {
    throw std::invalid_argument(
        "delta_bic_from_f: summary has no n (N_MISSING); supply the number of "
        "independent observations explicitly");
  }
  const double nd = static_cast<double>(*summary.n);
  const double ratio = summary.f_value * static_cast<double>(summary.df1) /
                       static_cast<double>(summary.df2);
  return -nd * std::log1p(ratio) + static_cast<double>(summary.df1) * std::log(nd);
}

BayesFactorResult bf01_from_delta_bic(double delta_bic, Path path) {
  if (!std::isfinite(delta_bic)) {
    throw std::invalid_argument("bf01_from_delta_bic: delta_bic must be finite");
  }
  BayesFactorResult result;
  result.log_bf10 = -delta_bic / 2.0;
  result.bf01 = saturated_exp(delta_bic / 2.0);
  result.bf10 = saturated_exp(result.log_bf10);
  result.category = classify_evidence(result.log_bf10);
  result.path = path;
  return result;
}

BayesFactorResult bf01_from_summary(const AnovaSummary& summary) {
  return bf01_from_delta_bic(delta_bic_from_f(summary), Path::FromSummary);
}

BayesFactorResult bf10_from_bf01(const BayesFactorResult& result) {
  BayesFactorResult swapped;
  swapped.log_bf10 = -result.log_bf10;
  swapped.bf01 = result.bf10;
  swapped.bf10 = result.bf01;
  swapped.category = classify_evidence(swapped.log_bf10);
  swapped.path = result.path;
  return swapped;
}

EvidenceCategory classify_evidence(double log_bf10) {
  if (!std::isfinite(log_bf10)) {
    throw std::invalid_argument("classify_evidence: log_bf10 must be finite");
  }
  if (log_bf10 == 0.0) return EvidenceCategory::Equivocal;

  const double band = std::fabs(2.0 * log_bf10);
  const bool alt = log_bf10 > 0.0;
  if (band <= 2.0) {
    return alt ? EvidenceCategory::WeakAlternative : EvidenceCategory::WeakNull;
  }
  if (band <= 6.0) {
    return alt ? EvidenceCategory::PositiveAlternative : EvidenceCategory::PositiveNull;
  }
  if (band <= 10.0) {
    return alt ? EvidenceCategory::StrongAlternative : EvidenceCategory::StrongNull;
  }
  return alt ? EvidenceCategory::VeryStrongAlternative : EvidenceCategory::VeryStrongNull;
}

double critical_f(int n, int df1, int df2) {
  if (n < 2) throw std::invalid_argument("critical_f: n must be >= 2");
  if (df1 < 1) throw std::invalid_argument("critical_f: df1 must be >= 1");
  if (df2 < 1) throw std::invalid_argument("critical_f: df2 must be >= 1");

  const double nd = static_cast<double>(n);
  const double d1 = static_cast<double>(df1);
  const double d2 = static_cast<double>(df2);
  return d2 / d1 * std::expm1(d1 / nd * std::log(nd));
}

}  // namespace anovabf
