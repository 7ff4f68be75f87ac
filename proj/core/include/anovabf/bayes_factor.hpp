#pragma once

#include <optional>
#include <string>

namespace anovabf {

/// How a reported p value relates to the printed number ("p = .20" vs
/// "p < .05"). Parsed from summary strings and carried along verbatim.
enum class PRelation { Equal, Less, Greater };

/// A reported ANOVA effect in its minimal published form: the F ratio, its
/// degrees of freedom, and the number of independent observations n that
/// enters the Bayes factor formula.
///
/// n is taken verbatim from the caller and never inferred from the dfs.
/// Which count plays the role of n (all observations, subjects, cell size)
/// depends on the design and is the caller's choice; see NConvention in
/// anova.hpp for the conventions this toolkit offers when raw data are
/// available.
struct AnovaSummary {
  double f_value = 0.0;  ///< F ratio, >= 0 and finite
  int df1 = 1;           ///< numerator (effect) degrees of freedom, >= 1
  int df2 = 1;           ///< denominator (error) degrees of freedom, >= 1
  std::optional<int> n;  ///< independent observations, >= 2 when present
  std::optional<std::string> label;
  std::optional<double> reported_p;  ///< in (0, 1) when present; never used in computation
  PRelation p_relation = PRelation::Equal;

  /// Throws std::invalid_argument on any violated field constraint.
  void validate() const;
};

/// The two residual sums of squares a model comparison needs. In a balanced
/// ANOVA the alternative leaves SS_error unexplained while the null also
/// leaves the effect SS unexplained, so sse_h1 = ss_error and
/// sse_h0 = ss_effect + ss_error.
struct SumsOfSquares {
  double ss_effect = 0.0;  ///< SS for the tested manipulation, >= 0
  double ss_error = 0.0;   ///< SS for the error term, > 0

  double sse_h1() const { return ss_error; }
  double sse_h0() const { return ss_effect + ss_error; }

  void validate() const;
};

/// Which algebraic route produced a BayesFactorResult: the summary-statistic
/// formula (F, dfs, n) or the sums-of-squares formula. Both are exact
/// rearrangements of the same BIC difference.
enum class Path { FromSummary, FromSSE };

/// Qualitative evidence grades on |delta BIC| bands 0-2 / 2-6 / 6-10 / >10,
/// signed toward the hypothesis the data favor.
enum class EvidenceCategory {
  Equivocal,
  WeakNull,
  PositiveNull,
  StrongNull,
  VeryStrongNull,
  WeakAlternative,
  PositiveAlternative,
  StrongAlternative,
  VeryStrongAlternative,
};

/// Human-readable phrase, e.g. "weak evidence for the null". Stable.
const char* to_string(EvidenceCategory category);

/// A computed Bayes factor. All arithmetic happens in natural-log space;
/// log_bf10 is the authoritative field. bf01 and bf10 are convenience
/// exponentiations and saturate to the finite double range when the log
/// value is too extreme to represent, while log_bf10 stays exact.
struct BayesFactorResult {
  double log_bf10 = 0.0;  ///< natural log of BF10 = -deltaBIC10 / 2
  double bf01 = 1.0;      ///< evidence for the null over the alternative
  double bf10 = 1.0;      ///< evidence for the alternative over the null
  EvidenceCategory category = EvidenceCategory::Equivocal;
  Path path = Path::FromSSE;
};

/// BIC = -2 log L + k log n. Exists as a formula-level operation; the Bayes
/// factor routines below reach BIC differences without ever evaluating a
/// likelihood.
///
/// Throws std::invalid_argument when log_likelihood is not finite or
/// k < 1 or n < 1.
double bic_from_loglik(double log_likelihood, int k, int n);

/// deltaBIC10 = n log(sse_h1 / sse_h0) + k_diff log n, computed as a
/// difference of logs so that sse_h1 close to sse_h0 loses no accuracy.
/// k_diff is the parameter-count difference between the models; for an
/// ANOVA effect it equals the effect's df1.
///
/// Throws std::invalid_argument when sse_h0 < sse_h1 (the alternative
/// cannot explain less than the null) and degenerate_data_error when
/// sse_h1 <= 0.
double delta_bic_from_sse(double sse_h1, double sse_h0, int n, int k_diff);

/// deltaBIC10 = n log(df2 / (F df1 + df2)) + df1 log n, evaluated as
/// -n log1p(F df1 / df2) + df1 log n. Requires summary.n.
double delta_bic_from_f(const AnovaSummary& summary);

/// BF01 = exp(deltaBIC10 / 2). `path` records which formula produced the
/// BIC difference.
BayesFactorResult bf01_from_delta_bic(double delta_bic, Path path = Path::FromSSE);

/// The summary-statistic form: BF01 = sqrt(n^df1 (1 + F df1/df2)^-n),
/// evaluated in log space throughout (the raw expression overflows for n in
/// the hundreds).
BayesFactorResult bf01_from_summary(const AnovaSummary& summary);

/// Re-orients a result for the opposite hypothesis labelling: log_bf10 is
/// negated, bf01 and bf10 trade places, and the category flips direction.
/// Applying it twice restores the original log_bf10 bit for bit.
BayesFactorResult bf10_from_bf01(const BayesFactorResult& result);

/// Maps |2 log_bf10| (= |delta BIC|) to an evidence grade: weak up to 2,
/// positive up to 6, strong up to 10, very strong beyond; equivocal at
/// exactly zero. The sign of log_bf10 picks the favored hypothesis.
EvidenceCategory classify_evidence(double log_bf10);

/// The F value at which BF01 = 1 for the given n and dfs:
/// F* = (df2 / df1) (n^(df1/n) - 1), computed via expm1((df1/n) log n).
/// Below F* the data favor the null, above it the alternative.
double critical_f(int n, int df1, int df2);

}  // namespace anovabf
