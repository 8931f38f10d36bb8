#ifndef JACOBI_DIAGNOSTICS_HPP
#define JACOBI_DIAGNOSTICS_HPP

// The commutator sequence along a generalized eigenvector u at lambda,
//
//   S_n = a_{n-1} alpha_{n-1} u_{n-1}^2 + a_n alpha_n u_n^2
//         - (lambda - b_n) alpha_{n-1} u_{n-1} u_n                     (form 1)
//       = (alpha_{n-1}/a_{n-1}) a_n^2 u_{n+1}^2 + a_n alpha_n u_n^2
//         - (alpha_{n-1}/a_{n-1}) a_n (lambda - b_n) u_{n+1} u_n         (form 2)
//
// for n >= 1, its scale Shat_n = u_n^2 + u_{n+1}^2, the relative increments
// F_n = (S_{n+1} - S_n) / S_n, and the extremal values w_min(n), w_max(n) of
// form 2 on the unit circle Shat_n = 1. Everything is computed from the
// normalized propagation pair, so S_n / Shat_n never overflows.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jacobi/recurrence.hpp"
#include "jacobi/sequences.hpp"
#include "jacobi/series.hpp"

namespace jacobi {

/// S_n = uu u_n^2 + vv u_{n+1}^2 + uv u_n u_{n+1}  (form 2 coefficients).
struct QuadraticForm {
  double uu;
  double vv;
  double uv;
};

QuadraticForm s_quadratic_form(const SequencePair& seq, const WeightSequence& alpha, double lambda, std::size_t n);

struct WBounds {
  double w_min;
  double w_max;
};

/// Closed-form extremal values of S_n on Shat_n = 1, n >= 1.
WBounds w_bounds(const SequencePair& seq, const WeightSequence& alpha, double lambda, std::size_t n);

struct DiagnosticsRow {
  std::size_t n = 0;
  double a_alpha = 0.0;        // a_n alpha_n
  double s_over_shat = 0.0;    // form 2
  double s_over_shat_alt = 0.0;  // form 1
  double log_shat = 0.0;       // log(u_n^2 + u_{n+1}^2)
  LogValue s;                  // S_n itself
  std::optional<double> f;     // F_n; empty when S_n is too close to zero
  double sum_f_minus = 0.0;    // sum_{k <= n} F_k^-
  double sum_inv_a_alpha = 0.0;  // sum_{k=0..n} 1 / (a_k alpha_k)
  double w_min = 0.0;
  double w_max = 0.0;

  /// S_n / (a_n alpha_n Shat_n).
  double normalized() const { return s_over_shat / a_alpha; }
};

struct DiagnosticsTrace {
  double lambda = 0.0;
  std::vector<DiagnosticsRow> rows;  // n = 1..N
  std::size_t excluded_f = 0;        // F_n left undefined by the near-zero guard

  const DiagnosticsRow& at(std::size_t n) const;
  std::size_t last() const { return rows.empty() ? 0 : rows.back().n; }
};

/// Normalized S below this fraction of a_n alpha_n leaves F_n undefined.
inline constexpr double kNearZeroS = 1e-12;

DiagnosticsTrace s_sequence(const SequencePair& seq, const WeightSequence& alpha, double lambda,
                            EigvecInit init, std::size_t N);

struct LiminfEstimate {
  std::size_t lo = 0;
  std::size_t hi = 0;
  double min_normalized = 0.0;  // min of S_n / (a_n alpha_n Shat_n)
  LogValue min_s;               // min of S_n itself
  double sum_f_minus = 0.0;     // sum of F_n^- over the window
  std::size_t excluded = 0;
};

/// Window [lo, hi] of n values, inclusive; throws PreconditionError if empty
/// or outside the trace.
LiminfEstimate liminf_estimate(const DiagnosticsTrace& trace, std::size_t lo, std::size_t hi);

struct CheckReport {
  std::string theorem;
  std::vector<ConditionVerdict> conditions;
  std::vector<std::string> notes;

  Verdict overall() const { return jacobi::overall(conditions); }
  const ConditionVerdict* find(std::string_view id) const { return find_condition(conditions, id); }
};

/// Conditions (a)-(g) with weight alpha, ids "ThmA.a" .. "ThmA.g".
CheckReport check_theorem_A(const SequencePair& seq, const WeightSequence& alpha, std::size_t N,
                            const Thresholds& th = {});

/// Conditions (a)-(e), evaluated as Theorem A with alpha = a; ids "CorB.a" .. "CorB.e".
CheckReport check_corollary_B(const SequencePair& seq, std::size_t N, const Thresholds& th = {});

struct CorollaryCReport {
  CheckReport report;
  std::optional<double> m_estimate;      // tail mean of a_{n-1} - b_n + a_n
  double m_dispersion = 0.0;             // tail max - min
  std::vector<std::optional<double>> ratio;  // a_n^2 / (b_n b_{n+1}), n = 0..N; empty where b_n b_{n+1} <= 0
  std::optional<double> ratio_tail;      // last defined ratio
  std::size_t ratio_undefined = 0;
};

/// Conditions (a)-(d), ids "CorC.a" .. "CorC.d".
CorollaryCReport check_corollary_C(const SequencePair& seq, std::size_t N, const Thresholds& th = {});

/// Conditions (a), (b), bounded variation of {a_{n-1}/a_n}, {1/a_n}, {b_n/a_n}
/// as "Thm42.c1" .. "Thm42.c3", and (d) with limsup.
CheckReport check_theorem_42(const SequencePair& seq, std::size_t N, const Thresholds& th = {});

/// Conditions (a)-(d) with the iterated-log envelope of order K.
CheckReport check_theorem_43(const SequencePair& seq, int K, std::size_t N, const Thresholds& th = {});

/// The excess of a_n / a_{n-1} outside [1, 1 + 1/n + sum_j 1/(n g_j(n))],
/// zero below the iterlog cutoff. Index n = 0..N.
std::vector<double> theorem_43_excess(const SequencePair& seq, int K, std::size_t N);

}  // namespace jacobi

#endif
