#ifndef JACOBI_SERIES_HPP
#define JACOBI_SERIES_HPP

// Finite-N evidence grading for asymptotic conditions (summability, limits,
// growth). A finite computation cannot prove any of these; each rule below
// grades evidence as pass / fail / inconclusive with fixed thresholds.
//
// Series sum t_n, t_n >= 0, known for n = 0..N:
//   low window  [N/4, N/2),  high window [N/2, N]
//   slope       least-squares fit of log t_n against log n over the positive
//               terms with n in [N/4, N]
//   summable    low/high >= summable_window_ratio and slope <= summable_slope
//               (or the whole [N/4, N] tail is exactly zero)
//   divergent   high >= low and slope >= divergent_slope
//
// Sequence x_n, n = 0..N, tail = [3N/4, N]:
//   tends to infinity  pass: min(tail) >= growth_factor * max over [0, N/16]
//                      fail: max(tail) <= max over [0, N/16]
//   limit equals c     pass: max |x - c| over tail < limit_tolerance
//                      fail: oscillation(tail) >= limit_tolerance or min |x - c| >= limit_tolerance
//   limit exists       pass: oscillation(tail) < limit_tolerance
//   limsup below c     pass: max(tail) < c - limsup_margin,  fail: max(tail) >= c
//   bounded            pass: max|x| over [N/2, N] <= growth_factor * max|x| over [0, N/2] (+ tiny)
//                      fail: max|x| over [N/2, N] >= 2 max|x| over [0, N/2] and > 0

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jacobi {

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);

/// Conjunction: fail dominates, then inconclusive.
Verdict combine(Verdict x, Verdict y);

struct Thresholds {
  double summable_window_ratio = 1.25;
  double summable_slope = -1.1;
  double divergent_slope = -1.0;
  double limit_tolerance = 1e-3;
  double limsup_margin = 1e-3;
  double growth_factor = 1.1;
};

struct Checkpoint {
  std::size_t n;
  double value;
};

struct WindowValue {
  std::string label;
  std::size_t lo;
  std::size_t hi;
  double value;
};

struct Evidence {
  std::vector<Checkpoint> checkpoints;
  std::vector<std::pair<std::string, double>> slopes;
  std::vector<WindowValue> windows;
  std::vector<std::string> notes;
};

struct ConditionVerdict {
  std::string condition;    // e.g. "ThmA.b"
  std::string description;
  Verdict verdict = Verdict::inconclusive;
  Evidence evidence;
};

enum class SeriesClass { summable, divergent, inconclusive };

struct SeriesAssessment {
  SeriesClass cls = SeriesClass::inconclusive;
  double low_window_sum = 0.0;
  double high_window_sum = 0.0;
  std::optional<double> slope;
  Evidence evidence;
};

/// terms[n] = t_n for n = 0..N (entries below the first meaningful index are 0).
SeriesAssessment assess_series(std::span<const double> terms, const Thresholds& th = {});

/// Pass when the series is assessed summable.
ConditionVerdict require_summable(std::string id, std::string description, std::span<const double> terms,
                                  const Thresholds& th = {});
/// Pass when the series is assessed divergent.
ConditionVerdict require_divergent(std::string id, std::string description, std::span<const double> terms,
                                   const Thresholds& th = {});

ConditionVerdict require_tends_to_infinity(std::string id, std::string description,
                                           std::span<const double> values, const Thresholds& th = {});
ConditionVerdict require_limit(std::string id, std::string description, std::span<const double> values,
                               double target, const Thresholds& th = {});
/// Also reports the tail mean as the estimated limit.
ConditionVerdict require_limit_exists(std::string id, std::string description,
                                      std::span<const double> values, const Thresholds& th = {});
ConditionVerdict require_limsup_below(std::string id, std::string description,
                                      std::span<const double> values, double bound, const Thresholds& th = {});
ConditionVerdict require_bounded(std::string id, std::string description, std::span<const double> values,
                                 const Thresholds& th = {});

/// Overall verdict of a list of conditions.
Verdict overall(const std::vector<ConditionVerdict>& conditions);

/// First condition with the given id, or nullptr.
const ConditionVerdict* find_condition(const std::vector<ConditionVerdict>& conditions, std::string_view id);

}  // namespace jacobi

#endif
