#include "jacobi/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jacobi/errors.hpp"
#include "jacobi/io.hpp"

namespace jacobi {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict combine(Verdict x, Verdict y) {
  if (x == Verdict::fail || y == Verdict::fail) return Verdict::fail;
  if (x == Verdict::inconclusive || y == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

Verdict overall(const std::vector<ConditionVerdict>& conditions) {
  Verdict v = Verdict::pass;
  for (const auto& c : conditions) v = combine(v, c.verdict);
  return v;
}

const ConditionVerdict* find_condition(const std::vector<ConditionVerdict>& conditions, std::string_view id) {
  for (const auto& c : conditions)
    if (c.condition == id) return &c;
  return nullptr;
}

namespace {

void require_length(std::span<const double> xs) {
  if (xs.size() < 9) throw PreconditionError("evidence grading needs at least 9 values");
}

std::vector<Checkpoint> partial_sum_checkpoints(std::span<const double> t) {
  std::size_t N = t.size() - 1;
  std::vector<std::size_t> marks{N / 8, N / 4, N / 2, N};
  std::vector<Checkpoint> out;
  double acc = 0.0;
  std::size_t next = 0;
  for (std::size_t n = 0; n <= N && next < marks.size(); ++n) {
    acc += t[n];
    while (next < marks.size() && marks[next] == n) {
      if (out.empty() || out.back().n != n) out.push_back({n, acc});
      ++next;
    }
  }
  return out;
}

std::optional<double> loglog_slope(std::span<const double> t, std::size_t lo, std::size_t hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t n = std::max<std::size_t>(lo, 1); n <= hi; ++n) {
    if (!(t[n] > 0.0)) continue;
    double x = std::log(static_cast<double>(n));
    double y = std::log(t[n]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::nullopt;
  double c = static_cast<double>(count);
  double den = sxx - sx * sx / c;
  if (!(den > 0.0)) return std::nullopt;
  return (sxy - sx * sy / c) / den;
}

struct TailStats {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  std::size_t count = 0;
};

TailStats stats(std::span<const double> xs, std::size_t lo, std::size_t hi) {
  TailStats s;
  for (std::size_t n = lo; n <= hi && n < xs.size(); ++n) {
    if (std::isnan(xs[n])) continue;
    s.min = std::min(s.min, xs[n]);
    s.max = std::max(s.max, xs[n]);
    s.sum += xs[n];
    ++s.count;
  }
  return s;
}

std::vector<Checkpoint> value_checkpoints(std::span<const double> xs) {
  std::size_t N = xs.size() - 1;
  std::vector<Checkpoint> out;
  for (std::size_t n : {N / 4, N / 2, N - N / 4, N})
    if (out.empty() || out.back().n != n) out.push_back({n, xs[n]});
  return out;
}

ConditionVerdict make(std::string id, std::string description) {
  ConditionVerdict c;
  c.condition = std::move(id);
  c.description = std::move(description);
  return c;
}

}  // namespace

SeriesAssessment assess_series(std::span<const double> t, const Thresholds& th) {
  require_length(t);
  std::size_t N = t.size() - 1;
  std::size_t q = N / 4;
  std::size_t h = N / 2;
  SeriesAssessment out;
  for (std::size_t n = q; n < h; ++n) out.low_window_sum += t[n];
  for (std::size_t n = h; n <= N; ++n) out.high_window_sum += t[n];
  out.slope = loglog_slope(t, q, N);

  out.evidence.checkpoints = partial_sum_checkpoints(t);
  out.evidence.windows.push_back({"sum", q, h - 1, out.low_window_sum});
  out.evidence.windows.push_back({"sum", h, N, out.high_window_sum});
  if (out.slope) out.evidence.slopes.emplace_back("loglog", *out.slope);

  double low = out.low_window_sum;
  double high = out.high_window_sum;
  if (low == 0.0 && high == 0.0) {
    out.cls = SeriesClass::summable;
    out.evidence.notes.push_back("terms vanish identically on the tail");
    return out;
  }
  if (high == 0.0) {
    out.cls = SeriesClass::summable;
    out.evidence.notes.push_back("terms vanish on the high window");
    return out;
  }
  double ratio = low / high;
  out.evidence.slopes.emplace_back("window_ratio", ratio);
  if (!out.slope) {
    out.evidence.notes.push_back("fewer than two positive tail terms; no slope fit");
    return out;
  }
  if (ratio >= th.summable_window_ratio && *out.slope <= th.summable_slope)
    out.cls = SeriesClass::summable;
  else if (high >= low && *out.slope >= th.divergent_slope)
    out.cls = SeriesClass::divergent;
  return out;
}

ConditionVerdict require_summable(std::string id, std::string description, std::span<const double> terms,
                                  const Thresholds& th) {
  auto c = make(std::move(id), std::move(description));
  auto s = assess_series(terms, th);
  c.evidence = std::move(s.evidence);
  c.verdict = s.cls == SeriesClass::summable   ? Verdict::pass
              : s.cls == SeriesClass::divergent ? Verdict::fail
                                                : Verdict::inconclusive;
  return c;
}

ConditionVerdict require_divergent(std::string id, std::string description, std::span<const double> terms,
                                   const Thresholds& th) {
  auto c = make(std::move(id), std::move(description));
  auto s = assess_series(terms, th);
  c.evidence = std::move(s.evidence);
  c.verdict = s.cls == SeriesClass::divergent  ? Verdict::pass
              : s.cls == SeriesClass::summable ? Verdict::fail
                                               : Verdict::inconclusive;
  return c;
}

ConditionVerdict require_tends_to_infinity(std::string id, std::string description,
                                           std::span<const double> values, const Thresholds& th) {
  require_length(values);
  auto c = make(std::move(id), std::move(description));
  std::size_t N = values.size() - 1;
  auto head = stats(values, 0, N / 16);
  auto tail = stats(values, N - N / 4, N);
  c.evidence.checkpoints = value_checkpoints(values);
  c.evidence.windows.push_back({"max", 0, N / 16, head.max});
  c.evidence.windows.push_back({"min", N - N / 4, N, tail.min});
  c.evidence.windows.push_back({"max", N - N / 4, N, tail.max});
  if (tail.min >= th.growth_factor * head.max)
    c.verdict = Verdict::pass;
  else if (tail.max <= head.max)
    c.verdict = Verdict::fail;
  return c;
}

ConditionVerdict require_limit(std::string id, std::string description, std::span<const double> values,
                               double target, const Thresholds& th) {
  require_length(values);
  auto c = make(std::move(id), std::move(description));
  std::size_t N = values.size() - 1;
  auto tail = stats(values, N - N / 4, N);
  c.evidence.checkpoints = value_checkpoints(values);
  c.evidence.windows.push_back({"min", N - N / 4, N, tail.min});
  c.evidence.windows.push_back({"max", N - N / 4, N, tail.max});
  if (tail.count == 0) {
    c.evidence.notes.push_back("no defined values on the tail");
    return c;
  }
  double max_dev = std::max(std::fabs(tail.max - target), std::fabs(tail.min - target));
  double min_dev = (tail.min <= target && target <= tail.max)
                       ? 0.0
                       : std::min(std::fabs(tail.max - target), std::fabs(tail.min - target));
  c.evidence.slopes.emplace_back("max_deviation", max_dev);
  if (max_dev < th.limit_tolerance)
    c.verdict = Verdict::pass;
  else if (tail.max - tail.min >= th.limit_tolerance || min_dev >= th.limit_tolerance)
    c.verdict = Verdict::fail;
  return c;
}

ConditionVerdict require_limit_exists(std::string id, std::string description,
                                      std::span<const double> values, const Thresholds& th) {
  require_length(values);
  auto c = make(std::move(id), std::move(description));
  std::size_t N = values.size() - 1;
  auto tail = stats(values, N - N / 4, N);
  c.evidence.checkpoints = value_checkpoints(values);
  c.evidence.windows.push_back({"min", N - N / 4, N, tail.min});
  c.evidence.windows.push_back({"max", N - N / 4, N, tail.max});
  if (tail.count == 0) {
    c.evidence.notes.push_back("no defined values on the tail");
    return c;
  }
  double oscillation = tail.max - tail.min;
  c.evidence.windows.push_back({"mean", N - N / 4, N, tail.sum / static_cast<double>(tail.count)});
  c.evidence.slopes.emplace_back("oscillation", oscillation);
  c.verdict = std::isfinite(oscillation) && oscillation < th.limit_tolerance ? Verdict::pass : Verdict::fail;
  return c;
}

ConditionVerdict require_limsup_below(std::string id, std::string description,
                                      std::span<const double> values, double bound, const Thresholds& th) {
  require_length(values);
  auto c = make(std::move(id), std::move(description));
  std::size_t N = values.size() - 1;
  auto tail = stats(values, N - N / 4, N);
  c.evidence.checkpoints = value_checkpoints(values);
  c.evidence.windows.push_back({"max", N - N / 4, N, tail.max});
  if (tail.max < bound - th.limsup_margin)
    c.verdict = Verdict::pass;
  else if (tail.max >= bound)
    c.verdict = Verdict::fail;
  return c;
}

ConditionVerdict require_bounded(std::string id, std::string description, std::span<const double> values,
                                 const Thresholds& th) {
  require_length(values);
  auto c = make(std::move(id), std::move(description));
  std::size_t N = values.size() - 1;
  double head = 0.0;
  double tail = 0.0;
  for (std::size_t n = 0; n < N / 2; ++n) head = std::max(head, std::fabs(values[n]));
  for (std::size_t n = N / 2; n <= N; ++n) tail = std::max(tail, std::fabs(values[n]));
  c.evidence.checkpoints = value_checkpoints(values);
  c.evidence.windows.push_back({"max_abs", 0, N / 2 - 1, head});
  c.evidence.windows.push_back({"max_abs", N / 2, N, tail});
  if (tail <= th.growth_factor * head + std::numeric_limits<double>::min())
    c.verdict = Verdict::pass;
  else if (tail >= 2.0 * head)
    c.verdict = Verdict::fail;
  return c;
}

}  // namespace jacobi
