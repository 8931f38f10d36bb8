#include "jacobi/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jacobi/errors.hpp"

namespace jacobi {

QuadraticForm s_quadratic_form(const SequencePair& seq, const WeightSequence& alpha, double lambda,
                               std::size_t n) {
  if (n == 0) throw PreconditionError("S_n is defined for n >= 1");
  double an = seq.a(n);
  double rho = alpha(n - 1) / seq.a(n - 1);
  return {an * alpha(n), rho * an * an, -rho * an * (lambda - seq.b(n))};
}

WBounds w_bounds(const SequencePair& seq, const WeightSequence& alpha, double lambda, std::size_t n) {
  if (n == 0) throw PreconditionError("w_bounds is defined for n >= 1");
  double an = seq.a(n);
  double scale = an * alpha(n);
  double r = (alpha(n - 1) / alpha(n)) * (an / seq.a(n - 1));
  double q = r * (lambda - seq.b(n)) / an;
  double root = std::hypot(1.0 - r, q);
  double sum = 1.0 + r + root;
  // 1 + r - root == (4r - q^2) / (1 + r + root)
  return {0.5 * scale * (4.0 * r - q * q) / sum, 0.5 * scale * sum};
}

const DiagnosticsRow& DiagnosticsTrace::at(std::size_t n) const {
  if (n == 0 || n > rows.size()) throw PreconditionError("no diagnostics row for n = " + std::to_string(n));
  return rows[n - 1];
}

namespace {

// Long-double copy of the recurrence, used for both closed forms of S.
struct WideState {
  long double cur;
  long double next;
  int exponent;
};

void rescale(WideState& s) {
  int k = std::ilogb(std::max(std::fabs(s.cur), std::fabs(s.next)));
  s.cur = std::ldexp(s.cur, -k);
  s.next = std::ldexp(s.next, -k);
  s.exponent += k;
}

}  // namespace

DiagnosticsTrace s_sequence(const SequencePair& seq, const WeightSequence& alpha, double lambda,
                            EigvecInit init, std::size_t N) {
  if (N < 2) throw PreconditionError("s_sequence needs N >= 2");
  make_init(init.u0, init.u1);
  constexpr long double kLn2 = 0.693147180559945309417232121458176568L;

  struct Point {
    double s;      // S_n / Shat_n (form 2)
    double s_alt;  // form 1
    double log_shat;
    double a_alpha;
  };
  // S_1..S_{N+1}, hence F_1..F_N.
  std::vector<Point> pts(N + 2);
  WideState prev{init.u0, init.u1, 0};
  rescale(prev);
  const long double wl = lambda;
  for (std::size_t n = 1; n <= N + 1; ++n) {
    WideState cur = prev;
    long double z = ((wl - seq.b(n)) * cur.next - static_cast<long double>(seq.a(n - 1)) * cur.cur) / seq.a(n);
    cur.cur = cur.next;
    cur.next = z;
    rescale(cur);

    long double r = std::hypot(cur.cur, cur.next);
    long double x = cur.cur / r;
    long double y = cur.next / r;
    long double back = std::ldexp(prev.cur, prev.exponent - cur.exponent) / r;  // u_{n-1} / |pair_n|

    long double an = seq.a(n);
    long double an1 = seq.a(n - 1);
    long double al = alpha(n);
    long double al1 = alpha(n - 1);
    long double shift = wl - seq.b(n);
    long double uu = an * al;
    long double rho = al1 / an1;
    long double s2 = uu * x * x + rho * an * an * y * y - rho * an * shift * x * y;
    long double s1 = an1 * al1 * back * back + uu * x * x - shift * al1 * back * x;
    double logscale = static_cast<double>(cur.exponent * kLn2 + std::log(r));
    pts[n] = {static_cast<double>(s2), static_cast<double>(s1), 2.0 * logscale, static_cast<double>(uu)};
    prev = cur;
  }

  DiagnosticsTrace trace;
  trace.lambda = lambda;
  trace.rows.reserve(N);
  double sum_f_minus = 0.0;
  double sum_inv = 1.0 / (seq.a(0) * alpha(0));
  for (std::size_t n = 1; n <= N; ++n) {
    const auto& p = pts[n];
    DiagnosticsRow row;
    row.n = n;
    row.a_alpha = p.a_alpha;
    row.s_over_shat = p.s;
    row.s_over_shat_alt = p.s_alt;
    row.log_shat = p.log_shat;
    row.s = p.s == 0.0 ? LogValue{} : LogValue{p.s > 0.0 ? 1 : -1, std::log(std::fabs(p.s)) + p.log_shat};
    if (std::fabs(p.s) / p.a_alpha >= kNearZeroS) {
      double next = pts[n + 1].s * std::exp(pts[n + 1].log_shat - p.log_shat);
      double f = (next - p.s) / p.s;
      row.f = f;
      sum_f_minus += std::max(-f, 0.0);
    } else {
      ++trace.excluded_f;
    }
    sum_inv += 1.0 / p.a_alpha;
    row.sum_f_minus = sum_f_minus;
    row.sum_inv_a_alpha = sum_inv;
    auto w = w_bounds(seq, alpha, lambda, n);
    row.w_min = w.w_min;
    row.w_max = w.w_max;
    trace.rows.push_back(row);
  }
  return trace;
}

namespace {
bool less(const LogValue& x, const LogValue& y) {
  if (x.sign != y.sign) return x.sign < y.sign;
  if (x.sign == 0) return false;
  return x.sign > 0 ? x.log_abs < y.log_abs : x.log_abs > y.log_abs;
}
}  // namespace

LiminfEstimate liminf_estimate(const DiagnosticsTrace& trace, std::size_t lo, std::size_t hi) {
  if (lo == 0 || lo > hi || hi > trace.last())
    throw PreconditionError("liminf_estimate: window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            "] is empty or outside the trace");
  LiminfEstimate est;
  est.lo = lo;
  est.hi = hi;
  est.min_normalized = std::numeric_limits<double>::infinity();
  est.min_s = trace.at(lo).s;
  for (std::size_t n = lo; n <= hi; ++n) {
    const auto& row = trace.at(n);
    est.min_normalized = std::min(est.min_normalized, row.normalized());
    if (less(row.s, est.min_s)) est.min_s = row.s;
    if (row.f)
      est.sum_f_minus += std::max(-*row.f, 0.0);
    else
      ++est.excluded;
  }
  return est;
}

}  // namespace jacobi
