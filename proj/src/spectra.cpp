#include "jacobi/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "jacobi/errors.hpp"
#include "jacobi/parallel.hpp"
#include "jacobi/recurrence.hpp"

namespace jacobi {

Truncation truncate(const SequencePair& seq, std::size_t N) {
  if (N == 0) throw PreconditionError("truncation order must be at least 1");
  Truncation t;
  t.diag.resize(N);
  t.offdiag.resize(N - 1);
  for (std::size_t n = 0; n < N; ++n) t.diag[n] = seq.b(n);
  for (std::size_t n = 0; n + 1 < N; ++n) t.offdiag[n] = seq.a(n);
  return t;
}

namespace {

double entry_scale(const Truncation& t) {
  double s = 1.0;
  for (double d : t.diag) s = std::max(s, std::fabs(d));
  for (double a : t.offdiag) s = std::max(s, a);
  return s;
}

std::size_t count_below(const Truncation& t, double x, double pivmin) {
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    double next = t.diag[i] - x;
    if (i > 0) {
      double a = t.offdiag[i - 1];
      next -= a * (a / d);
    }
    if (next == 0.0)
      next = pivmin;
    else if (std::fabs(next) < pivmin)
      next = std::copysign(pivmin, next);
    if (next < 0.0) ++count;
    d = next;
  }
  return count;
}

double pivot_floor(const Truncation& t) { return kPivotGuard * entry_scale(t); }

}  // namespace

std::size_t sturm_count(const Truncation& t, double x) { return count_below(t, x, pivot_floor(t)); }

Interval gershgorin_bounds(const Truncation& t) {
  Interval g{t.diag[0], t.diag[0]};
  for (std::size_t i = 0; i < t.order(); ++i) {
    double r = (i > 0 ? t.offdiag[i - 1] : 0.0) + (i + 1 < t.order() ? t.offdiag[i] : 0.0);
    g.lo = std::min(g.lo, t.diag[i] - r);
    g.hi = std::max(g.hi, t.diag[i] + r);
  }
  return g;
}

double default_tolerance(const Truncation& t) {
  auto g = gershgorin_bounds(t);
  return 1e-12 * std::max({1.0, std::fabs(g.lo), std::fabs(g.hi)});
}

namespace {

double gauss_weight(const SequencePair& seq, double x, std::size_t N) {
  auto trace = poly_eval(seq, x, N - 1);
  return std::exp(-l2_partial_sums(trace.values, N - 1).back());
}

}  // namespace

TruncationSpectrum eigenvalues(const Truncation& t, double tol, bool with_weights) {
  if (!(tol > 0.0)) throw PreconditionError("eigenvalue tolerance must be positive");
  if (t.order() == 0) throw PreconditionError("empty truncation");
  std::size_t N = t.order();
  double pivmin = pivot_floor(t);
  auto g = gershgorin_bounds(t);
  double pad = 2.0 * kPivotGuard * entry_scale(t) + tol;
  double lo0 = g.lo - pad;
  double hi0 = g.hi + pad;

  TruncationSpectrum s;
  s.order = N;
  s.eigenvalues.resize(N);
  parallel_for(N, [&](std::size_t k) {
    double lo = lo0;
    double hi = hi0;
    while (hi - lo > tol) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (count_below(t, mid, pivmin) > k)
        hi = mid;
      else
        lo = mid;
    }
    s.eigenvalues[k] = 0.5 * (lo + hi);
  });

  if (with_weights) {
    auto seq = SequencePair::from_table(t.offdiag, t.diag);
    s.weights.resize(N);
    parallel_for(N, [&](std::size_t k) { s.weights[k] = gauss_weight(seq, s.eigenvalues[k], N); });
  }
  return s;
}

TruncationSpectrum gauss_measure(const Truncation& t) { return eigenvalues(t, default_tolerance(t), true); }

DensityReport density_report(const Truncation& t, double x_lo, double x_hi, double bin) {
  if (!(bin > 0.0)) throw PreconditionError("bin width must be positive");
  if (!(x_lo <= x_hi)) throw PreconditionError("window must satisfy lo <= hi");
  DensityReport r;
  r.order = t.order();
  r.gershgorin = gershgorin_bounds(t);
  if (x_lo == x_hi) return r;

  auto nbins = static_cast<std::size_t>(std::ceil((x_hi - x_lo) / bin - 1e-9));
  nbins = std::max<std::size_t>(nbins, 1);
  std::vector<double> edges(nbins + 1);
  for (std::size_t i = 0; i < nbins; ++i) edges[i] = x_lo + static_cast<double>(i) * bin;
  edges[nbins] = x_hi;

  double pivmin = pivot_floor(t);
  std::vector<std::size_t> counts(nbins + 1);
  parallel_for(nbins + 1, [&](std::size_t i) { counts[i] = count_below(t, edges[i], pivmin); });
  for (std::size_t i = 0; i < nbins; ++i) r.bins.push_back({edges[i], edges[i + 1], counts[i + 1] - counts[i]});
  return r;
}

DensityReport density_report(const SequencePair& seq, std::size_t N, double x_lo, double x_hi, double bin) {
  return density_report(truncate(seq, N), x_lo, x_hi, bin);
}

}  // namespace jacobi
