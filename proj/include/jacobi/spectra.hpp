#ifndef JACOBI_SPECTRA_HPP
#define JACOBI_SPECTRA_HPP

// Finite sections of the Jacobi matrix: eigenvalue counts by Sturm sequences,
// all eigenvalues by bisection, and the Gauss discretization of the spectral
// measure at the first basis vector.
//
// Finite sections may carry eigenvalues inside gaps of the infinite matrix
// (pow-shifted:alpha=0.5 has a gap (-1, 1) that truncations partly fill), so
// counts are evidence about the spectrum, not a certificate.

#include <cstddef>
#include <vector>

#include "jacobi/sequences.hpp"

namespace jacobi {

/// Leading N x N block: diag = b_0..b_{N-1}, offdiag = a_0..a_{N-2}.
struct Truncation {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t order() const { return diag.size(); }
};

/// Throws PreconditionError for N = 0.
Truncation truncate(const SequencePair& seq, std::size_t N);

/// Exact zero pivots are replaced by +kPivotGuard * scale, which keeps the
/// count strict; scale is the largest |entry| of the truncation (at least 1).
inline constexpr double kPivotGuard = 2.220446049250313e-16;

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(const Truncation& t, double x);

struct Interval {
  double lo;
  double hi;
};

/// Gershgorin enclosure of all eigenvalues.
Interval gershgorin_bounds(const Truncation& t);

/// 1e-12 * max(1, spectral radius bound).
double default_tolerance(const Truncation& t);

struct TruncationSpectrum {
  std::size_t order = 0;
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> weights;      // Gauss weights, empty unless requested
};

/// All eigenvalues to absolute tolerance tol (> 0). Indices are bisected
/// independently, in parallel up to thread_budget().
TruncationSpectrum eigenvalues(const Truncation& t, double tol, bool with_weights = false);

/// Nodes and weights 1 / sum_{j<N} p_j(x_k)^2 at the default tolerance.
TruncationSpectrum gauss_measure(const Truncation& t);

struct DensityBin {
  double lo;
  double hi;
  std::size_t count;  // eigenvalues in [lo, hi)
};

struct DensityReport {
  std::size_t order = 0;
  Interval gershgorin{0.0, 0.0};
  std::vector<DensityBin> bins;
};

/// Bins of width `bin` from x_lo, the last one clipped at x_hi. An empty
/// window gives no bins. Throws PreconditionError unless bin > 0 and x_lo <= x_hi.
DensityReport density_report(const Truncation& t, double x_lo, double x_hi, double bin);
DensityReport density_report(const SequencePair& seq, std::size_t N, double x_lo, double x_hi, double bin);

}  // namespace jacobi

#endif
