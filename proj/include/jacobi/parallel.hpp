#ifndef JACOBI_PARALLEL_HPP
#define JACOBI_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace jacobi {

/// Worker count: JACOBI_SPECTRA_THREADS if set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
std::size_t thread_budget();

/// Calls body(i) for i in [0, count). Each index runs exactly once; the
/// order across workers is unspecified, so body must only write to slot i.
/// The first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace jacobi

#endif
