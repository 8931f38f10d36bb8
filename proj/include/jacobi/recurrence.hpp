#ifndef JACOBI_RECURRENCE_HPP
#define JACOBI_RECURRENCE_HPP

// Generalized eigenvectors
//
//   u_0, u_1 given,  a_n u_{n+1} = (lambda - b_n) u_n - a_{n-1} u_{n-1}   (n >= 1)
//
// and orthonormal polynomials (u_0, u_1) = (1, (lambda - b_0) / a_0), kept in
// log-scaled form so that exponentially growing or decaying solutions never
// overflow. Internally the pair is rescaled by exact powers of two, so while
// the true values are representable the arithmetic is the same as the naive
// recurrence.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jacobi/sequences.hpp"

namespace jacobi {

/// Initial pair (u_0, u_1), not both zero.
struct EigvecInit {
  double u0;
  double u1;
};

/// Throws DomainError for (0, 0).
EigvecInit make_init(double u0, double u1);

/// The init producing p_n(lambda).
EigvecInit polynomial_init(const SequencePair& seq, double lambda);

/// A real number as sign * exp(log_abs); `sign == 0` marks an exact zero.
struct LogValue {
  int sign = 0;
  double log_abs = 0.0;

  bool is_zero() const { return sign == 0; }
  /// sign * exp(log_abs); may overflow to +-inf or underflow to 0.
  double value() const;
  static LogValue from(double v);
};

/// State n: the pair (u_n, u_{n+1}) = (x, y) * exp(logscale), x^2 + y^2 = 1.
struct PropagationState {
  std::size_t n = 0;
  double x = 0.0;
  double y = 0.0;
  double logscale = 0.0;

  LogValue u() const;
  LogValue u_next() const;
};

class Propagator {
public:
  Propagator(SequencePair seq, double lambda, EigvecInit init);

  PropagationState state() const;
  /// Moves from state n to n + 1; needs a_{n+1}, b_{n+1}.
  void advance();

  std::size_t index() const { return n_; }
  double lambda() const { return lambda_; }

private:
  SequencePair seq_;
  double lambda_;
  std::size_t n_ = 0;
  // (u_n, u_{n+1}) = (cur_, next_) * 2^exponent_
  double cur_;
  double next_;
  std::int64_t exponent_ = 0;
};

/// States n = 0..N.
std::vector<PropagationState> propagate(const SequencePair& seq, double lambda, EigvecInit init,
                                        std::size_t N);

/// u_0..u_{N+1} from a state stream covering n = 0..N.
std::vector<LogValue> eigvec_values(const std::vector<PropagationState>& states);

struct PolyTrace {
  double lambda = 0.0;
  std::vector<LogValue> values;  // p_0..p_N
};

/// p_0..p_N at lambda. Uses a_0..a_{N-1} and b_0..b_{N-1} only.
PolyTrace poly_eval(const SequencePair& seq, double lambda, std::size_t N);

/// log(exp(x) + exp(y)) with log(0) = -inf.
double log_add_exp(double x, double y);

/// Running sums sum_{n <= m} u_n^2, m = 0..N, as natural logs (-inf for an
/// exact zero). Nondecreasing by construction.
std::vector<double> l2_partial_sums(const std::vector<LogValue>& values, std::size_t N);

}  // namespace jacobi

#endif
