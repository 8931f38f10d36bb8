#include "jacobi/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jacobi/errors.hpp"

namespace jacobi {

namespace {
constexpr double kLn2 = 0.693147180559945309417232121458176568;
}

EigvecInit make_init(double u0, double u1) {
  if (u0 == 0.0 && u1 == 0.0) throw DomainError("initial pair (0, 0) is not a generalized eigenvector");
  if (!std::isfinite(u0) || !std::isfinite(u1)) throw DomainError("initial pair must be finite");
  return {u0, u1};
}

EigvecInit polynomial_init(const SequencePair& seq, double lambda) {
  return {1.0, (lambda - seq.b(0)) / seq.a(0)};
}

double LogValue::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

LogValue LogValue::from(double v) {
  if (v == 0.0) return {};
  return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
}

namespace {
LogValue scaled(double unit, double logscale) {
  if (unit == 0.0) return {};
  return {unit > 0.0 ? 1 : -1, std::log(std::fabs(unit)) + logscale};
}
}  // namespace

LogValue PropagationState::u() const { return scaled(x, logscale); }
LogValue PropagationState::u_next() const { return scaled(y, logscale); }

Propagator::Propagator(SequencePair seq, double lambda, EigvecInit init)
    : seq_(std::move(seq)), lambda_(lambda), cur_(init.u0), next_(init.u1) {
  make_init(init.u0, init.u1);
  int k = std::ilogb(std::max(std::fabs(cur_), std::fabs(next_)));
  cur_ = std::ldexp(cur_, -k);
  next_ = std::ldexp(next_, -k);
  exponent_ = k;
}

PropagationState Propagator::state() const {
  double r = std::hypot(cur_, next_);
  return {n_, cur_ / r, next_ / r, static_cast<double>(exponent_) * kLn2 + std::log(r)};
}

void Propagator::advance() {
  std::size_t m = n_ + 1;
  double z = ((lambda_ - seq_.b(m)) * next_ - seq_.a(m - 1) * cur_) / seq_.a(m);
  cur_ = next_;
  next_ = z;
  int k = std::ilogb(std::max(std::fabs(cur_), std::fabs(next_)));
  if (k != 0) {
    cur_ = std::ldexp(cur_, -k);
    next_ = std::ldexp(next_, -k);
    exponent_ += k;
  }
  n_ = m;
}

std::vector<PropagationState> propagate(const SequencePair& seq, double lambda, EigvecInit init,
                                        std::size_t N) {
  Propagator prop(seq, lambda, init);
  std::vector<PropagationState> out;
  out.reserve(N + 1);
  out.push_back(prop.state());
  for (std::size_t n = 1; n <= N; ++n) {
    prop.advance();
    out.push_back(prop.state());
  }
  return out;
}

std::vector<LogValue> eigvec_values(const std::vector<PropagationState>& states) {
  std::vector<LogValue> out;
  if (states.empty()) return out;
  out.reserve(states.size() + 1);
  for (const auto& s : states) out.push_back(s.u());
  out.push_back(states.back().u_next());
  return out;
}

PolyTrace poly_eval(const SequencePair& seq, double lambda, std::size_t N) {
  PolyTrace trace;
  trace.lambda = lambda;
  trace.values.reserve(N + 1);
  trace.values.push_back(LogValue::from(1.0));
  if (N == 0) return trace;
  Propagator prop(seq, lambda, polynomial_init(seq, lambda));
  for (std::size_t n = 1; n < N; ++n) {
    trace.values.push_back(prop.state().u_next());
    prop.advance();
  }
  trace.values.push_back(prop.state().u_next());
  return trace;
}

double log_add_exp(double x, double y) {
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  if (x == ninf) return y;
  if (y == ninf) return x;
  double hi = std::max(x, y);
  double lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

std::vector<double> l2_partial_sums(const std::vector<LogValue>& values, std::size_t N) {
  if (values.size() < N + 1) throw PreconditionError("l2_partial_sums: trace shorter than requested length");
  std::vector<double> out;
  out.reserve(N + 1);
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= N; ++n) {
    if (!values[n].is_zero()) acc = std::max(acc, log_add_exp(acc, 2.0 * values[n].log_abs));
    out.push_back(acc);
  }
  return out;
}

}  // namespace jacobi
