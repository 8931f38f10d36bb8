#include <cmath>
#include <string>

#include "jacobi/errors.hpp"
#include "jacobi/sequences.hpp"

namespace jacobi {

double iterated_log(int j, double x) {
  if (j < 0) throw DomainError("iterated_log: negative depth");
  for (int i = 0; i < j; ++i) {
    if (!(x > 0.0)) throw DomainError("iterated_log: log of non-positive value at depth " + std::to_string(i + 1));
    x = std::log(x);
  }
  return x;
}

double iterlog_g(int j, double x) {
  if (j < 0) throw DomainError("iterlog_g: negative order");
  double product = 1.0;
  double level = x;
  for (int i = 1; i <= j; ++i) {
    if (!(level > 0.0)) throw DomainError("iterlog_g: log^(" + std::to_string(i) + ") undefined");
    level = std::log(level);
    if (!(level > 0.0)) throw DomainError("iterlog_g: log^(" + std::to_string(i) + ")(x) <= 0");
    product *= level;
  }
  return product;
}

double iterlog_g_prime(int K, double x) {
  double g = iterlog_g(K, x);
  double sum = 0.0;
  double partial = 1.0;
  double level = x;
  for (int j = 1; j <= K; ++j) {
    level = std::log(level);
    partial *= level;  // g_j(x)
    sum += 1.0 / (x * partial);
  }
  return g * sum;
}

std::size_t iterlog_cutoff(int K) {
  if (K < 0) throw DomainError("iterlog_cutoff: negative order");
  if (K == 0) return 1;
  // log^(K)(n) > 0 iff n > E_{K-1}, the tower exp(exp(...exp(0)...)) with K-1 exps above 1.
  double tower = 1.0;
  for (int i = 1; i < K; ++i) {
    tower = std::exp(tower);
    if (!std::isfinite(tower) || tower > 1e15) throw DomainError("iterlog_cutoff: K too large");
  }
  auto admissible = [K](std::size_t n) {
    double x = static_cast<double>(n);
    for (int i = 0; i < K; ++i) {
      if (!(x > 0.0)) return false;
      x = std::log(x);
    }
    return x > 0.0;
  };
  auto n = static_cast<std::size_t>(std::floor(tower)) + 1;
  while (n > 1 && admissible(n - 1)) --n;
  while (!admissible(n)) ++n;
  return n;
}

}  // namespace jacobi
