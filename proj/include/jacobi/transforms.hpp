#ifndef JACOBI_TRANSFORMS_HPP
#define JACOBI_TRANSFORMS_HPP

// Structural transformations of Jacobi matrices:
//
//   flip          (a, b) -> (a, -b); the truncations are conjugate up to sign
//                 by diag((-1)^n), so sigma(C) = -sigma(flip C)
//   square_even   for b == 0, C^2 restricted to even coordinates:
//                   a^e_n = a_{2n} a_{2n+1},    b^e_n = a_{2n-1}^2 + a_{2n}^2
//   square_odd    the odd coordinates:
//                   a^o_n = a_{2n+1} a_{2n+2},  b^o_n = a_{2n}^2 + a_{2n+1}^2
//   bd_to_jacobi  birth-death generator Q with rates lambda_n, mu_n is similar
//                 (through diag(sqrt(pi_n))) to the Jacobi matrix with
//                   abar_n = sqrt(lambda_n mu_{n+1}),  bbar_n = -(lambda_n + mu_n)
//
// a_{-1} = 0 throughout, so b^e_0 = a_0^2. Note that square_odd(seq) and
// square_even(shift(seq)) agree except at b_0, where they differ by a_0^2.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jacobi/diagnostics.hpp"
#include "jacobi/sequences.hpp"

namespace jacobi {

SequencePair flip(const SequencePair& seq);

/// (a_{n+1}, b_{n+1}): the matrix with its first row and column removed.
SequencePair shift(const SequencePair& seq);

/// b is checked to vanish on an initial prefix here and on every entry the
/// result later reads; a nonzero b throws PreconditionError.
SequencePair square_even(const SequencePair& seq);
SequencePair square_odd(const SequencePair& seq);

class BirthDeathRates {
public:
  using Entry = std::function<double(std::size_t)>;

  /// Entries are validated on access: lambda_n > 0, mu_0 >= 0, mu_n > 0 for n >= 1
  /// (DomainError otherwise).
  BirthDeathRates(Entry lambda, Entry mu, std::string description,
                  std::optional<std::size_t> length = std::nullopt);

  static BirthDeathRates from_table(std::vector<double> lambda, std::vector<double> mu);

  double lambda(std::size_t n) const;
  double mu(std::size_t n) const;
  const std::string& description() const { return description_; }
  std::optional<std::size_t> length() const { return length_; }

private:
  Entry lambda_;
  Entry mu_;
  std::string description_;
  std::optional<std::size_t> length_;
};

/// `bd:lam=<rate>,mu=<rate>[,mu0=<value>]` where a rate is `linear`
/// (lambda_n = n + 1, mu_n = n), `quadratic` ((n + 1)^2, n^2) or a positive
/// constant c (mu_0 = 0, mu_n = c). mu0 overrides mu_0. The `bd:` prefix is
/// optional.
BirthDeathRates parse_rates(std::string_view text);

/// CSV with columns n, lambda, mu (header optional).
BirthDeathRates load_rates_csv(const std::string& path);

/// pi_0 = 1, pi_n = lambda_0 ... lambda_{n-1} / (mu_1 ... mu_n), kept as logs.
class PiWeights {
public:
  explicit PiWeights(BirthDeathRates rates) : rates_(std::move(rates)) {}

  /// log pi_n, by summing n log ratios.
  double log_pi(std::size_t n) const;
  /// log pi_0 .. log pi_N.
  std::vector<double> log_pi_table(std::size_t N) const;

private:
  BirthDeathRates rates_;
};

struct BirthDeathJacobi {
  SequencePair seq;  // (abar, bbar)
  PiWeights pi;
};

BirthDeathJacobi bd_to_jacobi(const BirthDeathRates& r);

/// a = (mu_1, lambda_1, mu_2, lambda_2, ...), b == 0.
SequencePair bd_interleaved(const BirthDeathRates& r);

struct RestrictionRoute {
  bool odd;                // true when mu_0 > 0
  SequencePair tilde;       // atilde with b == 0
  SequencePair restricted;  // square_even(tilde) or square_odd(tilde); equals flip(abar, bbar)
  std::string explanation;
};

/// mu_0 = 0: atilde = (sqrt(lambda_0), sqrt(mu_1), sqrt(lambda_1), ...), even restriction.
/// mu_0 > 0: atilde = (sqrt(mu_0), sqrt(lambda_0), sqrt(mu_1), ...), odd restriction.
RestrictionRoute bd_restriction_route(const BirthDeathRates& r);

struct Theorem51Report {
  CheckReport report;  // ids "Thm51.a" .. "Thm51.c"
  std::optional<std::string> conclusion;
  std::string route;
};

/// Conditions on the interleaved sequence: a_n -> inf, sum 1/a_n = inf,
/// sum [a_{n+1}/a_n - 1]^- < inf. N >= 100.
Theorem51Report bd_check_theorem_51(const BirthDeathRates& r, std::size_t N, const Thresholds& th = {});

}  // namespace jacobi

#endif
