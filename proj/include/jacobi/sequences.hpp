#ifndef JACOBI_SEQUENCES_HPP
#define JACOBI_SEQUENCES_HPP

// Jacobi data {a_n}, {b_n}, weight sequences {alpha_n}, and the family
// mini-language.
//
// Family text grammar (ASCII, no whitespace):
//
//   spec   := family [ ":" param { "," param } ]
//   family := [a-z] [a-z0-9_-]*
//   param  := key "=" value
//   key    := [A-Za-z] [A-Za-z0-9_]*
//   value  := number | word
//   number := [+-]? ( digits [ "." digits? ] | "." digits ) [ [eE] [+-]? digits ]
//   word   := [a-z] [a-z0-9_-]*
//
// `table` is the one exception: everything after "table:" is a file path,
// e.g. "table:coeffs.csv".
//
// Catalog (indices are 0-based):
//
//   pow:alpha=s                 a_n = (n+1)^s, b_n = 0, s > 0
//   pow-shifted:alpha=s         a_n = n^s + c_n, c_n = 1 for even n, 0 for odd n
//   paired:eps=e,inner=F,...    a_0 = e, a_{2k-1} = a_{2k} = A_k (k >= 1), b = 0,
//                               where A_k = a_{k-1} of the inner family F; every
//                               parameter after `inner` belongs to F. eps defaults to 1.
//   factorial-staircase         a_0 = 1, a_n = sqrt(k!) for k! <= n < (k+1)!, b = 0
//   iterlog:K=k,M=m             a_n = (n+m) g_k(n+m), b = 0, needs log^(k)(m) > 0
//   chihara                     a_n = n+1, b_n = a_{n-1} + a_n (a_{-1} = 0)
//   const[:a=x,b=y]             a_n = x (default 1), b_n = y (default 0)
//   table:<path>                finite CSV table, header "a,b" or columns n,a,b
//
// `bd:lam=...,mu=...` parses with the same grammar and describes birth-death
// rates (see transforms.hpp); it is not a sequence pair.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace jacobi {

/// The pair {a_n > 0}, {b_n} defining a Jacobi matrix. Entries are computed
/// on demand by pure functions, so repeated queries are bit-identical and
/// instances may be shared across threads.
class SequencePair {
public:
  using Entry = std::function<double(std::size_t)>;

  SequencePair(Entry a, Entry b, std::optional<std::size_t> length = std::nullopt);

  /// Finite table. `b` may be shorter than `a` by one (a truncation has one
  /// fewer off-diagonal entry than diagonal entries) or longer; each entry
  /// is valid up to its own table size.
  static SequencePair from_table(std::vector<double> a, std::vector<double> b);

  /// Throws DomainError unless the value is finite and positive.
  double a(std::size_t n) const;
  double b(std::size_t n) const;

  /// a_{n-1} with the global convention a_{-1} = 0.
  double a_before(std::size_t n) const { return n == 0 ? 0.0 : a(n - 1); }

  /// Number of indices with both entries defined, for finite tables.
  std::optional<std::size_t> length() const { return length_; }

private:
  Entry a_;
  Entry b_;
  std::optional<std::size_t> length_;
};

/// A positive weight sequence {alpha_n}, with alpha_{-1} = 0.
class WeightSequence {
public:
  using Entry = std::function<double(std::size_t)>;

  WeightSequence(Entry alpha, std::string description);

  double operator()(std::size_t n) const;
  double before(std::size_t n) const { return n == 0 ? 0.0 : (*this)(n - 1); }
  const std::string& description() const { return description_; }

  static WeightSequence equal_to_a(const SequencePair& seq);
  static WeightSequence ones();
  /// alpha_n = 1 for n < cutoff, n g_K(n) / a_n otherwise. Without an
  /// explicit cutoff the smallest admissible one, iterlog_cutoff(K), is used.
  static WeightSequence iterlog(const SequencePair& seq, int K,
                                std::optional<std::size_t> cutoff = std::nullopt);
  static WeightSequence from_table(std::vector<double> alpha);

private:
  Entry alpha_;
  std::string description_;
};

using ParamValue = std::variant<double, std::string>;

struct FamilyParam {
  std::string key;
  ParamValue value;

  bool operator==(const FamilyParam&) const = default;
};

struct FamilySpec {
  std::string family;
  std::vector<FamilyParam> params;

  bool operator==(const FamilySpec&) const = default;

  /// First parameter named `key`, if it holds a number.
  std::optional<double> number(std::string_view key) const;
  std::optional<std::string> word(std::string_view key) const;
  bool has(std::string_view key) const;
};

FamilySpec parse_family(std::string_view text);

/// Canonical text: numbers in shortest round-trip form.
std::string render(const FamilySpec& spec);

SequencePair instantiate(const FamilySpec& spec);
inline SequencePair make_sequence(std::string_view text) { return instantiate(parse_family(text)); }

/// Non-fatal remarks about a valid spec (e.g. pow-shifted outside 0 < alpha <= 2/3).
std::vector<std::string> family_warnings(const FamilySpec& spec);

/// Reads a sequence table from CSV. Recognized headers: a, b (optional),
/// n (ignored). Without a header the columns are n,a,b.
SequencePair load_sequence_table(const std::string& path);
std::vector<double> load_weight_table(const std::string& path);

/// log^(j)(x): j-fold iterated natural logarithm, log^(0)(x) = x.
/// Throws DomainError if an intermediate argument is not positive.
double iterated_log(int j, double x);

/// g_j(x) = prod_{i=1..j} log^(i)(x); g_0 = 1. Requires log^(i)(x) > 0 for
/// every i <= j, otherwise DomainError.
double iterlog_g(int j, double x);

/// g_K'(x) = g_K(x) sum_{j=1..K} 1 / (x g_j(x)).
double iterlog_g_prime(int K, double x);

/// Smallest integer n >= 1 with log^(K)(n) > 0 (so g_K(n) > 0).
std::size_t iterlog_cutoff(int K);

}  // namespace jacobi

#endif
