#include "jacobi/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include "jacobi/errors.hpp"
#include "jacobi/io.hpp"

namespace jacobi {

SequencePair flip(const SequencePair& seq) {
  return SequencePair([seq](std::size_t n) { return seq.a(n); }, [seq](std::size_t n) { return -seq.b(n); },
                      seq.length());
}

SequencePair shift(const SequencePair& seq) {
  std::optional<std::size_t> length;
  if (auto L = seq.length()) length = *L > 0 ? *L - 1 : 0;
  return SequencePair([seq](std::size_t n) { return seq.a(n + 1); },
                      [seq](std::size_t n) { return seq.b(n + 1); }, length);
}

namespace {

constexpr std::size_t kEagerPrefix = 64;

double zero_b(const SequencePair& seq, std::size_t n) {
  double b = seq.b(n);
  if (b != 0.0)
    throw PreconditionError("squaring needs b == 0, but b_" + std::to_string(n) + " = " + io::format_shortest(b));
  return b;
}

void check_prefix(const SequencePair& seq) {
  std::size_t upto = kEagerPrefix;
  if (auto L = seq.length()) upto = std::min(upto, *L);
  for (std::size_t n = 0; n < upto; ++n) zero_b(seq, n);
}

double square(double x) { return x * x; }

}  // namespace

SequencePair square_even(const SequencePair& seq) {
  check_prefix(seq);
  std::optional<std::size_t> length;
  if (auto L = seq.length()) length = *L / 2;
  return SequencePair(
      [seq](std::size_t n) {
        zero_b(seq, 2 * n);
        zero_b(seq, 2 * n + 1);
        return seq.a(2 * n) * seq.a(2 * n + 1);
      },
      [seq](std::size_t n) {
        zero_b(seq, 2 * n);
        return square(seq.a_before(2 * n)) + square(seq.a(2 * n));
      },
      length);
}

SequencePair square_odd(const SequencePair& seq) {
  check_prefix(seq);
  std::optional<std::size_t> length;
  if (auto L = seq.length()) length = *L > 0 ? (*L - 1) / 2 : 0;
  return SequencePair(
      [seq](std::size_t n) {
        zero_b(seq, 2 * n + 1);
        zero_b(seq, 2 * n + 2);
        return seq.a(2 * n + 1) * seq.a(2 * n + 2);
      },
      [seq](std::size_t n) {
        zero_b(seq, 2 * n + 1);
        return square(seq.a(2 * n)) + square(seq.a(2 * n + 1));
      },
      length);
}

BirthDeathRates::BirthDeathRates(Entry lambda, Entry mu, std::string description,
                                 std::optional<std::size_t> length)
    : lambda_(std::move(lambda)), mu_(std::move(mu)), description_(std::move(description)), length_(length) {}

BirthDeathRates BirthDeathRates::from_table(std::vector<double> lambda, std::vector<double> mu) {
  auto length = std::min(lambda.size(), mu.size());
  auto lt = std::make_shared<const std::vector<double>>(std::move(lambda));
  auto mt = std::make_shared<const std::vector<double>>(std::move(mu));
  auto at = [](std::shared_ptr<const std::vector<double>> t, const char* name) {
    return [t, name](std::size_t n) {
      if (n >= t->size()) throw DomainError(std::string(name) + "_" + std::to_string(n) + " is past the end of the table");
      return (*t)[n];
    };
  };
  return BirthDeathRates(at(lt, "lambda"), at(mt, "mu"), "table", length);
}

double BirthDeathRates::lambda(std::size_t n) const {
  double v = lambda_(n);
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError("birth rate lambda_" + std::to_string(n) + " = " + io::format_shortest(v) + " must be positive");
  return v;
}

double BirthDeathRates::mu(std::size_t n) const {
  double v = mu_(n);
  bool ok = std::isfinite(v) && (n == 0 ? v >= 0.0 : v > 0.0);
  if (!ok)
    throw DomainError("death rate mu_" + std::to_string(n) + " = " + io::format_shortest(v) +
                      (n == 0 ? " must be non-negative" : " must be positive"));
  return v;
}

namespace {

BirthDeathRates::Entry rate_shape(const FamilySpec& spec, const std::string& key, bool death) {
  const auto* param = [&]() -> const FamilyParam* {
    for (const auto& p : spec.params)
      if (p.key == key) return &p;
    return nullptr;
  }();
  if (!param) throw SpecError("bd: missing required parameter '" + key + "'", 2);
  if (const auto* c = std::get_if<double>(&param->value)) {
    double v = *c;
    if (!(v > 0.0)) throw DomainError("bd: rate '" + key + "' must be positive");
    if (death) return [v](std::size_t n) { return n == 0 ? 0.0 : v; };
    return [v](std::size_t) { return v; };
  }
  const auto& shape = std::get<std::string>(param->value);
  if (shape == "linear") {
    if (death) return [](std::size_t n) { return static_cast<double>(n); };
    return [](std::size_t n) { return static_cast<double>(n + 1); };
  }
  if (shape == "quadratic") {
    if (death) return [](std::size_t n) { return square(static_cast<double>(n)); };
    return [](std::size_t n) { return square(static_cast<double>(n + 1)); };
  }
  throw SpecError("bd: unknown rate shape '" + shape + "' (expected linear, quadratic or a number)", 2);
}

}  // namespace

BirthDeathRates parse_rates(std::string_view text) {
  std::string full(text);
  if (full.rfind("bd:", 0) != 0) full = "bd:" + full;
  auto spec = parse_family(full);
  if (spec.family != "bd") throw SpecError("expected birth-death rates 'bd:lam=...,mu=...'", 0);
  std::set<std::string> seen;
  for (const auto& p : spec.params) {
    if (p.key != "lam" && p.key != "mu" && p.key != "mu0")
      throw SpecError("bd: unknown parameter '" + p.key + "'", 2);
    if (!seen.insert(p.key).second) throw SpecError("bd: duplicate parameter '" + p.key + "'", 2);
  }
  auto lam = rate_shape(spec, "lam", false);
  auto mu = rate_shape(spec, "mu", true);
  if (spec.has("mu0")) {
    auto v = spec.number("mu0");
    if (!v) throw SpecError("bd: parameter 'mu0' must be a number", 2);
    if (!(*v >= 0.0)) throw DomainError("bd: mu0 must be non-negative");
    double m0 = *v;
    mu = [m0, inner = std::move(mu)](std::size_t n) { return n == 0 ? m0 : inner(n); };
  }
  return BirthDeathRates(std::move(lam), std::move(mu), render(spec));
}

BirthDeathRates load_rates_csv(const std::string& path) {
  auto data = io::read_csv(path);
  int lc = 1;
  int mc = 2;
  if (!data.header.empty()) {
    lc = data.column("lambda");
    mc = data.column("mu");
    if (lc < 0 || mc < 0) throw DomainError(path + ": rates table needs columns 'lambda' and 'mu'");
  }
  std::vector<double> lambda;
  std::vector<double> mu;
  for (const auto& row : data.rows) {
    if (static_cast<int>(row.size()) <= std::max(lc, mc)) throw DomainError(path + ": short row in rates table");
    lambda.push_back(row[lc]);
    mu.push_back(row[mc]);
  }
  if (lambda.empty()) throw DomainError(path + ": empty rates table");
  auto r = BirthDeathRates::from_table(std::move(lambda), std::move(mu));
  for (std::size_t n = 0; n < *r.length(); ++n) {
    r.lambda(n);
    r.mu(n);
  }
  return r;
}

double PiWeights::log_pi(std::size_t n) const {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += std::log(rates_.lambda(k)) - std::log(rates_.mu(k + 1));
  return s;
}

std::vector<double> PiWeights::log_pi_table(std::size_t N) const {
  std::vector<double> out(N + 1);
  out[0] = 0.0;
  for (std::size_t k = 0; k < N; ++k) out[k + 1] = out[k] + (std::log(rates_.lambda(k)) - std::log(rates_.mu(k + 1)));
  return out;
}

BirthDeathJacobi bd_to_jacobi(const BirthDeathRates& r) {
  std::optional<std::size_t> length;
  if (auto L = r.length()) length = *L > 0 ? *L - 1 : 0;
  SequencePair seq([r](std::size_t n) { return std::sqrt(r.lambda(n) * r.mu(n + 1)); },
                   [r](std::size_t n) { return -(r.lambda(n) + r.mu(n)); }, length);
  return {std::move(seq), PiWeights(r)};
}

SequencePair bd_interleaved(const BirthDeathRates& r) {
  std::optional<std::size_t> length;
  if (auto L = r.length()) length = *L > 0 ? 2 * (*L - 1) : 0;
  return SequencePair(
      [r](std::size_t n) {
        std::size_t k = n / 2;
        return n % 2 == 0 ? r.mu(k + 1) : r.lambda(k + 1);
      },
      [](std::size_t) { return 0.0; }, length);
}

RestrictionRoute bd_restriction_route(const BirthDeathRates& r) {
  auto zero = [](std::size_t) { return 0.0; };
  if (r.mu(0) > 0.0) {
    SequencePair tilde([r](std::size_t n) { return std::sqrt(n % 2 == 0 ? r.mu(n / 2) : r.lambda(n / 2)); },
                       zero);
    auto restricted = square_odd(tilde);
    return {true, std::move(tilde), std::move(restricted),
            "mu_0 > 0: atilde = (sqrt(mu_0), sqrt(lambda_0), sqrt(mu_1), ...), odd restriction of atilde^2"};
  }
  SequencePair tilde([r](std::size_t n) { return std::sqrt(n % 2 == 0 ? r.lambda(n / 2) : r.mu(n / 2 + 1)); },
                     zero);
  auto restricted = square_even(tilde);
  return {false, std::move(tilde), std::move(restricted),
          "mu_0 = 0: atilde = (sqrt(lambda_0), sqrt(mu_1), sqrt(lambda_1), ...), even restriction of atilde^2"};
}

Theorem51Report bd_check_theorem_51(const BirthDeathRates& r, std::size_t N, const Thresholds& th) {
  if (N < 100) throw PreconditionError("checkers need N >= 100");
  auto seq = bd_interleaved(r);
  std::vector<double> a(N + 2);
  for (std::size_t n = 0; n <= N + 1; ++n) a[n] = seq.a(n);
  std::vector<double> inv(N + 1), ratio_minus(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    inv[n] = 1.0 / a[n];
    ratio_minus[n] = std::max(1.0 - a[n + 1] / a[n], 0.0);
  }

  Theorem51Report out;
  auto& rep = out.report;
  rep.theorem = "51";
  rep.conditions.push_back(
      require_tends_to_infinity("Thm51.a", "lim a_n = inf for a = (mu_1, lambda_1, mu_2, ...)",
                                std::span<const double>(a.data(), N + 1), th));
  rep.conditions.push_back(require_divergent("Thm51.b", "sum 1/a_n = inf", inv, th));
  rep.conditions.push_back(require_summable("Thm51.c", "sum [a_{n+1}/a_n - 1]^- < inf", ratio_minus, th));
  out.route = bd_restriction_route(r).explanation;
  rep.notes.push_back(out.route);
  if (rep.overall() == Verdict::pass) {
    out.conclusion = "σ(Q) = (−∞, 0]";
    rep.notes.push_back("predicted conclusion: " + *out.conclusion);
  }
  return out;
}

}  // namespace jacobi
