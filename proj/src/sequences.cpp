#include "jacobi/sequences.hpp"

#include <cmath>
#include <memory>
#include <set>
#include <string>

#include "jacobi/errors.hpp"
#include "jacobi/io.hpp"

namespace jacobi {

SequencePair::SequencePair(Entry a, Entry b, std::optional<std::size_t> length)
    : a_(std::move(a)), b_(std::move(b)), length_(length) {}

SequencePair SequencePair::from_table(std::vector<double> a, std::vector<double> b) {
  auto length = std::min(a.size(), b.size());
  auto at = std::make_shared<const std::vector<double>>(std::move(a));
  auto bt = std::make_shared<const std::vector<double>>(std::move(b));
  return SequencePair(
      [at](std::size_t n) {
        if (n >= at->size()) throw DomainError("a_" + std::to_string(n) + " is past the end of the table");
        return (*at)[n];
      },
      [bt](std::size_t n) {
        if (n >= bt->size()) throw DomainError("b_" + std::to_string(n) + " is past the end of the table");
        return (*bt)[n];
      },
      length);
}

double SequencePair::a(std::size_t n) const {
  double v = a_(n);
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError("a_" + std::to_string(n) + " = " + io::format_shortest(v) + " is not a positive finite number");
  return v;
}

double SequencePair::b(std::size_t n) const {
  double v = b_(n);
  if (!std::isfinite(v)) throw DomainError("b_" + std::to_string(n) + " is not finite");
  return v;
}

WeightSequence::WeightSequence(Entry alpha, std::string description)
    : alpha_(std::move(alpha)), description_(std::move(description)) {}

double WeightSequence::operator()(std::size_t n) const {
  double v = alpha_(n);
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError("alpha_" + std::to_string(n) + " = " + io::format_shortest(v) + " is not positive");
  return v;
}

WeightSequence WeightSequence::equal_to_a(const SequencePair& seq) {
  return WeightSequence([seq](std::size_t n) { return seq.a(n); }, "a");
}

WeightSequence WeightSequence::ones() {
  return WeightSequence([](std::size_t) { return 1.0; }, "one");
}

WeightSequence WeightSequence::iterlog(const SequencePair& seq, int K, std::optional<std::size_t> cutoff) {
  std::size_t first = cutoff.value_or(iterlog_cutoff(K));
  if (first < iterlog_cutoff(K))
    throw DomainError("iterlog weight: cutoff " + std::to_string(first) + " is below the admissible " +
                      std::to_string(iterlog_cutoff(K)));
  return WeightSequence(
      [seq, K, first](std::size_t n) {
        if (n < first) return 1.0;
        double x = static_cast<double>(n);
        return x * iterlog_g(K, x) / seq.a(n);
      },
      "iterlog:K=" + std::to_string(K) + ",N=" + std::to_string(first));
}

WeightSequence WeightSequence::from_table(std::vector<double> alpha) {
  auto t = std::make_shared<const std::vector<double>>(std::move(alpha));
  return WeightSequence(
      [t](std::size_t n) {
        if (n >= t->size()) throw DomainError("alpha_" + std::to_string(n) + " is past the end of the table");
        return (*t)[n];
      },
      "table");
}

namespace {

[[noreturn]] void missing(const FamilySpec& spec, std::string_view key) {
  throw SpecError(spec.family + ": missing required parameter '" + std::string(key) + "'", spec.family.size());
}

double required_number(const FamilySpec& spec, std::string_view key) {
  if (!spec.has(key)) missing(spec, key);
  auto v = spec.number(key);
  if (!v) throw SpecError(spec.family + ": parameter '" + std::string(key) + "' must be a number", spec.family.size());
  return *v;
}

void allow_only(const FamilySpec& spec, std::initializer_list<std::string_view> keys) {
  std::set<std::string_view> seen;
  for (const auto& p : spec.params) {
    bool ok = false;
    for (auto k : keys) ok = ok || p.key == k;
    if (!ok) throw SpecError(spec.family + ": unknown parameter '" + p.key + "'", spec.family.size());
    if (!seen.insert(p.key).second)
      throw SpecError(spec.family + ": duplicate parameter '" + p.key + "'", spec.family.size());
    if (!std::holds_alternative<double>(p.value))
      throw SpecError(spec.family + ": parameter '" + p.key + "' must be a number", spec.family.size());
  }
}

void require_positive(const FamilySpec& spec, std::string_view key, double v) {
  if (!(v > 0.0))
    throw DomainError(spec.family + ": parameter '" + std::string(key) + "' must be positive, got " +
                      io::format_shortest(v));
}

int required_order(const FamilySpec& spec, std::string_view key) {
  double v = required_number(spec, key);
  if (v < 0.0 || v != std::floor(v) || v > 64.0)
    throw DomainError(spec.family + ": '" + std::string(key) + "' must be a small non-negative integer");
  return static_cast<int>(v);
}

SequencePair zero_diagonal(SequencePair::Entry a) {
  return SequencePair(std::move(a), [](std::size_t) { return 0.0; });
}

double factorial_staircase(std::size_t n) {
  if (n == 0) return 1.0;
  // largest k with k! <= n
  std::size_t k = 1;
  std::size_t fact = 1;
  while (fact <= n / (k + 1)) {
    ++k;
    fact *= k;
  }
  return std::sqrt(static_cast<double>(fact));
}

/// Splits a `paired` spec into its own parameters and the inner family.
std::pair<FamilySpec, FamilySpec> split_inner(const FamilySpec& spec) {
  FamilySpec own{spec.family, {}};
  FamilySpec inner;
  bool in_inner = false;
  for (const auto& p : spec.params) {
    if (!in_inner && p.key == "inner") {
      auto name = std::get_if<std::string>(&p.value);
      if (!name) throw SpecError("paired: 'inner' must name a family", spec.family.size());
      inner.family = *name;
      in_inner = true;
    } else if (in_inner) {
      inner.params.push_back(p);
    } else {
      own.params.push_back(p);
    }
  }
  if (!in_inner) missing(spec, "inner");
  return {own, inner};
}

}  // namespace

SequencePair instantiate(const FamilySpec& spec) {
  const auto& f = spec.family;
  if (f == "pow") {
    allow_only(spec, {"alpha"});
    double s = required_number(spec, "alpha");
    require_positive(spec, "alpha", s);
    return zero_diagonal([s](std::size_t n) { return std::pow(static_cast<double>(n + 1), s); });
  }
  if (f == "pow-shifted") {
    allow_only(spec, {"alpha"});
    double s = required_number(spec, "alpha");
    require_positive(spec, "alpha", s);
    return zero_diagonal([s](std::size_t n) {
      return std::pow(static_cast<double>(n), s) + (n % 2 == 0 ? 1.0 : 0.0);
    });
  }
  if (f == "paired") {
    auto [own, inner_spec] = split_inner(spec);
    allow_only(own, {"eps"});
    double eps = own.number("eps").value_or(1.0);
    require_positive(spec, "eps", eps);
    if (inner_spec.family == "bd") throw SpecError("paired: inner family cannot be 'bd'", 0);
    auto inner = instantiate(inner_spec);
    return zero_diagonal([eps, inner](std::size_t n) {
      if (n == 0) return eps;
      std::size_t k = (n + 1) / 2;
      return inner.a(k - 1);
    });
  }
  if (f == "factorial-staircase") {
    allow_only(spec, {});
    return zero_diagonal(factorial_staircase);
  }
  if (f == "iterlog") {
    allow_only(spec, {"K", "M"});
    int K = required_order(spec, "K");
    double M = required_number(spec, "M");
    require_positive(spec, "M", M);
    double probe = 0.0;
    try {
      probe = iterated_log(K, M);
    } catch (const DomainError&) {
      probe = -1.0;
    }
    if (!(probe > 0.0))
      throw DomainError("iterlog: log^(" + std::to_string(K) + ")(M) must be positive for M = " +
                        io::format_shortest(M));
    return zero_diagonal([K, M](std::size_t n) {
      double x = static_cast<double>(n) + M;
      return x * iterlog_g(K, x);
    });
  }
  if (f == "chihara") {
    allow_only(spec, {});
    return SequencePair([](std::size_t n) { return static_cast<double>(n + 1); },
                        [](std::size_t n) { return static_cast<double>(2 * n + 1); });
  }
  if (f == "const") {
    allow_only(spec, {"a", "b"});
    double a = spec.number("a").value_or(1.0);
    double b = spec.number("b").value_or(0.0);
    require_positive(spec, "a", a);
    return SequencePair([a](std::size_t) { return a; }, [b](std::size_t) { return b; });
  }
  if (f == "table") {
    auto file = spec.word("file");
    if (!file) missing(spec, "file");
    return load_sequence_table(*file);
  }
  if (f == "bd") throw SpecError("'bd' describes birth-death rates, not a sequence pair", 0);
  throw SpecError("unknown family '" + f + "'", 0);
}

std::vector<std::string> family_warnings(const FamilySpec& spec) {
  std::vector<std::string> out;
  if (spec.family == "pow-shifted") {
    auto s = spec.number("alpha");
    if (s && *s > 2.0 / 3.0)
      out.push_back("pow-shifted: alpha = " + io::format_shortest(*s) +
                    " is outside 0 < alpha <= 2/3, where the spectral gap (-1, 1) is known");
  }
  if (spec.family == "paired") {
    auto [own, inner] = split_inner(spec);
    for (auto& w : family_warnings(inner)) out.push_back("paired inner: " + w);
  }
  return out;
}

SequencePair load_sequence_table(const std::string& path) {
  auto csv = io::read_csv(path);
  int ca = csv.column("a");
  int cb = csv.column("b");
  if (csv.header.empty()) {
    ca = 1;
    cb = 2;
  } else if (ca < 0) {
    throw DomainError(path + ": no 'a' column");
  }
  std::vector<double> a, b;
  for (const auto& row : csv.rows) {
    if (ca >= static_cast<int>(row.size())) throw DomainError(path + ": short row");
    a.push_back(row[ca]);
    b.push_back(cb >= 0 && cb < static_cast<int>(row.size()) ? row[cb] : 0.0);
  }
  if (a.empty()) throw DomainError(path + ": empty table");
  return SequencePair::from_table(std::move(a), std::move(b));
}

std::vector<double> load_weight_table(const std::string& path) {
  auto csv = io::read_csv(path);
  int c = csv.column("alpha");
  if (csv.header.empty()) c = csv.rows.empty() || csv.rows.front().size() < 2 ? 0 : 1;
  if (c < 0) throw DomainError(path + ": no 'alpha' column");
  std::vector<double> out;
  for (const auto& row : csv.rows) {
    if (c >= static_cast<int>(row.size())) throw DomainError(path + ": short row");
    out.push_back(row[c]);
  }
  return out;
}

}  // namespace jacobi
