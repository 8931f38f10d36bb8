#include <algorithm>
#include <cmath>
#include <limits>

#include "jacobi/diagnostics.hpp"
#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double neg_part(double x) { return std::max(-x, 0.0); }

void require_size(std::size_t N) {
  if (N < 100) throw PreconditionError("checkers need N >= 100");
}

std::vector<double> values_of_a(const SequencePair& seq, std::size_t N) {
  std::vector<double> a(N + 2);
  for (std::size_t n = 0; n <= N + 1; ++n) a[n] = seq.a(n);
  return a;
}

std::vector<double> values_of_b(const SequencePair& seq, std::size_t N) {
  std::vector<double> b(N + 2);
  for (std::size_t n = 0; n <= N + 1; ++n) b[n] = seq.b(n);
  return b;
}

std::span<const double> upto(const std::vector<double>& v, std::size_t N) { return {v.data(), N + 1}; }

/// Term sequences of Theorem A, each indexed n = 0..N.
struct TheoremATerms {
  std::vector<double> a, b_terms, c_terms, d_terms, e_terms, f_values, g_values;
};

TheoremATerms theorem_A_terms(const SequencePair& seq, const WeightSequence& alpha, std::size_t N) {
  auto a = values_of_a(seq, N);
  auto b = values_of_b(seq, N);
  std::vector<double> al(N + 2);
  for (std::size_t n = 0; n <= N + 1; ++n) al[n] = alpha(n);

  TheoremATerms t;
  t.a.assign(a.begin(), a.begin() + N + 1);
  t.b_terms.assign(N + 1, 0.0);
  t.c_terms.assign(N + 1, 0.0);
  t.d_terms.assign(N + 1, 0.0);
  t.e_terms.assign(N + 1, 0.0);
  t.f_values.assign(N + 1, kNaN);
  t.g_values.assign(N + 1, 0.0);
  for (std::size_t n = 0; n <= N; ++n) {
    t.e_terms[n] = 1.0 / (a[n] * al[n]);
    t.g_values[n] = std::fabs(b[n]) / a[n];
    double back = n == 0 ? 0.0 : (b[n] / a[n - 1]) * (al[n - 1] / al[n]);
    t.d_terms[n] = std::fabs(b[n + 1] / a[n] - back);
    if (n == 0) continue;
    double r = (al[n - 1] / al[n]) * (a[n] / a[n - 1]);
    t.b_terms[n] = neg_part((a[n + 1] / a[n]) * (al[n + 1] / al[n]) - r);
    t.c_terms[n] = std::fabs(a[n - 1] / a[n] - al[n - 1] / al[n]) / a[n - 1];
    t.f_values[n] = r;
  }
  return t;
}

}  // namespace

CheckReport check_theorem_A(const SequencePair& seq, const WeightSequence& alpha, std::size_t N,
                            const Thresholds& th) {
  require_size(N);
  auto t = theorem_A_terms(seq, alpha, N);
  CheckReport r;
  r.theorem = "A";
  r.notes.push_back("alpha = " + alpha.description());
  r.conditions.push_back(require_tends_to_infinity("ThmA.a", "lim a_n = inf", t.a, th));
  r.conditions.push_back(require_summable(
      "ThmA.b", "sum [(a_{n+1}/a_n)(alpha_{n+1}/alpha_n) - (a_n/a_{n-1})(alpha_{n-1}/alpha_n)]^- < inf",
      t.b_terms, th));
  r.conditions.push_back(
      require_summable("ThmA.c", "sum |a_{n-1}/a_n - alpha_{n-1}/alpha_n| / a_{n-1} < inf", t.c_terms, th));
  r.conditions.push_back(require_summable(
      "ThmA.d", "sum |b_{n+1}/a_n - (b_n/a_{n-1})(alpha_{n-1}/alpha_n)| < inf", t.d_terms, th));
  r.conditions.push_back(require_divergent("ThmA.e", "sum 1/(a_n alpha_n) = inf", t.e_terms, th));
  r.conditions.push_back(
      require_limit("ThmA.f", "lim (alpha_{n-1}/alpha_n)(a_n/a_{n-1}) = 1", t.f_values, 1.0, th));
  r.conditions.push_back(require_limsup_below("ThmA.g", "limsup |b_n|/a_n < 2", t.g_values, 2.0, th));
  return r;
}

CheckReport check_corollary_B(const SequencePair& seq, std::size_t N, const Thresholds& th) {
  auto full = check_theorem_A(seq, WeightSequence::equal_to_a(seq), N, th);
  struct Relabel {
    const char* from;
    const char* to;
    const char* description;
  };
  constexpr Relabel map[] = {
      {"ThmA.a", "CorB.a", "lim a_n = inf"},
      {"ThmA.e", "CorB.b", "sum 1/a_n^2 = inf"},
      {"ThmA.b", "CorB.c", "sum [(a_{n+1}/a_n)^2 - 1]^- < inf"},
      {"ThmA.g", "CorB.d", "limsup |b_n|/a_n < 2"},
      {"ThmA.d", "CorB.e", "sum |b_{n+1} - b_n|/a_n < inf"},
  };
  CheckReport r;
  r.theorem = "B";
  for (const auto& m : map) {
    auto c = *full.find(m.from);
    c.condition = m.to;
    c.description = m.description;
    r.conditions.push_back(std::move(c));
  }
  r.notes.push_back("evaluated as Theorem A with alpha = a; conditions (c) and (f) of Theorem A hold identically");
  r.notes.push_back("condition (d) is treated as independent of the others");
  return r;
}

CorollaryCReport check_corollary_C(const SequencePair& seq, std::size_t N, const Thresholds& th) {
  require_size(N);
  auto a = values_of_a(seq, N);
  auto b = values_of_b(seq, N);
  std::vector<double> inv(N + 1), ratio_minus(N + 1, 0.0), drift(N + 1), a_ratio(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    inv[n] = 1.0 / a[n];
    ratio_minus[n] = neg_part(a[n + 1] / a[n] - 1.0);
    drift[n] = (n == 0 ? 0.0 : a[n - 1]) - b[n] + a[n];
    a_ratio[n] = a[n + 1] / a[n];
  }
  CorollaryCReport out;
  auto& r = out.report;
  r.theorem = "C";
  r.conditions.push_back(require_tends_to_infinity("CorC.a", "lim a_n = inf", upto(a, N), th));
  r.conditions.push_back(require_divergent("CorC.b", "sum 1/a_n = inf", inv, th));
  r.conditions.push_back(require_summable("CorC.c", "sum [a_{n+1}/a_n - 1]^- < inf", ratio_minus, th));
  auto d = require_limit_exists("CorC.d", "lim [a_{n-1} - b_n + a_n] = M", drift, th);

  std::size_t lo = N - N / 4;
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  double sum = 0.0;
  for (std::size_t n = lo; n <= N; ++n) {
    mn = std::min(mn, drift[n]);
    mx = std::max(mx, drift[n]);
    sum += drift[n];
  }
  out.m_dispersion = mx - mn;
  if (d.verdict == Verdict::pass) out.m_estimate = sum / static_cast<double>(N - lo + 1);
  r.conditions.push_back(std::move(d));

  out.ratio.resize(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    double den = b[n] * b[n + 1];
    if (den > 0.0) {
      out.ratio[n] = a[n] * a[n] / den;
      out.ratio_tail = out.ratio[n];
    } else {
      ++out.ratio_undefined;
    }
  }
  if (out.m_estimate)
    r.notes.push_back("predicted essential spectrum [-M, inf) with M estimated from the tail mean");
  if (require_limit("ratio", "", a_ratio, 1.0, th).verdict == Verdict::pass)
    r.notes.push_back("a_{n+1}/a_n -> 1: a_n^2/(b_n b_{n+1}) is predicted to tend to 1/4");
  if (out.ratio_undefined > 0)
    r.notes.push_back(std::to_string(out.ratio_undefined) + " ratio values undefined (b_n b_{n+1} <= 0)");
  return out;
}

CheckReport check_theorem_42(const SequencePair& seq, std::size_t N, const Thresholds& th) {
  require_size(N);
  auto a = values_of_a(seq, N);
  auto b = values_of_b(seq, N);
  std::vector<double> inv(N + 1), var_ratio(N + 1, 0.0), var_inv(N + 1), var_ba(N + 1), b_over_a(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    inv[n] = 1.0 / a[n];
    if (n >= 1) var_ratio[n] = std::fabs(a[n] / a[n + 1] - a[n - 1] / a[n]);
    var_inv[n] = std::fabs(1.0 / a[n + 1] - 1.0 / a[n]);
    var_ba[n] = std::fabs(b[n + 1] / a[n + 1] - b[n] / a[n]);
    b_over_a[n] = std::fabs(b[n]) / a[n];
  }
  CheckReport r;
  r.theorem = "42";
  r.conditions.push_back(require_tends_to_infinity("Thm42.a", "lim a_n = inf", upto(a, N), th));
  r.conditions.push_back(require_divergent("Thm42.b", "sum 1/a_n = inf", inv, th));
  r.conditions.push_back(require_summable("Thm42.c1", "{a_{n-1}/a_n} has bounded variation", var_ratio, th));
  r.conditions.push_back(require_summable("Thm42.c2", "{1/a_n} has bounded variation", var_inv, th));
  r.conditions.push_back(require_summable("Thm42.c3", "{b_n/a_n} has bounded variation", var_ba, th));
  r.conditions.push_back(require_limsup_below("Thm42.d", "limsup |b_n|/a_n < 2", b_over_a, 2.0, th));
  r.notes.push_back("condition (d) is graded with limsup, as in Theorem A (g)");
  return r;
}

std::vector<double> theorem_43_excess(const SequencePair& seq, int K, std::size_t N) {
  std::size_t first = std::max<std::size_t>(iterlog_cutoff(K), 1);
  std::vector<double> out(N + 1, 0.0);
  double prev = seq.a(first - 1);
  for (std::size_t n = first; n <= N; ++n) {
    double cur = seq.a(n);
    double ratio = cur / prev;
    double x = static_cast<double>(n);
    double upper = 1.0 + 1.0 / x;
    double g = 1.0;
    double level = x;
    for (int j = 1; j <= K; ++j) {
      level = std::log(level);
      g *= level;
      upper += 1.0 / (x * g);
    }
    out[n] = std::max({0.0, 1.0 - ratio, ratio - upper});
    prev = cur;
  }
  return out;
}

CheckReport check_theorem_43(const SequencePair& seq, int K, std::size_t N, const Thresholds& th) {
  require_size(N);
  if (K < 0) throw PreconditionError("K must be non-negative");
  auto a = values_of_a(seq, N);
  auto b = values_of_b(seq, N);
  std::vector<double> db(N + 1), inv_na(N + 1, 0.0);
  for (std::size_t n = 0; n <= N; ++n) {
    db[n] = std::fabs(b[n + 1] - b[n]) / a[n];
    if (n >= 1) inv_na[n] = 1.0 / (static_cast<double>(n) * a[n]);
  }
  CheckReport r;
  r.theorem = "43";
  r.conditions.push_back(require_tends_to_infinity("Thm43.a", "lim a_n = inf", upto(a, N), th));
  r.conditions.push_back(require_summable(
      "Thm43.b", "1 - c_n <= a_n/a_{n-1} <= 1 + 1/n + sum_j 1/(n g_j(n)) + c_n with summable c_n",
      theorem_43_excess(seq, K, N), th));

  auto bounded = require_bounded("Thm43.c", "", upto(b, N), th);
  auto variation = require_summable("Thm43.c", "", db, th);
  ConditionVerdict c;
  c.condition = "Thm43.c";
  c.description = "{b_n} bounded and sum |b_{n+1} - b_n|/a_n < inf";
  c.verdict = combine(bounded.verdict, variation.verdict);
  c.evidence = variation.evidence;
  for (auto& w : bounded.evidence.windows) c.evidence.windows.push_back(w);
  c.evidence.notes.push_back(std::string("boundedness of b: ") + to_string(bounded.verdict));
  c.evidence.notes.push_back(std::string("variation sum: ") + to_string(variation.verdict));
  r.conditions.push_back(std::move(c));

  r.conditions.push_back(require_summable("Thm43.d", "sum 1/(n a_n) < inf", inv_na, th));
  r.notes.push_back("K = " + std::to_string(K) + ", envelope checked for n >= " +
                    std::to_string(iterlog_cutoff(K)));
  return r;
}

}  // namespace jacobi
