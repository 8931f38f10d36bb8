// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "jacobi/diagnostics.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/recurrence.hpp"
#include "jacobi/series.hpp"
#include "jacobi/spectra.hpp"
#include "jacobi/transforms.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = time_limit <= 0.0 || secs < time_limit;
  bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::string timing = fmt("%.2f s", secs);
  if (time_limit > 0.0) timing += fmt(" (limit %g s)", time_limit);
  std::printf("%s [%2d] %s: %s; %s\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), timing.c_str());
  std::fflush(stdout);
}

WeightSequence pick_weight(oracle::Rng& rng, const SequencePair& seq) {
  switch (rng.index(3)) {
    case 0: return WeightSequence::equal_to_a(seq);
    case 1: return WeightSequence::ones();
    default: return WeightSequence::iterlog(seq, 1);
  }
}

double log_pair(const LogValue& x, const LogValue& y) {
  double lx = x.is_zero() ? -INFINITY : 2.0 * x.log_abs;
  double ly = y.is_zero() ? -INFINITY : 2.0 * y.log_abs;
  return 0.5 * log_add_exp(lx, ly);
}

// |x - y| / exp(log_scale) for log-represented x, y
double rel_diff(const LogValue& x, const LogValue& y, double log_scale) {
  if (x.is_zero() && y.is_zero()) return 0.0;
  if (x.is_zero()) return std::exp(y.log_abs - log_scale);
  if (y.is_zero()) return std::exp(x.log_abs - log_scale);
  if (x.sign != y.sign) return std::exp(x.log_abs - log_scale) + std::exp(y.log_abs - log_scale);
  return std::fabs(std::expm1(y.log_abs - x.log_abs)) * std::exp(x.log_abs - log_scale);
}

Verdict verdict_of(const CheckReport& r, const char* id) {
  const auto* c = r.find(id);
  if (!c) throw std::runtime_error(std::string("missing condition ") + id);
  return c->verdict;
}

}  // namespace

int main() {
  criterion(1, "dual-form identity", 5.0, [] {
    oracle::Rng rng(1001);
    double worst = 0.0;
    std::size_t compared = 0, guarded = 0;
    const int cases = 120;
    for (int i = 0; i < cases; ++i) {
      auto seq = make_sequence(oracle::random_family(rng));
      auto al = pick_weight(rng, seq);
      double lambda = rng.uniform(-5, 5);
      auto tr = s_sequence(seq, al, lambda, make_init(rng.uniform(-1, 1), rng.uniform(-1, 1)), 500);
      for (std::size_t n = 2; n <= 500; ++n) {
        const auto& row = tr.at(n);
        double mag = std::fabs(row.s_over_shat);
        if (mag <= 1e-8 * row.a_alpha) {
          ++guarded;
          continue;
        }
        ++compared;
        worst = std::max(worst, std::fabs(row.s_over_shat - row.s_over_shat_alt) / mag);
      }
    }
    return Outcome{worst <= 1e-10, std::to_string(cases) + " cases, n in [2,500], worst rel " + fmt("%.2e", worst) +
                                       " (tol 1e-10) over " + std::to_string(compared) + " rows, " +
                                       std::to_string(guarded) + " rows below |S|/Shat <= 1e-8 a alpha"};
  });

  criterion(2, "w-bound 2x2 oracle", 1.0, [] {
    oracle::Rng rng(1002);
    double worst = 0.0;
    const int cases = 2000;
    for (int i = 0; i < cases; ++i) {
      double a0 = rng.uniform(0.05, 20), a1 = rng.uniform(0.05, 20);
      double al0 = rng.uniform(0.05, 20), al1 = rng.uniform(0.05, 20);
      double b1 = rng.uniform(-10, 10), lambda = rng.uniform(-10, 10);
      auto w = w_bounds(SequencePair::from_table({a0, a1}, {0.0, b1}), WeightSequence::from_table({al0, al1}), lambda,
                        1);
      double rho = al0 / a0;
      auto [lo, hi] = oracle::sym2_eigen(a1 * al1, rho * a1 * a1, -0.5 * rho * a1 * (lambda - b1));
      double scale = std::max(std::fabs(lo), std::fabs(hi));
      worst = std::max({worst, std::fabs(w.w_min - lo) / scale, std::fabs(w.w_max - hi) / scale});
    }
    return Outcome{worst <= 1e-12, std::to_string(cases) + " instances, worst rel " + fmt("%.2e", worst) + " (tol 1e-12)"};
  });

  criterion(3, "free-matrix eigenvalues", 1.0, [] {
    auto t = truncate(make_sequence("const"), 200);
    auto s = eigenvalues(t, default_tolerance(t));
    double worst = 0.0;
    for (std::size_t k = 1; k <= 200; ++k)
      worst = std::max(worst, std::fabs(s.eigenvalues[k - 1] - 2.0 * std::cos((201.0 - k) * std::numbers::pi / 201.0)));
    return Outcome{worst <= 1e-10, "N=200, worst abs " + fmt("%.2e", worst) + " (tol 1e-10)"};
  });

  criterion(4, "squared-restriction identity", 2.0, [] {
    oracle::Rng rng(1004);
    double worst = 0.0;
    for (const char* text : {"pow:alpha=1", "factorial-staircase"}) {
      auto seq = make_sequence(text);
      auto even = square_even(seq);
      for (int i = 0; i < 50; ++i) {
        double x = rng.uniform(-3, 3);
        auto p = poly_eval(seq, x, 102).values;
        auto q = poly_eval(even, x * x, 50).values;
        for (std::size_t n = 0; n <= 50; ++n)
          worst = std::max(worst, rel_diff(p[2 * n], q[n], log_pair(p[2 * n], p[2 * n + 1])));
      }
    }
    return Outcome{worst <= 1e-9, "a=(n+1) and factorial-staircase, 50 x each, n <= 50, worst rel " +
                                      fmt("%.2e", worst) + " (tol 1e-9, local pair scale)"};
  });

  criterion(5, "flip covariance", 0.0, [] {
    oracle::Rng rng(1005);
    double worst = 0.0;
    const int cases = 120;
    for (int i = 0; i < cases; ++i) {
      auto seq = make_sequence(oracle::random_family(rng));
      double lambda = rng.uniform(-5, 5);
      auto p = poly_eval(seq, -lambda, 501).values;
      auto q = poly_eval(flip(seq), lambda, 501).values;
      for (std::size_t n = 0; n <= 500; ++n) {
        LogValue expect = p[n];
        if (n % 2 == 1) expect.sign = -expect.sign;
        worst = std::max(worst, rel_diff(expect, q[n], log_pair(p[n], p[n + 1])));
      }
    }
    return Outcome{worst <= 1e-10,
                   std::to_string(cases) + " cases, n <= 500, worst rel " + fmt("%.2e", worst) + " (tol 1e-10)"};
  });

  criterion(6, "S sandwich on pow:alpha=0.5", 0.0, [] {
    auto seq = make_sequence("pow:alpha=0.5");
    auto tr = s_sequence(seq, WeightSequence::equal_to_a(seq), 1.0, polynomial_init(seq, 1.0), 10000);
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t n = 100; n <= 2000; ++n) {
      lo = std::min(lo, tr.at(n).normalized());
      hi = std::max(hi, tr.at(n).normalized());
    }
    double band = lo > 0.0 ? hi / lo : INFINITY;
    double fminus = liminf_estimate(tr, 1000, 10000).sum_f_minus;
    return Outcome{band <= 20.0 && fminus < 1e-3, "max/min over [100,2000] = " + fmt("%.4f", band) +
                                                      " (<= 20), sum F- over [1e3,1e4] = " + fmt("%.2e", fminus) +
                                                      " (< 1e-3)"};
  });

  criterion(7, "birth-death spectrum", 30.0, [] {
    auto seq = bd_to_jacobi(parse_rates("lam=linear,mu=linear")).seq;
    auto t = truncate(seq, 2000);
    auto s = eigenvalues(t, default_tolerance(t));
    double top = s.eigenvalues.back();
    return Outcome{top <= 1e-10 && top > -0.05,
                   "N=2000, top eigenvalue " + fmt("%.3e", top) + " (<= 1e-10 and > -0.05)"};
  });

  criterion(8, "chihara spectrum", 0.0, [] {
    auto seq = make_sequence("chihara");
    auto t = truncate(seq, 2000);
    std::size_t below = sturm_count(t, -1e-6);
    auto rep = density_report(t, 0.0, 8.0, 0.5);
    std::size_t empty = 0;
    for (const auto& b : rep.bins) empty += b.count == 0;
    auto c = check_corollary_C(seq, 10000);
    double ratio = c.ratio[10000] ? *c.ratio[10000] : NAN;
    bool ok = below == 0 && empty == 0 && rep.bins.size() == 16 && std::fabs(ratio - 0.25) < 1e-4;
    return Outcome{ok, "N=2000: " + std::to_string(below) + " eigenvalues below -1e-6, " + std::to_string(empty) +
                           " empty bins of 16 on [0,8]; ratio at 1e4 = " + fmt("%.10f", ratio) + " (|r-0.25| < 1e-4)"};
  });

  criterion(9, "paired eigenvalue dichotomy", 0.0, [] {
    const std::size_t N = 100000;
    auto lin = l2_partial_sums(poly_eval(make_sequence("paired:inner=pow,alpha=1"), 0.0, N).values, N);
    double step = 0.0;
    for (std::size_t n = 10001; n <= N; ++n) step = std::max(step, std::exp(lin[n]) - std::exp(lin[n - 1]));
    double aggregate = std::exp(lin[N]) - std::exp(lin[10000]);
    auto root = l2_partial_sums(poly_eval(make_sequence("paired:inner=pow,alpha=0.5"), 0.0, N).values, N);
    double growth = std::exp(root[N]) - std::exp(root[1000]);
    return Outcome{step < 1e-6 && growth > 1.0,
                   "atilde=k: largest step beyond 1e4 = " + fmt("%.2e", step) + " (< 1e-6; total beyond 1e4 " +
                       fmt("%.2e", aggregate) + "); atilde=sqrt(k): growth 1e3..1e5 = " + fmt("%.3f", growth) +
                       " (> 1)"};
  });

  criterion(10, "checker soundness on analytic fixtures", 0.0, [] {
    struct Fixture {
      const char* name;
      std::function<bool()> holds;
    };
    auto pass = [](const CheckReport& r) { return r.overall() == Verdict::pass; };
    auto fails = [](const CheckReport& r, const char* id) { return verdict_of(r, id) == Verdict::fail; };
    std::vector<Fixture> fixtures{
        {"A pow0.5 pass",
         [&] {
           auto s = make_sequence("pow:alpha=0.5");
           return pass(check_theorem_A(s, WeightSequence::equal_to_a(s), 10000));
         }},
        {"A pow1 (e) fail",
         [&] {
           auto s = make_sequence("pow:alpha=1");
           return fails(check_theorem_A(s, WeightSequence::equal_to_a(s), 10000), "ThmA.e");
         }},
        {"A factorial-staircase pass",
         [&] {
           auto s = make_sequence("factorial-staircase");
           return pass(check_theorem_A(s, WeightSequence::equal_to_a(s), 200000));
         }},
        {"B pow0.5 pass", [&] { return pass(check_corollary_B(make_sequence("pow:alpha=0.5"), 10000)); }},
        {"B pow0.75 (b) fail", [&] { return fails(check_corollary_B(make_sequence("pow:alpha=0.75"), 10000), "CorB.b"); }},
        {"B pow-shifted (c) fail",
         [&] { return fails(check_corollary_B(make_sequence("pow-shifted:alpha=0.5"), 10000), "CorB.c"); }},
        {"C chihara M=0, r0=1/3, r(1e4)~1/4",
         [&] {
           auto c = check_corollary_C(make_sequence("chihara"), 10000);
           return pass(c.report) && c.m_estimate && *c.m_estimate == 0.0 && c.ratio[0] &&
                  std::fabs(*c.ratio[0] - 1.0 / 3.0) < 1e-15 && c.ratio[10000] &&
                  std::fabs(*c.ratio[10000] - 0.25) < 1e-4;
         }},
        {"C b=0 (d) fail",
         [&] {
           auto c = check_corollary_C(make_sequence("pow:alpha=0.5"), 10000);
           return fails(c.report, "CorC.d") && !c.m_estimate;
         }},
        {"4.2 pow0.5 pass", [&] { return pass(check_theorem_42(make_sequence("pow:alpha=0.5"), 10000)); }},
        {"4.2 pow-shifted fail",
         [&] { return check_theorem_42(make_sequence("pow-shifted:alpha=0.5"), 10000).overall() == Verdict::fail; }},
        {"4.2 const (a) fail", [&] { return fails(check_theorem_42(make_sequence("const"), 10000), "Thm42.a"); }},
        {"4.3 iterlog K=1 pass", [&] { return pass(check_theorem_43(make_sequence("iterlog:K=1,M=16"), 1, 10000)); }},
        {"4.3 pow2 (b) fail", [&] { return fails(check_theorem_43(make_sequence("pow:alpha=2"), 1, 10000), "Thm43.b"); }},
        {"4.3 const (a) fail", [&] { return fails(check_theorem_43(make_sequence("const"), 1, 10000), "Thm43.a"); }},
        {"5.1 linear pass",
         [&] {
           auto r = bd_check_theorem_51(parse_rates("lam=linear,mu=linear"), 10000);
           return pass(r.report) && r.conclusion && *r.conclusion == "σ(Q) = (−∞, 0]";
         }},
        {"5.1 quadratic (b) fail",
         [&] { return fails(bd_check_theorem_51(parse_rates("lam=quadratic,mu=quadratic"), 10000).report, "Thm51.b"); }},
        {"5.1 bounded (a) fail",
         [&] { return fails(bd_check_theorem_51(parse_rates("lam=2,mu=1"), 10000).report, "Thm51.a"); }},
        {"paired atilde=k, lambda=0: raw S tail min -> 0",
         [&] {
           auto s = make_sequence("paired:inner=pow,alpha=1");
           auto tr = s_sequence(s, WeightSequence::ones(), 0.0, polynomial_init(s, 0.0), 20000);
           return liminf_estimate(tr, 10000, 20000).min_s.log_abs < liminf_estimate(tr, 10, 20).min_s.log_abs - std::log(500.0);
         }},
        {"flipped chihara, lambda=1: tail min > 0, sum F- < 1e-3",
         [&] {
           auto s = flip(make_sequence("chihara"));
           auto tr = s_sequence(s, WeightSequence::equal_to_a(s), 1.0, polynomial_init(s, 1.0), 10000);
           auto est = liminf_estimate(tr, 1000, 10000);
           return est.min_normalized > 0.0 && est.sum_f_minus < 1e-3;
         }},
    };
    std::string bad;
    for (const auto& f : fixtures) {
      bool ok = false;
      try {
        ok = f.holds();
      } catch (...) {
        ok = false;
      }
      if (!ok) bad += std::string(bad.empty() ? "" : ", ") + f.name;
    }
    return Outcome{bad.empty(), std::to_string(fixtures.size()) + " fixtures" + (bad.empty() ? "" : ", wrong: " + bad)};
  });

  criterion(11, "Gauss measure", 0.0, [] {
    oracle::Rng rng(1011);
    double worst_orth = 0.0, worst_sum = 0.0;
    const int cases = 60;
    for (int i = 0; i < cases; ++i) {
      auto seq = make_sequence(oracle::random_family(rng));
      std::size_t N = 2 + rng.index(29);
      auto g = gauss_measure(truncate(seq, N));
      double total = 0.0;
      for (double w : g.weights) total += w;
      worst_sum = std::max(worst_sum, std::fabs(total - 1.0));
      std::vector<std::vector<double>> p;
      for (double x : g.eigenvalues) {
        std::vector<double> row;
        for (const auto& v : poly_eval(seq, x, N - 1).values) row.push_back(v.value());
        p.push_back(std::move(row));
      }
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
          double s = 0.0;
          for (std::size_t k = 0; k < N; ++k) s += g.weights[k] * p[k][a] * p[k][b];
          worst_orth = std::max(worst_orth, std::fabs(s - (a == b ? 1.0 : 0.0)));
        }
    }
    return Outcome{worst_orth <= 1e-8 && worst_sum <= 1e-10,
                   std::to_string(cases) + " cases, N <= 30: orthonormality " + fmt("%.2e", worst_orth) +
                       " (tol 1e-8), weight sum " + fmt("%.2e", worst_sum) + " (tol 1e-10)"};
  });

  criterion(12, "iterated-log derivative", 0.0, [] {
    double worst = 0.0;
    for (int K : {1, 2, 3})
      for (double x : {1e2, 1e4}) {
        double fd = oracle::central_difference([K](double t) { return iterlog_g(K, t); }, x, 1e-5 * x);
        double closed = iterlog_g_prime(K, x);
        worst = std::max(worst, std::fabs(closed - fd) / std::fabs(closed));
      }
    return Outcome{worst <= 1e-6, "K in {1,2,3}, x in {1e2,1e4}, worst rel " + fmt("%.2e", worst) + " (tol 1e-6)"};
  });

  std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
