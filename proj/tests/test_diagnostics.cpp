#include <doctest.h>

#include <cmath>

#include "jacobi/diagnostics.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/transforms.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

// S_n by form 1 on plain values; alpha_{-1} = 0 is never needed since n >= 1.
double s_form1(const SequencePair& seq, const WeightSequence& al, double lambda, const std::vector<double>& u,
               std::size_t n) {
  return seq.a(n - 1) * al(n - 1) * u[n - 1] * u[n - 1] + seq.a(n) * al(n) * u[n] * u[n] -
         (lambda - seq.b(n)) * al(n - 1) * u[n - 1] * u[n];
}

WeightSequence random_weight(oracle::Rng& rng, const SequencePair& seq) {
  switch (rng.index(3)) {
    case 0: return WeightSequence::equal_to_a(seq);
    case 1: return WeightSequence::ones();
    default: return WeightSequence::iterlog(seq, 1);
  }
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("hand-evaluated S values") {
    auto seq = make_sequence("pow:alpha=1");
    auto tr = s_sequence(seq, WeightSequence::equal_to_a(seq), 0.0, polynomial_init(seq, 0.0), 10);
    CHECK(tr.at(1).s.value() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tr.at(2).s.value() == doctest::Approx(2.25).epsilon(1e-14));
    CHECK(tr.last() == 10);
    CHECK_THROWS_AS(tr.at(0), PreconditionError);
    CHECK_THROWS_AS(tr.at(11), PreconditionError);
  }

  TEST_CASE("S equals a_n alpha_n Shat_n when r_n = 1 and lambda = b_n") {
    auto seq = make_sequence("const:a=1.5,b=0.25");
    auto tr = s_sequence(seq, WeightSequence::ones(), 0.25, make_init(0.3, -0.7), 200);
    for (const auto& row : tr.rows) CHECK(row.normalized() == doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("w bounds by hand") {
    auto seq = make_sequence("pow:alpha=1");
    auto al = WeightSequence::equal_to_a(seq);
    auto w = w_bounds(seq, al, 0.0, 1);
    CHECK(w.w_min == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(w.w_max == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(w_bounds(seq, al, 0.0, 0), PreconditionError);
  }

  TEST_CASE("w bounds are the eigenvalues of the 2x2 coefficient matrix") {
    oracle::Rng rng(21);
    for (int i = 0; i < 2000; ++i) {
      double a0 = rng.uniform(0.05, 20), a1 = rng.uniform(0.05, 20);
      double al0 = rng.uniform(0.05, 20), al1 = rng.uniform(0.05, 20);
      double b1 = rng.uniform(-10, 10), lambda = rng.uniform(-10, 10);
      auto seq = SequencePair::from_table({a0, a1}, {0.0, b1});
      auto al = WeightSequence::from_table({al0, al1});
      auto w = w_bounds(seq, al, lambda, 1);
      double rho = al0 / a0;
      auto [lo, hi] = oracle::sym2_eigen(a1 * al1, rho * a1 * a1, -0.5 * rho * a1 * (lambda - b1));
      double scale = std::max(std::fabs(lo), std::fabs(hi));
      CHECK(std::fabs(w.w_min - lo) <= 1e-12 * scale);
      CHECK(std::fabs(w.w_max - hi) <= 1e-12 * scale);
    }
  }

  TEST_CASE("both closed forms of S agree and sit inside the w bounds") {
    oracle::Rng rng(23);
    for (int i = 0; i < 120; ++i) {
      auto text = oracle::random_family(rng);
      auto seq = make_sequence(text);
      auto al = random_weight(rng, seq);
      double lambda = rng.uniform(-5, 5);
      double u0 = rng.uniform(-1, 1), u1 = rng.uniform(-1, 1);
      auto tr = s_sequence(seq, al, lambda, make_init(u0, u1), 500);
      auto u = oracle::naive_eigvec(seq, lambda, u0, u1, 501);
      CAPTURE(text);
      CAPTURE(lambda);
      double dual = 0.0;
      double oracle_err = 0.0;
      double sandwich = 0.0;
      for (const auto& row : tr.rows) {
        double mag = std::fabs(row.s_over_shat);
        double width = std::max(std::fabs(row.w_min), std::fabs(row.w_max));
        sandwich = std::max(sandwich, (row.w_min - row.s_over_shat) / width);
        sandwich = std::max(sandwich, (row.s_over_shat - row.w_max) / width);
        if (row.n < 2 || mag <= 1e-8 * row.a_alpha) continue;
        dual = std::max(dual, std::fabs(row.s_over_shat - row.s_over_shat_alt) / mag);
        double shat = u[row.n] * u[row.n] + u[row.n + 1] * u[row.n + 1];
        if (mag > 1e-5 * row.a_alpha && std::isfinite(shat) && shat > 1e-250 && shat < 1e250) {
          double direct = s_form1(seq, al, lambda, u, row.n) / shat;
          oracle_err = std::max(oracle_err, std::fabs(direct - row.s_over_shat) / mag);
        }
      }
      CHECK(dual <= 1e-10);
      CHECK(oracle_err <= 1e-9);
      CHECK(sandwich <= 1e-10);
    }
  }

  TEST_CASE("vanishing S leaves F undefined") {
    // const, alpha = 1, lambda = 2, u = (1, 1, 1, ...): S_n = 1 + 1 - 2 = 0
    auto seq = make_sequence("const");
    auto tr = s_sequence(seq, WeightSequence::ones(), 2.0, make_init(1.0, 1.0), 50);
    CHECK(tr.excluded_f == 50);
    for (const auto& row : tr.rows) CHECK_FALSE(row.f.has_value());
    auto est = liminf_estimate(tr, 10, 20);
    CHECK(est.excluded == 11);
    CHECK(est.sum_f_minus == 0.0);
  }

  TEST_CASE("liminf windows") {
    auto seq = make_sequence("pow:alpha=0.5");
    auto tr = s_sequence(seq, WeightSequence::equal_to_a(seq), 1.0, polynomial_init(seq, 1.0), 300);
    auto one = liminf_estimate(tr, 17, 17);
    CHECK(one.min_normalized == tr.at(17).normalized());
    CHECK_THROWS_AS(liminf_estimate(tr, 20, 10), PreconditionError);
    CHECK_THROWS_AS(liminf_estimate(tr, 0, 10), PreconditionError);
    CHECK_THROWS_AS(liminf_estimate(tr, 10, 301), PreconditionError);
    CHECK_THROWS_AS(s_sequence(seq, WeightSequence::ones(), 0.0, make_init(1, 0), 1), PreconditionError);
  }

  TEST_CASE("pow:alpha=0.5 keeps S within a fixed band of a_n alpha_n Shat_n") {
    auto seq = make_sequence("pow:alpha=0.5");
    auto al = WeightSequence::equal_to_a(seq);
    auto tr = s_sequence(seq, al, 1.0, polynomial_init(seq, 1.0), 10000);
    auto est = liminf_estimate(tr, 100, 2000);
    double hi = 0.0;
    double shat_lo = INFINITY, shat_hi = 0.0;
    for (std::size_t n = 100; n <= 2000; ++n) {
      hi = std::max(hi, tr.at(n).normalized());
      double scaled = std::exp(tr.at(n).log_shat) * tr.at(n).a_alpha;
      shat_lo = std::min(shat_lo, scaled);
      shat_hi = std::max(shat_hi, scaled);
    }
    CHECK(est.min_normalized > 0.0);
    CHECK(hi / est.min_normalized <= 20.0);
    CHECK(liminf_estimate(tr, 1000, 10000).sum_f_minus < 1e-3);
    // Shat_n a_n alpha_n bounded above and below
    CHECK(shat_hi / shat_lo <= 20.0);
  }

  TEST_CASE("flipped chihara at lambda = 1") {
    auto seq = flip(make_sequence("chihara"));
    auto tr = s_sequence(seq, WeightSequence::equal_to_a(seq), 1.0, polynomial_init(seq, 1.0), 10000);
    auto est = liminf_estimate(tr, 1000, 10000);
    CHECK(est.min_normalized > 0.0);
    CHECK(est.sum_f_minus < 1e-3);
  }

  TEST_CASE("paired atilde_k = k at lambda = 0: S tends to zero") {
    auto seq = make_sequence("paired:inner=pow,alpha=1");
    auto tr = s_sequence(seq, WeightSequence::ones(), 0.0, polynomial_init(seq, 0.0), 20000);
    auto early = liminf_estimate(tr, 10, 20);
    auto late = liminf_estimate(tr, 10000, 20000);
    CHECK(late.min_s.sign >= 0);
    CHECK(late.min_s.log_abs < early.min_s.log_abs - std::log(500.0));
  }
}
