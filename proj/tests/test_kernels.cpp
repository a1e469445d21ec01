// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cgap/kernels.hpp"
#include "oracles.hpp"

using namespace cgap;

namespace {

std::vector<double> random_probs(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(m);
  for (auto& q : p) q = u(rng);
  return p;
}

std::vector<double> mean_one(std::mt19937_64& rng, std::size_t m) {
  auto p = random_probs(rng, m);
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& q : p) q /= s;
  return p;
}

// t_j straight from the definition, on a brute-force pmf.
double tj_oracle(const std::vector<double>& y, int j) {
  const auto pmf = oracle::count_pmf(y);
  double t = 0.0;
  for (int i = 0; i < j && i < static_cast<int>(pmf.size()); ++i) t += pmf[i] * (1.0 / (1 + i) - 1.0 / (1 + j));
  return t;
}

}  // namespace

TEST(Pmf, Examples) {
  const std::vector<double> one{1.0};
  EXPECT_EQ(poisson_binomial_pmf(one), (std::vector<double>{0.0, 1.0}));
  const std::vector<double> half{0.5, 0.5};
  EXPECT_EQ(poisson_binomial_pmf(half), (std::vector<double>{0.25, 0.5, 0.25}));
  const std::vector<double> mixed{0.2, 0.3, 0.5};
  const auto a = poisson_binomial_pmf(mixed), b = oracle::count_pmf(mixed);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-15);
}

TEST(Pmf, RandomAgainstEnumeration) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_probs(rng, 1 + i % 10);
    const auto a = poisson_binomial_pmf(p), b = oracle::count_pmf(p);
    EXPECT_NEAR(std::accumulate(a.begin(), a.end(), 0.0), 1.0, 1e-12);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-13);
  }
  EXPECT_THROW(poisson_binomial_pmf(std::vector<double>{1.5}), Error);
}

TEST(Pmf, BinomialAndPoisson) {
  const auto b = binomial_pmf(4, 0.25);
  const auto o = oracle::count_pmf({0.25, 0.25, 0.25, 0.25});
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(b[k], o[k], 1e-15);
  const auto p = poisson_pmf(1.0, 60);
  EXPECT_NEAR(p[3], std::exp(-1.0) / 6.0, 1e-16);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-14);
}

TEST(InvMax, Examples) {
  EXPECT_DOUBLE_EQ(inv_max_expectation({}, {}), 1.0);
  EXPECT_DOUBLE_EQ(inv_max_expectation(std::vector<double>{1.0}, {}), 0.5);
  const std::vector<double> h{0.5, 0.5};
  EXPECT_NEAR(inv_max_expectation(h, h), oracle::inv_max(h, h), 1e-15);
}

TEST(InvMax, SymmetricAndMonotone) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    auto y = random_probs(rng, 1 + i % 6), z = random_probs(rng, 1 + (i / 6) % 6);
    const double v = inv_max_expectation(y, z);
    EXPECT_NEAR(v, oracle::inv_max(y, z), 1e-13);
    EXPECT_NEAR(v, inv_max_expectation(z, y), 1e-15);
    auto bumped = y;
    bumped[0] = bumped[0] + (1.0 - bumped[0]) * u(rng);
    EXPECT_LE(inv_max_expectation(bumped, z), v + 1e-15);
  }
}

TEST(Tj, Examples) {
  const auto t0 = tj_coefficients({}, 3);
  EXPECT_NEAR(t0[0], 0.5, 1e-15);
  EXPECT_NEAR(t0[1], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(t0[2], 0.75, 1e-15);
  const std::vector<double> h{0.5, 0.5};
  EXPECT_NEAR(tj_coefficients(h, 2)[1], 0.25, 1e-15);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const auto y = random_probs(rng, 1 + i % 7);
    const auto t = tj_coefficients(y, 9);
    EXPECT_NEAR(t[0], oracle::count_pmf(y)[0] / 2.0, 1e-15);
    for (int j = 1; j <= 9; ++j) {
      EXPECT_NEAR(t[j - 1], tj_oracle(y, j), 1e-14);
      EXPECT_LE(t[j - 1], 1.0 - 1.0 / (1 + j) + 1e-15);
      if (j > 1) {
        EXPECT_GE(t[j - 1], t[j - 2] - 1e-15);
      }
    }
  }
}

TEST(LemmaGain, Examples) {
  EXPECT_TRUE(check_lemma_gain(std::vector<double>(4, 0.25), 4).passed);
  EXPECT_TRUE(check_lemma_gain(std::vector<double>{1.0, 0.0, 0.0}, 3).passed);
  std::mt19937_64 rng(88);
  for (int i = 0; i < 10000; ++i) {
    const auto y = mean_one(rng, 1 + i % 8);
    ASSERT_TRUE(check_lemma_gain(y, 8).passed) << i;
  }
}

TEST(LemmaGain, ReportsViolationsForNonUnitMean) {
  // Y = 2 surely: t_2 = 0 while t_3 > 0, outside the lemma's setting.
  const auto r = check_lemma_gain(std::vector<double>{1.0, 1.0}, 4);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.margin, -(1.0 / 3.0 - 1.0 / 5.0) / 4.0, 1e-15);
  EXPECT_EQ(r.argmin["j"].get<int>(), 4);
}

TEST(Grid, EnumeratesSortedVectors) {
  const int units = grid_units(0.05);
  EXPECT_EQ(units, 20);
  EXPECT_THROW(grid_units(0.3), Error);
  const auto vs = grid_vectors(2, units, units, units);
  // Nonincreasing pairs (a, b) with a + b = 20: a = 10..20.
  EXPECT_EQ(vs.size(), 11u);
  for (const auto& g : vs) {
    EXPECT_NEAR(g.p[0] + g.p[1], 1.0, 1e-12);
    EXPECT_GE(g.p[0], g.p[1]);
  }
}

TEST(Oneside, SmallM) {
  EXPECT_NEAR(one_sided_binomial(1), 0.5, 1e-15);
  EXPECT_NEAR(one_sided_binomial(2), 0.4583333333333333, 1e-15);
  const auto r2 = verify_oneside(2, 0.05);
  EXPECT_TRUE(r2.passed);
  EXPECT_NEAR(r2.min_value, one_sided_binomial(2), 1e-12);
  // The minimum is attained (among ties) by a degenerate vector against the uniform one.
  const std::vector<double> one{1.0, 0.0}, half{0.5, 0.5};
  EXPECT_NEAR(inv_max_expectation(one, half), r2.min_value, 1e-12);
  EXPECT_FALSE(r2.details["literal_holds"].get<bool>());
  // m = 1 forces Y = Z = 1: both forms give 1/2.
  const auto r1 = verify_oneside(1, 0.05);
  EXPECT_NEAR(r1.min_value, 0.5, 1e-15);
  EXPECT_TRUE(r1.details["literal_holds"].get<bool>());
  EXPECT_TRUE(verify_oneside(3, 0.1).passed);
}

TEST(Oneside, UniformMinimizesOneSided) {
  for (std::size_t m = 1; m <= 4; ++m) {
    const auto r = verify_one_side_uniform(m, 0.05);
    EXPECT_TRUE(r.passed) << m;
    if (m == 3) continue;  // 1/3 is off the grid
    const auto y = r.argmin["y"].get<std::vector<double>>();
    for (double v : y) EXPECT_NEAR(v, 1.0 / m, 1e-12);
  }
}

TEST(EqualSplit, Examples) {
  const auto m1 = verify_equal_split(0.3, 1, 0.05);
  EXPECT_TRUE(m1.passed);
  EXPECT_NEAR(m1.margin, 0.0, 1e-15);
  EXPECT_TRUE(verify_equal_split(0.5, 2, 0.05).passed);
  const std::vector<double> y{0.1, 0.3}, yr{0.3, 0.1}, z{0.2, 0.05};
  EXPECT_NEAR(transfer_objective(0.4, y, z, 1.0 / 6.0), transfer_objective(0.4, yr, z, 1.0 / 6.0), 1e-15);
}

TEST(EqualSplit, ObjectiveAgainstDefinition) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 100; ++i) {
    const auto y = random_probs(rng, 2), z = random_probs(rng, 3);
    const double x0 = 0.05 + 0.9 * (i / 100.0);
    double expected = x0 * oracle::inv_max(y, z);
    for (double a : y) expected += (x0 * a * a - x0 * x0 * a) / 6.0;
    for (double a : z) expected += (x0 * a * a - x0 * x0 * a) / 6.0;
    EXPECT_NEAR(transfer_objective(x0, y, z, 1.0 / 6.0), expected, 1e-14);
  }
}

TEST(EqualSplit, FailsWithoutTransfers) {
  bool any_fail = false;
  for (int i = 1; i <= 10; ++i) any_fail |= !verify_equal_split(i / 10.0, 2, 0.05, 0.0).passed;
  EXPECT_TRUE(any_fail);
}

TEST(PoissonSeries, Examples) {
  for (std::size_t t : {0u, 3u, 15u}) EXPECT_NEAR(poisson_truncated_series(1.0, t), 1.0, 1e-15);
  EXPECT_NEAR(poisson_truncated_series(0.0, 0), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(poisson_truncated_series(0.5, 15), poisson_pair_expectation(0.5), 1e-6);
}

TEST(PoissonSeries, MatchesDirectDoubleSum) {
  EXPECT_NEAR(poisson_pair_expectation(0.0), oracle::poisson_inv_max(), 1e-13);
}

TEST(PoissonSeries, MonotoneInTruncation) {
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    for (std::size_t t = 0; t < 20; ++t)
      EXPECT_LE(poisson_truncated_series(x, t), poisson_truncated_series(x, t + 1) + 1e-16);
    EXPECT_LE(poisson_truncated_series(x, 20), poisson_pair_expectation(x) + 1e-16);
  }
}

TEST(Envelope, Endpoints) {
  EXPECT_NEAR(unweighted_envelope(1.0), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(unweighted_envelope(0.0), 0.0);
  EXPECT_NEAR(unweighted_envelope_ratio(0.0), poisson_truncated_series(0.0, 15), 1e-15);
  EXPECT_NEAR(unweighted_envelope_ratio(0.0), 0.47622, 5e-6);
}

TEST(Envelope, InteriorMinimumIsReported) {
  // The grid minimum lies in the interior, below the value at x = 0.
  const auto r = scan_unweighted_envelope();
  EXPECT_EQ(r.points, 1001u);
  EXPECT_NEAR(r.argmin["x"].get<double>(), 0.219, 1e-12);
  EXPECT_NEAR(r.min_value, 0.46785, 1e-5);
  EXPECT_LT(r.min_value, r.details["value_at_zero"].get<double>());
}

TEST(WeightedConstant, ClosedFormSeriesAndFiniteM) {
  const auto k = weighted_kernel_constant();
  EXPECT_NEAR(k.closed_form, 1.0 - 1.5 / std::exp(1.0), 1e-16);
  EXPECT_GE(k.closed_form, 0.4481);
  EXPECT_NEAR(k.series, k.closed_form, 1e-12);
  EXPECT_NEAR(k.poisson_direct, k.closed_form, 1e-12);
  EXPECT_NEAR(one_sided_binomial(50), k.closed_form, 5e-3);
  const double golden[] = {0.5, 0.458333333, 0.453703704, 0.451953125, 0.45104};
  for (std::size_t m = 1; m <= 5; ++m) EXPECT_NEAR(one_sided_binomial(m), golden[m - 1], 1e-6);
}

TEST(WeightedFloorGrid, SmallM) {
  for (std::size_t m = 1; m <= 3; ++m) EXPECT_TRUE(verify_weighted_floor_grid(m, 0.1).passed) << m;
}

TEST(GeneralConstant, Value) {
  const double c = general_bound_constant();
  EXPECT_GE(c, 0.4323);
  EXPECT_NEAR(c, 0.43233235838169365, 1e-15);
}

TEST(LemmaContinuous, Examples) {
  Instance one(GraphKind::kGeneral, 2, {{0, 1, 1.0}});
  auto r = check_lemma_continuous(SampledGraph(one));
  EXPECT_DOUBLE_EQ(r.lhs, 1.0);
  EXPECT_DOUBLE_EQ(r.rhs, 1.0);
  r = check_lemma_continuous(SampledGraph::from_mask(one, 1));
  EXPECT_DOUBLE_EQ(r.lhs, 3.0);
  EXPECT_TRUE(sweep_lemma_continuous(500, 1).passed);
}

TEST(LemmaContinuous, AgainstOracleGains) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    const auto inst = oracle::random_instance(rng, GraphKind::kGeneral, 5, 8, true);
    const std::uint64_t mask = rng() & ((std::uint64_t{1} << inst.num_edges()) - 1);
    double lhs = 2.0 * oracle::max_matching(inst, mask), rhs = 0.0;
    for (std::size_t e = 0; e < inst.num_edges(); ++e) {
      rhs += inst.edge(e).x * inst.edge(e).w;
      lhs += inst.edge(e).x * (oracle::max_matching(inst, mask | (1ULL << e)) -
                               oracle::max_matching(inst, mask & ~(1ULL << e)));
    }
    const auto r = check_lemma_continuous(SampledGraph::from_mask(inst, mask));
    EXPECT_NEAR(r.lhs, lhs, 1e-9);
    EXPECT_NEAR(r.rhs, rhs, 1e-12);
    EXPECT_TRUE(r.passed);
  }
}

TEST(Phi, Examples) {
  Instance one(GraphKind::kGeneral, 2, {{0, 1, 1.0}});
  const auto curve = phi_curve(one, 10, PhiMode::kExact);
  ASSERT_EQ(curve.size(), 11u);
  for (const auto& p : curve) EXPECT_NEAR(p.phi, p.t, 1e-15);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto inst = oracle::random_instance(rng, GraphKind::kGeneral, 5, 8, true);
    const auto c = phi_curve(inst, 100, PhiMode::kExact);
    EXPECT_EQ(c.front().phi, 0.0);
    const double frac = fractional_value(inst);
    EXPECT_NEAR(c.back().phi, oracle::expected_matching(inst), 1e-9);
    const auto audit = audit_phi_curve(c, frac);
    EXPECT_TRUE(audit.passed) << audit.margin;
    EXPECT_GE(std::exp(2.0) * c.back().phi, 0.5 * (std::exp(2.0) - 1.0) * frac - 1e-9);
  }
}

TEST(Phi, MonteCarloTracksExact) {
  Instance inst(GraphKind::kGeneral, 4, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 3, 0.5}, {0, 3, 0.5}});
  EstimatorOptions opt;
  opt.samples = 20000;
  opt.seed = 3;
  const auto mc = phi_curve(inst, 4, PhiMode::kMonteCarlo, opt);
  const auto ex = phi_curve(inst, 4, PhiMode::kExact);
  for (std::size_t i = 0; i < mc.size(); ++i) EXPECT_NEAR(mc[i].phi, ex[i].phi, 4 * mc[i].std_error + 1e-12);
}
