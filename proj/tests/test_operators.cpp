// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bjlab/diagonal.hpp"
#include "bjlab/error.hpp"
#include "bjlab/operator.hpp"
#include "bjlab/sequence.hpp"

using namespace bjlab;

namespace
{

struct Scan
{
  double sup = 0.0;
  std::size_t first_hit = 0;
  std::size_t hits = 0;
  double running_max_after_1000 = 0.0;
};

// Brute force over n <= limit, hits counted against the closed-form sup.
Scan scan(const SequenceSpec &s, std::size_t limit, double sup_abs)
{
  Scan out;
  for (std::size_t n = 1; n <= limit; ++n)
  {
    const double v = std::abs(s(n));
    out.sup = std::max(out.sup, v);
    if (std::abs(v - sup_abs) <= 1e-12 * std::max(1.0, sup_abs))
    {
      if (!out.first_hit) out.first_hit = n;
      ++out.hits;
    }
    if (n > 1000) out.running_max_after_1000 = std::max(out.running_max_after_1000, v);
  }
  return out;
}

std::vector<SequenceSpec> sample_specs()
{
  std::vector<SequenceSpec> v = {
    SequenceSpec::constant(1.0),
    SequenceSpec::constant(-0.3).with_override(4, 0.7),
    SequenceSpec::geometric(1.0, 0.5),
    SequenceSpec::geometric(-2.0, -0.9).with_override(1, 0.1),
    SequenceSpec::power(1.0, -1.0, 1.0),
    SequenceSpec::power(0.5, 1.0, 1.0).with_override(1, 1.0),
    SequenceSpec::power(0.0, 1.0, 2.0),
    SequenceSpec::power(-1.0, 3.0, 0.5),
    SequenceSpec::power(0.25, -0.5, 1.5).with_override(10, -0.25),
    SequenceSpec::periodic({0.5, -1.0, 0.25}),
    SequenceSpec::periodic({0.0, 1.0}).with_override(2, 0.0).with_override(5, 1.5),
  };
  return v;
}

}  // namespace

TEST(Apply, Examples)
{
  Eigen::MatrixXd m(2, 2);
  m << 1, 1, 0, 0;
  const LpVector y = bjlab::apply(make_dense(m, 2, 2), LpVector({1, 1}, 2));
  EXPECT_EQ(y.coords(), (std::vector<double>{2, 0}));

  Eigen::MatrixXd h(1, 1);
  h << 2;
  const StructuredOp s = make_structured(h, SequenceSpec::geometric(1.0, 0.5), 2);
  const LpVector z = bjlab::apply(s, LpVector::unit(3, 3, 2));
  EXPECT_EQ(z.at(0), 0.0);
  EXPECT_EQ(z.at(1), 0.0);
  EXPECT_DOUBLE_EQ(z.at(2), 0.25);

  const auto pr = make_coordinate_projection(FiniteMask{{1, 3}}, 2);
  EXPECT_EQ(bjlab::apply(pr, LpVector({5, 7, 9}, 2)).coords(), (std::vector<double>{5, 0, 9}));
}

TEST(Apply, DenseDimensionMismatch)
{
  try
  {
    bjlab::apply(make_dense(Eigen::MatrixXd::Identity(2, 2), 2, 2), LpVector({1, 2, 3}, 2));
    FAIL();
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Apply, StructuredHeadMatchesDense)
{
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 20; ++k)
  {
    Eigen::MatrixXd h = Eigen::MatrixXd::NullaryExpr(3, 3, [&] { return u(gen); });
    const StructuredOp s = make_structured(h, SequenceSpec::constant(0.7), 1.5);
    const LpVector x({u(gen), u(gen), u(gen)}, 1.5);
    const LpVector a = bjlab::apply(s, x), b = bjlab::apply(make_dense(h, 1.5, 1.5), x);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
  }
}

TEST(SeqAnalytics, Examples)
{
  SeqAnalytics a = seq_analytics(SequenceSpec::constant(1.0));
  EXPECT_EQ(a.sup_abs, 1.0);
  EXPECT_EQ(a.limsup_abs, 1.0);
  EXPECT_EQ(a.attainment, Attainment::AttainedInfinitely);

  a = seq_analytics(SequenceSpec::power(1.0, -1.0, 1.0));
  EXPECT_EQ(a.sup_abs, 1.0);
  EXPECT_EQ(a.limsup_abs, 1.0);
  EXPECT_EQ(a.attainment, Attainment::NotAttained);

  // k_1 = 1 by override, k_2 = 1/2 + 1/2 = 1 ties it.
  a = seq_analytics(SequenceSpec::power(0.5, 1.0, 1.0).with_override(1, 1.0));
  EXPECT_EQ(a.sup_abs, 1.0);
  EXPECT_EQ(a.limsup_abs, 0.5);
  EXPECT_EQ(a.attainment, Attainment::AttainedFinitely);
  EXPECT_EQ(a.indices, (std::vector<std::size_t>{1, 2}));
}

TEST(SeqAnalytics, InvalidParameters)
{
  EXPECT_THROW(SequenceSpec::geometric(1.0, 1.0), Error);
  EXPECT_THROW(SequenceSpec::geometric(1.0, -1.5), Error);
  EXPECT_THROW(SequenceSpec::power(1.0, 1.0, 0.0), Error);
  EXPECT_THROW(SequenceSpec::power(1.0, 1.0, -2.0), Error);
  EXPECT_THROW(SequenceSpec::periodic({}), Error);
}

TEST(SeqAnalytics, AgreesWithBruteForce)
{
  for (const SequenceSpec &s : sample_specs())
  {
    const SeqAnalytics a = s.analytics();
    const Scan sc = scan(s, 100000, a.sup_abs);
    EXPECT_LE(sc.sup, a.sup_abs * (1 + 1e-12));
    switch (a.attainment)
    {
    case Attainment::AttainedFinitely:
      EXPECT_NEAR(sc.sup, a.sup_abs, 1e-12);
      EXPECT_EQ(sc.hits, a.indices.size());
      EXPECT_EQ(sc.first_hit, a.indices.front());
      break;
    case Attainment::AttainedInfinitely:
      EXPECT_NEAR(sc.sup, a.sup_abs, 1e-12);
      EXPECT_GT(sc.hits, 1000u);
      break;
    case Attainment::NotAttained:
      EXPECT_EQ(sc.hits, 0u);
      EXPECT_LT(sc.sup, a.sup_abs);
      break;
    }
    if (s.decays()) EXPECT_NEAR(sc.running_max_after_1000, a.limsup_abs, 1e-2);
    else EXPECT_NEAR(sc.running_max_after_1000, a.limsup_abs, std::abs(a.limsup_abs) * 1e-2 + 1e-9);
  }
}

TEST(SeqAnalytics, DecayingRunningMaxTight)
{
  // Running max beyond 10^3 within 1e-9 of the limsup for fast decay.
  for (const SequenceSpec &s : {SequenceSpec::geometric(1.0, 0.5), SequenceSpec::geometric(-3.0, 0.9),
                                SequenceSpec::power(0.0, 1.0, 4.0)})
  {
    const Scan sc = scan(s, 100000, s.analytics().sup_abs);
    EXPECT_LE(std::abs(sc.running_max_after_1000 - s.limsup_abs()), 1e-9);
  }
}

TEST(SeqAnalytics, OverridesDoNotChangeLimsup)
{
  const SequenceSpec base = SequenceSpec::periodic({0.5, -0.25});
  const SequenceSpec o = base.with_override(1, 3.0).with_override(7, -9.0);
  EXPECT_EQ(o.limsup_abs(), base.limsup_abs());
  EXPECT_EQ(o.analytics().sup_abs, 9.0);
  EXPECT_EQ(o.analytics().indices, (std::vector<std::size_t>{7}));
}

TEST(Diagonal, DerivedSupMatchesScan)
{
  // Sum and product tails must certify and agree with a long prefix scan.
  const Diagonal one(SequenceSpec::constant(1.0));
  const std::vector<Diagonal> ds = {
    one.plus(Diagonal(SequenceSpec::power(0.0, 1.0, 2.0)), -0.7),
    one.plus(Diagonal(SequenceSpec::power(0.0, 1.0, 2.0)), 0.3),
    Diagonal(SequenceSpec::periodic({1, 0, 1})).times(Factor{SequenceSpec::geometric(1, 0.5), 0, SequenceSpec::periodic({1, 0, 1})}),
    Diagonal(SequenceSpec::geometric(2.0, 0.5)).shifted(3).plus(Diagonal(SequenceSpec::periodic({0.1, -0.2})), 1.0),
  };
  for (const Diagonal &d : ds)
  {
    const TailSup t = d.sup_analysis();
    ASSERT_TRUE(t.certified);
    double sup = 0.0;
    for (std::size_t n = 1; n <= 100000; ++n) sup = std::max(sup, std::abs(d(n)));
    EXPECT_LE(sup, t.sup_abs * (1 + 1e-12));
    EXPECT_GE(sup, t.sup_abs * (1 - 1e-9));
    if (t.attainment == Attainment::AttainedFinitely) EXPECT_NEAR(std::abs(d(t.indices.front())), t.sup_abs, 1e-15);
  }
}

TEST(CoordinateProjection, Examples)
{
  const auto p = make_coordinate_projection(FiniteMask{{1}}, 2, 2);
  EXPECT_EQ(bjlab::apply(p, LpVector({3, 4}, 2)).coords(), (std::vector<double>{3, 0}));

  const auto inf = make_coordinate_projection(SequenceSpec::constant(1.0).with_override(1, 0.0), 3);
  EXPECT_TRUE(inf.infinite_rank());
  EXPECT_FALSE(inf.contains(1));
  EXPECT_TRUE(inf.contains(2));
  EXPECT_TRUE(inf.contains(1000));

  const auto q = make_coordinate_projection(FiniteMask{{1}}, 3);
  const LpVector x({1, 1}, 3);
  const LpVector px = bjlab::apply(q, x);
  const double lhs = std::pow(x.norm(), 3), rhs = std::pow(px.norm(), 3) + std::pow(x.axpy(-1.0, px).norm(), 3);
  EXPECT_NEAR(lhs, 2.0, 1e-14);
  EXPECT_NEAR(rhs, 2.0, 1e-14);
}

TEST(CoordinateProjection, IdempotentAndLpIdentity)
{
  std::mt19937_64 gen(41);
  std::normal_distribution<double> d;
  for (double p : {1.0, 1.5, 2.0, 3.0})
    for (int k = 0; k < 100; ++k)
    {
      const auto pr = k % 2 ? make_coordinate_projection(FiniteMask{{1, 4, 5}}, p)
                            : make_coordinate_projection(SequenceSpec::periodic({0, 1, 1}), p);
      std::vector<double> c(8);
      for (double &v : c) v = d(gen);
      const LpVector x(c, p);
      const LpVector px = bjlab::apply(pr, x);
      EXPECT_EQ(bjlab::apply(pr, px).coords(), px.coords());
      const double lhs = std::pow(x.norm(), p);
      const double rhs = std::pow(px.norm(), p) + std::pow(x.axpy(-1.0, px).norm(), p);
      EXPECT_LE(std::abs(lhs - rhs), 1e-12 * lhs);
    }
}

TEST(ComposeDiagWeights, Examples)
{
  const StructuredOp id = make_structured(Eigen::MatrixXd(0, 0), SequenceSpec::constant(1.0), 2);
  const OperatorRep a = compose_diag_weights(id, SequenceSpec::power(0.0, 1.0, 2.0));
  for (std::size_t m = 1; m <= 50; ++m)
    EXPECT_DOUBLE_EQ(bjlab::apply(a, LpVector::unit(m, m, 2)).at(m - 1), 1.0 / static_cast<double>(m * m));

  const double w[] = {1.0, 0.25};
  const OperatorRep b = compose_diag_weights(make_dense(Eigen::MatrixXd::Identity(2, 2), 2, 2), std::span<const double>(w));
  const Eigen::MatrixXd &bm = std::get<DenseOp>(b).matrix;
  EXPECT_EQ(bm(0, 0), 1.0);
  EXPECT_EQ(bm(1, 1), 0.25);
  EXPECT_EQ(bm(0, 1), 0.0);

  // Even coordinates; the k-th of them gets 2^-k.
  const auto pr = make_coordinate_projection(SequenceSpec::periodic({0, 1}), 1.5);
  const OperatorRep c = compose_diag_weights(pr, SequenceSpec::geometric(1.0, 0.5));
  for (std::size_t k = 1; k <= 20; ++k)
  {
    EXPECT_DOUBLE_EQ(bjlab::apply(c, LpVector::unit(2 * k, 2 * k, 1.5)).at(2 * k - 1), std::ldexp(1.0, -static_cast<int>(k)));
    EXPECT_EQ(bjlab::apply(c, LpVector::unit(2 * k - 1, 2 * k, 1.5)).at(2 * k - 2), 0.0);
  }
}

TEST(ComposeDiagWeights, RejectsNonDecaying)
{
  const StructuredOp id = make_structured(Eigen::MatrixXd(0, 0), SequenceSpec::constant(1.0), 2);
  for (const SequenceSpec &w : {SequenceSpec::constant(0.5), SequenceSpec::power(0.1, 0.5, 1.0),
                                SequenceSpec::periodic({1.0, 0.5})})
  {
    try
    {
      compose_diag_weights(id, w);
      FAIL();
    }
    catch (const Error &e)
    {
      EXPECT_EQ(e.code(), ErrorCode::InvalidWitnessWeights);
    }
  }
}

TEST(LinearCombination, MixedShapesNamed)
{
  const StructuredOp s = make_structured(Eigen::MatrixXd(0, 0), SequenceSpec::constant(1.0), 2);
  try
  {
    linear_combination(s, 1.0, make_dense(Eigen::MatrixXd::Identity(2, 2), 2, 2), 1.0);
    FAIL();
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedCombination);
    EXPECT_NE(std::string(e.what()).find("dense 2x2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("structured"), std::string::npos);
  }
}
