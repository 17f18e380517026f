// Copyright 2026 The putbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "putbound/prob.h"

#include <algorithm>
#include <numeric>

#include "gtest/gtest.h"
#include "putbound/error.h"
#include "putbound/rng.h"
#include "test_util.h"

namespace putbound {
namespace {

using testing::demo_joint;
using testing::random_joint;
using testing::random_mechanism;
using testing::uniform_joint;

TEST(Alphabet, RejectsEmptyAndDuplicates) {
  EXPECT_THROW(Alphabet({}), Error);
  EXPECT_THROW(Alphabet({"a", "a"}), Error);
  const Alphabet a({"a", "b"});
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.index("b"), 1u);
  EXPECT_FALSE(a.index("c").has_value());
}

TEST(JointDistribution, ValidConstruction) {
  const JointDistribution q = demo_joint();
  EXPECT_DOUBLE_EQ(q(0, 0), 0.42);
  EXPECT_DOUBLE_EQ(q(1, 1), 0.24);
}

TEST(JointDistribution, DegenerateRowAllowed) {
  const JointDistribution q(Alphabet::numbered(2), Alphabet::numbered(2),
                            {{0.5, 0.5}, {0.0, 0.0}});
  EXPECT_DOUBLE_EQ(marginal_s(q)[1], 0.0);
}

TEST(JointDistribution, RejectsBadMass) {
  EXPECT_THROW(JointDistribution(Alphabet::numbered(2), Alphabet::numbered(2),
                                 {{0.5, 0.6}, {0.0, 0.0}}),
               Error);  // MassNotOne: total 1.1
  EXPECT_THROW(JointDistribution(Alphabet::numbered(2), Alphabet::numbered(2),
                                 {{1.2, -0.2}, {0.0, 0.0}}),
               Error);  // NegativeMass
  EXPECT_THROW(JointDistribution(Alphabet::numbered(2), Alphabet::numbered(2),
                                 std::vector<double>{0.5, 0.5}),
               Error);  // DimensionMismatch
}

TEST(JointDistribution, ExplicitNormalizeOnly) {
  const JointDistribution q(Alphabet::numbered(2), Alphabet::numbered(2),
                            std::vector<double>{2.0, 1.0, 1.0, 0.0}, true);
  EXPECT_DOUBLE_EQ(q(0, 0), 0.5);
  const double total =
      std::accumulate(q.mass().begin(), q.mass().end(), 0.0);
  EXPECT_NEAR(total, 1.0, kMassTol);
}

TEST(Marginals, DemoMatrixByHand) {
  const JointDistribution q = demo_joint();
  const std::vector<double> ps = marginal_s(q);
  EXPECT_NEAR(ps[0], 0.60, 1e-15);
  EXPECT_NEAR(ps[1], 0.40, 1e-15);
  const std::vector<double> px = marginal_x(q);
  EXPECT_NEAR(px[0], 0.58, 1e-15);
  EXPECT_NEAR(px[1], 0.42, 1e-15);
}

TEST(Marginals, UniformAndPointMass) {
  const std::vector<double> ps = marginal_s(uniform_joint(2, 2));
  EXPECT_DOUBLE_EQ(ps[0], 0.5);
  EXPECT_DOUBLE_EQ(ps[1], 0.5);
  const JointDistribution point(Alphabet::numbered(2), Alphabet::numbered(2),
                                {{1.0, 0.0}, {0.0, 0.0}});
  EXPECT_DOUBLE_EQ(marginal_x(point)[0], 1.0);
  EXPECT_DOUBLE_EQ(marginal_x(point)[1], 0.0);
}

TEST(PushForward, IdentityChannelKeepsQ) {
  const JointDistribution q = demo_joint();
  const Mechanism identity(q.x_alphabet(), {{1.0, 0.0}, {0.0, 1.0}});
  const PushForward pf = push_forward(q, identity);
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t y = 0; y < 2; ++y) {
      EXPECT_NEAR(pf.sy_joint(s, y), q(s, y), 1e-15);
    }
  }
}

TEST(PushForward, ConstantChannelCollapsesToMarginal) {
  const JointDistribution q = demo_joint();
  const Mechanism constant(q.x_alphabet(), {{1.0, 0.0}, {1.0, 0.0}});
  const PushForward pf = push_forward(q, constant);
  const std::vector<double> ps = marginal_s(q);
  EXPECT_NEAR(pf.sy_joint(0, 0), ps[0], 1e-15);
  EXPECT_NEAR(pf.sy_joint(1, 0), ps[1], 1e-15);
  EXPECT_DOUBLE_EQ(pf.sy_joint(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(pf.sy_joint(1, 1), 0.0);
}

TEST(PushForward, TwoByTwoByHandSummation) {
  const JointDistribution q = demo_joint();
  const Mechanism w(q.x_alphabet(), {{0.9, 0.1}, {0.2, 0.8}});
  const PushForward pf = push_forward(q, w);
  // Oracle: direct triple-sum of the 2x2x2 composition.
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t y = 0; y < 2; ++y) {
      double want = 0.0;
      for (std::size_t x = 0; x < 2; ++x) want += q(s, x) * w(x, y);
      EXPECT_NEAR(pf.sy_joint(s, y), want, 1e-15);
    }
  }
  const std::vector<double> px = marginal_x(q);
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      EXPECT_NEAR(pf.xy_joint(x, y), px[x] * w(x, y), 1e-15);
    }
  }
}

TEST(PushForward, OutputsAreValidAndPreserveSMarginal) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const JointDistribution q = random_joint(rng, 3, 4);
    const Mechanism w = random_mechanism(rng, q.x_alphabet(), 3);
    const PushForward pf = push_forward(q, w);
    const double sy_total = std::accumulate(pf.sy_joint.mass().begin(),
                                            pf.sy_joint.mass().end(), 0.0);
    const double xy_total = std::accumulate(pf.xy_joint.mass().begin(),
                                            pf.xy_joint.mass().end(), 0.0);
    EXPECT_NEAR(sy_total, 1.0, 1e-12);
    EXPECT_NEAR(xy_total, 1.0, 1e-12);
    const std::vector<double> before = marginal_s(q);
    const std::vector<double> after = marginal_s(pf.sy_joint);
    for (std::size_t s = 0; s < before.size(); ++s) {
      EXPECT_NEAR(before[s], after[s], 1e-12);
    }
  }
}

TEST(PushForward, AlphabetMismatchRejected) {
  const JointDistribution q = demo_joint();
  const Mechanism w(Alphabet({"a", "b"}), {{1.0, 0.0}, {0.0, 1.0}});
  EXPECT_THROW(push_forward(q, w), Error);
}

TEST(L1Distance, KnownValues) {
  const JointDistribution q = demo_joint();
  EXPECT_DOUBLE_EQ(l1_distance(q, q), 0.0);
  const JointDistribution a(Alphabet::numbered(2), Alphabet::numbered(2),
                            {{1.0, 0.0}, {0.0, 0.0}});
  const JointDistribution b(Alphabet::numbered(2), Alphabet::numbered(2),
                            {{0.0, 1.0}, {0.0, 0.0}});
  EXPECT_DOUBLE_EQ(l1_distance(a, b), 2.0);
  // Termwise sum against the uniform: .17 + .07 + .09 + .01.
  EXPECT_NEAR(l1_distance(q, uniform_joint(2, 2)), 0.34, 1e-15);
}

TEST(L1Distance, MetricAxiomsOnRandomTriples) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const JointDistribution a = random_joint(rng, 2, 3);
    const JointDistribution b = random_joint(rng, 2, 3);
    const JointDistribution c = random_joint(rng, 2, 3);
    const double ab = l1_distance(a, b);
    const double ba = l1_distance(b, a);
    const double ac = l1_distance(a, c);
    const double cb = l1_distance(c, b);
    EXPECT_GE(ab, 0.0);
    EXPECT_DOUBLE_EQ(ab, ba);
    EXPECT_LE(ab, ac + cb + 1e-12);
  }
}

TEST(Empirical, CountsByHand) {
  const SampleSet s(Alphabet::numbered(2), Alphabet::numbered(2),
                    {{0, 0}, {0, 0}, {1, 1}, {0, 1}});
  const JointDistribution q = empirical(s);
  EXPECT_DOUBLE_EQ(q(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(q(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(q(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(q(1, 1), 0.25);
}

TEST(Empirical, PointMassAndEmpty) {
  const SampleSet s(Alphabet::numbered(2), Alphabet::numbered(2),
                    std::vector<std::pair<std::uint32_t, std::uint32_t>>(
                        7, {1, 0}));
  const JointDistribution q = empirical(s);
  EXPECT_DOUBLE_EQ(q(1, 0), 1.0);
  EXPECT_THROW(
      empirical(SampleSet(Alphabet::numbered(2), Alphabet::numbered(2), {})),
      Error);
}

TEST(Empirical, SampleOrderIrrelevant) {
  SampleSet s(Alphabet::numbered(2), Alphabet::numbered(3),
              {{0, 0}, {1, 2}, {0, 1}, {1, 1}, {0, 2}, {0, 0}});
  const JointDistribution before = empirical(s);
  std::reverse(s.pairs.begin(), s.pairs.end());
  const JointDistribution after = empirical(s);
  EXPECT_DOUBLE_EQ(l1_distance(before, after), 0.0);
}

}  // namespace
}  // namespace putbound
