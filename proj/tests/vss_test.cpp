#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "edthresh/vss.hpp"

namespace {

using namespace edthresh;

class Vss : public ::testing::Test {
 protected:
  CurveProfile prof = toy_profile();
  SeededRandom rng{1};
};

TEST_F(Vss, DegreeOneEvaluatesToSecretAtZero) {
  auto set = share(prof, 77, 1, {1, 2, 3}, rng);
  EXPECT_EQ(eval_polynomial(prof.scalars, set.coefficients, 0), 77);
  EXPECT_EQ(set.commitments.front(), prof.mul_base(77));
}

TEST_F(Vss, TwoSharesGiveSecretAsTwiceFirstMinusSecond) {
  for (int i = 0; i < 100; ++i) {
    Int s = rng.below(prof.q());
    auto set = share(prof, s, 1, {1, 2}, rng);
    const auto& fq = prof.scalars;
    ASSERT_EQ(fq.sub(fq.mul(2, set.shares.at(1)), set.shares.at(2)), s);
  }
}

TEST_F(Vss, DegreeTwoLagrangeReconstruction) {
  std::vector<Int> idx{1, 2, 3};
  for (int i = 0; i < 100; ++i) {
    Int s = rng.below(prof.q());
    auto set = share(prof, s, 2, idx, rng);
    // Oracle: direct polynomial evaluation at each index.
    for (const auto& j : idx) ASSERT_EQ(set.shares.at(j), mod(set.coefficients[0] + set.coefficients[1] * j + set.coefficients[2] * j * j, prof.q()));
    Int acc = 0;
    for (const auto& j : idx) acc = prof.scalars.add(acc, prof.scalars.mul(lagrange_weight(prof.scalars, idx, j), set.shares.at(j)));
    ASSERT_EQ(acc, s);
  }
}

TEST_F(Vss, LagrangeWeightsForEachPair) {
  const auto& fq = prof.scalars;
  EXPECT_EQ(lagrange_weight(fq, {1, 2}, 1), 2);
  EXPECT_EQ(lagrange_weight(fq, {1, 2}, 2), fq.neg(1));
  EXPECT_EQ(lagrange_weight(fq, {1, 3}, 1), fq.div(3, 2));
  EXPECT_EQ(lagrange_weight(fq, {1, 3}, 3), fq.neg(fq.inv(2)));
  EXPECT_EQ(lagrange_weight(fq, {2, 3}, 2), 3);
  EXPECT_EQ(lagrange_weight(fq, {2, 3}, 3), fq.neg(2));
  EXPECT_THROW(lagrange_weight(fq, {1, 1}, 1), std::invalid_argument);
  EXPECT_THROW(lagrange_weight(fq, {1, 2}, 3), std::invalid_argument);
}

TEST_F(Vss, ReconstructionFromAnySubset) {
  std::vector<Int> all{1, 2, 3, 4, 5};
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t t = 1 + rng.below(3).get_ui();
    Int s = rng.below(prof.q());
    auto set = share(prof, s, t, all, rng);
    std::vector<Int> subset = all;
    for (std::size_t k = subset.size(); k > 1; --k) std::swap(subset[k - 1], subset[rng.below(k).get_ui()]);
    subset.resize(t + 1);
    Int acc = 0;
    for (const auto& i : subset) acc = prof.scalars.add(acc, prof.scalars.mul(lagrange_weight(prof.scalars, subset, i), set.shares.at(i)));
    ASSERT_EQ(acc, s);
  }
}

TEST_F(Vss, HonestShareAcceptedAndPerturbedRejected) {
  auto set = share(prof, 5, 1, {1, 2, 3}, rng);
  for (const auto& [j, y] : set.shares) {
    EXPECT_TRUE(verify_share(prof, j, y, set.commitments));
    EXPECT_FALSE(verify_share(prof, j, prof.scalars.add(y, 1), set.commitments));
  }
}

TEST_F(Vss, ReplacedCoefficientCommitmentCaught) {
  auto set = share(prof, 5, 1, {1, 2, 3}, rng);
  auto bad = set.commitments;
  bad[1] = prof.curve.add(bad[1], prof.base);
  int rejected = 0;
  for (Int j = 1; j < prof.q(); ++j) {
    Int y = eval_polynomial(prof.scalars, set.coefficients, j);
    rejected += !verify_share(prof, j, y, bad);
  }
  EXPECT_EQ(rejected, 112);  // every nonzero index: j * B != 0
}

TEST_F(Vss, AcceptsExactlyDealerSharesExhaustive) {
  auto set = share(prof, 31, 1, {1, 2, 3}, rng);
  for (const auto& [j, expected] : set.shares) {
    for (Int y = 0; y < prof.q(); ++y) ASSERT_EQ(verify_share(prof, j, y, set.commitments), y == expected);
  }
}

TEST_F(Vss, DuplicateOrZeroIndexRejected) {
  EXPECT_THROW(share(prof, 1, 1, {1, 1}, rng), std::invalid_argument);
  EXPECT_THROW(share(prof, 1, 1, {0, 1}, rng), std::invalid_argument);
  EXPECT_THROW(share(prof, 1, 1, {1, prof.q() + 1}, rng), std::invalid_argument);
}

// Dealer simulation without the secret: knowing only Y = sB, pick the adversary's share a and
// set C1 = aB - Y (adversary P1), or pick b and set C1 = (bB - Y) / 2 (adversary P2). Over all
// dealer randomness the (share, C0, C1) tuples are identical to a real sharing.
TEST_F(Vss, SimulatedDealerMatchesRealDistribution) {
  const auto& E = prof.curve;
  const auto& fq = prof.scalars;
  Int s = 58;
  EdPoint Y = prof.mul_base(s);
  using Tuple = std::tuple<Int, Bytes, Bytes>;
  for (int adversary : {1, 2}) {
    std::multiset<Tuple> real, simulated;
    for (Int m = 0; m < prof.q(); ++m) {
      auto set = share_with_coefficients(prof, {s, m}, {1, 2});
      real.insert({set.shares.at(adversary), E.encode(set.commitments[0]), E.encode(set.commitments[1])});
    }
    for (Int v = 0; v < prof.q(); ++v) {
      EdPoint C1 = adversary == 1 ? E.sub(prof.mul_base(v), Y) : E.mul(fq.inv(2), E.sub(prof.mul_base(v), Y));
      simulated.insert({v, E.encode(Y), E.encode(C1)});
      ASSERT_TRUE(verify_share(prof, adversary, v, {Y, C1}));
    }
    EXPECT_EQ(real, simulated) << "adversary P" << adversary;
  }
}

}  // namespace
