#include <gtest/gtest.h>

#include <set>

#include "edthresh/hashing.hpp"
#include "edthresh/random.hpp"

namespace {

using namespace edthresh;

// chi^2 with 15 degrees of freedom, 0.999 quantile.
constexpr double kChi2Df15Q999 = 37.6973;

TEST(HashToScalar, Deterministic) {
  auto prof = toy_profile();
  EXPECT_EQ(hash_to_scalar(prof, "T", {to_bytes("x"), to_bytes("y")}),
            hash_to_scalar(prof, "T", {to_bytes("x"), to_bytes("y")}));
}

TEST(HashToScalar, FramingSeparatesSplits) {
  auto prof = ed25519_profile(std::nullopt);
  EXPECT_NE(hash_to_scalar(prof, "T", {to_bytes("ab"), to_bytes("c")}),
            hash_to_scalar(prof, "T", {to_bytes("a"), to_bytes("bc")}));
}

// Expected values from an independent little-endian read of SHA-512 over the framed input,
// reduced mod q (full digest for Ed25519, first 4 bytes for the toy profile).
TEST(HashToScalar, FixedVector) {
  std::vector<Bytes> parts{to_bytes("abc"), {}, {0x01, 0x02}};
  EXPECT_EQ(hash_to_scalar(ed25519_profile(std::nullopt), "SIG", parts),
            from_dec("1675125510453930667610659942825161125323171144536181253311842626284048650797"));
  EXPECT_EQ(hash_to_scalar(toy_profile(), "SIG", parts), 81);
}

TEST(HashToScalar, AlwaysBelowQ) {
  auto prof = toy_profile();
  for (unsigned i = 0; i < 2000; ++i) {
    Int v = hash_to_scalar(prof, "T", {to_le(Int(i), 4)});
    ASSERT_GE(v, 0);
    ASSERT_LT(v, prof.q());
  }
}

TEST(HashToScalar, FramingInjective) {
  auto prof = ed25519_profile(std::nullopt);
  SeededRandom rng(5);
  std::set<Bytes> framed;
  std::set<Int> digests;
  for (int i = 0; i < 1000; ++i) {
    // Lists whose plain concatenations collide often: short parts over a 2-letter alphabet.
    std::vector<Bytes> parts;
    std::size_t count = 1 + rng.below(4).get_ui();
    for (std::size_t k = 0; k < count; ++k) {
      Bytes p(rng.below(3).get_ui());
      for (auto& b : p) b = 'a' + static_cast<std::uint8_t>(rng.below(2).get_ui());
      parts.push_back(p);
    }
    if (!framed.insert(frame("T", parts)).second) continue;
    ASSERT_TRUE(digests.insert(hash_to_scalar(prof, "T", parts)).second);
  }
}

TEST(SecretScalar, EmptySumGivesTopBit) {
  auto prof = toy_profile();
  Bytes h(4, 0);
  EXPECT_EQ(mod(clamp_unreduced(prof, h, Clamp::wide), prof.q()), 15);  // 2^7 mod 113
}

TEST(SecretScalar, SingleTerm) {
  auto prof = toy_profile();
  Bytes h(4, 0);
  h[0] = 1 << prof.c;
  EXPECT_EQ(mod(clamp_unreduced(prof, h, Clamp::wide), prof.q()), (128 + 4) % 113);
}

// psi evaluated term by term from the printed formula, reading bits h_i of the n-bit
// truncation (h_n does not exist after truncation and contributes 0).
TEST(SecretScalar, AllOnesMatchesDirectEvaluation) {
  auto prof = toy_profile();
  Bytes h{0x3f, 0, 0, 0};  // h_0..h_5 = 1
  std::string bits = "111111";
  long expected = 1L << (prof.n + 1);
  for (unsigned i = prof.c; i <= prof.n; ++i) {
    int hi = i < bits.size() ? bits[i] - '0' : 0;
    expected += (1L << i) * hi;
  }
  EXPECT_EQ(expected, 188);
  EXPECT_EQ(mod(clamp_unreduced(prof, h, Clamp::wide), prof.q()), expected % 113);
}

TEST(SecretScalar, BitStructureBeforeReduction) {
  SeededRandom rng(9);
  for (auto prof : {toy_profile(), ed25519_profile(std::nullopt)}) {
    for (int i = 0; i < 500; ++i) {
      Bytes h = rng.bytes(prof.digest_bytes());
      Int v = clamp_unreduced(prof, h, Clamp::wide);
      for (unsigned bit = 0; bit < prof.c; ++bit) ASSERT_FALSE(test_bit(v, bit));
      ASSERT_TRUE(test_bit(v, prof.n + 1));
      ASSERT_EQ(bit_length(v), prof.n + 2);
      Int s = clamp_unreduced(prof, h, Clamp::standard);
      for (unsigned bit = 0; bit < prof.c; ++bit) ASSERT_FALSE(test_bit(s, bit));
      ASSERT_EQ(bit_length(s), prof.n + 1);
    }
  }
}

TEST(SecretScalar, RejectsWrongLength) {
  auto prof = toy_profile();
  EXPECT_THROW(secret_scalar(prof, Bytes(3)), std::invalid_argument);
}

TEST(Uniformity, UniformSamplerPasses) {
  auto prof = toy_profile();
  SeededRandom rng(21);
  double stat = chi_square_uniformity([&] { return rng.below(prof.q()); }, prof.q(), 10000, 16);
  EXPECT_LT(stat, kChi2Df15Q999);
}

TEST(Uniformity, ConstantSamplerFails) {
  auto prof = toy_profile();
  double stat = chi_square_uniformity([] { return Int(5); }, prof.q(), 10000, 16);
  EXPECT_GT(stat, kChi2Df15Q999);
}

TEST(Uniformity, HashOverCounterPasses) {
  auto prof = toy_profile();
  unsigned ctr = 0;
  double stat = chi_square_uniformity([&] { return hash_to_scalar(prof, "CTR", {to_le(Int(ctr++), 8)}); },
                                      prof.q(), 10000, 16);
  EXPECT_LT(stat, kChi2Df15Q999);
}

TEST(Uniformity, RejectsTooFewTrials) {
  EXPECT_THROW(chi_square_uniformity([] { return Int(0); }, 113, 100, 16), std::invalid_argument);
}

}  // namespace
