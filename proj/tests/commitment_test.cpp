#include <gtest/gtest.h>

#include <map>

#include "edthresh/commitment.hpp"

namespace {

using namespace edthresh;

TEST(Commitment, OpensToCommittedValue) {
  auto prof = toy_profile();
  SeededRandom rng(1);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Bytes> parts;
    for (std::size_t k = 0, n = rng.below(5).get_ui(); k < n; ++k) parts.push_back(rng.bytes(rng.below(20).get_ui()));
    auto cp = commit(prof, parts, rng);
    auto opened = open(prof, cp.C, cp.D);
    ASSERT_TRUE(opened.has_value());
    ASSERT_EQ(*opened, parts);
  }
}

TEST(Commitment, FreshNonceEachTime) {
  auto prof = ed25519_profile(std::nullopt);
  SeededRandom rng(2);
  auto a = commit(prof, {to_bytes("same")}, rng);
  auto b = commit(prof, {to_bytes("same")}, rng);
  EXPECT_NE(a.C, b.C);
}

// Independent recomputation: SHA-512 over frame("COM", nonce, len(value) || value).
TEST(Commitment, FixedNonceVector) {
  Bytes nonce(32);
  for (int i = 0; i < 32; ++i) nonce[i] = static_cast<std::uint8_t>(i);
  Bytes D = make_decommitment(nonce, {to_bytes("hello")});
  EXPECT_EQ(to_hex(commitment_of(ed25519_profile(std::nullopt), D)),
            "367586458fbf868bca6be7f450bc4b1614b7863ab746ebb749fbebdf4419c23f6e04ae49672ea5d7a001287b744e6681befc157e28372d756d4430b27972426f");
  EXPECT_EQ(to_hex(commitment_of(toy_profile(), D)), "36758645");
}

TEST(Commitment, FlippedBitInCommitmentRejected) {
  auto prof = toy_profile();
  SeededRandom rng(3);
  auto cp = commit(prof, {to_bytes("v")}, rng);
  cp.C[0] ^= 1;
  EXPECT_FALSE(open(prof, cp.C, cp.D).has_value());
}

TEST(Commitment, SameNonceDifferentValueRejected) {
  auto prof = ed25519_profile(std::nullopt);
  SeededRandom rng(4);
  auto cp = commit(prof, {to_bytes("value")}, rng);
  Bytes nonce(cp.D.begin(), cp.D.begin() + kCommitNonceBytes);
  Bytes forged = make_decommitment(nonce, {to_bytes("other")});
  EXPECT_NE(commitment_of(prof, forged), cp.C);
  EXPECT_FALSE(open(prof, cp.C, forged).has_value());
}

TEST(Commitment, ShortDecommitmentRejected) {
  auto prof = toy_profile();
  EXPECT_FALSE(open(prof, Bytes(4), Bytes(10)).has_value());
}

// Smoke test at toy size (32-bit commitments): random openings of one commitment never
// produce a second value.
TEST(Commitment, BindingProbe) {
  auto prof = toy_profile();
  SeededRandom rng(5);
  auto cp = commit(prof, {to_bytes("target")}, rng);
  for (int i = 0; i < 10000; ++i) {
    Bytes D = make_decommitment(rng.bytes(kCommitNonceBytes), {rng.bytes(6)});
    ASSERT_FALSE(open(prof, cp.C, D).has_value());
  }
}

}  // namespace
