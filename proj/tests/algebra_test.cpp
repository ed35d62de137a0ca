#include <gtest/gtest.h>

#include <set>

#include "edthresh/profile_check.hpp"
#include "edthresh/random.hpp"

namespace {

using namespace edthresh;

class ToyAlgebra : public ::testing::Test {
 protected:
  CurveProfile prof = toy_profile();
  SeededRandom rng{7};

  std::vector<EdPoint> all_points() const {
    std::vector<EdPoint> pts;
    for (Int x = 0; x < prof.p(); ++x) {
      for (Int y = 0; y < prof.p(); ++y) {
        if (prof.curve.on_curve({x, y})) pts.push_back({x, y});
      }
    }
    return pts;
  }
};

TEST_F(ToyAlgebra, ProfileInvariantsHold) {
  auto problems = validate_profile(prof, true);
  EXPECT_TRUE(problems.empty()) << problems.front();
}

TEST_F(ToyAlgebra, CurveOrderIsCofactorTimesQ) {
  EXPECT_EQ(all_points().size(), 452u);  // 2^c * q = 4 * 113
}

TEST_F(ToyAlgebra, PurifySearchReproducesShippedParameters) {
  auto found = search_purify_params(prof.q());
  ASSERT_TRUE(found.has_value());
  const auto& pp = prof.purify_params();
  EXPECT_EQ(found->delta, pp.delta);
  EXPECT_EQ(found->a, pp.a);
  EXPECT_EQ(found->b, pp.b);
  EXPECT_EQ(found->q1, pp.q1);
  EXPECT_EQ(found->q2, pp.q2);
  EXPECT_EQ(default_purify_base(prof.scalars, *found), pp.base);
}

TEST_F(ToyAlgebra, NonceCurveCountsByEnumeration) {
  const auto& pp = prof.purify_params();
  EXPECT_EQ(count_points(pp.e1), 101);
  EXPECT_EQ(count_points(pp.e2), 127);
  EXPECT_EQ(count_points(pp.eprime), pp.q1 * pp.q2);
}

TEST_F(ToyAlgebra, EncodeIdentity) {
  Bytes enc = prof.curve.encode(EdwardsCurve::identity());
  EXPECT_EQ(enc, (Bytes{0x01, 0x00}));
}

TEST_F(ToyAlgebra, EncodeZeroXMinusOneY) {
  EdPoint P{0, prof.p() - 1};
  ASSERT_TRUE(prof.curve.on_curve(P));
  EXPECT_EQ(prof.curve.encode(P), to_le(prof.p() - 1, 2));  // sign bit clear
}

// Bit-level reading of the encoding rule: y as b-1 little-endian bits, then a sign bit set
// iff the (b-1)-bit string of x is lexicographically larger than that of -x.
TEST_F(ToyAlgebra, EncodingMatchesBitwiseRule) {
  auto bits = [&](const Int& v) {
    std::string s;
    for (unsigned i = 0; i + 1 < prof.b; ++i) s.push_back(test_bit(v, i) ? '1' : '0');
    return s;
  };
  for (const auto& P : all_points()) {
    std::string expected = bits(P.y) + (bits(P.x) > bits(prof.curve.field().neg(P.x)) ? "1" : "0");
    Bytes enc = prof.curve.encode(P);
    std::string got;
    for (unsigned i = 0; i < prof.b; ++i) got.push_back((enc[i / 8] >> (i % 8)) & 1 ? '1' : '0');
    ASSERT_EQ(got, expected);
  }
}

TEST_F(ToyAlgebra, DecodeRejectsOutOfRangeY) {
  Bytes ff{0xff, 0xff};
  try {
    prof.curve.decode(ff);
    FAIL() << "expected NonCanonical";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.kind(), DecodeFailure::non_canonical);
  }
}

TEST_F(ToyAlgebra, DecodeRejectsYWithoutX) {
  std::set<Int> ys_with_points;
  for (const auto& P : all_points()) ys_with_points.insert(P.y);
  int rejected = 0;
  for (Int y = 0; y < prof.p(); ++y) {
    if (ys_with_points.count(y)) continue;
    try {
      prof.curve.decode(to_le(y, 2));
      FAIL() << "decoded y=" << y.get_str();
    } catch (const DecodeError& e) {
      EXPECT_EQ(e.kind(), DecodeFailure::not_on_curve);
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
}

TEST_F(ToyAlgebra, EncodeDecodeExhaustive) {
  std::size_t decoded = 0;
  for (unsigned v = 0; v < 65536; ++v) {
    Bytes s{static_cast<std::uint8_t>(v & 0xff), static_cast<std::uint8_t>(v >> 8)};
    try {
      EdPoint P = prof.curve.decode(s);
      ASSERT_TRUE(prof.curve.on_curve(P));
      ASSERT_EQ(prof.curve.encode(P), s);
      ++decoded;
    } catch (const DecodeError&) {
    }
  }
  EXPECT_EQ(decoded, all_points().size());
}

TEST_F(ToyAlgebra, BaseHasPrimeOrder) {
  EXPECT_EQ(prof.curve.mul(prof.q(), prof.base), EdwardsCurve::identity());
  EXPECT_EQ(prof.curve.decode(prof.curve.encode(prof.base)), prof.base);
}

TEST_F(ToyAlgebra, ScalarMulMatchesRepeatedAddition) {
  EdPoint acc = EdwardsCurve::identity();
  for (int k = 0; k < 300; ++k) {
    ASSERT_EQ(prof.curve.mul(k, prof.base), acc) << k;
    acc = prof.curve.add(acc, prof.base);
  }
  EXPECT_EQ(prof.curve.mul(-5, prof.base), prof.curve.neg(prof.curve.mul(5, prof.base)));
}

TEST_F(ToyAlgebra, TonelliShanksAgreesWithBruteForce) {
  const auto& fp = prof.curve.field();  // 449 = 1 mod 8
  for (Int v = 1; v < fp.modulus(); ++v) {
    bool brute = false;
    for (Int r = 1; r < fp.modulus() && !brute; ++r) brute = fp.sqr(r) == v;
    auto root = fp.sqrt(v);
    ASSERT_EQ(root.has_value(), brute) << v.get_str();
    if (root) {
      ASSERT_EQ(fp.sqr(*root), v);
    }
  }
}

TEST_F(ToyAlgebra, WeierstrassScalarMul) {
  const auto& pp = prof.purify_params();
  EXPECT_TRUE(pp.eprime.mul(0, pp.base).infinity);
  EXPECT_TRUE(pp.eprime.mul(pp.order, pp.base).infinity);
  WPoint2 chain = WPoint2::at_infinity();
  for (int i = 0; i < 7; ++i) chain = pp.eprime.add(chain, pp.base);
  EXPECT_EQ(pp.eprime.mul(7, pp.base), chain);
}

TEST_F(ToyAlgebra, WeierstrassGroupLaw) {
  const auto& pp = prof.purify_params();
  for (int i = 0; i < 200; ++i) {
    WPoint2 P = pp.eprime.mul(rng.below(pp.order), pp.base);
    WPoint2 Q = pp.eprime.mul(rng.below(pp.order), pp.base);
    WPoint2 R = pp.eprime.mul(rng.below(pp.order), pp.base);
    ASSERT_TRUE(pp.eprime.add(P, pp.eprime.neg(P)).infinity);
    ASSERT_EQ(pp.eprime.add(pp.eprime.add(P, Q), R), pp.eprime.add(P, pp.eprime.add(Q, R)));
  }
}

TEST_F(ToyAlgebra, Fq2Inverse) {
  Fq2Field f2(prof.scalars, prof.purify_params().delta);
  for (int i = 0; i < 1000; ++i) {
    Fq2 x{rng.below(prof.q()), rng.below(prof.q())};
    if (f2.is_zero(x)) continue;
    ASSERT_EQ(f2.mul(x, f2.inv(x)), f2.one());
  }
  EXPECT_THROW(f2.inv(f2.zero()), DivisionByZero);
}

// (k + l) P = k P + l P on all four curves.
template <class MulFn, class AddFn, class P>
void check_distributive(RandomSource& rng, const Int& order, const P& base, MulFn mul, AddFn add, int trials) {
  for (int i = 0; i < trials; ++i) {
    Int k = rng.below(order), l = rng.below(order);
    P pt = mul(rng.below(order), base);
    ASSERT_TRUE(mul(k + l, pt) == add(mul(k, pt), mul(l, pt)));
  }
}

TEST_F(ToyAlgebra, DistributivityAllCurves) {
  const auto& pp = prof.purify_params();
  const auto& E = prof.curve;
  check_distributive(rng, prof.q(), prof.base, [&](const Int& k, const EdPoint& P) { return E.mul(k, P); },
                     [&](const EdPoint& a, const EdPoint& b) { return E.add(a, b); }, 1000);
  auto g1 = phi(pp, pp.base).p1;
  auto g2 = phi(pp, pp.base).p2;
  check_distributive(rng, pp.q1, g1, [&](const Int& k, const WPoint& P) { return pp.e1.mul(k, P); },
                     [&](const WPoint& a, const WPoint& b) { return pp.e1.add(a, b); }, 1000);
  check_distributive(rng, pp.q2, g2, [&](const Int& k, const WPoint& P) { return pp.e2.mul(k, P); },
                     [&](const WPoint& a, const WPoint& b) { return pp.e2.add(a, b); }, 1000);
  check_distributive(rng, pp.order, pp.base, [&](const Int& k, const WPoint2& P) { return pp.eprime.mul(k, P); },
                     [&](const WPoint2& a, const WPoint2& b) { return pp.eprime.add(a, b); }, 1000);
}

TEST(Ed25519Algebra, BaseEncodingAndOrder) {
  auto prof = ed25519_profile(std::nullopt);
  EXPECT_EQ(to_hex(prof.curve.encode(prof.base)), "5866666666666666666666666666666666666666666666666666666666666666");
  EXPECT_TRUE(validate_profile(prof, false).empty());
}

TEST(Ed25519Algebra, SqrtFiveModEight) {
  auto prof = ed25519_profile(std::nullopt);
  const auto& fp = prof.curve.field();
  SeededRandom rng(3);
  for (int i = 0; i < 200; ++i) {
    Int v = fp.sqr(rng.below(fp.modulus()));
    auto r = fp.sqrt(v);
    ASSERT_TRUE(r.has_value());
    ASSERT_EQ(fp.sqr(*r), v);
  }
  EXPECT_FALSE(fp.sqrt(2).has_value());  // 2 is a non-residue mod 2^255 - 19
}

TEST(Ed25519Algebra, EncodeDecodeAndDistributivity) {
  auto prof = ed25519_profile(std::nullopt);
  const auto& E = prof.curve;
  SeededRandom rng(11);
  for (int i = 0; i < 1000; ++i) {
    Int k = rng.below(prof.q()), l = rng.below(prof.q());
    EdPoint P = prof.mul_base(rng.below(prof.q()));
    ASSERT_EQ(E.decode(E.encode(P)), P);
    ASSERT_EQ(E.mul(k + l, P), E.add(E.mul(k, P), E.mul(l, P)));
  }
}

}  // namespace
