#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edthresh/edwards.hpp"
#include "edthresh/weierstrass.hpp"

namespace edthresh {

/// Parameters of the nonce-derivation curves.
///
/// E1: y^2 = x^3 + a x + b over F_q of prime order q1.
/// E2: y^2 = x^3 + a delta^2 x + b delta^3 over F_q (the quadratic twist) of prime order q2.
/// E': y^2 = x^3 + a x + b over F_{q^2}, cyclic of order q1*q2 and generated by `base`.
struct PurifyParams {
  Int delta;
  Int a;
  Int b;
  Int q1;
  Int q2;
  WPoint2 base;

  // Derived on construction.
  Int order;  // q' = q1 * q2
  Int crt1;   // = 1 mod q1, = 0 mod q2
  Int crt2;   // = 0 mod q1, = 1 mod q2
  CurveFq e1;
  CurveFq e2;
  CurveFq2 eprime;

  static PurifyParams make(const PrimeField& fq, Int delta, Int a, Int b, Int q1, Int q2, WPoint2 base) {
    PurifyParams p;
    p.delta = fq.reduce(delta);
    p.a = fq.reduce(a);
    p.b = fq.reduce(b);
    p.q1 = std::move(q1);
    p.q2 = std::move(q2);
    p.base = std::move(base);
    p.order = p.q1 * p.q2;
    Int inv2, inv1;
    mpz_invert(inv2.get_mpz_t(), p.q2.get_mpz_t(), p.q1.get_mpz_t());
    mpz_invert(inv1.get_mpz_t(), p.q1.get_mpz_t(), p.q2.get_mpz_t());
    p.crt1 = mod(p.q2 * inv2, p.order);
    p.crt2 = mod(p.q1 * inv1, p.order);
    Int d2 = fq.sqr(p.delta);
    p.e1 = CurveFq(fq, p.a, p.b);
    p.e2 = CurveFq(fq, fq.mul(p.a, d2), fq.mul(p.b, fq.mul(d2, p.delta)));
    Fq2Field f2(fq, p.delta);
    p.eprime = CurveFq2(f2, f2.from_base(p.a), f2.from_base(p.b));
    return p;
  }
};

/// All public parameters shared by the parties.
struct CurveProfile {
  std::string name;
  EdwardsCurve curve;
  EdPoint base;
  PrimeField scalars;  // Z_q, also the coordinate field of the nonce curves
  unsigned b = 0;
  unsigned c = 0;
  unsigned n = 0;
  std::optional<PurifyParams> purify;

  const Int& p() const { return curve.field().modulus(); }
  const Int& q() const { return scalars.modulus(); }
  std::size_t point_bytes() const { return b / 8; }
  std::size_t scalar_bytes() const { return b / 8; }
  std::size_t digest_bytes() const { return 2 * b / 8; }

  const PurifyParams& purify_params() const {
    if (!purify) throw std::logic_error("profile '" + name + "' has no nonce-curve parameters");
    return *purify;
  }

  EdPoint mul_base(const Int& k) const { return curve.mul(k, base); }
};

namespace detail {

inline EdPoint base_from_y(const EdwardsCurve& curve, const Int& y) {
  Bytes enc = to_le(y, curve.encoded_size());
  return curve.decode(enc);
}

}  // namespace detail

/// Toy profile small enough for exhaustive oracles:
/// p = 449, a = -1, d = 30, #E = 4 * 113; nonce curves over F_113 with orders 101 and 127.
inline CurveProfile toy_profile() {
  CurveProfile prof;
  prof.name = "toy";
  PrimeField fp(Int(449));
  prof.curve = EdwardsCurve(fp, Int(-1), Int(30), 16);
  prof.base = {Int(199), Int(328)};
  prof.scalars = PrimeField(Int(113));
  prof.b = 16;
  prof.c = 2;
  prof.n = 6;
  WPoint2 base = WPoint2::of(Fq2{41, 53}, Fq2{43, 91});
  prof.purify = PurifyParams::make(prof.scalars, 3, 1, 20, 101, 127, base);
  return prof;
}

/// Ed25519 signing curve. Nonce-curve parameters are supplied by the caller; with none,
/// nonces are derived by hashing and no nonce proof is made.
inline CurveProfile ed25519_profile(std::optional<PurifyParams> purify) {
  CurveProfile prof;
  prof.name = "ed25519";
  Int p = (Int(1) << 255) - 19;
  PrimeField fp(p);
  Int d = fp.div(fp.neg(121665), 121666);
  prof.curve = EdwardsCurve(fp, Int(-1), d, 256);
  prof.base = detail::base_from_y(prof.curve, fp.div(4, 5));
  prof.scalars = PrimeField((Int(1) << 252) + from_dec("27742317777372353535851937790883648493"));
  prof.b = 256;
  prof.c = 3;
  prof.n = 254;
  prof.purify = std::move(purify);
  return prof;
}

}  // namespace edthresh
