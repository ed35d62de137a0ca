#pragma once

#include <stdexcept>
#include <string_view>
#include <vector>

#include "edthresh/hashing.hpp"
#include "edthresh/random.hpp"

namespace edthresh {

/// Image of a point of E' under phi: its E1 and E2 components.
struct SplitPoint {
  WPoint p1;
  WPoint p2;

  friend bool operator==(const SplitPoint&, const SplitPoint&) = default;
};

/// E1(F_q) sits inside E'(F_{q^2}) unchanged.
inline WPoint2 embed_e1(const PurifyParams& pp, const WPoint& P) {
  if (P.infinity) return WPoint2::at_infinity();
  const auto& f2 = pp.eprime.field();
  return WPoint2::of(f2.from_base(P.x), f2.from_base(P.y));
}

/// Twist map E2 -> E', (x, y) -> (x / delta, y / (delta sqrt(delta))).
inline WPoint2 embed_e2(const PurifyParams& pp, const WPoint& P) {
  if (P.infinity) return WPoint2::at_infinity();
  const auto& fq = pp.eprime.field().base();
  Int di = fq.inv(pp.delta);
  // y / (delta sqrt(delta)) = (y / delta^2) sqrt(delta)
  return WPoint2::of(Fq2{fq.mul(P.x, di), 0}, Fq2{0, fq.mul(P.y, fq.sqr(di))});
}

/// phi: E' -> E1 x E2 via the CRT idempotents of Z_{q1 q2}.
inline SplitPoint phi(const PurifyParams& pp, const WPoint2& P) {
  if (!pp.eprime.on_curve(P)) throw std::invalid_argument("phi: point not on E'");
  const auto& fq = pp.eprime.field().base();
  SplitPoint sp;
  WPoint2 P1 = pp.eprime.mul(pp.crt1, P);
  if (!P1.infinity) {
    if (P1.x.c1 != 0 || P1.y.c1 != 0) throw std::logic_error("phi: order-q1 component not over F_q");
    sp.p1 = WPoint::of(P1.x.c0, P1.y.c0);
  }
  WPoint2 P2 = pp.eprime.mul(pp.crt2, P);
  if (!P2.infinity) {
    if (P2.x.c1 != 0 || P2.y.c0 != 0) throw std::logic_error("phi: order-q2 component not on the twist");
    sp.p2 = WPoint::of(fq.mul(pp.delta, P2.x.c0), fq.mul(fq.sqr(pp.delta), P2.y.c1));
  }
  return sp;
}

inline WPoint2 phi_inv(const PurifyParams& pp, const SplitPoint& sp) {
  if (!pp.e1.on_curve(sp.p1) || !pp.e2.on_curve(sp.p2)) throw std::invalid_argument("phi_inv: point not on curve");
  return pp.eprime.add(embed_e1(pp, sp.p1), embed_e2(pp, sp.p2));
}

inline constexpr unsigned kHashToCurveAttempts = 256;

/// Try-and-increment hash onto a curve over F_q. The y sign comes from a digest bit.
inline WPoint hash_to_curve(const CurveProfile& prof, const CurveFq& E, std::string_view tag,
                            const std::vector<Bytes>& parts) {
  const auto& fq = E.field();
  for (unsigned ctr = 0; ctr < kHashToCurveAttempts; ++ctr) {
    auto framed_parts = parts;
    framed_parts.push_back(to_le(Int(ctr), 4));
    Bytes framed = frame(tag, framed_parts);
    Bytes full = sha512(framed);
    Int x = mod(from_le(base_hash(prof, framed)), fq.modulus());
    auto y = fq.sqrt(E.rhs(x));
    if (!y) continue;
    bool odd = full.back() & 1;
    if (static_cast<bool>(mpz_odd_p(y->get_mpz_t())) != odd) *y = fq.neg(*y);
    return WPoint::of(x, *y);
  }
  throw std::runtime_error("hash_to_curve: no point after bounded attempts");
}

inline WPoint hash_to_e1(const CurveProfile& prof, const std::vector<Bytes>& parts) {
  return hash_to_curve(prof, prof.purify_params().e1, "PUR/H1", parts);
}

inline WPoint hash_to_e2(const CurveProfile& prof, const std::vector<Bytes>& parts) {
  return hash_to_curve(prof, prof.purify_params().e2, "PUR/H2", parts);
}

/// H_Pur(z) = phi^{-1}(H1(z), H2(z)).
inline WPoint2 h_pur(const CurveProfile& prof, const std::vector<Bytes>& parts) {
  return phi_inv(prof.purify_params(), {hash_to_e1(prof, parts), hash_to_e2(prof, parts)});
}

/// f(Q): 0 at infinity, otherwise the x0 component of x = x0 + x1 sqrt(delta).
inline Int extract_f(const WPoint2& Q) { return Q.infinity ? Int(0) : Q.x.c0; }

/// r = f(r' V').
inline Int derive_nonce(const CurveProfile& prof, const Int& seed, const WPoint2& V) {
  const auto& pp = prof.purify_params();
  return extract_f(pp.eprime.mul(mod(seed, pp.order), V));
}

/// Long-lived nonce seed r' and its public image R' = r' B'.
struct PurifySeed {
  Int secret;
  WPoint2 pub;

  static PurifySeed generate(const CurveProfile& prof, RandomSource& rng) {
    const auto& pp = prof.purify_params();
    Int r = rng.below(pp.order);
    return {r, pp.eprime.mul(r, pp.base)};
  }
};

/// (x, y) as four little-endian F_q coordinates x0, x1, y0, y1; infinity is all zero bytes
/// with a trailing flag byte of 1.
inline Bytes encode_aux(const CurveProfile& prof, const WPoint2& P) {
  std::size_t w = prof.scalar_bytes();
  Bytes out;
  out.reserve(4 * w + 1);
  auto put = [&](const Int& v) {
    Bytes b = to_le(v, w);
    out.insert(out.end(), b.begin(), b.end());
  };
  if (P.infinity) {
    out.assign(4 * w, 0);
    out.push_back(1);
    return out;
  }
  put(P.x.c0);
  put(P.x.c1);
  put(P.y.c0);
  put(P.y.c1);
  out.push_back(0);
  return out;
}

inline WPoint2 decode_aux(const CurveProfile& prof, ByteView data) {
  std::size_t w = prof.scalar_bytes();
  if (data.size() != 4 * w + 1) throw DecodeError(DecodeFailure::bad_length, "aux point: wrong length");
  if (data.back() > 1) throw DecodeError(DecodeFailure::non_canonical, "aux point: bad flag");
  Int v[4];
  for (int i = 0; i < 4; ++i) {
    v[i] = from_le(data.subspan(static_cast<std::size_t>(i) * w, w));
    if (data.back() == 1 ? v[i] != 0 : v[i] >= prof.q()) {
      throw DecodeError(DecodeFailure::non_canonical, "aux point: coordinate out of range");
    }
  }
  if (data.back() == 1) return WPoint2::at_infinity();
  WPoint2 P = WPoint2::of(Fq2{v[0], v[1]}, Fq2{v[2], v[3]});
  if (!prof.purify_params().eprime.on_curve(P)) throw DecodeError(DecodeFailure::not_on_curve, "aux point: not on E'");
  return P;
}

}  // namespace edthresh
