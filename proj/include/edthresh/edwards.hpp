#pragma once

#include <stdexcept>
#include <string>

#include "edthresh/field.hpp"

namespace edthresh {

/// Affine point on a twisted Edwards curve; the neutral element is (0, 1).
struct EdPoint {
  Int x{0};
  Int y{1};

  friend bool operator==(const EdPoint&, const EdPoint&) = default;
};

enum class DecodeFailure { bad_length, non_canonical, not_on_curve };

class DecodeError : public std::runtime_error {
 public:
  DecodeError(DecodeFailure kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  DecodeFailure kind() const { return kind_; }

 private:
  DecodeFailure kind_;
};

/// a*x^2 + y^2 = 1 + d*x^2*y^2 over F_p, with points encoded in `bits` bits.
class EdwardsCurve {
 public:
  EdwardsCurve() = default;
  EdwardsCurve(PrimeField fp, Int a, Int d, unsigned bits)
      : fp_(std::move(fp)), a_(fp_.reduce(a)), d_(fp_.reduce(d)), bits_(bits) {}

  const PrimeField& field() const { return fp_; }
  const Int& a() const { return a_; }
  const Int& d() const { return d_; }
  unsigned bits() const { return bits_; }
  std::size_t encoded_size() const { return bits_ / 8; }

  static EdPoint identity() { return {}; }

  bool on_curve(const EdPoint& P) const {
    if (P.x < 0 || P.x >= fp_.modulus() || P.y < 0 || P.y >= fp_.modulus()) return false;
    Int x2 = fp_.sqr(P.x), y2 = fp_.sqr(P.y);
    return fp_.add(fp_.mul(a_, x2), y2) == fp_.add(1, fp_.mul(d_, fp_.mul(x2, y2)));
  }

  EdPoint neg(const EdPoint& P) const { return {fp_.neg(P.x), P.y}; }

  EdPoint add(const EdPoint& P, const EdPoint& Q) const {
    Int t = fp_.mul(d_, fp_.mul(fp_.mul(P.x, Q.x), fp_.mul(P.y, Q.y)));
    Int x = fp_.div(fp_.add(fp_.mul(P.x, Q.y), fp_.mul(P.y, Q.x)), fp_.add(1, t));
    Int y = fp_.div(fp_.sub(fp_.mul(P.y, Q.y), fp_.mul(a_, fp_.mul(P.x, Q.x))), fp_.sub(1, t));
    return {x, y};
  }

  EdPoint sub(const EdPoint& P, const EdPoint& Q) const { return add(P, neg(Q)); }

  /// k*P for any integer k (negative k multiplies -P).
  EdPoint mul(const Int& k, const EdPoint& P) const {
    if (k < 0) return mul(-k, neg(P));
    Extended acc = to_extended(identity());
    Extended base = to_extended(P);
    for (std::size_t i = bit_length(k); i-- > 0;) {
      acc = ext_add(acc, acc);
      if (test_bit(k, i)) acc = ext_add(acc, base);
    }
    return from_extended(acc);
  }

  EdPoint mul_cofactor(unsigned c, const EdPoint& P) const {
    EdPoint r = P;
    for (unsigned i = 0; i < c; ++i) r = add(r, r);
    return r;
  }

  /// (b-1)-bit little-endian y followed by the sign bit of x.
  Bytes encode(const EdPoint& P) const {
    Bytes out = to_le(P.y, encoded_size());
    if (!out.empty() && mpz_odd_p(P.x.get_mpz_t())) out.back() |= 0x80;
    return out;
  }

  EdPoint decode(ByteView s) const {
    if (s.size() != encoded_size()) throw DecodeError(DecodeFailure::bad_length, "point: wrong length");
    Bytes ybytes(s.begin(), s.end());
    bool sign = (ybytes.back() & 0x80) != 0;
    ybytes.back() &= 0x7f;
    Int y = from_le(ybytes);
    if (y >= fp_.modulus()) throw DecodeError(DecodeFailure::non_canonical, "point: y >= p");
    Int y2 = fp_.sqr(y);
    Int num = fp_.sub(1, y2);
    Int den = fp_.sub(a_, fp_.mul(d_, y2));
    if (den == 0) throw DecodeError(DecodeFailure::not_on_curve, "point: degenerate y");
    auto x = fp_.sqrt(fp_.div(num, den));
    if (!x) throw DecodeError(DecodeFailure::not_on_curve, "point: no x for y");
    if (*x == 0 && sign) throw DecodeError(DecodeFailure::non_canonical, "point: sign bit on x = 0");
    if (mpz_odd_p(x->get_mpz_t()) != static_cast<int>(sign)) *x = fp_.neg(*x);
    return {*x, y};
  }

 private:
  // Extended twisted Edwards coordinates (X:Y:Z:T), x = X/Z, y = Y/Z, xy = T/Z.
  struct Extended {
    Int X, Y, Z, T;
  };

  Extended to_extended(const EdPoint& P) const { return {P.x, P.y, 1, fp_.mul(P.x, P.y)}; }

  EdPoint from_extended(const Extended& E) const {
    Int zi = fp_.inv(E.Z);
    return {fp_.mul(E.X, zi), fp_.mul(E.Y, zi)};
  }

  // Unified addition (add-2008-hwcd); complete for square a and non-square d.
  Extended ext_add(const Extended& P, const Extended& Q) const {
    const Int& p = fp_.modulus();
    Int A = mod(P.X * Q.X, p);
    Int B = mod(P.Y * Q.Y, p);
    Int C = mod(d_ * mod(P.T * Q.T, p), p);
    Int D = mod(P.Z * Q.Z, p);
    Int E = mod((P.X + P.Y) * (Q.X + Q.Y) - A - B, p);
    Int F = mod(D - C, p);
    Int G = mod(D + C, p);
    Int H = mod(B - a_ * A, p);
    return {mod(E * F, p), mod(G * H, p), mod(F * G, p), mod(E * H, p)};
  }

  PrimeField fp_;
  Int a_, d_;
  unsigned bits_ = 0;
};

}  // namespace edthresh
