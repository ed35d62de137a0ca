#pragma once

#include "edthresh/field.hpp"

namespace edthresh {

/// Affine point on a short Weierstrass curve, or the point at infinity.
template <class Elem>
struct AffinePoint {
  bool infinity = true;
  Elem x{};
  Elem y{};

  static AffinePoint at_infinity() { return {}; }
  static AffinePoint of(Elem x, Elem y) { return {false, std::move(x), std::move(y)}; }

  friend bool operator==(const AffinePoint& l, const AffinePoint& r) {
    if (l.infinity || r.infinity) return l.infinity == r.infinity;
    return l.x == r.x && l.y == r.y;
  }
};

/// y^2 = x^3 + a*x + b over `Field` (PrimeField or Fq2Field).
template <class Field>
class WeierstrassCurve {
 public:
  using Elem = typename Field::Element;
  using Point = AffinePoint<Elem>;

  WeierstrassCurve() = default;
  WeierstrassCurve(Field field, Elem a, Elem b) : f_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {}

  const Field& field() const { return f_; }
  const Elem& a() const { return a_; }
  const Elem& b() const { return b_; }

  Elem rhs(const Elem& x) const { return f_.add(f_.add(f_.mul(f_.sqr(x), x), f_.mul(a_, x)), b_); }

  bool on_curve(const Point& P) const { return P.infinity || f_.equal(f_.sqr(P.y), rhs(P.x)); }

  Point neg(const Point& P) const {
    if (P.infinity) return P;
    return Point::of(P.x, f_.neg(P.y));
  }

  Point add(const Point& P, const Point& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Elem lambda;
    if (f_.equal(P.x, Q.x)) {
      if (!f_.equal(P.y, Q.y) || f_.is_zero(P.y)) return Point::at_infinity();
      Elem num = f_.add(f_.mul(f_.from_int(3), f_.sqr(P.x)), a_);
      lambda = f_.div(num, f_.add(P.y, P.y));
    } else {
      lambda = f_.div(f_.sub(Q.y, P.y), f_.sub(Q.x, P.x));
    }
    Elem x3 = f_.sub(f_.sub(f_.sqr(lambda), P.x), Q.x);
    Elem y3 = f_.sub(f_.mul(lambda, f_.sub(P.x, x3)), P.y);
    return Point::of(std::move(x3), std::move(y3));
  }

  Point sub(const Point& P, const Point& Q) const { return add(P, neg(Q)); }

  Point mul(const Int& k, const Point& P) const {
    if (k < 0) return mul(-k, neg(P));
    Point acc = Point::at_infinity();
    for (std::size_t i = bit_length(k); i-- > 0;) {
      acc = add(acc, acc);
      if (test_bit(k, i)) acc = add(acc, P);
    }
    return acc;
  }

 private:
  Field f_;
  Elem a_{};
  Elem b_{};
};

using CurveFq = WeierstrassCurve<PrimeField>;
using CurveFq2 = WeierstrassCurve<Fq2Field>;
using WPoint = CurveFq::Point;
using WPoint2 = CurveFq2::Point;

}  // namespace edthresh
