#pragma once

#include <optional>
#include <stdexcept>

#include "edthresh/bigint.hpp"

namespace edthresh {

/// Thrown when inverting zero in any field.
class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("inverse of zero") {}
};

/// Arithmetic in F_m for a prime m. Elements are canonical residues held as `Int`.
class PrimeField {
 public:
  using Element = Int;

  PrimeField() = default;
  explicit PrimeField(Int modulus) : m_(std::move(modulus)) {
    if (m_ < 2) throw std::invalid_argument("PrimeField: modulus < 2");
  }

  const Int& modulus() const { return m_; }
  std::size_t byte_length() const { return (bit_length(m_) + 7) / 8; }

  Int reduce(const Int& a) const { return mod(a, m_); }
  Int zero() const { return 0; }
  Int one() const { return 1; }
  Int from_int(long v) const { return reduce(Int(v)); }

  bool is_zero(const Int& a) const { return a == 0; }
  bool equal(const Int& a, const Int& b) const { return a == b; }

  Int add(const Int& a, const Int& b) const { return reduce(a + b); }
  Int sub(const Int& a, const Int& b) const { return reduce(a - b); }
  Int neg(const Int& a) const { return reduce(-a); }
  Int mul(const Int& a, const Int& b) const { return reduce(a * b); }
  Int sqr(const Int& a) const { return reduce(a * a); }
  Int pow(const Int& a, const Int& e) const { return pow_mod(a, e, m_); }

  Int inv(const Int& a) const {
    Int r;
    if (a == 0 || mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m_.get_mpz_t()) == 0) {
      throw DivisionByZero();
    }
    return r;
  }

  Int div(const Int& a, const Int& b) const { return mul(a, inv(b)); }

  /// Legendre symbol check; zero counts as a square.
  bool is_square(const Int& a) const {
    if (a == 0) return true;
    return mpz_legendre(a.get_mpz_t(), m_.get_mpz_t()) == 1;
  }

  /// Some square root of `a`, or nothing when `a` is a non-residue.
  std::optional<Int> sqrt(const Int& a) const {
    Int v = reduce(a);
    if (v == 0) return Int(0);
    if (!is_square(v)) return std::nullopt;
    if (mod(m_, 4) == 3) return pow(v, (m_ + 1) / 4);
    if (mod(m_, 8) == 5) return sqrt_5_mod_8(v);
    return sqrt_tonelli_shanks(v);
  }

  /// Exponentiation method for m = 5 (mod 8); `v` must be a nonzero square.
  Int sqrt_5_mod_8(const Int& v) const {
    Int x = pow(v, (m_ + 3) / 8);
    if (sqr(x) == v) return x;
    Int i = pow(2, (m_ - 1) / 4);
    return mul(x, i);
  }

  /// Generic Tonelli-Shanks; `v` must be a nonzero square.
  Int sqrt_tonelli_shanks(const Int& v) const {
    Int q = m_ - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
      q /= 2;
      ++s;
    }
    Int z = 2;
    while (is_square(z)) z += 1;
    Int c = pow(z, q);
    Int x = pow(v, (q + 1) / 2);
    Int t = pow(v, q);
    unsigned long m = s;
    while (t != 1) {
      unsigned long i = 0;
      Int t2 = t;
      while (t2 != 1) {
        t2 = sqr(t2);
        ++i;
      }
      Int b = c;
      for (unsigned long j = 0; j + 1 < m - i; ++j) b = sqr(b);
      x = mul(x, b);
      c = sqr(b);
      t = mul(t, c);
      m = i;
    }
    return x;
  }

 private:
  Int m_{2};
};

/// Element c0 + c1*sqrt(delta) of F_{q^2}.
struct Fq2 {
  Int c0;
  Int c1;

  friend bool operator==(const Fq2&, const Fq2&) = default;
};

/// F_{q^2} = F_q[t]/(t^2 - delta) for a fixed quadratic non-residue delta.
class Fq2Field {
 public:
  using Element = Fq2;

  Fq2Field() = default;
  Fq2Field(PrimeField base, Int delta) : base_(std::move(base)), delta_(base_.reduce(delta)) {
    if (base_.is_square(delta_)) throw std::invalid_argument("Fq2Field: delta must be a non-residue");
  }

  const PrimeField& base() const { return base_; }
  const Int& delta() const { return delta_; }

  Fq2 zero() const { return {0, 0}; }
  Fq2 one() const { return {1, 0}; }
  Fq2 from_int(long v) const { return {base_.from_int(v), 0}; }
  Fq2 from_base(const Int& v) const { return {base_.reduce(v), 0}; }
  /// The adjoined root sqrt(delta) = (0, 1).
  Fq2 sqrt_delta() const { return {0, 1}; }

  bool is_zero(const Fq2& a) const { return a.c0 == 0 && a.c1 == 0; }
  bool equal(const Fq2& a, const Fq2& b) const { return a == b; }

  Fq2 add(const Fq2& a, const Fq2& b) const { return {base_.add(a.c0, b.c0), base_.add(a.c1, b.c1)}; }
  Fq2 sub(const Fq2& a, const Fq2& b) const { return {base_.sub(a.c0, b.c0), base_.sub(a.c1, b.c1)}; }
  Fq2 neg(const Fq2& a) const { return {base_.neg(a.c0), base_.neg(a.c1)}; }

  Fq2 mul(const Fq2& a, const Fq2& b) const {
    const Int& q = base_.modulus();
    return {mod(a.c0 * b.c0 + delta_ * a.c1 * b.c1, q), mod(a.c0 * b.c1 + a.c1 * b.c0, q)};
  }
  Fq2 sqr(const Fq2& a) const { return mul(a, a); }

  Fq2 conj(const Fq2& a) const { return {a.c0, base_.neg(a.c1)}; }
  Int norm(const Fq2& a) const {
    return mod(a.c0 * a.c0 - delta_ * a.c1 * a.c1, base_.modulus());
  }

  Fq2 inv(const Fq2& a) const {
    if (is_zero(a)) throw DivisionByZero();
    Int n_inv = base_.inv(norm(a));
    return {base_.mul(a.c0, n_inv), base_.mul(base_.neg(a.c1), n_inv)};
  }
  Fq2 div(const Fq2& a, const Fq2& b) const { return mul(a, inv(b)); }

  /// An element of F_{q^2} is a square iff its norm is a square in F_q.
  bool is_square(const Fq2& a) const { return base_.is_square(norm(a)); }

 private:
  PrimeField base_;
  Int delta_;
};

}  // namespace edthresh
