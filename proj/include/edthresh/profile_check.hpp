#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edthresh/purify.hpp"

namespace edthresh {

/// |E(F_q)| by walking every x; only sensible for small q.
inline Int count_points(const CurveFq& E) {
  const auto& f = E.field();
  Int n = 1;
  for (Int x = 0; x < f.modulus(); ++x) {
    Int r = E.rhs(x);
    n += r == 0 ? 1 : (f.is_square(r) ? 2 : 0);
  }
  return n;
}

/// |E(F_{q^2})| by walking every x = x0 + x1 sqrt(delta); only sensible for small q.
inline Int count_points(const CurveFq2& E) {
  const auto& f = E.field();
  const Int& q = f.base().modulus();
  Int n = 1;
  for (Int x0 = 0; x0 < q; ++x0) {
    for (Int x1 = 0; x1 < q; ++x1) {
      Fq2 r = E.rhs(Fq2{x0, x1});
      n += f.is_zero(r) ? 1 : (f.is_square(r) ? 2 : 0);
    }
  }
  return n;
}

struct PurifySearchResult {
  Int delta;
  Int a;
  Int b;
  Int q1;
  Int q2;
};

/// Exhaustive search for nonce-curve coefficients over a small F_q: delta is the least
/// non-residue and (a, b) the first pair in lexicographic order, with a, b in [1, q), for
/// which E1 and its delta-twist have distinct prime orders.
inline std::optional<PurifySearchResult> search_purify_params(const Int& q) {
  PrimeField fq(q);
  Int delta = 2;
  while (fq.is_square(delta)) delta += 1;
  Int d2 = fq.sqr(delta), d3 = fq.mul(d2, delta);
  for (Int a = 1; a < q; ++a) {
    for (Int b = 1; b < q; ++b) {
      if (fq.add(fq.mul(4, fq.mul(a, fq.sqr(a))), fq.mul(27, fq.sqr(b))) == 0) continue;
      Int n1 = count_points(CurveFq(fq, a, b));
      if (!is_probable_prime(n1)) continue;
      Int n2 = count_points(CurveFq(fq, fq.mul(a, d2), fq.mul(b, d3)));
      if (is_probable_prime(n2) && n1 != n2) return PurifySearchResult{delta, a, b, n1, n2};
    }
  }
  return std::nullopt;
}

/// Canonical generator for searched parameters: phi^{-1} of the least-x point on each curve
/// (with the smaller y).
inline WPoint2 default_purify_base(const PrimeField& fq, const PurifySearchResult& r) {
  auto tmp = PurifyParams::make(fq, r.delta, r.a, r.b, r.q1, r.q2, WPoint2::at_infinity());
  auto first_point = [&](const CurveFq& E) {
    for (Int x = 0; x < fq.modulus(); ++x) {
      if (auto y = fq.sqrt(E.rhs(x))) {
        Int y2 = fq.neg(*y);
        return WPoint::of(x, *y < y2 ? *y : y2);
      }
    }
    throw std::runtime_error("default_purify_base: empty curve");
  };
  return phi_inv(tmp, {first_point(tmp.e1), first_point(tmp.e2)});
}

/// Every violated profile invariant, as readable messages. `exhaustive` adds point counts
/// for the nonce curves (small q only).
inline std::vector<std::string> validate_profile(const CurveProfile& prof, bool exhaustive) {
  std::vector<std::string> problems;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };
  const auto& E = prof.curve;
  require(prof.b % 8 == 0, "b must be a multiple of 8");
  require((Int(1) << (prof.b - 1)) > prof.p(), "2^(b-1) must exceed p");
  require(prof.c == 2 || prof.c == 3, "c must be 2 or 3");
  require(prof.c <= prof.n && prof.n <= prof.b, "need c <= n <= b");
  require(is_probable_prime(prof.p()), "p must be prime");
  require(is_probable_prime(prof.q()), "q must be prime");
  require(E.field().is_square(E.a()) && E.a() != 0, "a must be a nonzero square");
  require(!E.field().is_square(E.d()), "d must be a non-square");
  require(E.on_curve(prof.base), "B must lie on the curve");
  require(prof.base != EdwardsCurve::identity(), "B must not be the identity");
  require(E.mul(prof.q(), prof.base) == EdwardsCurve::identity(), "q B must be the identity");
  if (!prof.purify) return problems;

  const auto& pp = *prof.purify;
  require(!prof.scalars.is_square(pp.delta), "delta must be a non-residue mod q");
  require(is_probable_prime(pp.q1) && is_probable_prime(pp.q2), "q1 and q2 must be prime");
  require(pp.q1 != pp.q2, "q1 and q2 must differ");
  require(pp.q1 + pp.q2 == 2 * prof.q() + 2, "q1 + q2 must equal 2q + 2");
  require(pp.eprime.on_curve(pp.base) && !pp.base.infinity, "B' must be a point of E'");
  require(pp.eprime.mul(pp.order, pp.base).infinity, "q1 q2 B' must be infinity");
  require(!pp.eprime.mul(pp.q1, pp.base).infinity && !pp.eprime.mul(pp.q2, pp.base).infinity,
          "B' must generate the full group");
  if (exhaustive) {
    require(count_points(pp.e1) == pp.q1, "|E1(F_q)| must equal q1");
    require(count_points(pp.e2) == pp.q2, "|E2(F_q)| must equal q2");
  }
  return problems;
}

}  // namespace edthresh
