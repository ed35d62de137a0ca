#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "edthresh/profile.hpp"
#include "edthresh/random.hpp"

namespace edthresh {

/// Feldman sharing of a secret: P(0) = secret, shares y_j = P(j), commitments C_k = a_k B.
struct ShareSet {
  std::vector<Int> coefficients;  // a_0 = secret, a_1..a_t; dealer-private
  std::map<Int, Int> shares;      // index -> P(index)
  std::vector<EdPoint> commitments;

  std::size_t degree() const { return coefficients.size() - 1; }
};

inline Int eval_polynomial(const PrimeField& fq, const std::vector<Int>& coeffs, const Int& x) {
  Int acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = fq.add(fq.mul(acc, x), *it);
  return acc;
}

/// Shares with caller-chosen coefficients a_1..a_t (used by key generation, where f_i(x) = a_i + m_i x).
inline ShareSet share_with_coefficients(const CurveProfile& prof, std::vector<Int> coeffs,
                                        const std::vector<Int>& indices) {
  std::set<Int> seen;
  for (const auto& j : indices) {
    Int jr = prof.scalars.reduce(j);
    if (jr == 0) throw std::invalid_argument("share: index must be nonzero");
    if (!seen.insert(jr).second) throw std::invalid_argument("share: duplicate index");
  }
  ShareSet out;
  for (auto& c : coeffs) c = prof.scalars.reduce(c);
  out.coefficients = std::move(coeffs);
  for (const auto& j : seen) out.shares[j] = eval_polynomial(prof.scalars, out.coefficients, j);
  for (const auto& c : out.coefficients) out.commitments.push_back(prof.mul_base(c));
  return out;
}

inline ShareSet share(const CurveProfile& prof, const Int& secret, std::size_t degree,
                      const std::vector<Int>& indices, RandomSource& rng) {
  std::vector<Int> coeffs{secret};
  for (std::size_t k = 0; k < degree; ++k) coeffs.push_back(rng.below(prof.q()));
  return share_with_coefficients(prof, std::move(coeffs), indices);
}

/// sum_k j^k C_k, the public image of the share at index j.
inline EdPoint share_image(const CurveProfile& prof, const Int& j, const std::vector<EdPoint>& commitments) {
  const auto& E = prof.curve;
  EdPoint acc = EdwardsCurve::identity();
  Int power = 1;
  for (const auto& C : commitments) {
    acc = E.add(acc, E.mul(power, C));
    power = prof.scalars.mul(power, j);
  }
  return acc;
}

/// Accepts iff y B = sum_k j^k C_k.
inline bool verify_share(const CurveProfile& prof, const Int& j, const Int& y, const std::vector<EdPoint>& commitments) {
  if (y < 0 || y >= prof.q()) return false;
  return prof.mul_base(y) == share_image(prof, j, commitments);
}

/// lambda_i = prod_{j in S, j != i} j / (j - i) mod q.
inline Int lagrange_weight(const PrimeField& fq, const std::vector<Int>& signers, const Int& i) {
  std::set<Int> seen;
  bool found = false;
  Int num = 1, den = 1;
  for (const auto& j : signers) {
    Int jr = fq.reduce(j);
    if (jr == 0 || !seen.insert(jr).second) throw std::invalid_argument("lagrange_weight: bad signer set");
    if (jr == fq.reduce(i)) {
      found = true;
      continue;
    }
    num = fq.mul(num, jr);
    den = fq.mul(den, fq.sub(jr, i));
  }
  if (!found) throw std::invalid_argument("lagrange_weight: index not in signer set");
  return fq.div(num, den);
}

}  // namespace edthresh
