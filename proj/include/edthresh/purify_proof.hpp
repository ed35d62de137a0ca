#pragma once

#include "edthresh/purify.hpp"
#include "edthresh/zkp.hpp"

namespace edthresh {

/// Backends for the proof that R = f(r' V') B given R' = r' B'.
///
/// `dev_transparent` carries no proof at all and gives no soundness against a signer who
/// lies about its R_i; only the final signature check of the signing ceremony catches a
/// wrong nonce. `bulletproof` is the slot for a real circuit proof and is not provided.
enum class PurifyBackend { dev_transparent, bulletproof };

inline std::string_view backend_name(PurifyBackend b) {
  return b == PurifyBackend::dev_transparent ? "dev-transparent" : "bulletproof";
}

struct PurifyStatement {
  WPoint2 seed_public;  // R'_i
  WPoint2 point;        // V'
  EdPoint nonce_public; // R_i
};

struct PurifyProof {
  PurifyBackend backend = PurifyBackend::dev_transparent;
  Bytes payload;
};

inline PurifyProof purify_prove(const CurveProfile&, const PurifyStatement&, const Int& /*witness*/,
                                PurifyBackend backend) {
  if (backend != PurifyBackend::dev_transparent) throw UnsupportedBackend("purify proof backend not available");
  return {backend, {}};
}

/// Deterministic. The dev backend checks only that the statement is well formed.
inline bool purify_verify(const CurveProfile& prof, const PurifyStatement& st, const PurifyProof& proof,
                          PurifyBackend backend) {
  if (backend != PurifyBackend::dev_transparent) throw UnsupportedBackend("purify proof backend not available");
  if (proof.backend != backend || !proof.payload.empty()) return false;
  const auto& pp = prof.purify_params();
  if (!pp.eprime.on_curve(st.seed_public) || !pp.eprime.on_curve(st.point)) return false;
  if (!prof.curve.on_curve(st.nonce_public)) return false;
  return prof.curve.mul(prof.q(), st.nonce_public) == EdwardsCurve::identity();
}

}  // namespace edthresh
