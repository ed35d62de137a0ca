#pragma once

#include "edthresh/eddsa.hpp"
#include "edthresh/protocol/derivation.hpp"
#include "edthresh/protocol/party.hpp"
#include "edthresh/purify_proof.hpp"

namespace edthresh {

/// K = H(X_A, X_B) with the signers in index order and the party indices included, so each
/// pair gets its own K. A derivation index, when present, is appended: otherwise two derived
/// keys signing the same message would share a nonce.
inline Int pair_tag(const CurveProfile& prof, const PartyPublic& X, const PartyPublic& Y,
                    std::optional<std::uint64_t> derivation = std::nullopt) {
  const PartyPublic& first = X.index < Y.index ? X : Y;
  const PartyPublic& second = X.index < Y.index ? Y : X;
  std::vector<Bytes> parts;
  for (const auto* P : {&first, &second}) {
    parts.push_back({static_cast<std::uint8_t>(P->index)});
    parts.push_back(prof.curve.encode(P->A));
    parts.push_back(encode_seed_public(prof, P->Rp));
  }
  if (derivation) parts.push_back(be64(*derivation));
  return hash_to_scalar(prof, "K", parts);
}

struct SessionKeyMaterial {
  Int K;
  WPoint2 V;  // V' = H_Pur(K, M); infinity when the Purify stage is disabled
  Int r;
  EdPoint R;  // r B
};

/// r_i = f(r'_i V') with V' = H_Pur(K, M). Without Purify parameters r_i is a keyed hash of
/// (K, M) instead, which is deterministic but carries no proof.
inline SessionKeyMaterial session_nonce(const CurveProfile& prof, const Int& seed, const Int& K, ByteView msg) {
  SessionKeyMaterial s;
  s.K = K;
  Bytes m(msg.begin(), msg.end());
  if (prof.purify) {
    s.V = h_pur(prof, {encode_scalar(prof, K), m});
    s.r = derive_nonce(prof, seed, s.V);
  } else {
    s.V = WPoint2::at_infinity();
    s.r = hash_to_scalar(prof, "NONCE", {encode_scalar(prof, seed), encode_scalar(prof, K), m});
  }
  s.R = prof.mul_base(s.r);
  return s;
}

/// Proof-backend tag on the wire; `disabled` marks a profile without Purify parameters.
inline constexpr std::uint8_t kBackendDevTransparent = 0;
inline constexpr std::uint8_t kBackendBulletproof = 1;
inline constexpr std::uint8_t kBackendDisabled = 0xff;

struct SignerSetup {
  int self = 0;
  int peer = 0;
  Int weight;  // pair-specific (and derived, if any) omega
  Int seed;    // r'
  PartyPublic X_self;
  PartyPublic X_peer;
  EdPoint A;  // verification key: A or A^i
  std::optional<std::uint64_t> derivation;
};

/// Setup for `rec` signing with `peer`, optionally under derived key index `derivation`.
inline SignerSetup make_signer_setup(const CurveProfile& prof, const PartyRecord& rec, int peer,
                                     std::optional<std::uint64_t> derivation = std::nullopt) {
  SignerSetup s;
  s.self = rec.role;
  s.peer = peer;
  s.weight = signing_weight(prof, rec, peer);
  s.seed = rec.rprime;
  s.X_self = rec.self_public(prof);
  s.X_peer = rec.public_of(peer);
  s.A = rec.A;
  if (derivation) {
    if (!rec.D) throw std::invalid_argument("make_signer_setup: derivation needs D");
    Int t = derivation_tweak(prof, *rec.D, *derivation);
    s.weight = derived_weight(prof, s.weight, s.self, peer, t);
    s.A = prof.curve.add(rec.A, prof.mul_base(t));
    s.derivation = derivation;
  }
  return s;
}

/// Two-round signing:
///   NONCE   [R_i, backend tag, proof payload]
///   PARTIAL [S_i]
/// followed by the check S B = R + H(R || A || M) A.
class SigningParty : public PartyBase {
 public:
  SigningParty(const CurveProfile& prof, SignerSetup setup, Bytes msg, std::string ceremony_id,
               PurifyBackend backend = PurifyBackend::dev_transparent)
      : PartyBase(setup.self, std::move(ceremony_id)), prof_(prof), st_(std::move(setup)), msg_(std::move(msg)),
        backend_(backend) {
    if (st_.X_self.index != st_.self || st_.X_peer.index != st_.peer) {
      throw std::invalid_argument("SigningParty: X values do not match the signer indices");
    }
  }

  Outbox start() {
    return guarded([&]() -> Outbox {
      Int K = pair_tag(prof_, st_.X_self, st_.X_peer, st_.derivation);
      session_ = session_nonce(prof_, st_.seed, K, msg_);
      Bytes tag, payload;
      if (prof_.purify) {
        auto proof = purify_prove(prof_, {st_.X_self.Rp, session_.V, session_.R}, st_.seed, backend_);
        tag = {backend_ == PurifyBackend::dev_transparent ? kBackendDevTransparent : kBackendBulletproof};
        payload = proof.payload;
      } else {
        tag = {kBackendDisabled};
        notice("purify: disabled, nonce proof skipped");
      }
      expect(Round::nonce, st_.peer);
      return {make(Round::nonce, st_.peer, {prof_.curve.encode(session_.R), tag, payload})};
    });
  }

  const SessionKeyMaterial& session() const { return session_; }
  const SignerSetup& setup() const { return st_; }
  const Int& partial() const { return S_self_; }

  const Signature& signature() const {
    if (!finished()) throw std::logic_error("SigningParty: not finished");
    return sig_;
  }

 protected:
  Outbox handle(const CeremonyMessage& m) override {
    if (m.round == Round::nonce) return on_nonce(m);
    return on_partial(m);
  }

 private:
  Outbox on_nonce(const CeremonyMessage& m) {
    FieldReader r(prof_, m, 3);
    R_peer_ = r.subgroup_point(0);
    if (r.raw(1).size() != 1) r.fail("backend tag");
    std::uint8_t tag = r.raw(1)[0];
    if (prof_.purify) {
      std::uint8_t want = backend_ == PurifyBackend::dev_transparent ? kBackendDevTransparent : kBackendBulletproof;
      if (tag != want) throw AbortError(AbortKind::bad_nonce_proof, m.round, m.sender, "backend mismatch");
      PurifyProof proof{backend_, r.raw(2)};
      if (!purify_verify(prof_, {st_.X_peer.Rp, session_.V, R_peer_}, proof, backend_)) {
        throw AbortError(AbortKind::bad_nonce_proof, m.round, m.sender);
      }
    } else if (tag != kBackendDisabled || !r.raw(2).empty()) {
      throw AbortError(AbortKind::bad_nonce_proof, m.round, m.sender, "backend mismatch");
    }
    const auto& E = prof_.curve;
    R_ = E.add(session_.R, R_peer_);
    h_ = challenge(prof_, R_, st_.A, msg_);
    S_self_ = prof_.scalars.add(session_.r, prof_.scalars.mul(st_.weight, h_));
    expect(Round::partial, st_.peer);
    return {make(Round::partial, st_.peer, {encode_scalar(prof_, S_self_)})};
  }

  Outbox on_partial(const CeremonyMessage& m) {
    FieldReader r(prof_, m, 1);
    Int S_peer = r.scalar(0);
    Int S = prof_.scalars.add(S_self_, S_peer);
    const auto& E = prof_.curve;
    if (prof_.mul_base(S) != E.add(R_, E.mul(h_, st_.A))) throw AbortError(AbortKind::bad_signature, m.round, m.sender);
    sig_ = {R_, S};
    finish();
    return {};
  }

  const CurveProfile& prof_;
  SignerSetup st_;
  Bytes msg_;
  PurifyBackend backend_;

  SessionKeyMaterial session_;
  EdPoint R_peer_, R_;
  Int h_, S_self_;
  Signature sig_;
};

}  // namespace edthresh
