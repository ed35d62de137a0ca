#pragma once

#include "edthresh/commitment.hpp"
#include "edthresh/protocol/party.hpp"
#include "edthresh/protocol/records.hpp"
#include "edthresh/vss.hpp"
#include "edthresh/zkp.hpp"

namespace edthresh {

inline Bytes pok_context(std::string_view tag, const std::string& ceremony_id, int index) {
  return frame(tag, {to_bytes(ceremony_id), Bytes{static_cast<std::uint8_t>(index)}});
}

/// Key generation between P1 and P2, four rounds:
///   KGC  commitment to (A_i, Y_{3,i}, R'_i, M_i)
///   KGD  [nonce, A_i, Y_{3,i}, R'_i, M_i]; the peer rebuilds D and opens
///   SHARE [y_{i,j}, rec_{i,3}.first, rec_{i,3}.second]; checked as Y_{i,j} = A_i + j M_i
///   POK  [U, z] for x_j against Y_{1,j} + Y_{2,j} + Y_{3,j}
class KeygenParty : public PartyBase {
 public:
  /// Secret values a test harness may combine to check identities.
  struct Secrets {
    Int a, m, y3;      // f_i(x) = a + m x and y_{3,i}
    Int y_from_peer;   // y_{j,i}
    Int x;
  };

  KeygenParty(const CurveProfile& prof, int role, EdPoint pk3, std::string ceremony_id, RandomSource& rng,
              EncryptionBackend enc_backend = EncryptionBackend::hashed_dh)
      : PartyBase(role, std::move(ceremony_id)), prof_(prof), pk3_(std::move(pk3)), rng_(rng), enc_(enc_backend) {
    if (role != 1 && role != 2) throw std::invalid_argument("KeygenParty: role must be 1 or 2");
    peer_ = 3 - role;
  }

  Outbox start() {
    return guarded([&]() -> Outbox {
      const auto& E = prof_.curve;
      s_.a = rng_.below(prof_.q());
      s_.m = rng_.below(prof_.q());
      s_.y3 = rng_.below(prof_.q());
      seed_ = NonceSeed::generate(prof_, rng_);
      A_ = prof_.mul_base(s_.a);
      M_ = prof_.mul_base(s_.m);
      Y3_ = prof_.mul_base(s_.y3);
      std::vector<Bytes> parts{E.encode(A_), E.encode(Y3_), encode_seed_public(prof_, seed_.pub), E.encode(M_)};
      own_commit_ = commit(prof_, parts, rng_);
      expect(Round::kgc, peer_);
      return {make(Round::kgc, peer_, {own_commit_.C})};
    });
  }

  const PartyRecord& record() const {
    if (!finished()) throw std::logic_error("KeygenParty: not finished");
    return record_;
  }
  const Secrets& secrets() const { return s_; }

 protected:
  Outbox handle(const CeremonyMessage& m) override {
    switch (m.round) {
      case Round::kgc: return on_commit(m);
      case Round::kgd: return on_decommit(m);
      case Round::share: return on_share(m);
      case Round::pok: return on_proof(m);
      default: throw AbortError(AbortKind::unexpected_message, m.round, m.sender);
    }
  }

 private:
  Outbox on_commit(const CeremonyMessage& m) {
    FieldReader r(prof_, m, 1);
    if (r.raw(0).size() != prof_.digest_bytes()) r.fail("commitment: wrong length");
    peer_commit_ = r.raw(0);
    Bytes nonce(own_commit_.D.begin(), own_commit_.D.begin() + kCommitNonceBytes);
    auto parts = decode_parts(ByteView(own_commit_.D).subspan(kCommitNonceBytes));
    std::vector<Bytes> fields{nonce};
    fields.insert(fields.end(), parts->begin(), parts->end());
    expect(Round::kgd, peer_);
    return {make(Round::kgd, peer_, fields)};
  }

  Outbox on_decommit(const CeremonyMessage& m) {
    FieldReader r(prof_, m, 5);
    if (r.raw(0).size() != kCommitNonceBytes) r.fail("decommitment nonce: wrong length");
    Bytes D = make_decommitment(r.raw(0), {r.raw(1), r.raw(2), r.raw(3), r.raw(4)});
    if (!open(prof_, peer_commit_, D)) throw AbortError(AbortKind::commit_mismatch, m.round, m.sender);
    peer_A_ = r.subgroup_point(1);
    peer_Y3_ = r.subgroup_point(2);
    try {
      peer_Rp_ = decode_seed_public(prof_, r.raw(3));
    } catch (const DecodeError& e) {
      r.fail(e.what());
    }
    peer_M_ = r.subgroup_point(4);

    const auto& fq = prof_.scalars;
    Int y_to_peer = fq.add(s_.a, fq.mul(s_.m, peer_));
    Int y_to_p3 = fq.add(s_.a, fq.mul(s_.m, 3));
    own_rec_ = make_rec_blob(prof_, pk3_, y_to_p3, s_.y3, rng_);
    if (enc_ == EncryptionBackend::verifiable) {
      prove_encrypted_dlog(prof_, {own_rec_.first, prof_.mul_base(y_to_p3)}, y_to_p3, enc_);
    }
    if (!supports_dlog_verification(enc_)) notice("dlog-verification: skipped");
    expect(Round::share, peer_);
    return {make(Round::share, peer_, {encode_scalar(prof_, y_to_peer), own_rec_.first, own_rec_.second})};
  }

  Outbox on_share(const CeremonyMessage& m) {
    FieldReader r(prof_, m, 3);
    Int y = r.scalar(0);
    if (r.raw(1).size() != ciphertext_size(prof_) || r.raw(2).size() != ciphertext_size(prof_)) {
      r.fail("rec blob: wrong ciphertext length");
    }
    int i = index();
    if (!verify_share(prof_, i, y, {peer_A_, peer_M_})) throw AbortError(AbortKind::bad_share, m.round, m.sender);
    s_.y_from_peer = y;
    peer_rec_ = RecBlob{r.raw(1), r.raw(2)};

    const auto& fq = prof_.scalars;
    Int y_self = fq.add(s_.a, fq.mul(s_.m, i));
    s_.x = fq.add(fq.add(y_self, y), s_.y3);

    pub_ = i == 1 ? KeygenPublic{A_, M_, peer_A_, peer_M_, Y3_, peer_Y3_, seed_.pub, peer_Rp_}
                  : KeygenPublic{peer_A_, peer_M_, A_, M_, peer_Y3_, Y3_, peer_Rp_, seed_.pub};
    EdPoint X = pub_.x_statement(prof_, i);
    auto proof = schnorr_prove(prof_, s_.x, X, pok_context("KG/POK", ceremony_id(), i), rng_);
    expect(Round::pok, peer_);
    return {make(Round::pok, peer_, {prof_.curve.encode(proof.U), encode_scalar(prof_, proof.z)})};
  }

  Outbox on_proof(const CeremonyMessage& m) {
    FieldReader r(prof_, m, 2);
    SchnorrProof proof{r.point(0), r.scalar(1)};
    EdPoint X = pub_.x_statement(prof_, peer_);
    if (!schnorr_verify(prof_, X, proof, pok_context("KG/POK", ceremony_id(), peer_))) {
      throw AbortError(AbortKind::bad_proof, m.round, m.sender);
    }
    const auto& fq = prof_.scalars;
    record_.profile = prof_.name;
    record_.role = index();
    record_.x = s_.x;
    record_.omega = index() == 1 ? fq.mul(2, s_.x) : fq.neg(s_.x);
    record_.y3 = s_.y3;
    record_.rprime = seed_.secret;
    record_.A = pub_.joint_key(prof_);
    record_.pub = pub_;
    record_.D = prof_.curve.mul(s_.y3, peer_Y3_);
    record_.rec13 = index() == 1 ? own_rec_ : peer_rec_;
    record_.rec23 = index() == 1 ? peer_rec_ : own_rec_;
    finish();
    return {};
  }

  const CurveProfile& prof_;
  EdPoint pk3_;
  RandomSource& rng_;
  EncryptionBackend enc_;
  int peer_;

  Secrets s_;
  NonceSeed seed_;
  EdPoint A_, M_, Y3_;
  CommitPair own_commit_;
  Bytes peer_commit_;
  EdPoint peer_A_, peer_M_, peer_Y3_;
  WPoint2 peer_Rp_;
  RecBlob own_rec_, peer_rec_;
  KeygenPublic pub_;
  PartyRecord record_;
};

}  // namespace edthresh
