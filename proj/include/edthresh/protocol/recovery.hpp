#pragma once

#include <algorithm>
#include <memory>

#include "edthresh/protocol/keygen.hpp"
#include "edthresh/protocol/signing.hpp"

namespace edthresh {

/// What the online party hands P3: the joint key, both rec blobs, its own X and a proof of its
/// share, the shared secret D (needed for P3's derivation updates) with a proof that
/// log_B Y_{3,i} = log_{Y_{3,j}} D, and the public keygen data P3 needs to rebuild statements.
struct RecoveryPackage {
  EdPoint A;
  RecBlob rec13, rec23;
  PartyPublic X_online;
  EdPoint D;
  KeygenPublic pub;
  SchnorrProof proof;
  DlogEqProof d_proof;

  friend bool operator==(const RecoveryPackage& l, const RecoveryPackage& r) {
    return l.A == r.A && l.rec13 == r.rec13 && l.rec23 == r.rec23 && l.X_online == r.X_online && l.D == r.D &&
           l.pub == r.pub && l.proof.U == r.proof.U && l.proof.z == r.proof.z &&
           l.d_proof.rounds.size() == r.d_proof.rounds.size() &&
           std::equal(l.d_proof.rounds.begin(), l.d_proof.rounds.end(), r.d_proof.rounds.begin(),
                      [](const DlogEqRound& a, const DlogEqRound& b) {
                        return a.U == b.U && a.Ubar == b.Ubar && a.c == b.c && a.s == b.s;
                      });
  }

  static constexpr std::size_t kFields = 19;

  std::vector<Bytes> to_fields(const CurveProfile& prof) const {
    const auto& E = prof.curve;
    return {E.encode(A),
            rec13.first,
            rec13.second,
            rec23.first,
            rec23.second,
            E.encode(X_online.A),
            encode_seed_public(prof, X_online.Rp),
            E.encode(D),
            E.encode(pub.A1),
            E.encode(pub.M1),
            E.encode(pub.A2),
            E.encode(pub.M2),
            E.encode(pub.Y31),
            E.encode(pub.Y32),
            encode_seed_public(prof, pub.Rp1),
            encode_seed_public(prof, pub.Rp2),
            E.encode(proof.U),
            encode_scalar(prof, proof.z),
            encode_dlogeq(prof, d_proof)};
  }

  /// Structural parse; failures are malformed-message aborts against the sender.
  static RecoveryPackage parse(const CurveProfile& prof, const CeremonyMessage& m) {
    FieldReader r(prof, m, kFields);
    auto aux = [&](std::size_t i) {
      try {
        return decode_seed_public(prof, r.raw(i));
      } catch (const DecodeError& e) {
        r.fail(e.what());
      }
    };
    for (std::size_t i = 1; i <= 4; ++i) {
      if (r.raw(i).size() != ciphertext_size(prof)) r.fail("rec blob: wrong ciphertext length");
    }
    RecoveryPackage p;
    p.A = r.subgroup_point(0);
    p.rec13 = {r.raw(1), r.raw(2)};
    p.rec23 = {r.raw(3), r.raw(4)};
    p.X_online = {m.sender, r.subgroup_point(5), aux(6)};
    p.D = r.subgroup_point(7);
    p.pub = {r.subgroup_point(8),  r.subgroup_point(9),  r.subgroup_point(10), r.subgroup_point(11),
             r.subgroup_point(12), r.subgroup_point(13), aux(14),              aux(15)};
    p.proof = {r.point(16), r.scalar(17)};
    try {
      p.d_proof = decode_dlogeq(prof, r.raw(18));
    } catch (const DecodeError& e) {
      r.fail(e.what());
    }
    if (p.A != p.pub.joint_key(prof)) r.fail("A does not match the keygen data");
    if (m.sender != 1 && m.sender != 2) r.fail("package sender must be P1 or P2");
    if (!(p.X_online == p.pub.X(m.sender))) r.fail("X of the online party does not match the keygen data");
    return p;
  }
};

/// Builds the package; `rec` must be a finalized P1 or P2 record holding both blobs.
inline RecoveryPackage recovery_prepare(const CurveProfile& prof, const PartyRecord& rec, const std::string& ceremony_id,
                                        RandomSource& rng, const DlogEqOptions& opts = {}) {
  if (rec.role != 1 && rec.role != 2) throw std::invalid_argument("recovery_prepare: online party must be P1 or P2");
  if (!rec.rec13 || !rec.rec23) throw std::invalid_argument("recovery_prepare: record lacks rec blobs");
  if (!rec.D) throw std::invalid_argument("recovery_prepare: record lacks D");
  RecoveryPackage p;
  p.A = rec.A;
  p.rec13 = *rec.rec13;
  p.rec23 = *rec.rec23;
  p.X_online = rec.pub.X(rec.role);
  p.D = *rec.D;
  p.pub = rec.pub;
  p.proof = schnorr_prove(prof, rec.x, rec.pub.x_statement(prof, rec.role),
                          pok_context("REC/POK", ceremony_id, rec.role), rng);
  const auto& own = rec.role == 1 ? rec.pub.Y31 : rec.pub.Y32;
  const auto& other = rec.role == 1 ? rec.pub.Y32 : rec.pub.Y31;
  p.d_proof = dlogeq_prove(prof, rec.y3, other, own, *rec.D, pok_context("REC/D", ceremony_id, rec.role), rng, opts);
  return p;
}

/// Recovery signing, online side (P1 or P2):
///   RECPKG  -> P3
///   RECJOIN <- P3  [A_3, R'_3, U, z]; the proof is checked against Y_{1,3} + Y_{2,3} + 2 Y_{3,2} - Y_{3,1}
///   then NONCE / PARTIAL as in ordinary signing.
class RecoveryOnlineParty : public PartyBase {
 public:
  RecoveryOnlineParty(const CurveProfile& prof, PartyRecord rec, Bytes msg, std::string ceremony_id, RandomSource& rng,
                      PurifyBackend backend = PurifyBackend::dev_transparent,
                      std::optional<std::uint64_t> derivation = std::nullopt, DlogEqOptions dleq = {})
      : PartyBase(rec.role, std::move(ceremony_id)), prof_(prof), rec_(std::move(rec)), msg_(std::move(msg)),
        rng_(rng), backend_(backend), derivation_(derivation), dleq_(dleq) {}

  Outbox start() {
    return guarded([&]() -> Outbox {
      auto pkg = recovery_prepare(prof_, rec_, ceremony_id(), rng_, dleq_);
      expect(Round::rec_join, 3);
      return {make(Round::rec_package, 3, pkg.to_fields(prof_))};
    });
  }

  /// The record updated with X_3 once P3 has joined.
  const PartyRecord& record() const { return rec_; }

  const SigningParty& signer() const {
    if (!signer_) throw std::logic_error("RecoveryOnlineParty: P3 has not joined");
    return *signer_;
  }

  const Signature& signature() const { return signer().signature(); }

 protected:
  Outbox handle(const CeremonyMessage& m) override {
    if (m.round == Round::rec_join) return on_join(m);
    Outbox out = signer_->receive(m);
    if (m.round == Round::nonce) {
      expect(Round::partial, 3);
    } else {
      finish();
    }
    return out;
  }

 private:
  Outbox on_join(const CeremonyMessage& m) {
    FieldReader r(prof_, m, 4);
    EdPoint A3 = r.subgroup_point(0);
    WPoint2 Rp3;
    try {
      Rp3 = decode_seed_public(prof_, r.raw(1));
    } catch (const DecodeError& e) {
      r.fail(e.what());
    }
    SchnorrProof proof{r.point(2), r.scalar(3)};
    if (A3 != rec_.pub.A3(prof_)) throw AbortError(AbortKind::bad_share, m.round, m.sender, "A_3 inconsistent");
    if (!schnorr_verify(prof_, rec_.pub.x_statement(prof_, 3), proof, pok_context("REC/POK", ceremony_id(), 3))) {
      throw AbortError(AbortKind::bad_proof, m.round, m.sender);
    }
    rec_.x3 = PartyPublic{3, A3, Rp3};
    signer_ = std::make_unique<SigningParty>(prof_, make_signer_setup(prof_, rec_, 3, derivation_), msg_,
                                             ceremony_id(), backend_);
    expect(Round::nonce, 3);
    return signer_->start();
  }

  const CurveProfile& prof_;
  PartyRecord rec_;
  Bytes msg_;
  RandomSource& rng_;
  PurifyBackend backend_;
  std::optional<std::uint64_t> derivation_;
  DlogEqOptions dleq_;
  std::unique_ptr<SigningParty> signer_;
};

/// Recovery signing, P3 side. On the package P3 checks the online party's proof, decrypts the
/// four shares, checks each against the public keygen data, and computes
///   a_3 = 2 y_{3,1} - y_{3,2},  x_3 = y_{1,3} + y_{2,3} + 2 y_{3,2} - y_{3,1}.
class RecoveryParty3 : public PartyBase {
 public:
  struct Recovered {
    Int y13, y23, y31, y32;
    Int a3, x3;
  };

  /// `pinned_seed` reuses an earlier r'_3 instead of sampling a fresh one.
  RecoveryParty3(const CurveProfile& prof, RecoveryKeypair keys, int online, Bytes msg, std::string ceremony_id,
                 RandomSource& rng, PurifyBackend backend = PurifyBackend::dev_transparent,
                 std::optional<Int> pinned_seed = std::nullopt, std::optional<std::uint64_t> derivation = std::nullopt,
                 DlogEqOptions dleq = {})
      : PartyBase(3, std::move(ceremony_id)), prof_(prof), keys_(std::move(keys)), online_(online),
        msg_(std::move(msg)), rng_(rng), backend_(backend), pinned_(std::move(pinned_seed)), derivation_(derivation),
        dleq_(dleq) {
    if (online != 1 && online != 2) throw std::invalid_argument("RecoveryParty3: online party must be P1 or P2");
  }

  Outbox start() {
    expect(Round::rec_package, online_);
    return {};
  }

  const PartyRecord& record() const {
    if (!signer_) throw std::logic_error("RecoveryParty3: package not processed");
    return rec_;
  }
  const Recovered& recovered() const { return got_; }
  const SigningParty& signer() const {
    if (!signer_) throw std::logic_error("RecoveryParty3: package not processed");
    return *signer_;
  }
  const Signature& signature() const { return signer().signature(); }

 protected:
  Outbox handle(const CeremonyMessage& m) override {
    if (m.round == Round::rec_package) return on_package(m);
    Outbox out = signer_->receive(m);
    if (m.round == Round::nonce) {
      expect(Round::partial, online_);
    } else {
      finish();
    }
    return out;
  }

 private:
  Outbox on_package(const CeremonyMessage& m) {
    auto pkg = RecoveryPackage::parse(prof_, m);
    const auto& pub = pkg.pub;
    if (!schnorr_verify(prof_, pub.x_statement(prof_, online_), pkg.proof,
                        pok_context("REC/POK", ceremony_id(), online_))) {
      throw AbortError(AbortKind::bad_proof, m.round, m.sender);
    }
    const auto& own = online_ == 1 ? pub.Y31 : pub.Y32;
    const auto& other = online_ == 1 ? pub.Y32 : pub.Y31;
    if (!dlogeq_verify(prof_, other, own, pkg.D, pkg.d_proof, pok_context("REC/D", ceremony_id(), online_), dleq_)) {
      throw AbortError(AbortKind::bad_proof, m.round, m.sender, "D");
    }
    auto decrypt = [&](const Bytes& ct) {
      try {
        return dec(prof_, keys_.sk, ct);
      } catch (const DecryptError& e) {
        throw AbortError(AbortKind::decrypt_failure, m.round, m.sender, e.what());
      }
    };
    got_.y13 = decrypt(pkg.rec13.first);
    got_.y31 = decrypt(pkg.rec13.second);
    got_.y23 = decrypt(pkg.rec23.first);
    got_.y32 = decrypt(pkg.rec23.second);
    auto check = [&](const Int& y, const EdPoint& Y, const char* what) {
      if (prof_.mul_base(y) != Y) throw AbortError(AbortKind::bad_share, m.round, m.sender, what);
    };
    check(got_.y13, pub.Y(prof_, 1, 3), "y_{1,3}");
    check(got_.y23, pub.Y(prof_, 2, 3), "y_{2,3}");
    check(got_.y31, pub.Y31, "y_{3,1}");
    check(got_.y32, pub.Y32, "y_{3,2}");
    if (prof_.curve.mul(got_.y31, pub.Y32) != pkg.D) throw AbortError(AbortKind::bad_share, m.round, m.sender, "D");

    const auto& fq = prof_.scalars;
    got_.a3 = fq.sub(fq.mul(2, got_.y31), got_.y32);
    got_.x3 = fq.sub(fq.add(fq.add(got_.y13, got_.y23), fq.mul(2, got_.y32)), got_.y31);

    NonceSeed seed = pinned_ ? NonceSeed::from_secret(prof_, *pinned_) : NonceSeed::generate(prof_, rng_);
    rec_.profile = prof_.name;
    rec_.role = 3;
    rec_.x = got_.x3;
    rec_.omega = got_.x3;
    rec_.rprime = seed.secret;
    rec_.A = pkg.A;
    rec_.pub = pub;
    rec_.x3 = PartyPublic{3, prof_.mul_base(got_.a3), seed.pub};
    rec_.D = pkg.D;
    rec_.pin_r3 = pinned_.has_value();

    EdPoint X3 = pub.x_statement(prof_, 3);
    auto proof = schnorr_prove(prof_, got_.x3, X3, pok_context("REC/POK", ceremony_id(), 3), rng_);
    const auto& E = prof_.curve;
    Outbox out{make(Round::rec_join, online_,
                    {E.encode(rec_.x3->A), encode_seed_public(prof_, seed.pub), E.encode(proof.U),
                     encode_scalar(prof_, proof.z)})};
    signer_ = std::make_unique<SigningParty>(prof_, make_signer_setup(prof_, rec_, online_, derivation_), msg_,
                                             ceremony_id(), backend_);
    Outbox nonce = signer_->start();
    out.insert(out.end(), nonce.begin(), nonce.end());
    expect(Round::nonce, online_);
    return out;
  }

  const CurveProfile& prof_;
  RecoveryKeypair keys_;
  int online_;
  Bytes msg_;
  RandomSource& rng_;
  PurifyBackend backend_;
  std::optional<Int> pinned_;
  std::optional<std::uint64_t> derivation_;
  DlogEqOptions dleq_;

  Recovered got_;
  PartyRecord rec_;
  std::unique_ptr<SigningParty> signer_;
};

}  // namespace edthresh
