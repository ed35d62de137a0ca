#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edthresh/harness/transport.hpp"
#include "edthresh/protocol/keygen.hpp"
#include "edthresh/protocol/recovery.hpp"
#include "edthresh/protocol/signing.hpp"

namespace edthresh {

struct CeremonyConfig {
  PurifyBackend purify_backend = PurifyBackend::dev_transparent;
  EncryptionBackend enc_backend = EncryptionBackend::hashed_dh;
  DlogEqOptions dleq{};
  bool pin_r3 = false;
};

enum class CeremonyKind { keygen, sign, recover_sign, derive };

inline std::string kind_name(CeremonyKind k) {
  switch (k) {
    case CeremonyKind::keygen: return "keygen";
    case CeremonyKind::sign: return "sign";
    case CeremonyKind::recover_sign: return "recover-sign";
    case CeremonyKind::derive: return "derive";
  }
  return "?";
}

/// What a ceremony produced. Exactly one of `signature`, `public_key` (keygen) or `abort` is
/// the headline outcome; `records` holds the updated party records of finished parties.
struct CeremonyOutcome {
  CeremonyKind kind = CeremonyKind::keygen;
  std::string ceremony_id;
  std::optional<Signature> signature;
  std::optional<EdPoint> public_key;  // A for keygen, the verification key (A or A^i) otherwise
  std::optional<AbortError> abort;
  std::map<int, PartyRecord> records;
  std::vector<Delivery> log;
  std::map<int, std::vector<std::string>> notices;
  std::vector<int> signers;
  Bytes message;
  std::optional<std::uint64_t> derivation;

  bool ok() const { return !abort; }
};

namespace detail {

/// Runs wave after wave until nothing is in flight. The first abort ends the ceremony; at
/// quiescence any party still waiting records a missing-message abort.
inline std::optional<AbortError> drive(Transport& t, const std::map<int, PartyBase*>& parties) {
  while (!t.idle()) {
    for (const auto& d : t.take_wave()) {
      auto it = parties.find(d.receiver);
      if (it == parties.end()) continue;
      try {
        t.post(it->second->receive_wire(d.wire));
      } catch (const AbortError& e) {
        return e;
      }
    }
  }
  for (const auto& [idx, p] : parties) {
    if (auto w = p->awaiting()) {
      AbortError e(AbortKind::missing_message, w->first, w->second, "no message before quiescence");
      p->force_abort(e);
      return e;
    }
  }
  return std::nullopt;
}

inline void collect_notices(CeremonyOutcome& out, const std::map<int, PartyBase*>& parties) {
  for (const auto& [idx, p] : parties) out.notices[idx] = p->notices();
}

template <class F>
std::optional<AbortError> start_all(Transport& t, std::initializer_list<F> starts) {
  for (const auto& s : starts) {
    try {
      t.post(s());
    } catch (const AbortError& e) {
      return e;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Key generation between P1 and P2; P3 contributes only its encryption key.
inline CeremonyOutcome run_keygen(const CurveProfile& prof, const EdPoint& pk3, const std::string& id, RandomSource& rng,
                                  const CeremonyConfig& cfg = {}, AdversaryScript* adversary = nullptr) {
  CeremonyOutcome out;
  out.kind = CeremonyKind::keygen;
  out.ceremony_id = id;
  Transport t(adversary);
  KeygenParty p1(prof, 1, pk3, id, rng, cfg.enc_backend);
  KeygenParty p2(prof, 2, pk3, id, rng, cfg.enc_backend);
  std::map<int, PartyBase*> parties{{1, &p1}, {2, &p2}};
  using Start = std::function<Outbox()>;
  out.abort = detail::start_all<Start>(t, {[&] { return p1.start(); }, [&] { return p2.start(); }});
  if (!out.abort) out.abort = detail::drive(t, parties);
  out.log = t.log();
  detail::collect_notices(out, parties);
  if (!out.abort) {
    out.records[1] = p1.record();
    out.records[2] = p2.record();
    out.records[1].pin_r3 = out.records[2].pin_r3 = cfg.pin_r3;
    out.public_key = p1.record().A;
  }
  return out;
}

/// Ordinary two-party signing with records that both know each other's X.
inline CeremonyOutcome run_sign(const CurveProfile& prof, const PartyRecord& ra, const PartyRecord& rb, Bytes msg,
                                const std::string& id, const CeremonyConfig& cfg = {},
                                AdversaryScript* adversary = nullptr,
                                std::optional<std::uint64_t> derivation = std::nullopt) {
  if (ra.role == rb.role) throw std::invalid_argument("run_sign: signers must differ");
  CeremonyOutcome out;
  out.kind = derivation ? CeremonyKind::derive : CeremonyKind::sign;
  out.ceremony_id = id;
  out.signers = {std::min(ra.role, rb.role), std::max(ra.role, rb.role)};
  out.message = msg;
  out.derivation = derivation;
  SigningParty a(prof, make_signer_setup(prof, ra, rb.role, derivation), msg, id, cfg.purify_backend);
  SigningParty b(prof, make_signer_setup(prof, rb, ra.role, derivation), msg, id, cfg.purify_backend);
  out.public_key = a.setup().A;
  Transport t(adversary);
  std::map<int, PartyBase*> parties{{ra.role, &a}, {rb.role, &b}};
  using Start = std::function<Outbox()>;
  out.abort = detail::start_all<Start>(t, {[&] { return a.start(); }, [&] { return b.start(); }});
  if (!out.abort) out.abort = detail::drive(t, parties);
  out.log = t.log();
  detail::collect_notices(out, parties);
  if (!out.abort) {
    if (!(a.signature() == b.signature())) {
      throw std::logic_error("run_sign: signers finished with different signatures");
    }
    out.signature = a.signature();
  }
  return out;
}

/// Recovery signing between the online party `online_rec` and P3. On success the records of
/// the online party, P3 and (if supplied) the other offline party all learn X_3.
inline CeremonyOutcome run_recover_sign(const CurveProfile& prof, const PartyRecord& online_rec,
                                        const RecoveryKeypair& keys3, Bytes msg, const std::string& id,
                                        RandomSource& rng, const CeremonyConfig& cfg = {},
                                        AdversaryScript* adversary = nullptr,
                                        std::optional<Int> pinned_seed = std::nullopt,
                                        const PartyRecord* other_rec = nullptr,
                                        std::optional<std::uint64_t> derivation = std::nullopt) {
  CeremonyOutcome out;
  out.kind = CeremonyKind::recover_sign;
  out.ceremony_id = id;
  out.signers = {online_rec.role, 3};
  out.message = msg;
  out.derivation = derivation;
  RecoveryOnlineParty on(prof, online_rec, msg, id, rng, cfg.purify_backend, derivation, cfg.dleq);
  RecoveryParty3 p3(prof, keys3, online_rec.role, msg, id, rng, cfg.purify_backend, std::move(pinned_seed), derivation,
                    cfg.dleq);
  Transport t(adversary);
  std::map<int, PartyBase*> parties{{online_rec.role, &on}, {3, &p3}};
  using Start = std::function<Outbox()>;
  out.abort = detail::start_all<Start>(t, {[&] { return on.start(); }, [&] { return p3.start(); }});
  if (!out.abort) out.abort = detail::drive(t, parties);
  out.log = t.log();
  detail::collect_notices(out, parties);
  if (!out.abort) {
    if (!(on.signature() == p3.signature())) {
      throw std::logic_error("run_recover_sign: signers finished with different signatures");
    }
    out.signature = on.signature();
    out.public_key = on.signer().setup().A;
    out.records[online_rec.role] = on.record();
    out.records[3] = p3.record();
    out.records[3].pin_r3 = cfg.pin_r3;
    if (other_rec) {
      PartyRecord o = *other_rec;
      o.x3 = p3.record().x3;
      out.records[o.role] = o;
    }
  }
  return out;
}

}  // namespace edthresh
