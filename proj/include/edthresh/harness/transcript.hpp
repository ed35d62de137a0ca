#pragma once

#include <nlohmann/json.hpp>

#include "edthresh/harness/ceremony.hpp"

namespace edthresh {

using Json = nlohmann::ordered_json;

inline constexpr const char* kTranscriptFormat = "edthresh-transcript/1";

class TranscriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Fields never written to a transcript: the plaintext share y_{i,j} of SHARE.
inline bool redacted(Round r, std::size_t field) { return r == Round::share && field == 0; }

inline Json abort_json(const AbortError& e) {
  Json j;
  j["kind"] = abort_name(e.kind());
  j["round"] = round_name(e.round());
  j["sender"] = e.sender();
  j["detail"] = e.detail();
  return j;
}

}  // namespace detail

/// Canonical transcript: fixed key order, lowercase hex, one entry per delivered message.
inline Json transcript_json(const CurveProfile& prof, const CeremonyOutcome& out) {
  Json j;
  j["format"] = kTranscriptFormat;
  j["kind"] = kind_name(out.kind);
  j["profile"] = prof.name;
  j["ceremony_id"] = out.ceremony_id;
  j["signers"] = out.signers;
  j["message"] = to_hex(out.message);
  j["derivation"] = out.derivation ? Json(*out.derivation) : Json(nullptr);
  Json msgs = Json::array();
  for (const auto& d : out.log) {
    Json e;
    e["seq"] = d.seq;
    e["wave"] = d.wave;
    e["round"] = round_name(d.round);
    e["sender"] = d.sender;
    e["receiver"] = d.receiver;
    e["mutated"] = d.mutated;
    try {
      CeremonyMessage m = deserialize(d.wire);
      Json fields = Json::array();
      for (std::size_t i = 0; i < m.fields.size(); ++i) {
        fields.push_back(detail::redacted(m.round, i) ? Json(nullptr) : Json(to_hex(m.fields[i])));
      }
      e["fields"] = fields;
    } catch (const MessageFormatError&) {
      e["unparsed_wire"] = to_hex(d.wire);
    }
    msgs.push_back(e);
  }
  j["messages"] = msgs;
  Json notices = Json::object();
  for (const auto& [idx, ns] : out.notices) notices[std::to_string(idx)] = ns;
  j["notices"] = notices;
  Json o;
  if (out.abort) {
    o["status"] = "abort";
    o["abort"] = detail::abort_json(*out.abort);
  } else if (out.signature) {
    o["status"] = "signature";
    o["public_key"] = to_hex(prof.curve.encode(*out.public_key));
    o["signature"] = to_hex(encode_signature(prof, *out.signature));
  } else {
    o["status"] = "public_key";
    o["public_key"] = to_hex(prof.curve.encode(*out.public_key));
  }
  j["outcome"] = o;
  return j;
}

struct ReplayReport {
  bool reproduced = false;        // the verify-only outcome equals the recorded one
  std::string recorded_status;    // "public_key", "signature" or "abort"
  std::vector<std::string> checks;  // one line per check performed
  std::optional<std::string> failure;
};

namespace detail {

struct TranscriptMessage {
  Round round;
  int sender, receiver;
  std::vector<std::optional<Bytes>> fields;
};

inline std::vector<TranscriptMessage> transcript_messages(const Json& j) {
  std::vector<TranscriptMessage> out;
  for (const auto& e : j.at("messages")) {
    if (e.contains("unparsed_wire")) continue;
    auto r = round_from_name(e.at("round").get<std::string>());
    if (!r) throw TranscriptError("unknown round name");
    TranscriptMessage m{*r, e.at("sender").get<int>(), e.at("receiver").get<int>(), {}};
    for (const auto& f : e.at("fields")) {
      m.fields.push_back(f.is_null() ? std::nullopt : std::optional<Bytes>(from_hex(f.get<std::string>())));
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline const TranscriptMessage* find_message(const std::vector<TranscriptMessage>& ms, Round r, int sender) {
  for (const auto& m : ms) {
    if (m.round == r && m.sender == sender) return &m;
  }
  return nullptr;
}

/// Wraps a transcript entry as a message so the protocol field readers apply.
inline CeremonyMessage as_message(const std::string& id, const TranscriptMessage& t) {
  CeremonyMessage m{id, t.round, static_cast<std::uint8_t>(t.sender), static_cast<std::uint8_t>(t.receiver), {}};
  for (const auto& f : t.fields) m.fields.push_back(f.value_or(Bytes{}));
  return m;
}

class Replayer {
 public:
  Replayer(const CurveProfile& prof, const Json& j)
      : prof_(prof), id_(j.at("ceremony_id").get<std::string>()), msgs_(transcript_messages(j)) {}

  std::vector<std::string> checks;

  const TranscriptMessage& need(Round r, int sender) {
    auto* m = find_message(msgs_, r, sender);
    if (!m) throw TranscriptError(round_name(r) + " from P" + std::to_string(sender) + " not in transcript");
    return *m;
  }

  void check(bool ok, const std::string& what) {
    if (!ok) throw TranscriptError("check failed: " + what);
    checks.push_back("ok: " + what);
  }

  EdPoint keygen() {
    KeygenPublic pub;
    for (int i : {1, 2}) {
      auto C = need(Round::kgc, i);
      auto D = need(Round::kgd, i);
      CeremonyMessage dm = as_message(id_, D);
      FieldReader r(prof_, dm, 5);
      std::vector<Bytes> parts{r.raw(1), r.raw(2), r.raw(3), r.raw(4)};
      check(C.fields.size() == 1 && C.fields[0] &&
                open(prof_, *C.fields[0], make_decommitment(r.raw(0), parts)).has_value(),
            "KGD of P" + std::to_string(i) + " opens KGC");
      EdPoint A = r.subgroup_point(1), Y3 = r.subgroup_point(2), M = r.subgroup_point(4);
      WPoint2 Rp = decode_seed_public(prof_, r.raw(3));
      (i == 1 ? pub.A1 : pub.A2) = A;
      (i == 1 ? pub.M1 : pub.M2) = M;
      (i == 1 ? pub.Y31 : pub.Y32) = Y3;
      (i == 1 ? pub.Rp1 : pub.Rp2) = Rp;
    }
    for (int i : {1, 2}) {
      CeremonyMessage pm = as_message(id_, need(Round::pok, i));
      FieldReader r(prof_, pm, 2);
      check(schnorr_verify(prof_, pub.x_statement(prof_, i), {r.point(0), r.scalar(1)},
                           pok_context("KG/POK", id_, i)),
            "POK of P" + std::to_string(i));
    }
    return pub.joint_key(prof_);
  }

  void recovery(int online, const DlogEqOptions& dleq) {
    auto pkg = RecoveryPackage::parse(prof_, as_message(id_, need(Round::rec_package, online)));
    check(schnorr_verify(prof_, pkg.pub.x_statement(prof_, online), pkg.proof, pok_context("REC/POK", id_, online)),
          "RECPKG proof of P" + std::to_string(online));
    const auto& own = online == 1 ? pkg.pub.Y31 : pkg.pub.Y32;
    const auto& other = online == 1 ? pkg.pub.Y32 : pkg.pub.Y31;
    check(dlogeq_verify(prof_, other, own, pkg.D, pkg.d_proof, pok_context("REC/D", id_, online), dleq),
          "RECPKG proof of D");
    CeremonyMessage jm = as_message(id_, need(Round::rec_join, 3));
    FieldReader r(prof_, jm, 4);
    check(r.subgroup_point(0) == pkg.pub.A3(prof_), "RECJOIN A_3");
    check(schnorr_verify(prof_, pkg.pub.x_statement(prof_, 3), {r.point(2), r.scalar(3)},
                         pok_context("REC/POK", id_, 3)),
          "RECJOIN proof of P3");
  }

  Signature signature(const std::vector<int>& signers) {
    const auto& E = prof_.curve;
    EdPoint R = EdwardsCurve::identity();
    Int S = 0;
    for (int i : signers) {
      CeremonyMessage nm = as_message(id_, need(Round::nonce, i));
      FieldReader rn(prof_, nm, 3);
      R = E.add(R, rn.subgroup_point(0));
      CeremonyMessage sm = as_message(id_, need(Round::partial, i));
      FieldReader rp(prof_, sm, 1);
      S = prof_.scalars.add(S, rp.scalar(0));
    }
    return {R, S};
  }

 private:
  const CurveProfile& prof_;
  std::string id_;
  std::vector<TranscriptMessage> msgs_;
};

}  // namespace detail

/// Verify-only replay: re-checks commitments, proofs and the final signature from the public
/// transcript alone, then compares with the recorded outcome. A recorded abort is reproduced
/// when the verify-only pass also fails to produce a valid result.
inline ReplayReport replay_transcript(const CurveProfile& prof, const Json& j, const DlogEqOptions& dleq = {}) {
  if (j.at("format").get<std::string>() != kTranscriptFormat) throw TranscriptError("unknown transcript format");
  if (j.at("profile").get<std::string>() != prof.name) throw TranscriptError("transcript is for another profile");
  ReplayReport rep;
  const auto& o = j.at("outcome");
  rep.recorded_status = o.at("status").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  detail::Replayer r(prof, j);
  std::optional<std::string> got_key, got_sig;
  try {
    if (kind == "keygen") {
      got_key = to_hex(prof.curve.encode(r.keygen()));
      r.check(o.contains("public_key") && *got_key == o.at("public_key").get<std::string>(),
              "joint key matches the recorded public key");
    } else {
      auto signers = j.at("signers").get<std::vector<int>>();
      if (signers.size() != 2) throw TranscriptError("signer set must have two entries");
      if (kind == "recover-sign") r.recovery(signers[0], dleq);
      if (!o.contains("public_key")) throw TranscriptError("no verification key recorded");
      EdPoint A = prof.curve.decode(from_hex(o.at("public_key").get<std::string>()));
      Signature sig = r.signature(signers);
      Bytes msg = from_hex(j.at("message").get<std::string>());
      r.check(central_verify(prof, A, msg, sig), "signature verifies under the recorded key");
      got_sig = to_hex(encode_signature(prof, sig));
      r.check(o.contains("signature") && *got_sig == o.at("signature").get<std::string>(),
              "signature matches the recorded one");
    }
  } catch (const TranscriptError& e) {
    rep.failure = e.what();
  } catch (const AbortError& e) {
    rep.failure = std::string(abort_name(e.kind())) + ": " + e.detail();
  } catch (const DecodeError& e) {
    rep.failure = e.what();
  }
  rep.checks = r.checks;
  rep.reproduced = rep.recorded_status == "abort" ? rep.failure.has_value() : !rep.failure.has_value();
  return rep;
}

}  // namespace edthresh
