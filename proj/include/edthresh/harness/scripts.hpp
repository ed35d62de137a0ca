#pragma once

#include <set>

#include "edthresh/harness/ceremony.hpp"

namespace edthresh {

/// A bundled adversarial scenario: the ceremony it attacks, the script, and the abort kinds
/// that count as a correct reaction.
struct ScriptCase {
  std::string name;
  CeremonyKind kind;
  std::function<AdversaryScript(const CurveProfile&)> make;
  std::set<AbortKind> expected;
  int online = 1;  // online party for recovery scripts
};

namespace detail {

inline AdversaryScript one(std::string name, Round r, int sender, Mutation m) {
  return AdversaryScript(std::move(name), {{r, sender, std::move(m), false}});
}

/// Adds one to the scalar in field `field`, keeping it reduced.
inline Mutation bump_scalar(const CurveProfile& prof, std::size_t field) {
  return Mutation::custom([&prof, field](CeremonyMessage& m) {
    m.fields.at(field) = encode_scalar(prof, prof.scalars.add(from_le(m.fields.at(field)), 1));
  });
}

/// Replaces the point in field `field` by itself plus B.
inline Mutation shift_point(const CurveProfile& prof, std::size_t field) {
  return Mutation::custom([&prof, field](CeremonyMessage& m) {
    const auto& E = prof.curve;
    m.fields.at(field) = E.encode(E.add(E.decode(m.fields.at(field)), prof.base));
  });
}

}  // namespace detail

inline std::vector<ScriptCase> bundled_scripts() {
  using K = AbortKind;
  using detail::one;
  auto kg = CeremonyKind::keygen, sg = CeremonyKind::sign, rs = CeremonyKind::recover_sign;
  return {
      {"kgc-flip-commitment", kg, [](auto&) { return one("kgc-flip-commitment", Round::kgc, 2, Mutation::flip(0, 5)); },
       {K::commit_mismatch}},
      {"kgc-replay", kg, [](auto&) { return one("kgc-replay", Round::kgc, 1, Mutation::replay()); },
       {K::unexpected_message}},
      {"kgd-flip-byte", kg, [](auto&) { return one("kgd-flip-byte", Round::kgd, 2, Mutation::flip(1)); },
       {K::commit_mismatch}},
      {"kgd-drop", kg, [](auto&) { return one("kgd-drop", Round::kgd, 1, Mutation::drop()); },
       {K::unexpected_message, K::missing_message}},
      {"share-bump-y", kg,
       [](auto& p) { return one("share-bump-y", Round::share, 1, detail::bump_scalar(p, 0)); }, {K::bad_share}},
      {"share-truncate-blob", kg,
       [](auto&) { return one("share-truncate-blob", Round::share, 2, Mutation::replace(1, Bytes{1, 2})); },
       {K::malformed_message}},
      {"pok-bump-z", kg, [](auto& p) { return one("pok-bump-z", Round::pok, 2, detail::bump_scalar(p, 1)); },
       {K::bad_proof}},
      {"pok-drop", kg, [](auto&) { return one("pok-drop", Round::pok, 1, Mutation::drop()); }, {K::missing_message}},
      {"wire-version-flip", kg, [](auto&) { return one("wire-version-flip", Round::kgc, 1, Mutation::flip_wire(0)); },
       {K::malformed_message}},
      {"nonce-shift-R", sg, [](auto& p) { return one("nonce-shift-R", Round::nonce, 2, detail::shift_point(p, 0)); },
       {K::bad_nonce_proof, K::bad_signature}},
      {"nonce-forged-proof", sg,
       [](auto&) { return one("nonce-forged-proof", Round::nonce, 1, Mutation::replace(2, Bytes{0})); },
       {K::bad_nonce_proof}},
      {"nonce-replay", sg, [](auto&) { return one("nonce-replay", Round::nonce, 2, Mutation::replay()); },
       {K::unexpected_message}},
      {"partial-bump-S", sg, [](auto& p) { return one("partial-bump-S", Round::partial, 1, detail::bump_scalar(p, 0)); },
       {K::bad_signature}},
      {"partial-unreduced-S", sg,
       [](auto& p) {
         return one("partial-unreduced-S", Round::partial, 2, Mutation::custom([&p](CeremonyMessage& m) {
                      m.fields[0] = to_le(from_le(m.fields[0]) + p.q(), p.scalar_bytes());
                    }));
       },
       {K::malformed_message}},
      {"partial-drop", sg, [](auto&) { return one("partial-drop", Round::partial, 2, Mutation::drop()); },
       {K::missing_message}},
      {"recpkg-bump-z", rs, [](auto& p) { return one("recpkg-bump-z", Round::rec_package, 1, detail::bump_scalar(p, 17)); },
       {K::bad_proof}},
      {"recpkg-flip-rec-blob", rs,
       [](auto&) { return one("recpkg-flip-rec-blob", Round::rec_package, 1, Mutation::flip(2, 0)); },
       {K::bad_share, K::decrypt_failure}},
      {"recpkg-shift-D", rs, [](auto& p) { return one("recpkg-shift-D", Round::rec_package, 2, detail::shift_point(p, 7)); },
       {K::bad_proof}, 2},
      {"recpkg-shift-A1", rs,
       [](auto& p) { return one("recpkg-shift-A1", Round::rec_package, 1, detail::shift_point(p, 8)); },
       {K::malformed_message}},
      {"recjoin-bump-z", rs, [](auto& p) { return one("recjoin-bump-z", Round::rec_join, 3, detail::bump_scalar(p, 3)); },
       {K::bad_proof}},
      {"recjoin-shift-A3", rs,
       [](auto& p) { return one("recjoin-shift-A3", Round::rec_join, 3, detail::shift_point(p, 0)); }, {K::bad_share}},
      {"recovery-partial-bump-S", rs,
       [](auto& p) { return one("recovery-partial-bump-S", Round::partial, 3, detail::bump_scalar(p, 0)); },
       {K::bad_signature}},
  };
}

/// Runs `sc` on fresh keys: an attacked keygen, or an honest keygen followed by the attacked
/// signing ceremony.
inline CeremonyOutcome run_script(const CurveProfile& prof, const ScriptCase& sc, RandomSource& rng,
                                  const CeremonyConfig& cfg = {}, const Bytes& msg = to_bytes("adversarial")) {
  AdversaryScript adv = sc.make(prof);
  auto keys = RecoveryKeypair::generate(prof, rng);
  if (sc.kind == CeremonyKind::keygen) return run_keygen(prof, keys.pk, "adv-" + sc.name, rng, cfg, &adv);
  auto kg = run_keygen(prof, keys.pk, "kg-" + sc.name, rng, cfg);
  if (!kg.ok()) throw std::logic_error("run_script: honest keygen aborted");
  if (sc.kind == CeremonyKind::sign) {
    return run_sign(prof, kg.records[1], kg.records[2], msg, "adv-" + sc.name, cfg, &adv);
  }
  return run_recover_sign(prof, kg.records[sc.online], keys, msg, "adv-" + sc.name, rng, cfg, &adv);
}

}  // namespace edthresh
