#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "edthresh/protocol/messages.hpp"

namespace edthresh {

using Outbox = std::vector<CeremonyMessage>;

/// Shared plumbing for the party state machines: envelope checks, the expected-round cursor,
/// and sticky aborts. A party never blocks; `awaiting()` reports what it needs next.
class PartyBase {
 public:
  PartyBase(int self, std::string ceremony_id) : self_(self), id_(std::move(ceremony_id)) {}
  virtual ~PartyBase() = default;

  int index() const { return self_; }
  const std::string& ceremony_id() const { return id_; }
  bool finished() const { return finished_; }
  bool aborted() const { return abort_.has_value(); }
  const std::optional<AbortError>& abort_error() const { return abort_; }
  const std::vector<std::string>& notices() const { return notices_; }

  /// (round, sender) the party waits for; empty once finished or aborted.
  std::optional<std::pair<Round, int>> awaiting() const {
    if (finished_ || abort_) return std::nullopt;
    return expected_;
  }

  Outbox receive(const CeremonyMessage& m) {
    return guarded([&] {
      check_envelope(m);
      return handle(m);
    });
  }

  /// Parses wire bytes first; an unparsable message is blamed on the awaited sender.
  Outbox receive_wire(ByteView wire) {
    return guarded([&]() -> Outbox {
      CeremonyMessage m;
      try {
        m = deserialize(wire);
      } catch (const MessageFormatError& e) {
        auto [round, sender] = expected_or_throw();
        throw AbortError(AbortKind::malformed_message, round, sender, e.what());
      }
      check_envelope(m);
      return handle(m);
    });
  }

  /// Records an abort decided outside the party (the orchestrator's missing-message timeout).
  void force_abort(const AbortError& e) {
    if (!abort_) abort_ = e;
  }

 protected:
  virtual Outbox handle(const CeremonyMessage& m) = 0;

  void expect(Round r, int sender) { expected_ = {r, sender}; }
  void finish() { finished_ = true; }
  void notice(std::string s) { notices_.push_back(std::move(s)); }

  CeremonyMessage make(Round r, int receiver, std::vector<Bytes> fields) const {
    return {id_, r, static_cast<std::uint8_t>(self_), static_cast<std::uint8_t>(receiver), std::move(fields)};
  }

  Outbox guarded(const std::function<Outbox()>& body) {
    if (abort_) throw *abort_;
    try {
      return body();
    } catch (const AbortError& e) {
      abort_ = e;
      throw;
    }
  }

 private:
  std::pair<Round, int> expected_or_throw() const {
    if (!expected_ || finished_) throw AbortError(AbortKind::unexpected_message, Round::kgc, 0, "party is idle");
    return *expected_;
  }

  void check_envelope(const CeremonyMessage& m) const {
    if (finished_ || !expected_) throw AbortError(AbortKind::unexpected_message, m.round, m.sender, "party is idle");
    auto [round, sender] = *expected_;
    if (m.ceremony_id != id_) throw AbortError(AbortKind::unexpected_message, m.round, m.sender, "ceremony id");
    if (m.receiver != self_) throw AbortError(AbortKind::unexpected_message, m.round, m.sender, "wrong receiver");
    if (m.round != round || m.sender != sender) {
      throw AbortError(AbortKind::unexpected_message, m.round, m.sender,
                       "awaiting " + round_name(round) + " from P" + std::to_string(sender));
    }
  }

  int self_;
  std::string id_;
  std::optional<std::pair<Round, int>> expected_;
  bool finished_ = false;
  std::optional<AbortError> abort_;
  std::vector<std::string> notices_;
};

}  // namespace edthresh
