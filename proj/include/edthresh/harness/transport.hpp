#pragma once

#include <deque>
#include <vector>

#include "edthresh/harness/adversary.hpp"

namespace edthresh {

struct Delivery {
  std::size_t seq = 0;
  std::size_t wave = 0;
  int sender = 0;
  int receiver = 0;
  Round round = Round::kgc;
  CeremonyMessage posted;  // as the sender produced it
  Bytes wire;              // as delivered (possibly mutated)
  bool mutated = false;
};

/// In-memory transport. One global FIFO keeps every sender-receiver pair in order; messages
/// are handed out in waves so that a round completes before any reply is processed.
class Transport {
 public:
  explicit Transport(AdversaryScript* adversary = nullptr) : adversary_(adversary) {}

  void post(const CeremonyMessage& m) {
    bool mutated = false;
    std::vector<Bytes> wires = adversary_ ? adversary_->apply(m, &mutated) : std::vector<Bytes>{serialize(m)};
    if (wires.empty()) ++dropped_;
    for (auto& w : wires) pending_.push_back({0, 0, m.sender, m.receiver, m.round, m, std::move(w), mutated});
  }

  void post(const std::vector<CeremonyMessage>& ms) {
    for (const auto& m : ms) post(m);
  }

  bool idle() const { return pending_.empty(); }

  /// Everything posted so far, in FIFO order; each delivery is appended to the log.
  std::vector<Delivery> take_wave() {
    std::vector<Delivery> wave(pending_.begin(), pending_.end());
    pending_.clear();
    for (auto& d : wave) {
      d.seq = log_.size();
      d.wave = waves_;
      log_.push_back(d);
    }
    ++waves_;
    return wave;
  }

  const std::vector<Delivery>& log() const { return log_; }
  std::size_t dropped() const { return dropped_; }

 private:
  AdversaryScript* adversary_;
  std::deque<Delivery> pending_;
  std::vector<Delivery> log_;
  std::size_t waves_ = 0;
  std::size_t dropped_ = 0;
};

}  // namespace edthresh
