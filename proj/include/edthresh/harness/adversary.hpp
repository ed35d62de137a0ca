#pragma once

#include <functional>
#include <string>
#include <vector>

#include "edthresh/protocol/messages.hpp"

namespace edthresh {

/// One message mutation. `flip_byte` xors 0x01 into byte `byte` (taken modulo the field
/// length) of field `field`; `flip_wire_byte` does the same on the serialized message.
struct Mutation {
  enum class Kind { flip_byte, flip_wire_byte, replace_field, drop, replay, custom };

  Kind kind = Kind::flip_byte;
  std::size_t field = 0;
  std::size_t byte = 0;
  Bytes replacement;
  std::function<void(CeremonyMessage&)> edit;

  static Mutation flip(std::size_t field, std::size_t byte = 0) { return {Kind::flip_byte, field, byte, {}, {}}; }
  static Mutation flip_wire(std::size_t byte) { return {Kind::flip_wire_byte, 0, byte, {}, {}}; }
  static Mutation replace(std::size_t field, Bytes b) { return {Kind::replace_field, field, 0, std::move(b), {}}; }
  static Mutation drop() { return {Kind::drop, 0, 0, {}, {}}; }
  static Mutation replay() { return {Kind::replay, 0, 0, {}, {}}; }
  static Mutation custom(std::function<void(CeremonyMessage&)> f) { return {Kind::custom, 0, 0, {}, std::move(f)}; }
};

struct AdversaryRule {
  Round round;
  int sender;
  Mutation mutation;
  bool used = false;
};

/// Applies each rule to the first matching message only.
class AdversaryScript {
 public:
  AdversaryScript() = default;
  AdversaryScript(std::string name, std::vector<AdversaryRule> rules) : name_(std::move(name)), rules_(std::move(rules)) {}

  const std::string& name() const { return name_; }

  /// Wire images to deliver for `m`: none if dropped, two if replayed.
  std::vector<Bytes> apply(const CeremonyMessage& m, bool* mutated = nullptr) {
    for (auto& rule : rules_) {
      if (rule.used || rule.round != m.round || rule.sender != m.sender) continue;
      rule.used = true;
      if (mutated) *mutated = true;
      const auto& mu = rule.mutation;
      CeremonyMessage copy = m;
      switch (mu.kind) {
        case Mutation::Kind::flip_byte:
          if (mu.field < copy.fields.size() && !copy.fields[mu.field].empty()) {
            auto& f = copy.fields[mu.field];
            f[mu.byte % f.size()] ^= 0x01;
          }
          return {serialize(copy)};
        case Mutation::Kind::flip_wire_byte: {
          Bytes w = serialize(copy);
          w[mu.byte % w.size()] ^= 0x01;
          return {w};
        }
        case Mutation::Kind::replace_field:
          if (mu.field < copy.fields.size()) copy.fields[mu.field] = mu.replacement;
          return {serialize(copy)};
        case Mutation::Kind::drop:
          return {};
        case Mutation::Kind::replay: {
          Bytes w = serialize(copy);
          return {w, w};
        }
        case Mutation::Kind::custom:
          mu.edit(copy);
          return {serialize(copy)};
      }
    }
    if (mutated) *mutated = false;
    return {serialize(m)};
  }

  /// (round, sender) of every rule.
  std::vector<std::pair<Round, int>> targets() const {
    std::vector<std::pair<Round, int>> out;
    for (const auto& r : rules_) out.emplace_back(r.round, r.sender);
    return out;
  }

  bool fired() const {
    for (const auto& r : rules_) {
      if (r.used) return true;
    }
    return false;
  }

 private:
  std::string name_;
  std::vector<AdversaryRule> rules_;
};

}  // namespace edthresh
