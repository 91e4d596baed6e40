#ifndef CNETKAT_UNIVERSE_HPP
#define CNETKAT_UNIVERSE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cnetkat/errors.hpp"

namespace cnetkat {

// Finite universe of packet fields and global-state variables. Field and
// variable namespaces are disjoint; every value set is non-empty. Field order
// is fixed by declaration order and is the order used for complete
// tests/assignments.
class Universe {
 public:
  Universe() = default;

  void add_field(const std::string& name, std::vector<std::string> values);
  void add_var(const std::string& name, std::vector<std::string> values);

  int field_count() const { return static_cast<int>(fields_.size()); }
  int var_count() const { return static_cast<int>(vars_.size()); }

  const std::string& field_name(int f) const { return fields_[f]; }
  const std::string& var_name(int v) const { return vars_[v]; }

  const std::vector<std::string>& field_values(int f) const {
    return field_values_[f];
  }
  const std::vector<std::string>& var_values(int v) const {
    return var_values_[v];
  }

  std::optional<int> field_index(const std::string& name) const;
  std::optional<int> var_index(const std::string& name) const;

  // Value lookups return the index within the per-field/per-var value list.
  std::optional<int> field_value_index(int f, const std::string& value) const;
  std::optional<int> var_value_index(int v, const std::string& value) const;

  bool empty() const { return fields_.empty() && vars_.empty(); }

 private:
  std::vector<std::string> fields_;
  std::vector<std::vector<std::string>> field_values_;
  std::vector<std::string> vars_;
  std::vector<std::vector<std::string>> var_values_;
};

// Total assignment of every declared field to a value, stored as value
// indices in field order. Identity is structural.
struct Packet {
  std::vector<uint8_t> values;

  bool operator==(const Packet& o) const { return values == o.values; }
  bool operator<(const Packet& o) const { return values < o.values; }
};

// Finite set of packets with set semantics (kept sorted and deduplicated).
class PacketSet {
 public:
  PacketSet() = default;
  explicit PacketSet(std::vector<Packet> packets);

  void insert(const Packet& pk);
  bool contains(const Packet& pk) const;
  bool empty() const { return packets_.empty(); }
  size_t size() const { return packets_.size(); }
  const std::vector<Packet>& packets() const { return packets_; }

  bool operator==(const PacketSet& o) const { return packets_ == o.packets_; }
  bool operator<(const PacketSet& o) const { return packets_ < o.packets_; }

  static PacketSet unite(const PacketSet& a, const PacketSet& b);
  bool subset_of(const PacketSet& other) const;

 private:
  std::vector<Packet> packets_;
};

// Partial function from variables to values; -1 marks "undefined". Ordered by
// information content: alpha <= beta iff dom(beta) is contained in dom(alpha)
// and they agree there (more-defined states sit below less-defined ones).
struct State {
  std::vector<int16_t> values;  // indexed by var, -1 = undefined

  bool operator==(const State& o) const { return values == o.values; }
  bool operator<(const State& o) const { return values < o.values; }
  bool defined(int v) const { return values[v] >= 0; }
};

// v <- n or v <- v'.
struct StateAction {
  int var = 0;
  bool is_copy = false;
  int value = 0;    // value index when !is_copy
  int src_var = 0;  // source var when is_copy

  bool operator==(const StateAction& o) const {
    return var == o.var && is_copy == o.is_copy &&
           (is_copy ? src_var == o.src_var : value == o.value);
  }
};

// ---- packet operations ----

Packet packet_update(const Universe& u, const Packet& pk, int field, int value);
Packet packet_update(const Universe& u, const Packet& pk,
                     const std::string& field, const std::string& value);

PacketSet set_filter(const Universe& u, const PacketSet& a, int field,
                     int value);
PacketSet set_update(const Universe& u, const PacketSet& a, int field,
                     int value);

// ---- state operations ----

State empty_state(const Universe& u);

// alpha <= beta in the information order.
bool state_leq(const State& alpha, const State& beta);

// alpha[e]; empty when e is a copy from an undefined variable.
std::optional<State> state_apply(const State& alpha, const StateAction& e);

// alpha (+) beta: union when consistent on the shared domain.
std::optional<State> state_merge(const State& alpha, const State& beta);

// Materializes all partial functions over the declared variables. Guarded by
// a hard cap since the observation semantics enumerates this set.
std::vector<State> all_states(const Universe& u, size_t cap = 65536);

std::vector<Packet> all_packets(const Universe& u, size_t cap = 65536);

// ---- rendering ----

std::string packet_to_string(const Universe& u, const Packet& pk);
std::string packet_set_to_string(const Universe& u, const PacketSet& a);
std::string state_to_string(const Universe& u, const State& s);
std::string state_action_to_string(const Universe& u, const StateAction& e);

// ---- complete tests / assignments ----

// A per-field value tuple; the test flavor fixes every field with =, the
// assignment flavor writes every field with <-. The two flavors are in
// bijection through the tuple, which is also a packet.
struct CompleteTuple {
  Packet tuple;

  bool operator==(const CompleteTuple& o) const { return tuple == o.tuple; }
  bool operator<(const CompleteTuple& o) const { return tuple < o.tuple; }
};

// Parallel composition of complete assignments; on any non-empty input it
// produces exactly its packet set. The empty parallel is the drop program.
struct PiExpr {
  PacketSet packets;

  bool operator==(const PiExpr& o) const { return packets == o.packets; }
};

PiExpr pi_of_set(const PacketSet& a);
PacketSet set_of_pi(const PiExpr& pi);

}  // namespace cnetkat

#endif
