#include "cnetkat/universe.hpp"

#include <algorithm>

namespace cnetkat {

void Universe::add_field(const std::string& name,
                         std::vector<std::string> values) {
  if (field_index(name) || var_index(name)) {
    throw ContractError("duplicate declaration of '" + name + "'");
  }
  if (values.empty()) {
    throw ContractError("field '" + name + "' has an empty value set");
  }
  if (values.size() > 255) {
    throw ResourceError("value set of field '" + name + "' is too large");
  }
  fields_.push_back(name);
  field_values_.push_back(std::move(values));
}

void Universe::add_var(const std::string& name,
                       std::vector<std::string> values) {
  if (field_index(name) || var_index(name)) {
    throw ContractError("duplicate declaration of '" + name + "'");
  }
  if (values.empty()) {
    throw ContractError("variable '" + name + "' has an empty value set");
  }
  if (values.size() > 255) {
    throw ResourceError("value set of variable '" + name + "' is too large");
  }
  vars_.push_back(name);
  var_values_.push_back(std::move(values));
}

std::optional<int> Universe::field_index(const std::string& name) const {
  for (size_t i = 0; i < fields_.size(); ++i) {
    if (fields_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> Universe::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> Universe::field_value_index(int f,
                                               const std::string& value) const {
  const auto& vals = field_values_[f];
  for (size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] == value) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> Universe::var_value_index(int v,
                                             const std::string& value) const {
  const auto& vals = var_values_[v];
  for (size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] == value) return static_cast<int>(i);
  }
  return std::nullopt;
}

PacketSet::PacketSet(std::vector<Packet> packets) : packets_(std::move(packets)) {
  std::sort(packets_.begin(), packets_.end());
  packets_.erase(std::unique(packets_.begin(), packets_.end()), packets_.end());
}

void PacketSet::insert(const Packet& pk) {
  auto it = std::lower_bound(packets_.begin(), packets_.end(), pk);
  if (it == packets_.end() || !(*it == pk)) packets_.insert(it, pk);
}

bool PacketSet::contains(const Packet& pk) const {
  return std::binary_search(packets_.begin(), packets_.end(), pk);
}

PacketSet PacketSet::unite(const PacketSet& a, const PacketSet& b) {
  PacketSet r = a;
  for (const auto& pk : b.packets()) r.insert(pk);
  return r;
}

bool PacketSet::subset_of(const PacketSet& other) const {
  for (const auto& pk : packets_) {
    if (!other.contains(pk)) return false;
  }
  return true;
}

Packet packet_update(const Universe& u, const Packet& pk, int field,
                     int value) {
  if (field < 0 || field >= u.field_count()) {
    throw ContractError("undeclared field index");
  }
  if (value < 0 || value >= static_cast<int>(u.field_values(field).size())) {
    throw ContractError("value out of range for field '" +
                        u.field_name(field) + "'");
  }
  Packet r = pk;
  r.values[field] = static_cast<uint8_t>(value);
  return r;
}

Packet packet_update(const Universe& u, const Packet& pk,
                     const std::string& field, const std::string& value) {
  auto f = u.field_index(field);
  if (!f) throw ContractError("undeclared field '" + field + "'");
  auto n = u.field_value_index(*f, value);
  if (!n) {
    throw ContractError("value '" + value + "' not in range of field '" +
                        field + "'");
  }
  return packet_update(u, pk, *f, *n);
}

PacketSet set_filter(const Universe& u, const PacketSet& a, int field,
                     int value) {
  if (field < 0 || field >= u.field_count()) {
    throw ContractError("undeclared field index");
  }
  PacketSet r;
  for (const auto& pk : a.packets()) {
    if (pk.values[field] == value) r.insert(pk);
  }
  return r;
}

PacketSet set_update(const Universe& u, const PacketSet& a, int field,
                     int value) {
  PacketSet r;
  for (const auto& pk : a.packets()) {
    r.insert(packet_update(u, pk, field, value));
  }
  return r;
}

State empty_state(const Universe& u) {
  State s;
  s.values.assign(u.var_count(), -1);
  return s;
}

bool state_leq(const State& alpha, const State& beta) {
  if (alpha.values.size() != beta.values.size()) return false;
  for (size_t i = 0; i < beta.values.size(); ++i) {
    if (beta.values[i] >= 0 && alpha.values[i] != beta.values[i]) return false;
  }
  return true;
}

std::optional<State> state_apply(const State& alpha, const StateAction& e) {
  State r = alpha;
  if (e.is_copy) {
    if (!alpha.defined(e.src_var)) return std::nullopt;
    r.values[e.var] = alpha.values[e.src_var];
  } else {
    r.values[e.var] = static_cast<int16_t>(e.value);
  }
  return r;
}

std::optional<State> state_merge(const State& alpha, const State& beta) {
  State r = alpha;
  for (size_t i = 0; i < beta.values.size(); ++i) {
    if (beta.values[i] < 0) continue;
    if (alpha.values[i] >= 0 && alpha.values[i] != beta.values[i]) {
      return std::nullopt;
    }
    r.values[i] = beta.values[i];
  }
  return r;
}

std::vector<State> all_states(const Universe& u, size_t cap) {
  size_t total = 1;
  for (int v = 0; v < u.var_count(); ++v) {
    total *= u.var_values(v).size() + 1;
    if (total > cap) {
      throw ResourceError("state space exceeds cap of " + std::to_string(cap));
    }
  }
  std::vector<State> out;
  out.reserve(total);
  State cur = empty_state(u);
  // odometer over (undefined + each value) per variable
  std::vector<int> digit(u.var_count(), 0);
  while (true) {
    for (int v = 0; v < u.var_count(); ++v) {
      cur.values[v] = static_cast<int16_t>(digit[v] - 1);
    }
    out.push_back(cur);
    int v = 0;
    for (; v < u.var_count(); ++v) {
      if (++digit[v] <= static_cast<int>(u.var_values(v).size())) break;
      digit[v] = 0;
    }
    if (v == u.var_count()) break;
    if (u.var_count() == 0) break;
  }
  if (u.var_count() == 0) {
    out.clear();
    out.push_back(State{});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Packet> all_packets(const Universe& u, size_t cap) {
  size_t total = 1;
  for (int f = 0; f < u.field_count(); ++f) {
    total *= u.field_values(f).size();
    if (total > cap) {
      throw ResourceError("packet space exceeds cap of " + std::to_string(cap));
    }
  }
  std::vector<Packet> out;
  if (u.field_count() == 0) return out;
  out.reserve(total);
  Packet cur;
  cur.values.assign(u.field_count(), 0);
  while (true) {
    out.push_back(cur);
    int f = 0;
    for (; f < u.field_count(); ++f) {
      if (++cur.values[f] < u.field_values(f).size()) break;
      cur.values[f] = 0;
    }
    if (f == u.field_count()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string packet_to_string(const Universe& u, const Packet& pk) {
  std::string s = "[";
  for (int f = 0; f < u.field_count(); ++f) {
    if (f) s += ",";
    s += u.field_name(f) + "=" + u.field_values(f)[pk.values[f]];
  }
  s += "]";
  return s;
}

std::string packet_set_to_string(const Universe& u, const PacketSet& a) {
  std::string s = "{";
  bool first = true;
  for (const auto& pk : a.packets()) {
    if (!first) s += ",";
    first = false;
    s += packet_to_string(u, pk);
  }
  s += "}";
  return s;
}

std::string state_to_string(const Universe& u, const State& s) {
  std::string r = "<";
  bool first = true;
  for (int v = 0; v < u.var_count(); ++v) {
    if (!s.defined(v)) continue;
    if (!first) r += ",";
    first = false;
    r += u.var_name(v) + "=" + u.var_values(v)[s.values[v]];
  }
  r += ">";
  return r;
}

std::string state_action_to_string(const Universe& u, const StateAction& e) {
  if (e.is_copy) return u.var_name(e.var) + "<-" + u.var_name(e.src_var);
  return u.var_name(e.var) + "<-" + u.var_values(e.var)[e.value];
}

PiExpr pi_of_set(const PacketSet& a) { return PiExpr{a}; }

PacketSet set_of_pi(const PiExpr& pi) { return pi.packets; }

}  // namespace cnetkat
