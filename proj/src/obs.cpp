#include "cnetkat/obs.hpp"

#include <algorithm>

#include "cnetkat/errors.hpp"

namespace cnetkat {

PacketSet bsem(const Universe& u, const PredPtr& t, const PacketSet& a) {
  switch (t->kind) {
    case Predicate::Kind::False:
      return PacketSet();
    case Predicate::Kind::True:
      return a;
    case Predicate::Kind::Test:
      return set_filter(u, a, t->field, t->value);
    case Predicate::Kind::Or:
      return PacketSet::unite(bsem(u, t->lhs, a), bsem(u, t->rhs, a));
    case Predicate::Kind::And: {
      PacketSet l = bsem(u, t->lhs, a);
      PacketSet r = bsem(u, t->rhs, a);
      PacketSet out;
      for (const auto& pk : l.packets()) {
        if (r.contains(pk)) out.insert(pk);
      }
      return out;
    }
    case Predicate::Kind::Not: {
      PacketSet l = bsem(u, t->lhs, a);
      PacketSet out;
      for (const auto& pk : a.packets()) {
        if (!l.contains(pk)) out.insert(pk);
      }
      return out;
    }
  }
  return PacketSet();
}

bool packet_satisfies(const Universe& u, const PredPtr& t, const Packet& pk) {
  switch (t->kind) {
    case Predicate::Kind::False:
      return false;
    case Predicate::Kind::True:
      return true;
    case Predicate::Kind::Test:
      return pk.values[t->field] == t->value;
    case Predicate::Kind::Or:
      return packet_satisfies(u, t->lhs, pk) || packet_satisfies(u, t->rhs, pk);
    case Predicate::Kind::And:
      return packet_satisfies(u, t->lhs, pk) && packet_satisfies(u, t->rhs, pk);
    case Predicate::Kind::Not:
      return !packet_satisfies(u, t->lhs, pk);
  }
  return false;
}

StateSet::StateSet(std::vector<State> states) : states_(std::move(states)) {
  std::sort(states_.begin(), states_.end());
  states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
}

void StateSet::insert(const State& s) {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || !(*it == s)) states_.insert(it, s);
}

bool StateSet::contains(const State& s) const {
  return std::binary_search(states_.begin(), states_.end(), s);
}

bool StateSet::subset_of(const StateSet& o) const {
  return std::includes(o.states_.begin(), o.states_.end(), states_.begin(),
                       states_.end());
}

StateSet StateSet::unite(const StateSet& a, const StateSet& b) {
  StateSet r = a;
  for (const auto& s : b.states()) r.insert(s);
  return r;
}

StateSet StateSet::intersect(const StateSet& a, const StateSet& b) {
  StateSet r;
  for (const auto& s : a.states()) {
    if (b.contains(s)) r.insert(s);
  }
  return r;
}

StateSet downclose(const Universe& u, const StateSet& z) {
  StateSet out;
  for (const auto& alpha : all_states(u)) {
    for (const auto& beta : z.states()) {
      if (state_leq(alpha, beta)) {
        out.insert(alpha);
        break;
      }
    }
  }
  return out;
}

bool is_downward_closed(const Universe& u, const StateSet& z) {
  return downclose(u, z) == z;
}

StateSet osem(const Universe& u, const ObsPtr& o) {
  switch (o->kind) {
    case Observation::Kind::Bot:
      return StateSet();
    case Observation::Kind::Top:
      return StateSet(all_states(u));
    case Observation::Kind::Test: {
      StateSet out;
      for (const auto& alpha : all_states(u)) {
        if (alpha.values[o->var] == o->value) out.insert(alpha);
      }
      return out;
    }
    case Observation::Kind::Or:
      return StateSet::unite(osem(u, o->lhs), osem(u, o->rhs));
    case Observation::Kind::And:
      return StateSet::intersect(osem(u, o->lhs), osem(u, o->rhs));
    case Observation::Kind::Complement: {
      StateSet inner = osem(u, o->lhs);
      // alpha is admissible iff no refinement of alpha meets the operand:
      // the union of all downward-closed sets disjoint from it.
      StateSet out;
      for (const auto& alpha : all_states(u)) {
        bool meets = false;
        for (const auto& gamma : all_states(u)) {
          if (state_leq(gamma, alpha) && inner.contains(gamma)) {
            meets = true;
            break;
          }
        }
        if (!meets) out.insert(alpha);
      }
      return out;
    }
  }
  return StateSet();
}

}  // namespace cnetkat
