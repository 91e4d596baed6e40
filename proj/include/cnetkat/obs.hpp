#ifndef CNETKAT_OBS_HPP
#define CNETKAT_OBS_HPP

#include <vector>

#include "cnetkat/ast.hpp"
#include "cnetkat/universe.hpp"

namespace cnetkat {

// Homomorphic evaluation of a packet predicate in the Boolean algebra
// (2^a, union, intersection, empty, a, difference).
PacketSet bsem(const Universe& u, const PredPtr& t, const PacketSet& a);

bool packet_satisfies(const Universe& u, const PredPtr& t, const Packet& pk);

// Set of states, kept sorted. Downward closure means: beta in the set and
// alpha <= beta imply alpha in the set (more-defined states are below).
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::vector<State> states);

  void insert(const State& s);
  bool contains(const State& s) const;
  bool empty() const { return states_.empty(); }
  size_t size() const { return states_.size(); }
  const std::vector<State>& states() const { return states_; }

  bool operator==(const StateSet& o) const { return states_ == o.states_; }
  bool subset_of(const StateSet& o) const;

  static StateSet unite(const StateSet& a, const StateSet& b);
  static StateSet intersect(const StateSet& a, const StateSet& b);

 private:
  std::vector<State> states_;
};

// Least downward-closed superset of z.
StateSet downclose(const Universe& u, const StateSet& z);

bool is_downward_closed(const Universe& u, const StateSet& z);

// Evaluation of a state observation over the literal generator sets; the
// complement clause returns the largest downward-closed set disjoint from the
// operand, computed directly as the states none of whose refinements meet it.
StateSet osem(const Universe& u, const ObsPtr& o);

}  // namespace cnetkat

#endif
