#ifndef CNETKAT_GUARD_HPP
#define CNETKAT_GUARD_HPP

#include <memory>
#include <optional>
#include <vector>

#include "cnetkat/pomset.hpp"
#include "cnetkat/universe.hpp"

namespace cnetkat {

// Derivation tree over the four guardedness rules. Replaying the tree
// rebuilds the pomset up to isomorphism.
struct GuardWitness;
using GuardWitnessPtr = std::shared_ptr<const GuardWitness>;

struct GuardWitness {
  enum class Rule { Atom, Step, SeqGlue, ParGlue };
  Rule rule;

  State alpha;         // Atom: the single state; Step: the pre-state;
                       // ParGlue: left endpoint split, low side
  StateAction action;  // Step
  State gamma, beta, delta;  // ParGlue endpoint splits
  GuardWitnessPtr left, right;

  Pomset replay(const Universe& u) const;
};

// Decides membership in the set of guarded pomsets by top-down decomposition
// over the four rules, memoized on canonical forms. The input must carry only
// state and action labels (project packet-set nodes away first).
std::optional<GuardWitnessPtr> is_guarded(const Universe& u, const Pomset& p);

// Convenience for traces: projects packet-set nodes, then decides.
std::optional<GuardWitnessPtr> is_guarded_trace(const Universe& u,
                                                const Pomset& p);

// Decider with a memo that persists across queries; worthwhile when deciding
// many pomsets sharing sub-structure.
class GuardChecker {
 public:
  explicit GuardChecker(const Universe& u);
  ~GuardChecker();
  std::optional<GuardWitnessPtr> decide(const Pomset& state_pomset);
  std::optional<GuardWitnessPtr> decide_trace(const Pomset& any_pomset);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Bottom-up generation of every guarded pomset with at most `max_nodes`
// nodes; the reference oracle for the decision procedure.
PomsetLanguage generate_guarded(const Universe& u, int max_nodes,
                                size_t population_cap = 2000000);

// Witness for a value-tracking path between two state nodes.
struct PathWitness {
  int var;
  std::vector<int> nodes;  // q1, a1, q2, a2, ..., q_{n+1}
};

std::optional<PathWitness> find_path(const Pomset& p, int var, int from,
                                     int to);

bool is_bottleneck(const Pomset& p, int u0, int u1, int u2);

// Every assignment node's unique cover-successor is a state recording the
// written value.
bool check_A5(const Pomset& p);
std::vector<int> a5_violations(const Pomset& p);

// Every defined variable of every state node is justified by a path from the
// minimum or from the successor of a write.
bool check_A7(const Pomset& p);
std::vector<int> a7_violations(const Pomset& p);

// Node pattern of the running-example ordering argument.
struct OrderSpec {
  int sw_field = 0, type_field = 0;
  int sw2 = 0, sw3 = 0;
  int type_heart = 0, type_spade = 0;
  int var_v = 0;
  int v0 = 0, v1 = 0;
  Packet heart_at_3, spade_at_2;
};

// Builds the spec from a universe declaring fields sw, type and variable v
// with the conventional values.
OrderSpec running_order_spec(const Universe& u);

struct PropertyPAssignment {
  int u1 = -1, u2 = -1, u3 = -1, u4 = -1, u5 = -1;
};

std::vector<PropertyPAssignment> property_p_assignments(const Pomset& p,
                                                        const OrderSpec& spec);
std::optional<PropertyPAssignment> has_property_P(const Pomset& p,
                                                  const OrderSpec& spec);

// Requires a property-P assignment and a guarded state projection; then
// checks u2 <= u3 (and hence u4 <= u5) for every valid assignment.
bool verify_order(const Universe& u, const Pomset& p, const OrderSpec& spec);

}  // namespace cnetkat

#endif
