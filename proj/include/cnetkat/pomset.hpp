#ifndef CNETKAT_POMSET_HPP
#define CNETKAT_POMSET_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "cnetkat/universe.hpp"

namespace cnetkat {

enum class LabelKind : uint8_t { State = 0, Action = 1, Packets = 2 };

// Node label: a global-state snapshot, a state action, or a recorded packet
// set. Equality goes through the rendered form, which is injective for a
// fixed universe.
class Label {
 public:
  Label(const Universe& u, const State& s);
  Label(const Universe& u, const StateAction& e);
  Label(const Universe& u, const PacketSet& a);

  LabelKind kind() const { return kind_; }
  bool is_state() const { return kind_ == LabelKind::State; }
  const std::string& repr() const { return repr_; }

  const State& state() const { return std::get<State>(data_); }
  const StateAction& action() const { return std::get<StateAction>(data_); }
  const PacketSet& packets() const { return std::get<PacketSet>(data_); }

  bool operator==(const Label& o) const {
    return kind_ == o.kind_ && repr_ == o.repr_;
  }
  bool operator<(const Label& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_;
    return repr_ < o.repr_;
  }

 private:
  LabelKind kind_;
  std::variant<State, StateAction, PacketSet> data_;
  std::string repr_;
};

// Finite labeled strict partial order, stored transitively closed over at
// most 64 nodes. Equality of pomsets is label-preserving order-isomorphism,
// decided through a cached canonical key.
class Pomset {
 public:
  Pomset() = default;
  static Pomset single(const Label& l);

  int size() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  const Label& label(int i) const { return labels_[i]; }

  bool less(int i, int j) const { return (lt_[i] >> j) & 1u; }
  bool leq(int i, int j) const { return i == j || less(i, j); }
  bool comparable(int i, int j) const { return less(i, j) || less(j, i); }

  uint64_t succ_mask(int i) const { return lt_[i]; }
  uint64_t pred_mask(int i) const { return gt_[i]; }

  static Pomset seq(const Pomset& u, const Pomset& v);
  static Pomset par(const Pomset& u, const Pomset& v);

  // Induced sub-pomset on the given nodes; the restricted transitive order is
  // kept, so ordering through removed nodes persists.
  Pomset restrict_nodes(const std::vector<int>& keep) const;

  // Covering relation (Hasse diagram edges).
  std::vector<std::pair<int, int>> cover_edges() const;

  // Unique minimal/maximal node, when one exists.
  std::optional<int> unique_min() const;
  std::optional<int> unique_max() const;

  const std::string& canonical_key() const;
  bool iso(const Pomset& o) const;

  // Construction escape hatch for algorithms that build orders directly.
  // `lt` must be a strict transitively-closed relation.
  static Pomset from_parts(std::vector<Label> labels,
                           std::vector<uint64_t> lt);

  std::vector<uint64_t> order_rows() const { return lt_; }

 private:
  void rebuild_gt();

  std::vector<Label> labels_;
  std::vector<uint64_t> lt_;  // lt_[i] bit j set iff i < j
  std::vector<uint64_t> gt_;  // transpose
  mutable std::string canon_;
};

Pomset empty_pomset();

// u is more sequential than v: a label-preserving bijection from v to u that
// preserves order.
bool subsumed_by(const Pomset& u, const Pomset& v);

// u results from v by collapsing runs of equal adjacent state observations: a
// label-compatible order-preserving surjection from v to u that reflects
// order except through state-labeled merges.
bool contracts_to(const Pomset& u, const Pomset& v);

// Membership of u in the closure of {v} under subsumption and contraction,
// decided without enumerating the closure: a label-preserving,
// order-preserving surjection from v to u whose non-singleton fibers carry
// state labels.
bool in_closure_of(const Pomset& u, const Pomset& v);

class PomsetLanguage {
 public:
  PomsetLanguage() = default;
  explicit PomsetLanguage(const std::vector<Pomset>& members);

  // Returns true when the pomset was not already present.
  bool insert(const Pomset& p);
  bool contains(const Pomset& p) const;
  size_t size() const { return members_.size(); }
  const std::vector<Pomset>& members() const { return members_; }

  bool operator==(const PomsetLanguage& o) const;
  bool subset_of(const PomsetLanguage& o) const;

  // Orders members by canonical key for reproducible output.
  void sort_canonically();

 private:
  const std::vector<std::string>& sorted_keys() const;

  std::vector<Pomset> members_;
  std::unordered_set<std::string> keyset_;
  mutable std::vector<std::string> sorted_keys_;  // cache
};

struct ClosureBudget {
  int node_budget = 24;
  size_t population = 100000;
};

// Least language containing L and closed under taking subsumption- and
// contraction-predecessors. Computed as all order extensions followed by all
// iterated adjacent same-state merges.
PomsetLanguage close(const PomsetLanguage& l, const ClosureBudget& budget = {});

// Streaming enumeration of close({v}): calls fn on every member without
// materializing the language. Order extensions are deduplicated on the fixed
// carrier (isomorphic repeats are possible on symmetric carriers), merged
// members by canonical form. fn returns false to stop; the function then
// returns false as well.
bool for_each_closure_member(const Pomset& v, const ClosureBudget& budget,
                             const std::function<bool(const Pomset&)>& fn);

// Induced sub-pomset on nodes with state or action labels.
Pomset project_state(const Pomset& u);

std::string pomset_to_string(const Pomset& u);
std::string pomset_to_dot(const Pomset& u, const std::string& name = "pomset");

}  // namespace cnetkat

#endif
