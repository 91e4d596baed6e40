#ifndef CNETKAT_SEMANTICS_HPP
#define CNETKAT_SEMANTICS_HPP

#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cnetkat/ast.hpp"
#include "cnetkat/obs.hpp"
#include "cnetkat/pomset.hpp"
#include "cnetkat/universe.hpp"

namespace cnetkat {

struct EvalConfig {
  int star_bound = 3;   // max Kleene-star unrollings
  int pad_bound = 1;    // max state-run length on each side of an
                        // observation or action
  int node_budget = 24;
  size_t closure_population = 100000;
  size_t trace_budget = 500000;

  ClosureBudget closure_budget() const {
    return ClosureBudget{node_budget, closure_population};
  }
};

struct Trace {
  Pomset pom;
  PacketSet out;
};

std::string packet_set_key(const PacketSet& a);
std::string trace_key(const Trace& t);

// Finite set of traces, deduplicated up to pomset isomorphism plus output
// equality. Bound hits are flagged, never silent.
class TraceSet {
 public:
  bool insert(const Trace& t);
  bool contains(const Trace& t) const;
  size_t size() const { return traces_.size(); }
  const std::vector<Trace>& traces() const { return traces_; }

  bool operator==(const TraceSet& o) const;
  bool subset_of(const TraceSet& o) const;

  // Orders traces by canonical key for reproducible output.
  void sort_canonically();

  bool bounds_hit = false;        // a star stopped at the unrolling bound
  bool output_saturated = false;  // star outputs stabilized across iterations

 private:
  const std::vector<std::string>& sorted_keys() const;

  std::vector<Trace> traces_;
  std::unordered_set<std::string> keyset_;
  mutable std::vector<std::string> sorted_keys_;
};

// Denotational evaluation on a packet-set input at the configured bounds.
TraceSet eval(const Universe& u, const ProgPtr& p, const PacketSet& a,
              const EvalConfig& cfg);

// Evaluator with a memo shared across calls; programs sharing subterms and
// repeated inputs are evaluated once. References stay valid for the
// evaluator's lifetime.
class BatchEvaluator {
 public:
  BatchEvaluator(const Universe& u, const EvalConfig& cfg);
  ~BatchEvaluator();
  const TraceSet& eval(const ProgPtr& p, const PacketSet& a);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Closure of every trace pomset under subsumption and contraction.
TraceSet eval_closed(const Universe& u, const ProgPtr& p, const PacketSet& a,
                     const EvalConfig& cfg);

// Membership of a trace in the closed semantics, decided against the
// unclosed trace set (no closure enumeration).
bool trace_in_closed(const Trace& t, const TraceSet& raw);

// Membership of a trace in the closed semantics of head;tail on the given
// input, composing pairwise without materializing the product trace set.
bool trace_in_closed_seq(const Universe& u, const ProgPtr& head,
                         const ProgPtr& tail, const PacketSet& input,
                         const Trace& target, const EvalConfig& cfg);

// Inclusion of every lhs trace in the closure of some rhs trace, with an
// indexed witness lookup. Fills `counterexample` (when given) with a
// description of the first failing trace.
bool trace_set_included_in_closed(const Universe& u, const TraceSet& lhs,
                                  const TraceSet& rhs,
                                  std::string* counterexample = nullptr);

// Reference single-packet semantics for the parallel-free packet fragment.
// The star is exact (finite packet space), so no bounds are involved.
PacketSet eval_netkat(const Universe& u, const ProgPtr& p, const Packet& pk);

// Reference pomset-language semantics for state programs over observations,
// actions and packet-set letters, at the configured bounds.
PomsetLanguage eval_pocka_raw(const Universe& u, const ProgPtr& s,
                              const EvalConfig& cfg,
                              bool* bounds_hit = nullptr);
PomsetLanguage eval_pocka(const Universe& u, const ProgPtr& s,
                          const EvalConfig& cfg);

struct Verdict {
  bool holds = false;
  bool bounded = false;  // verdict computed at finite (K, P)
  std::string detail;
};

// Trace-set inclusion of p in q on one input, via the one-sided check of the
// unclosed left side against the closed right side.
Verdict check_inclusion(const Universe& u, const ProgPtr& p, const ProgPtr& q,
                        const PacketSet& input, const EvalConfig& cfg);

Verdict check_equiv(const Universe& u, const ProgPtr& p, const ProgPtr& q,
                    const PacketSet& input, const EvalConfig& cfg);

// All packet-set inputs over the universe's packet space (2^Pk); guarded by
// a cap on the packet count.
std::vector<PacketSet> all_packet_sets(const Universe& u, int max_packets = 12);

}  // namespace cnetkat

#endif
