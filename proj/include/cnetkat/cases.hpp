#ifndef CNETKAT_CASES_HPP
#define CNETKAT_CASES_HPP

#include <string>

#include "cnetkat/ast.hpp"
#include "cnetkat/guard.hpp"
#include "cnetkat/semantics.hpp"
#include "cnetkat/universe.hpp"

// Bundled analyses: the four-switch forwarding example with its trace
// specification program, and the firewall/cache/load-balancer trio.
namespace cnetkat::cases {

extern const char* kRunningExampleText;
extern const char* kTraceSpecText;  // the specification program q
extern const char* kFirewallText;
extern const char* kCacheText;
extern const char* kLoadBalancerText;

Universe running_universe();
ProgPtr running_program();
ProgPtr trace_spec_program();

Universe fig5_universe();
ProgPtr firewall_program();
ProgPtr cache_program();
ProgPtr load_balancer_program();

PacketSet running_input();  // heart and spade at switch 1

// The fully sequentialized pomset that the trace specification pins down,
// ending with both packets recorded at switch 4.
Pomset running_target_pomset();
PacketSet running_target_output();

struct RunningResult {
  bool pomset_found = false;
  bool output_found = false;
  size_t trace_count = 0;
};
RunningResult run_running_example(const EvalConfig& cfg);

struct InclusionResult {
  bool included = false;
  bool bounded = false;
};
InclusionResult run_inclusion_claim(const EvalConfig& cfg);

struct GuardedOrderResult {
  size_t closed_traces = 0;
  size_t candidates = 0;  // property P holds and state projection guarded
  size_t order_ok = 0;
};
GuardedOrderResult run_guarded_order(const EvalConfig& cfg);

struct RaceResult {
  bool raw_trace_found = false;     // the doubled/parallel witness
  bool guarded_trace_found = false; // the closure member, guarded
  std::string detail;
};
RaceResult run_load_balancer_race(const EvalConfig& cfg);
RaceResult run_cache_race(const EvalConfig& cfg);

}  // namespace cnetkat::cases

#endif
