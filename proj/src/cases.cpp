#include "cnetkat/cases.hpp"

#include <map>

#include "cnetkat/errors.hpp"
#include "cnetkat/parser.hpp"

namespace cnetkat::cases {

const char* kRunningExampleText = R"(# Four switches; spades go via 2, hearts via 3, gated by v.
fields sw, type;
vars v;
values sw = {1, 2, 3, 4};
values type = {heart, spade};
values v = {0, 1};

v<-0 ;
( sw=1 ; dup ; ((v=1 ; type=spade ; dup ; sw<-2 ; dup) || (type=heart ; dup ; sw<-3 ; dup ; v<-1))
  || sw=2 ; dup ; sw<-4 ; dup
  || sw=3 ; dup ; sw<-4 ; dup
  || sw=4 ; dup )* ;
sw=4
)";

const char* kTraceSpecText = R"(# Trace specification: hearts reach switch 3 before spades reach switch 2.
fields sw, type;
vars v;
values sw = {1, 2, 3, 4};
values type = {heart, spade};
values v = {0, 1};

v<-0 ;
{[sw=1,type=heart],[sw=1,type=spade]} ;
{[sw=1,type=heart]} ;
{[sw=3,type=heart]} ;
v<-1 ;
v=1 ;
{[sw=1,type=spade]} ;
{[sw=2,type=spade]} ;
( ({[sw=2,type=spade]} ; {[sw=4,type=spade]}) || ({[sw=3,type=heart]} ; {[sw=4,type=heart]}) ) ;
{[sw=4,type=spade],[sw=4,type=heart]} ;
( (sw<-4 ; type<-spade) || (sw<-4 ; type<-heart) )
)";

namespace {
const char* kFig5Header = R"(fields type, dst, src;
vars v, r;
values type = {heart, spade};
values dst = {h1, l1, firewall, cache, loadb, sh, sl};
values src = {h1, l1, sh, sl};
values v = {0, 1};
values r = {0, 1};
)";
}  // namespace

const char* kFirewallText = R"(fields type, dst, src;
vars v, r;
values type = {heart, spade};
values dst = {h1, l1, firewall, cache, loadb, sh, sl};
values src = {h1, l1, sh, sl};
values v = {0, 1};
values r = {0, 1};

(src=sh ; v<-0 ; dst<-cache)
|| (src=sl ; v<-1 ; dst<-cache)
|| (src=l1 ; r<-0 ; dst<-loadb)
|| (src=h1 ; r<-1 ; dst<-loadb)
)";

const char* kCacheText = R"(fields type, dst, src;
vars v, r;
values type = {heart, spade};
values dst = {h1, l1, firewall, cache, loadb, sh, sl};
values src = {h1, l1, sh, sl};
values v = {0, 1};
values r = {0, 1};

( (v=1 ; dst<-h1 ; dup) + (v=0 ; dst<-l1 ; dup) )
|| (src=l1 ; dst<-firewall)
|| (src=h1 ; dst<-firewall)
)";

const char* kLoadBalancerText = R"(fields type, dst, src;
vars v, r;
values type = {heart, spade};
values dst = {h1, l1, firewall, cache, loadb, sh, sl};
values src = {h1, l1, sh, sl};
values v = {0, 1};
values r = {0, 1};

( (r=1 ; dst<-sh ; dup) + (r=0 ; dst<-sl ; dup) )
|| (src=sh ; dst<-firewall)
|| (src=sl ; dst<-firewall)
)";

Universe running_universe() { return parse_universe(kRunningExampleText); }

ProgPtr running_program() {
  Universe u = running_universe();
  return parse(kRunningExampleText, u);
}

ProgPtr trace_spec_program() {
  Universe u = running_universe();
  return parse(kTraceSpecText, u);
}

Universe fig5_universe() { return parse_universe(kFig5Header); }

ProgPtr firewall_program() {
  Universe u = fig5_universe();
  return parse(kFirewallText, u);
}

ProgPtr cache_program() {
  Universe u = fig5_universe();
  return parse(kCacheText, u);
}

ProgPtr load_balancer_program() {
  Universe u = fig5_universe();
  return parse(kLoadBalancerText, u);
}

namespace {

Packet mk_packet(const Universe& u,
                 const std::vector<std::pair<std::string, std::string>>& kv) {
  Packet pk;
  pk.values.assign(u.field_count(), 0);
  for (const auto& [f, v] : kv) {
    int fi = *u.field_index(f);
    pk.values[fi] = static_cast<uint8_t>(*u.field_value_index(fi, v));
  }
  return pk;
}

State mk_state(const Universe& u,
               const std::vector<std::pair<std::string, std::string>>& kv) {
  State s = empty_state(u);
  for (const auto& [var, val] : kv) {
    int vi = *u.var_index(var);
    s.values[vi] = static_cast<int16_t>(*u.var_value_index(vi, val));
  }
  return s;
}

StateAction mk_assign(const Universe& u, const std::string& var,
                      const std::string& val) {
  StateAction e;
  e.var = *u.var_index(var);
  e.is_copy = false;
  e.value = *u.var_value_index(e.var, val);
  return e;
}

Pomset chain(const std::vector<Pomset>& parts) {
  Pomset p = empty_pomset();
  for (const auto& x : parts) p = Pomset::seq(p, x);
  return p;
}

}  // namespace

PacketSet running_input() {
  Universe u = running_universe();
  PacketSet a;
  a.insert(mk_packet(u, {{"sw", "1"}, {"type", "heart"}}));
  a.insert(mk_packet(u, {{"sw", "1"}, {"type", "spade"}}));
  return a;
}

PacketSet running_target_output() {
  Universe u = running_universe();
  PacketSet b;
  b.insert(mk_packet(u, {{"sw", "4"}, {"type", "heart"}}));
  b.insert(mk_packet(u, {{"sw", "4"}, {"type", "spade"}}));
  return b;
}

Pomset running_target_pomset() {
  Universe u = running_universe();
  Packet heart1 = mk_packet(u, {{"sw", "1"}, {"type", "heart"}});
  Packet spade1 = mk_packet(u, {{"sw", "1"}, {"type", "spade"}});
  Packet heart3 = mk_packet(u, {{"sw", "3"}, {"type", "heart"}});
  Packet spade2 = mk_packet(u, {{"sw", "2"}, {"type", "spade"}});
  Packet heart4 = mk_packet(u, {{"sw", "4"}, {"type", "heart"}});
  Packet spade4 = mk_packet(u, {{"sw", "4"}, {"type", "spade"}});
  auto lit = [&](std::vector<Packet> pks) {
    return Pomset::single(Label(u, PacketSet(std::move(pks))));
  };
  Pomset head = chain({
      Pomset::single(Label(u, mk_assign(u, "v", "0"))),
      lit({heart1, spade1}),
      lit({heart1}),
      lit({heart3}),
      Pomset::single(Label(u, mk_assign(u, "v", "1"))),
      Pomset::single(Label(u, mk_state(u, {{"v", "1"}}))),
      lit({spade1}),
      lit({spade2}),
  });
  Pomset fork = Pomset::par(chain({lit({spade2}), lit({spade4})}),
                            chain({lit({heart3}), lit({heart4})}));
  return chain({head, fork, lit({spade4, heart4})});
}

RunningResult run_running_example(const EvalConfig& cfg) {
  Universe u = running_universe();
  ProgPtr p = running_program();
  TraceSet raw = eval(u, p, running_input(), cfg);
  RunningResult r;
  r.trace_count = raw.size();
  PacketSet want = running_target_output();
  for (const auto& t : raw.traces()) {
    if (t.out == want) r.output_found = true;
  }
  Trace target{running_target_pomset(), want};
  r.pomset_found = trace_in_closed(target, raw);
  return r;
}

InclusionResult run_inclusion_claim(const EvalConfig& cfg) {
  Universe u = running_universe();
  Verdict v =
      check_inclusion(u, trace_spec_program(), running_program(),
                      running_input(), cfg);
  return InclusionResult{v.holds, v.bounded};
}

GuardedOrderResult run_guarded_order(const EvalConfig& cfg) {
  Universe u = running_universe();
  ProgPtr p = running_program();
  OrderSpec spec = running_order_spec(u);
  TraceSet closed = eval_closed(u, p, running_input(), cfg);
  GuardedOrderResult r;
  r.closed_traces = closed.size();
  for (const auto& t : closed.traces()) {
    auto assignments = property_p_assignments(t.pom, spec);
    if (assignments.empty()) continue;
    if (!is_guarded_trace(u, t.pom)) continue;
    r.candidates++;
    if (verify_order(u, t.pom, spec)) r.order_ok++;
  }
  return r;
}

RaceResult run_load_balancer_race(const EvalConfig& cfg) {
  Universe u = fig5_universe();
  PacketSet input;
  input.insert(
      mk_packet(u, {{"type", "heart"}, {"dst", "firewall"}, {"src", "l1"}}));
  input.insert(
      mk_packet(u, {{"type", "spade"}, {"dst", "firewall"}, {"src", "l1"}}));
  PacketSet both_sl;
  both_sl.insert(mk_packet(u, {{"type", "heart"}, {"dst", "sl"}, {"src", "l1"}}));
  both_sl.insert(mk_packet(u, {{"type", "spade"}, {"dst", "sl"}, {"src", "l1"}}));

  State beta = mk_state(u, {{"r", "0"}});
  // alpha -> r<-0 -> beta -> beta -> {both at sl}, with the duplicated beta
  Pomset doubled = chain({
      Pomset::single(Label(u, empty_state(u))),
      Pomset::single(Label(u, mk_assign(u, "r", "0"))),
      Pomset::single(Label(u, beta)),
      Pomset::single(Label(u, beta)),
      Pomset::single(Label(u, both_sl)),
  });
  // contraction merges the two betas
  Pomset merged = chain({
      Pomset::single(Label(u, empty_state(u))),
      Pomset::single(Label(u, mk_assign(u, "r", "0"))),
      Pomset::single(Label(u, beta)),
      Pomset::single(Label(u, both_sl)),
  });

  ProgPtr firewall = firewall_program();
  ProgPtr balancer = load_balancer_program();
  RaceResult r;
  // the doubled observation arises literally in the composite
  TraceSet tf = eval(u, firewall, input, cfg);
  std::map<std::string, TraceSet> tails;
  for (const auto& t1 : tf.traces()) {
    if (t1.pom.size() + 2 > doubled.size()) continue;
    std::string key = packet_set_key(t1.out);
    auto it = tails.find(key);
    if (it == tails.end()) {
      it = tails.emplace(key, eval(u, balancer, t1.out, cfg)).first;
    }
    for (const auto& t2 : it->second.traces()) {
      if (!(t2.out == both_sl)) continue;
      if (t1.pom.size() + t2.pom.size() != doubled.size()) continue;
      if (Pomset::seq(t1.pom, t2.pom).iso(doubled)) {
        r.raw_trace_found = true;
        break;
      }
    }
    if (r.raw_trace_found) break;
  }
  if (trace_in_closed_seq(u, firewall, balancer, input,
                          Trace{merged, both_sl}, cfg) &&
      is_guarded_trace(u, merged)) {
    r.guarded_trace_found = true;
    r.detail = "both packets reach sl after merging the duplicated state";
  }
  return r;
}

RaceResult run_cache_race(const EvalConfig& cfg) {
  Universe u = fig5_universe();
  PacketSet input;
  input.insert(
      mk_packet(u, {{"type", "spade"}, {"dst", "firewall"}, {"src", "sh"}}));
  input.insert(
      mk_packet(u, {{"type", "heart"}, {"dst", "firewall"}, {"src", "sl"}}));
  PacketSet both_l1;
  both_l1.insert(mk_packet(u, {{"type", "spade"}, {"dst", "l1"}, {"src", "sh"}}));
  both_l1.insert(mk_packet(u, {{"type", "heart"}, {"dst", "l1"}, {"src", "sl"}}));

  // the fully interleaved guarded witness: write v twice, then observe 0
  Pomset target = chain({
      Pomset::single(Label(u, empty_state(u))),
      Pomset::single(Label(u, mk_assign(u, "v", "1"))),
      Pomset::single(Label(u, mk_state(u, {{"v", "1"}}))),
      Pomset::single(Label(u, mk_assign(u, "v", "0"))),
      Pomset::single(Label(u, mk_state(u, {{"v", "0"}}))),
      Pomset::single(Label(u, both_l1)),
  });

  ProgPtr firewall = firewall_program();
  ProgPtr cache = cache_program();
  RaceResult r;
  // some composite run really delivers both packets to l1
  TraceSet tf = eval(u, firewall, input, cfg);
  std::map<std::string, bool> tail_hits;
  for (const auto& t1 : tf.traces()) {
    std::string key = packet_set_key(t1.out);
    auto it = tail_hits.find(key);
    if (it == tail_hits.end()) {
      bool hit = false;
      TraceSet tc = eval(u, cache, t1.out, cfg);
      for (const auto& t2 : tc.traces()) {
        if (t2.out == both_l1) hit = true;
      }
      it = tail_hits.emplace(key, hit).first;
    }
    if (it->second) {
      r.raw_trace_found = true;
      break;
    }
  }
  if (trace_in_closed_seq(u, firewall, cache, input, Trace{target, both_l1},
                          cfg) &&
      is_guarded_trace(u, target)) {
    r.guarded_trace_found = true;
    r.detail = "exchange closure yields a guarded run sending both to l1";
  }
  return r;
}

}  // namespace cnetkat::cases
