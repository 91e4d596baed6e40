#include "cnetkat/semantics.hpp"

#include <algorithm>
#include <memory>

#include "cnetkat/errors.hpp"
#include "cnetkat/printer.hpp"

namespace cnetkat {

std::string packet_set_key(const PacketSet& a) {
  std::string s;
  s.push_back(static_cast<char>(a.size()));
  for (const auto& pk : a.packets()) {
    for (uint8_t v : pk.values) s.push_back(static_cast<char>(v));
    s.push_back('|');
  }
  return s;
}

std::string trace_key(const Trace& t) {
  return t.pom.canonical_key() + "#" + packet_set_key(t.out);
}

bool TraceSet::insert(const Trace& t) {
  if (!keyset_.insert(trace_key(t)).second) return false;
  traces_.push_back(t);
  sorted_keys_.clear();
  return true;
}

bool TraceSet::contains(const Trace& t) const {
  return keyset_.count(trace_key(t)) > 0;
}

const std::vector<std::string>& TraceSet::sorted_keys() const {
  if (sorted_keys_.size() != traces_.size()) {
    sorted_keys_.assign(keyset_.begin(), keyset_.end());
    std::sort(sorted_keys_.begin(), sorted_keys_.end());
  }
  return sorted_keys_;
}

bool TraceSet::operator==(const TraceSet& o) const {
  return sorted_keys() == o.sorted_keys();
}

bool TraceSet::subset_of(const TraceSet& o) const {
  for (const auto& k : keyset_) {
    if (!o.keyset_.count(k)) return false;
  }
  return true;
}

void TraceSet::sort_canonically() {
  std::sort(traces_.begin(), traces_.end(), [](const Trace& a, const Trace& b) {
    return trace_key(a) < trace_key(b);
  });
}

namespace {

// Pad words: all state sequences of length 0..P.
std::vector<std::vector<State>> pad_words(const Universe& u, int pad_bound) {
  std::vector<std::vector<State>> out;
  out.push_back({});
  std::vector<State> states = all_states(u);
  std::vector<std::vector<State>> level = {{}};
  for (int len = 1; len <= pad_bound; ++len) {
    std::vector<std::vector<State>> next;
    for (const auto& w : level) {
      for (const auto& s : states) {
        auto w2 = w;
        w2.push_back(s);
        next.push_back(w2);
        out.push_back(std::move(w2));
      }
    }
    level = std::move(next);
  }
  return out;
}

Pomset chain_of(const Universe& u, const std::vector<State>& left,
                const Label& center, const std::vector<State>& right) {
  Pomset p = empty_pomset();
  for (const auto& s : left) p = Pomset::seq(p, Pomset::single(Label(u, s)));
  p = Pomset::seq(p, Pomset::single(center));
  for (const auto& s : right) p = Pomset::seq(p, Pomset::single(Label(u, s)));
  return p;
}

class Evaluator {
 public:
  Evaluator(const Universe& u, const EvalConfig& cfg) : u_(u), cfg_(cfg) {
    pads_ = pad_words(u, cfg.pad_bound);
  }

  const TraceSet& eval(const ProgPtr& p, const PacketSet& a) {
    std::string key = std::to_string(reinterpret_cast<uintptr_t>(p.get())) +
                      ":" + packet_set_key(a);
    auto it = memo_.find(key);
    if (it != memo_.end()) return *it->second;
    auto r = std::make_unique<TraceSet>(eval_raw(p, a));
    const TraceSet& ref = *r;
    memo_.emplace(std::move(key), std::move(r));
    return ref;
  }

 private:
  void check_budget(const Pomset& pom) const {
    if (pom.size() > cfg_.node_budget) {
      throw ResourceError("pomset of " + std::to_string(pom.size()) +
                          " nodes exceeds the node budget of " +
                          std::to_string(cfg_.node_budget));
    }
  }

  void insert_checked(TraceSet& ts, Trace t) const {
    check_budget(t.pom);
    ts.insert(std::move(t));
    if (ts.size() > cfg_.trace_budget) {
      throw ResourceError("trace budget of " +
                          std::to_string(cfg_.trace_budget) + " exceeded");
    }
  }

  TraceSet padded_atom(const std::vector<Label>& centers,
                       const PacketSet& a) const {
    TraceSet out;
    for (const auto& c : centers) {
      for (const auto& w1 : pads_) {
        for (const auto& w2 : pads_) {
          Trace t{chain_of(u_, w1, c, w2), a};
          check_budget(t.pom);
          out.insert(std::move(t));
        }
      }
    }
    return out;
  }

  TraceSet eval_raw(const ProgPtr& p, const PacketSet& a) {
    TraceSet out;
    if (a.empty()) {
      // nothing can happen without packets
      out.insert(Trace{empty_pomset(), PacketSet()});
      return out;
    }
    switch (p->kind) {
      case Program::Kind::Abort:
        return out;
      case Program::Kind::Skip:
        out.insert(Trace{empty_pomset(), a});
        return out;
      case Program::Kind::Pred:
        out.insert(Trace{empty_pomset(), bsem(u_, p->pred, a)});
        return out;
      case Program::Kind::FieldMod:
        out.insert(Trace{empty_pomset(), set_update(u_, a, p->field, p->value)});
        return out;
      case Program::Kind::Obs: {
        std::vector<Label> centers;
        StateSet sem = osem(u_, p->obs);
        for (const auto& s : sem.states()) {
          centers.push_back(Label(u_, s));
        }
        return padded_atom(centers, a);
      }
      case Program::Kind::StateMod:
        return padded_atom({Label(u_, p->action)}, a);
      case Program::Kind::Dup:
        out.insert(Trace{Pomset::single(Label(u_, a)), a});
        return out;
      case Program::Kind::PacketLit:
        out.insert(Trace{Pomset::single(Label(u_, p->packets)), a});
        return out;
      case Program::Kind::Plus: {
        const TraceSet& l = eval(p->lhs, a);
        const TraceSet& r = eval(p->rhs, a);
        out.bounds_hit = l.bounds_hit || r.bounds_hit;
        out.output_saturated = l.output_saturated || r.output_saturated;
        for (const auto& t : l.traces()) insert_checked(out, t);
        for (const auto& t : r.traces()) insert_checked(out, t);
        return out;
      }
      case Program::Kind::Seq: {
        const TraceSet& l = eval(p->lhs, a);
        out.bounds_hit = l.bounds_hit;
        out.output_saturated = l.output_saturated;
        for (const auto& t : l.traces()) {
          const TraceSet& r = eval(p->rhs, t.out);
          out.bounds_hit = out.bounds_hit || r.bounds_hit;
          out.output_saturated = out.output_saturated || r.output_saturated;
          if (out.size() + r.size() > cfg_.trace_budget) {
            throw ResourceError("trace budget of " +
                                std::to_string(cfg_.trace_budget) +
                                " exceeded");
          }
          for (const auto& t2 : r.traces()) {
            insert_checked(out, Trace{Pomset::seq(t.pom, t2.pom), t2.out});
          }
        }
        return out;
      }
      case Program::Kind::Par: {
        const TraceSet& l = eval(p->lhs, a);
        const TraceSet& r = eval(p->rhs, a);
        out.bounds_hit = l.bounds_hit || r.bounds_hit;
        out.output_saturated = l.output_saturated || r.output_saturated;
        if (l.size() * r.size() > cfg_.trace_budget) {
          throw ResourceError("trace budget of " +
                              std::to_string(cfg_.trace_budget) + " exceeded");
        }
        for (const auto& t : l.traces()) {
          for (const auto& t2 : r.traces()) {
            insert_checked(out, Trace{Pomset::par(t.pom, t2.pom),
                                      PacketSet::unite(t.out, t2.out)});
          }
        }
        return out;
      }
      case Program::Kind::Star:
        return eval_star(p->lhs, a);
    }
    return out;
  }

  TraceSet eval_star(const ProgPtr& body, const PacketSet& a) {
    TraceSet out;
    if (is_packet_program(body)) {
      // exact: iterate the output-set map on the finite subset lattice
      std::vector<PacketSet> frontier = {a};
      std::vector<std::string> seen = {packet_set_key(a)};
      out.insert(Trace{empty_pomset(), a});
      while (!frontier.empty()) {
        std::vector<PacketSet> next;
        for (const auto& c : frontier) {
          const TraceSet& step = eval(body, c);
          for (const auto& t : step.traces()) {
            std::string k = packet_set_key(t.out);
            if (std::find(seen.begin(), seen.end(), k) == seen.end()) {
              seen.push_back(k);
              next.push_back(t.out);
              insert_checked(out, Trace{empty_pomset(), t.out});
            }
          }
        }
        frontier = std::move(next);
      }
      out.output_saturated = true;
      return out;
    }

    // bounded unrolling: level n holds the traces of the n-fold composite
    TraceSet level;
    level.insert(Trace{empty_pomset(), a});
    out.insert(Trace{empty_pomset(), a});
    std::vector<std::string> outputs_seen = {packet_set_key(a)};
    bool saturated = false;
    bool last_level_new_output = false;
    for (int n = 1; n <= cfg_.star_bound; ++n) {
      TraceSet next;
      for (const auto& t : level.traces()) {
        const TraceSet& step = eval(body, t.out);
        out.bounds_hit = out.bounds_hit || step.bounds_hit;
        for (const auto& t2 : step.traces()) {
          insert_checked(next, Trace{Pomset::seq(t.pom, t2.pom), t2.out});
        }
      }
      if (next == level) {
        saturated = true;
        break;
      }
      last_level_new_output = false;
      for (const auto& t : next.traces()) {
        std::string ok = packet_set_key(t.out);
        auto it = std::lower_bound(outputs_seen.begin(), outputs_seen.end(), ok);
        if (it == outputs_seen.end() || *it != ok) {
          outputs_seen.insert(it, ok);
          last_level_new_output = true;
        }
        out.insert(t);
        if (out.size() > cfg_.trace_budget) {
          throw ResourceError("trace budget of " +
                              std::to_string(cfg_.trace_budget) + " exceeded");
        }
      }
      level = std::move(next);
    }
    out.bounds_hit = out.bounds_hit || !saturated;
    out.output_saturated = saturated || !last_level_new_output;
    return out;
  }

  const Universe& u_;
  EvalConfig cfg_;
  std::vector<std::vector<State>> pads_;
  std::unordered_map<std::string, std::unique_ptr<TraceSet>> memo_;
};

}  // namespace

TraceSet eval(const Universe& u, const ProgPtr& p, const PacketSet& a,
              const EvalConfig& cfg) {
  Evaluator ev(u, cfg);
  TraceSet out = ev.eval(p, a);
  out.sort_canonically();
  return out;
}

struct BatchEvaluator::Impl {
  Evaluator ev;
  Impl(const Universe& u, const EvalConfig& cfg) : ev(u, cfg) {}
};

BatchEvaluator::BatchEvaluator(const Universe& u, const EvalConfig& cfg)
    : impl_(std::make_unique<Impl>(u, cfg)) {}

BatchEvaluator::~BatchEvaluator() = default;

const TraceSet& BatchEvaluator::eval(const ProgPtr& p, const PacketSet& a) {
  return impl_->ev.eval(p, a);
}

TraceSet eval_closed(const Universe& u, const ProgPtr& p, const PacketSet& a,
                     const EvalConfig& cfg) {
  TraceSet raw = eval(u, p, a, cfg);
  TraceSet out;
  out.bounds_hit = raw.bounds_hit;
  out.output_saturated = raw.output_saturated;
  std::unordered_map<std::string, PomsetLanguage> closures;
  for (const auto& t : raw.traces()) {
    const std::string& key = t.pom.canonical_key();
    auto it = closures.find(key);
    if (it == closures.end()) {
      PomsetLanguage single;
      single.insert(t.pom);
      it = closures.emplace(key, close(single, cfg.closure_budget())).first;
    }
    for (const auto& w : it->second.members()) {
      out.insert(Trace{w, t.out});
      if (out.size() > cfg.trace_budget) {
        throw ResourceError("trace budget of " +
                            std::to_string(cfg.trace_budget) +
                            " exceeded while closing");
      }
    }
  }
  return out;
}

bool trace_in_closed(const Trace& t, const TraceSet& raw) {
  for (const auto& cand : raw.traces()) {
    if (!(cand.out == t.out)) continue;
    if (in_closure_of(t.pom, cand.pom)) return true;
  }
  return false;
}

namespace {

// Label multiset of a pomset, keyed by kind and rendering.
std::unordered_map<std::string, int> label_counts(const Pomset& p) {
  std::unordered_map<std::string, int> out;
  for (int i = 0; i < p.size(); ++i) {
    std::string key;
    key.push_back(static_cast<char>(p.label(i).kind()));
    key += p.label(i).repr();
    out[key]++;
  }
  return out;
}

// Serialized sorted label multiset.
std::string label_multiset_key(const Pomset& p) {
  std::vector<std::string> parts;
  parts.reserve(static_cast<size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) {
    std::string key;
    key.push_back(static_cast<char>(p.label(i).kind()));
    key += p.label(i).repr();
    key.push_back('\x01');
    parts.push_back(std::move(key));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (auto& s : parts) out += s;
  return out;
}

// Cheap necessary condition for some w1 . w2 (w2 unknown) to have the target
// in its closure: every w1 label occurs in the target, and non-state counts
// do not exceed the target's.
bool head_compatible(const std::unordered_map<std::string, int>& target,
                     const Pomset& w1) {
  auto counts = label_counts(w1);
  for (const auto& [key, n] : counts) {
    auto it = target.find(key);
    if (it == target.end()) return false;
    bool is_state = key[0] == static_cast<char>(LabelKind::State);
    if (!is_state && n > it->second) return false;
  }
  return true;
}

}  // namespace

bool trace_in_closed_seq(const Universe& u, const ProgPtr& head,
                         const ProgPtr& tail, const PacketSet& input,
                         const Trace& target, const EvalConfig& cfg) {
  TraceSet th = eval(u, head, input, cfg);
  auto target_counts = label_counts(target.pom);
  std::unordered_map<std::string, TraceSet> tail_memo;
  for (const auto& t1 : th.traces()) {
    if (t1.pom.size() > target.pom.size()) continue;
    if (!head_compatible(target_counts, t1.pom)) continue;
    std::string key = packet_set_key(t1.out);
    auto it = tail_memo.find(key);
    if (it == tail_memo.end()) {
      it = tail_memo.emplace(key, eval(u, tail, t1.out, cfg)).first;
    }
    for (const auto& t2 : it->second.traces()) {
      if (!(t2.out == target.out)) continue;
      if (t1.pom.size() + t2.pom.size() < target.pom.size()) continue;
      if (in_closure_of(target.pom, Pomset::seq(t1.pom, t2.pom))) return true;
    }
  }
  return false;
}

PacketSet eval_netkat(const Universe& u, const ProgPtr& p, const Packet& pk) {
  if (!is_netkat_program(p)) {
    throw ContractError(
        "eval_netkat requires a packet program without parallel composition");
  }
  switch (p->kind) {
    case Program::Kind::Pred:
      return packet_satisfies(u, p->pred, pk) ? PacketSet(std::vector<Packet>{pk})
                                              : PacketSet();
    case Program::Kind::FieldMod:
      return PacketSet(std::vector<Packet>{packet_update(u, pk, p->field, p->value)});
    case Program::Kind::Plus:
      return PacketSet::unite(eval_netkat(u, p->lhs, pk),
                              eval_netkat(u, p->rhs, pk));
    case Program::Kind::Seq: {
      PacketSet mid = eval_netkat(u, p->lhs, pk);
      PacketSet out;
      for (const auto& x : mid.packets()) {
        out = PacketSet::unite(out, eval_netkat(u, p->rhs, x));
      }
      return out;
    }
    case Program::Kind::Star: {
      PacketSet acc(std::vector<Packet>{pk});
      while (true) {
        PacketSet grow = acc;
        for (const auto& x : acc.packets()) {
          grow = PacketSet::unite(grow, eval_netkat(u, p->lhs, x));
        }
        if (grow == acc) return acc;
        acc = grow;
      }
    }
    default:
      throw ContractError("eval_netkat: unsupported construct");
  }
}

namespace {

PomsetLanguage pairwise(const PomsetLanguage& l, const PomsetLanguage& r,
                        bool sequential, const EvalConfig& cfg) {
  if (l.size() * r.size() > cfg.trace_budget) {
    throw ResourceError("pomset language budget of " +
                        std::to_string(cfg.trace_budget) + " exceeded");
  }
  PomsetLanguage out;
  for (const auto& a : l.members()) {
    for (const auto& b : r.members()) {
      Pomset c = sequential ? Pomset::seq(a, b) : Pomset::par(a, b);
      if (c.size() > cfg.node_budget) {
        throw ResourceError("pomset of " + std::to_string(c.size()) +
                            " nodes exceeds the node budget of " +
                            std::to_string(cfg.node_budget));
      }
      out.insert(c);
    }
  }
  return out;
}

PomsetLanguage pocka_raw_rec(const Universe& u, const ProgPtr& s,
                             const EvalConfig& cfg,
                             const std::vector<std::vector<State>>& pads,
                             bool* bounds_hit) {
  PomsetLanguage out;
  switch (s->kind) {
    case Program::Kind::Abort:
      return out;
    case Program::Kind::Skip:
      out.insert(empty_pomset());
      return out;
    case Program::Kind::Obs: {
      StateSet sem = osem(u, s->obs);
      for (const auto& alpha : sem.states()) {
        for (const auto& w1 : pads) {
          for (const auto& w2 : pads) {
            out.insert(chain_of(u, w1, Label(u, alpha), w2));
          }
        }
      }
      return out;
    }
    case Program::Kind::StateMod: {
      for (const auto& w1 : pads) {
        for (const auto& w2 : pads) {
          out.insert(chain_of(u, w1, Label(u, s->action), w2));
        }
      }
      return out;
    }
    case Program::Kind::PacketLit:
      out.insert(Pomset::single(Label(u, s->packets)));
      return out;
    case Program::Kind::Plus: {
      PomsetLanguage l = pocka_raw_rec(u, s->lhs, cfg, pads, bounds_hit);
      PomsetLanguage r = pocka_raw_rec(u, s->rhs, cfg, pads, bounds_hit);
      for (const auto& x : l.members()) out.insert(x);
      for (const auto& x : r.members()) out.insert(x);
      return out;
    }
    case Program::Kind::Seq:
      return pairwise(pocka_raw_rec(u, s->lhs, cfg, pads, bounds_hit),
                      pocka_raw_rec(u, s->rhs, cfg, pads, bounds_hit), true,
                      cfg);
    case Program::Kind::Par:
      return pairwise(pocka_raw_rec(u, s->lhs, cfg, pads, bounds_hit),
                      pocka_raw_rec(u, s->rhs, cfg, pads, bounds_hit), false,
                      cfg);
    case Program::Kind::Star: {
      PomsetLanguage body = pocka_raw_rec(u, s->lhs, cfg, pads, bounds_hit);
      PomsetLanguage level;
      level.insert(empty_pomset());
      out.insert(empty_pomset());
      bool saturated = false;
      bool added = false;
      for (int n = 1; n <= cfg.star_bound; ++n) {
        PomsetLanguage next = pairwise(level, body, true, cfg);
        if (next == level) {
          saturated = true;
          break;
        }
        added = false;
        for (const auto& x : next.members()) {
          if (out.insert(x)) added = true;
        }
        level = next;
      }
      if (!saturated && added && bounds_hit) *bounds_hit = true;
      return out;
    }
    default:
      throw ContractError(
          "eval_pocka requires a state program over observations, actions "
          "and packet-set letters");
  }
}

}  // namespace

PomsetLanguage eval_pocka_raw(const Universe& u, const ProgPtr& s,
                              const EvalConfig& cfg, bool* bounds_hit) {
  StateAlphabet sigma;
  sigma.dup = false;
  if (!is_state_program(s, sigma)) {
    throw ContractError(
        "eval_pocka requires a state program over observations, actions "
        "and packet-set letters");
  }
  bool dummy = false;
  if (!bounds_hit) bounds_hit = &dummy;
  return pocka_raw_rec(u, s, cfg, pad_words(u, cfg.pad_bound), bounds_hit);
}

PomsetLanguage eval_pocka(const Universe& u, const ProgPtr& s,
                          const EvalConfig& cfg) {
  return close(eval_pocka_raw(u, s, cfg), cfg.closure_budget());
}

bool trace_set_included_in_closed(const Universe& u, const TraceSet& lhs,
                                  const TraceSet& rhs,
                                  std::string* counterexample) {
  // witnesses with the same label multiset cover pure reorderings; the
  // fallback group handles contraction witnesses with more nodes
  std::unordered_map<std::string, std::vector<const Trace*>> exact;
  std::unordered_map<std::string, std::vector<const Trace*>> by_output;
  for (const auto& t : rhs.traces()) {
    std::string okey = packet_set_key(t.out);
    exact[okey + "\x02" + label_multiset_key(t.pom)].push_back(&t);
    by_output[okey].push_back(&t);
  }
  for (const auto& t : lhs.traces()) {
    std::string okey = packet_set_key(t.out);
    bool found = false;
    auto fast = exact.find(okey + "\x02" + label_multiset_key(t.pom));
    if (fast != exact.end()) {
      for (const Trace* cand : fast->second) {
        if (in_closure_of(t.pom, cand->pom)) {
          found = true;
          break;
        }
      }
    }
    if (!found) {
      auto group = by_output.find(okey);
      if (group != by_output.end()) {
        for (const Trace* cand : group->second) {
          if (cand->pom.size() <= t.pom.size()) continue;
          if (in_closure_of(t.pom, cand->pom)) {
            found = true;
            break;
          }
        }
      }
    }
    if (!found) {
      if (counterexample) {
        *counterexample = pomset_to_string(t.pom) + "  ~>  " +
                          packet_set_to_string(u, t.out);
      }
      return false;
    }
  }
  return true;
}

Verdict check_inclusion(const Universe& u, const ProgPtr& p, const ProgPtr& q,
                        const PacketSet& input, const EvalConfig& cfg) {
  TraceSet tp = eval(u, p, input, cfg);
  TraceSet tq = eval(u, q, input, cfg);
  Verdict v;
  v.bounded = tp.bounds_hit || tq.bounds_hit;
  std::string cx;
  v.holds = trace_set_included_in_closed(u, tp, tq, &cx);
  if (!v.holds) v.detail = "no closure witness for " + cx;
  return v;
}

Verdict check_equiv(const Universe& u, const ProgPtr& p, const ProgPtr& q,
                    const PacketSet& input, const EvalConfig& cfg) {
  Verdict a = check_inclusion(u, p, q, input, cfg);
  if (!a.holds) {
    a.detail = "left-to-right inclusion fails: " + a.detail;
    return a;
  }
  Verdict b = check_inclusion(u, q, p, input, cfg);
  if (!b.holds) {
    b.detail = "right-to-left inclusion fails: " + b.detail;
    return b;
  }
  Verdict v;
  v.holds = true;
  v.bounded = a.bounded || b.bounded;
  return v;
}

std::vector<PacketSet> all_packet_sets(const Universe& u, int max_packets) {
  std::vector<Packet> pks = all_packets(u);
  if (static_cast<int>(pks.size()) > max_packets) {
    throw ResourceError("packet space too large to enumerate all subsets");
  }
  std::vector<PacketSet> out;
  size_t total = 1ull << pks.size();
  for (size_t mask = 0; mask < total; ++mask) {
    PacketSet s;
    for (size_t i = 0; i < pks.size(); ++i) {
      if ((mask >> i) & 1u) s.insert(pks[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace cnetkat
