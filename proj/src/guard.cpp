#include "cnetkat/guard.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "cnetkat/errors.hpp"

namespace cnetkat {

Pomset GuardWitness::replay(const Universe& u) const {
  switch (rule) {
    case Rule::Atom:
      return Pomset::single(Label(u, alpha));
    case Rule::Step: {
      Pomset p = Pomset::single(Label(u, alpha));
      p = Pomset::seq(p, Pomset::single(Label(u, action)));
      auto post = state_apply(alpha, action);
      p = Pomset::seq(p, Pomset::single(Label(u, *post)));
      return p;
    }
    case Rule::SeqGlue: {
      // left replays U.s, right replays s.V; drop right's minimum
      Pomset l = left->replay(u);
      Pomset r = right->replay(u);
      auto min = r.unique_min();
      std::vector<int> keep;
      for (int i = 0; i < r.size(); ++i) {
        if (i != *min) keep.push_back(i);
      }
      return Pomset::seq(l, r.restrict_nodes(keep));
    }
    case Rule::ParGlue: {
      Pomset l = left->replay(u);
      Pomset r = right->replay(u);
      auto strip = [](const Pomset& p) {
        auto mn = p.unique_min();
        auto mx = p.unique_max();
        std::vector<int> keep;
        for (int i = 0; i < p.size(); ++i) {
          if (i != *mn && i != *mx) keep.push_back(i);
        }
        return p.restrict_nodes(keep);
      };
      State lo = *state_merge(alpha, gamma);
      State hi = *state_merge(beta, delta);
      Pomset mid = Pomset::par(strip(l), strip(r));
      Pomset out = Pomset::single(Label(u, lo));
      out = Pomset::seq(out, mid);
      out = Pomset::seq(out, Pomset::single(Label(u, hi)));
      return out;
    }
  }
  return empty_pomset();
}

namespace {

// All ways to split sigma into alpha (+) gamma = sigma: every defined
// variable goes to the left part, the right part, or both.
std::vector<std::pair<State, State>> merge_splits(const State& sigma) {
  std::vector<int> defined;
  for (size_t i = 0; i < sigma.values.size(); ++i) {
    if (sigma.values[i] >= 0) defined.push_back(static_cast<int>(i));
  }
  std::vector<std::pair<State, State>> out;
  State undef;
  undef.values.assign(sigma.values.size(), -1);
  size_t combos = 1;
  for (size_t i = 0; i < defined.size(); ++i) combos *= 3;
  for (size_t c = 0; c < combos; ++c) {
    State a = undef, g = undef;
    size_t rest = c;
    for (int var : defined) {
      int choice = static_cast<int>(rest % 3);
      rest /= 3;
      if (choice == 0 || choice == 2) a.values[var] = sigma.values[var];
      if (choice == 1 || choice == 2) g.values[var] = sigma.values[var];
    }
    out.emplace_back(std::move(a), std::move(g));
  }
  return out;
}

class GuardDecider {
 public:
  explicit GuardDecider(const Universe& u) : u_(u) {}

  std::optional<GuardWitnessPtr> decide(const Pomset& p) {
    const std::string& key = p.canonical_key();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    auto result = decide_raw(p);
    memo_.emplace(key, result);
    return result;
  }

 private:
  std::optional<GuardWitnessPtr> decide_raw(const Pomset& p) {
    const int n = p.size();
    if (n == 0) return std::nullopt;
    if (n == 1) {
      if (!p.label(0).is_state()) return std::nullopt;
      auto w = std::make_shared<GuardWitness>();
      w->rule = GuardWitness::Rule::Atom;
      w->alpha = p.label(0).state();
      return GuardWitnessPtr(w);
    }
    if (n == 2) return std::nullopt;

    if (auto w = try_step(p)) return w;
    if (auto w = try_seq_glue(p)) return w;
    if (auto w = try_par_glue(p)) return w;
    return std::nullopt;
  }

  std::optional<GuardWitnessPtr> try_step(const Pomset& p) {
    if (p.size() != 3) return std::nullopt;
    // locate the chain min -> action -> max
    auto mn = p.unique_min();
    auto mx = p.unique_max();
    if (!mn || !mx) return std::nullopt;
    int mid = 3 - *mn - *mx;
    if (!p.less(*mn, mid) || !p.less(mid, *mx)) return std::nullopt;
    if (!p.label(*mn).is_state() || !p.label(*mx).is_state()) {
      return std::nullopt;
    }
    if (p.label(mid).kind() != LabelKind::Action) return std::nullopt;
    const State& alpha = p.label(*mn).state();
    const StateAction& e = p.label(mid).action();
    auto post = state_apply(alpha, e);
    if (!post || !(*post == p.label(*mx).state())) return std::nullopt;
    auto w = std::make_shared<GuardWitness>();
    w->rule = GuardWitness::Rule::Step;
    w->alpha = alpha;
    w->action = e;
    return GuardWitnessPtr(w);
  }

  std::optional<GuardWitnessPtr> try_seq_glue(const Pomset& p) {
    const int n = p.size();
    const uint64_t all = (n == 64) ? ~0ull : ((1ull << n) - 1);
    for (int s = 0; s < n; ++s) {
      if (!p.label(s).is_state()) continue;
      uint64_t below = p.pred_mask(s);
      uint64_t above = p.succ_mask(s);
      if (below == 0 || above == 0) continue;
      if ((below | above | (1ull << s)) != all) continue;
      std::vector<int> left_nodes, right_nodes;
      for (int i = 0; i < n; ++i) {
        if (i == s || ((below >> i) & 1u)) left_nodes.push_back(i);
        if (i == s || ((above >> i) & 1u)) right_nodes.push_back(i);
      }
      auto wl = decide(p.restrict_nodes(left_nodes));
      if (!wl) continue;
      auto wr = decide(p.restrict_nodes(right_nodes));
      if (!wr) continue;
      auto w = std::make_shared<GuardWitness>();
      w->rule = GuardWitness::Rule::SeqGlue;
      w->left = *wl;
      w->right = *wr;
      return GuardWitnessPtr(w);
    }
    return std::nullopt;
  }

  std::optional<GuardWitnessPtr> try_par_glue(const Pomset& p) {
    const int n = p.size();
    if (n < 4) return std::nullopt;
    auto mn = p.unique_min();
    auto mx = p.unique_max();
    if (!mn || !mx) return std::nullopt;
    if (!p.label(*mn).is_state() || !p.label(*mx).is_state()) {
      return std::nullopt;
    }
    std::vector<int> interior;
    for (int i = 0; i < n; ++i) {
      if (i != *mn && i != *mx) interior.push_back(i);
    }
    // comparability components of the interior
    const int m = static_cast<int>(interior.size());
    std::vector<int> comp(m, -1);
    int ncomp = 0;
    for (int i = 0; i < m; ++i) {
      if (comp[i] >= 0) continue;
      std::vector<int> stack = {i};
      comp[i] = ncomp;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int j = 0; j < m; ++j) {
          if (comp[j] < 0 && p.comparable(interior[x], interior[j])) {
            comp[j] = ncomp;
            stack.push_back(j);
          }
        }
      }
      ++ncomp;
    }
    if (ncomp < 2) return std::nullopt;

    const State& sig_min = p.label(*mn).state();
    const State& sig_max = p.label(*mx).state();
    auto lo_splits = merge_splits(sig_min);
    auto hi_splits = merge_splits(sig_max);

    // bipartitions of components; the component containing index 0 stays left
    for (uint64_t mask = 0; mask < (1ull << ncomp); ++mask) {
      if (mask & 1u) continue;
      bool left_empty = true, right_empty = true;
      for (int c = 0; c < ncomp; ++c) {
        if ((mask >> c) & 1u) {
          right_empty = false;
        } else {
          left_empty = false;
        }
      }
      if (left_empty || right_empty) continue;
      std::vector<int> ln, rn;
      for (int i = 0; i < m; ++i) {
        if ((mask >> comp[i]) & 1u) {
          rn.push_back(interior[i]);
        } else {
          ln.push_back(interior[i]);
        }
      }
      Pomset left_mid = p.restrict_nodes(ln);
      Pomset right_mid = p.restrict_nodes(rn);
      for (const auto& [alpha, gamma] : lo_splits) {
        for (const auto& [beta, delta] : hi_splits) {
          Pomset left = Pomset::single(Label(u_, alpha));
          left = Pomset::seq(left, left_mid);
          left = Pomset::seq(left, Pomset::single(Label(u_, beta)));
          auto wl = decide(left);
          if (!wl) continue;
          Pomset right = Pomset::single(Label(u_, gamma));
          right = Pomset::seq(right, right_mid);
          right = Pomset::seq(right, Pomset::single(Label(u_, delta)));
          auto wr = decide(right);
          if (!wr) continue;
          auto w = std::make_shared<GuardWitness>();
          w->rule = GuardWitness::Rule::ParGlue;
          w->alpha = alpha;
          w->gamma = gamma;
          w->beta = beta;
          w->delta = delta;
          w->left = *wl;
          w->right = *wr;
          return GuardWitnessPtr(w);
        }
      }
    }
    return std::nullopt;
  }

  const Universe& u_;
  std::unordered_map<std::string, std::optional<GuardWitnessPtr>> memo_;
};

}  // namespace

std::optional<GuardWitnessPtr> is_guarded(const Universe& u, const Pomset& p) {
  for (int i = 0; i < p.size(); ++i) {
    if (p.label(i).kind() == LabelKind::Packets) {
      throw ContractError(
          "is_guarded expects a state/action pomset; project packet nodes "
          "first");
    }
  }
  GuardDecider d(u);
  return d.decide(p);
}

std::optional<GuardWitnessPtr> is_guarded_trace(const Universe& u,
                                                const Pomset& p) {
  GuardDecider d(u);
  return d.decide(project_state(p));
}

struct GuardChecker::Impl {
  GuardDecider decider;
  explicit Impl(const Universe& u) : decider(u) {}
};

GuardChecker::GuardChecker(const Universe& u)
    : impl_(std::make_unique<Impl>(u)) {}

GuardChecker::~GuardChecker() = default;

std::optional<GuardWitnessPtr> GuardChecker::decide(const Pomset& p) {
  return impl_->decider.decide(p);
}

std::optional<GuardWitnessPtr> GuardChecker::decide_trace(const Pomset& p) {
  return impl_->decider.decide(project_state(p));
}

PomsetLanguage generate_guarded(const Universe& u, int max_nodes,
                                size_t population_cap) {
  PomsetLanguage out;
  std::vector<State> states = all_states(u);
  std::vector<StateAction> actions;
  for (int v = 0; v < u.var_count(); ++v) {
    for (size_t n = 0; n < u.var_values(v).size(); ++n) {
      StateAction e;
      e.var = v;
      e.is_copy = false;
      e.value = static_cast<int>(n);
      actions.push_back(e);
    }
    for (int w = 0; w < u.var_count(); ++w) {
      StateAction e;
      e.var = v;
      e.is_copy = true;
      e.src_var = w;
      actions.push_back(e);
    }
  }

  auto guard_insert = [&](const Pomset& p, std::vector<Pomset>& fresh) {
    if (p.size() > max_nodes) return;
    if (out.insert(p)) {
      fresh.push_back(p);
      if (out.size() > population_cap) {
        throw ResourceError("guarded-pomset generation exceeded cap of " +
                            std::to_string(population_cap));
      }
    }
  };

  std::vector<Pomset> fresh;
  for (const auto& s : states) {
    guard_insert(Pomset::single(Label(u, s)), fresh);
    for (const auto& e : actions) {
      auto post = state_apply(s, e);
      if (!post) continue;
      Pomset p = Pomset::single(Label(u, s));
      p = Pomset::seq(p, Pomset::single(Label(u, e)));
      p = Pomset::seq(p, Pomset::single(Label(u, *post)));
      guard_insert(p, fresh);
    }
  }

  // close under the two glue rules
  while (!fresh.empty()) {
    std::vector<Pomset> work = std::move(fresh);
    fresh.clear();
    std::vector<Pomset> current = out.members();
    for (const auto& a : work) {
      for (const auto& b : current) {
        for (int dir = 0; dir < 2; ++dir) {
          const Pomset& x = dir ? b : a;
          const Pomset& y = dir ? a : b;
          // sequential glue: max of x and min of y share a state label
          auto mx = x.unique_max();
          auto mn = y.unique_min();
          if (mx && mn && x.label(*mx).is_state() &&
              x.label(*mx) == y.label(*mn)) {
            if (x.size() + y.size() - 1 <= max_nodes) {
              std::vector<int> keep;
              for (int i = 0; i < y.size(); ++i) {
                if (i != *mn) keep.push_back(i);
              }
              guard_insert(Pomset::seq(x, y.restrict_nodes(keep)), fresh);
            }
          }
          // parallel glue: both endpoints merge
          auto xmn = x.unique_min(), xmx = x.unique_max();
          auto ymn = y.unique_min(), ymx = y.unique_max();
          if (dir == 0 && xmn && xmx && ymn && ymx && x.size() >= 3 &&
              y.size() >= 3 && x.label(*xmn).is_state() &&
              x.label(*xmx).is_state() && y.label(*ymn).is_state() &&
              y.label(*ymx).is_state()) {
            auto lo = state_merge(x.label(*xmn).state(), y.label(*ymn).state());
            auto hi = state_merge(x.label(*xmx).state(), y.label(*ymx).state());
            if (lo && hi && x.size() + y.size() - 2 <= max_nodes) {
              auto strip = [](const Pomset& p, int m1, int m2) {
                std::vector<int> keep;
                for (int i = 0; i < p.size(); ++i) {
                  if (i != m1 && i != m2) keep.push_back(i);
                }
                return p.restrict_nodes(keep);
              };
              Pomset mid = Pomset::par(strip(x, *xmn, *xmx),
                                       strip(y, *ymn, *ymx));
              Pomset r = Pomset::single(Label(u, *lo));
              r = Pomset::seq(r, mid);
              r = Pomset::seq(r, Pomset::single(Label(u, *hi)));
              guard_insert(r, fresh);
            }
          }
        }
      }
    }
  }
  return out;
}

namespace {

// Unique cover-predecessor / successor, when it exists.
std::optional<int> cover_pred(const Pomset& p, int x) {
  int found = -1;
  uint64_t preds = p.pred_mask(x);
  while (preds) {
    int i = __builtin_ctzll(preds);
    preds &= preds - 1;
    if ((p.succ_mask(i) & p.pred_mask(x)) == 0) {
      if (found >= 0) return std::nullopt;
      found = i;
    }
  }
  if (found < 0) return std::nullopt;
  return found;
}

std::optional<int> cover_succ(const Pomset& p, int x) {
  int found = -1;
  uint64_t succs = p.succ_mask(x);
  while (succs) {
    int j = __builtin_ctzll(succs);
    succs &= succs - 1;
    if ((p.succ_mask(x) & p.pred_mask(j)) == 0) {
      if (found >= 0) return std::nullopt;
      found = j;
    }
  }
  if (found < 0) return std::nullopt;
  return found;
}

// Value of var at the state following a path step, per the update table.
std::optional<int16_t> step_value(const Pomset& p, int var, int16_t cur,
                                  int q_node, int a_node) {
  const StateAction& e = p.label(a_node).action();
  const State& qs = p.label(q_node).state();
  if (!e.is_copy && e.var == var) return static_cast<int16_t>(e.value);
  if (e.is_copy && e.var == var && qs.defined(e.src_var)) {
    return qs.values[e.src_var];
  }
  (void)cur;
  return qs.values[var];
}

}  // namespace

std::optional<PathWitness> find_path(const Pomset& p, int var, int from,
                                     int to) {
  if (!p.label(from).is_state() || !p.label(to).is_state()) {
    throw ContractError("find_path endpoints must be state nodes");
  }
  if (!p.leq(from, to)) {
    throw ContractError("find_path requires from <= to");
  }
  const State& sfrom = p.label(from).state();
  if (!sfrom.defined(var)) return std::nullopt;
  // trivial path
  if (p.label(from) == p.label(to)) {
    PathWitness w;
    w.var = var;
    w.nodes = {from};
    return w;
  }

  // chains of action nodes between from and to, linked via unique covers
  std::function<std::optional<PathWitness>(int, std::vector<int>&)> extend =
      [&](int q, std::vector<int>& acc) -> std::optional<PathWitness> {
    // q: current state node at the end of acc
    if (p.label(q) == p.label(to)) {
      PathWitness w;
      w.var = var;
      w.nodes = acc;
      return w;
    }
    for (int a = 0; a < p.size(); ++a) {
      if (p.label(a).kind() != LabelKind::Action) continue;
      if (!(p.leq(from, a) && p.leq(a, to))) continue;
      auto cp = cover_pred(p, a);
      if (!cp || *cp != q) continue;
      auto cs = cover_succ(p, a);
      if (!cs || !p.label(*cs).is_state()) continue;
      const State& next = p.label(*cs).state();
      if (!next.defined(var)) continue;
      auto expect =
          step_value(p, var, p.label(q).state().values[var], q, a);
      if (!expect || *expect != next.values[var]) continue;
      acc.push_back(a);
      acc.push_back(*cs);
      if (auto w = extend(*cs, acc)) return w;
      acc.pop_back();
      acc.pop_back();
    }
    return std::nullopt;
  };

  // q1 must carry the label of `from` but can be any such node
  for (int q1 = 0; q1 < p.size(); ++q1) {
    if (!(p.label(q1) == p.label(from))) continue;
    std::vector<int> acc = {q1};
    if (auto w = extend(q1, acc)) return w;
  }
  return std::nullopt;
}

bool is_bottleneck(const Pomset& p, int u0, int u1, int u2) {
  if (!(p.leq(u0, u1) && p.leq(u1, u2))) return false;
  for (int x = 0; x < p.size(); ++x) {
    if (!p.leq(u0, x)) continue;
    if (!(p.leq(u1, x) || p.leq(x, u1))) return false;
  }
  return true;
}

std::vector<int> a5_violations(const Pomset& p) {
  std::vector<int> bad;
  for (int x = 0; x < p.size(); ++x) {
    if (p.label(x).kind() != LabelKind::Action) continue;
    const StateAction& e = p.label(x).action();
    if (e.is_copy) continue;
    auto s = cover_succ(p, x);
    if (!s || !p.label(*s).is_state() ||
        p.label(*s).state().values[e.var] != e.value) {
      bad.push_back(x);
    }
  }
  return bad;
}

bool check_A5(const Pomset& p) { return a5_violations(p).empty(); }

std::vector<int> a7_violations(const Pomset& p) {
  std::vector<int> bad;
  auto mn = p.unique_min();
  for (int x = 0; x < p.size(); ++x) {
    if (!p.label(x).is_state()) continue;
    const State& s = p.label(x).state();
    for (size_t var = 0; var < s.values.size(); ++var) {
      if (!s.defined(static_cast<int>(var))) continue;
      bool justified = false;
      // from the minimum
      if (mn && p.label(*mn).is_state() &&
          p.label(*mn).state().defined(static_cast<int>(var)) &&
          p.leq(*mn, x)) {
        if (find_path(p, static_cast<int>(var), *mn, x)) justified = true;
      }
      // from the successor of a write to var
      if (!justified) {
        for (int a = 0; a < p.size() && !justified; ++a) {
          if (p.label(a).kind() != LabelKind::Action) continue;
          if (p.label(a).action().var != static_cast<int>(var)) continue;
          auto sn = cover_succ(p, a);
          if (!sn || !p.label(*sn).is_state()) continue;
          if (!p.leq(*sn, x)) continue;
          if (!p.label(*sn).state().defined(static_cast<int>(var))) continue;
          if (find_path(p, static_cast<int>(var), *sn, x)) justified = true;
        }
      }
      if (!justified) {
        bad.push_back(x);
        break;
      }
    }
  }
  return bad;
}

bool check_A7(const Pomset& p) { return a7_violations(p).empty(); }

OrderSpec running_order_spec(const Universe& u) {
  OrderSpec s;
  auto req = [&](std::optional<int> v, const std::string& what) {
    if (!v) throw ContractError("running-example spec: missing " + what);
    return *v;
  };
  s.sw_field = req(u.field_index("sw"), "field sw");
  s.type_field = req(u.field_index("type"), "field type");
  s.sw2 = req(u.field_value_index(s.sw_field, "2"), "sw value 2");
  s.sw3 = req(u.field_value_index(s.sw_field, "3"), "sw value 3");
  s.type_heart = req(u.field_value_index(s.type_field, "heart"), "heart");
  s.type_spade = req(u.field_value_index(s.type_field, "spade"), "spade");
  s.var_v = req(u.var_index("v"), "variable v");
  s.v0 = req(u.var_value_index(s.var_v, "0"), "v value 0");
  s.v1 = req(u.var_value_index(s.var_v, "1"), "v value 1");
  Packet pk;
  pk.values.assign(u.field_count(), 0);
  pk.values[s.sw_field] = static_cast<uint8_t>(s.sw3);
  pk.values[s.type_field] = static_cast<uint8_t>(s.type_heart);
  s.heart_at_3 = pk;
  pk.values[s.sw_field] = static_cast<uint8_t>(s.sw2);
  pk.values[s.type_field] = static_cast<uint8_t>(s.type_spade);
  s.spade_at_2 = pk;
  return s;
}

namespace {

bool writes_var(const Label& l, int var) {
  return l.kind() == LabelKind::Action && l.action().var == var;
}

bool packets_contain(const Label& l, const Packet& pk, int f1, int v1, int f2,
                     int v2) {
  if (l.kind() != LabelKind::Packets) return false;
  (void)pk;
  for (const auto& x : l.packets().packets()) {
    if (x.values[f1] == v1 && x.values[f2] == v2) return true;
  }
  return false;
}

}  // namespace

std::vector<PropertyPAssignment> property_p_assignments(const Pomset& p,
                                                        const OrderSpec& spec) {
  std::vector<PropertyPAssignment> result;
  std::vector<int> v_writers;
  for (int i = 0; i < p.size(); ++i) {
    if (writes_var(p.label(i), spec.var_v)) v_writers.push_back(i);
  }
  // exactly two writers: v<-0 and v<-1
  if (v_writers.size() != 2) return result;
  int u1 = -1, u2 = -1;
  for (int i : v_writers) {
    const StateAction& e = p.label(i).action();
    if (!e.is_copy && e.value == spec.v0) u1 = i;
    if (!e.is_copy && e.value == spec.v1) u2 = i;
  }
  if (u1 < 0 || u2 < 0) return result;

  // u1 comparable with every node
  for (int z = 0; z < p.size(); ++z) {
    if (z != u1 && !p.comparable(z, u1)) return result;
  }

  // first-occurrence candidates for the two recorded packets
  std::vector<int> heart_nodes, spade_nodes;
  for (int z = 0; z < p.size(); ++z) {
    if (packets_contain(p.label(z), spec.heart_at_3, spec.sw_field, spec.sw3,
                        spec.type_field, spec.type_heart)) {
      heart_nodes.push_back(z);
    }
    if (packets_contain(p.label(z), spec.spade_at_2, spec.sw_field, spec.sw2,
                        spec.type_field, spec.type_spade)) {
      spade_nodes.push_back(z);
    }
  }

  PacketSet heart_set, spade_set;
  heart_set.insert(spec.heart_at_3);
  spade_set.insert(spec.spade_at_2);

  for (int u4 = 0; u4 < p.size(); ++u4) {
    if (p.label(u4).kind() != LabelKind::Packets) continue;
    if (!(p.label(u4).packets() == heart_set)) continue;
    bool first_heart = true;
    for (int z : heart_nodes) {
      if (!p.leq(u4, z)) first_heart = false;
    }
    if (!first_heart) continue;
    if (!(p.leq(u1, u4) && p.leq(u4, u2))) continue;
    for (int u5 = 0; u5 < p.size(); ++u5) {
      if (p.label(u5).kind() != LabelKind::Packets) continue;
      if (!(p.label(u5).packets() == spade_set)) continue;
      bool first_spade = true;
      for (int z : spade_nodes) {
        if (!p.leq(u5, z)) first_spade = false;
      }
      if (!first_spade) continue;
      for (int u3 = 0; u3 < p.size(); ++u3) {
        if (!p.label(u3).is_state()) continue;
        if (p.label(u3).state().values[spec.var_v] != spec.v1) continue;
        if (!(p.leq(u1, u3) && p.leq(u3, u5))) continue;
        PropertyPAssignment a;
        a.u1 = u1;
        a.u2 = u2;
        a.u3 = u3;
        a.u4 = u4;
        a.u5 = u5;
        result.push_back(a);
      }
    }
  }
  return result;
}

std::optional<PropertyPAssignment> has_property_P(const Pomset& p,
                                                  const OrderSpec& spec) {
  auto all = property_p_assignments(p, spec);
  if (all.empty()) return std::nullopt;
  return all[0];
}

bool verify_order(const Universe& u, const Pomset& p, const OrderSpec& spec) {
  auto assignments = property_p_assignments(p, spec);
  if (assignments.empty()) {
    throw ContractError("verify_order requires property P");
  }
  if (!is_guarded_trace(u, p)) {
    throw ContractError("verify_order requires a guarded state projection");
  }
  for (const auto& a : assignments) {
    if (!p.leq(a.u2, a.u3)) return false;
    if (!p.leq(a.u4, a.u5)) return false;
  }
  return true;
}

}  // namespace cnetkat
