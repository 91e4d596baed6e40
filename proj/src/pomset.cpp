#include "cnetkat/pomset.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace cnetkat {

Label::Label(const Universe& u, const State& s)
    : kind_(LabelKind::State), data_(s), repr_(state_to_string(u, s)) {}

Label::Label(const Universe& u, const StateAction& e)
    : kind_(LabelKind::Action), data_(e), repr_(state_action_to_string(u, e)) {}

Label::Label(const Universe& u, const PacketSet& a)
    : kind_(LabelKind::Packets), data_(a), repr_(packet_set_to_string(u, a)) {}

Pomset Pomset::single(const Label& l) {
  Pomset p;
  p.labels_.push_back(l);
  p.lt_.push_back(0);
  p.gt_.push_back(0);
  return p;
}

Pomset empty_pomset() { return Pomset(); }

void Pomset::rebuild_gt() {
  gt_.assign(labels_.size(), 0);
  for (size_t i = 0; i < labels_.size(); ++i) {
    uint64_t row = lt_[i];
    while (row) {
      int j = __builtin_ctzll(row);
      row &= row - 1;
      gt_[j] |= (1ull << i);
    }
  }
}

Pomset Pomset::from_parts(std::vector<Label> labels, std::vector<uint64_t> lt) {
  if (labels.size() > 64) {
    throw ResourceError("pomset of " + std::to_string(labels.size()) +
                        " nodes exceeds the 64-node representation limit");
  }
  Pomset p;
  p.labels_ = std::move(labels);
  p.lt_ = std::move(lt);
  p.rebuild_gt();
  const size_t n = p.labels_.size();
  const uint64_t in_range =
      (n == 64) ? ~0ull : ((1ull << n) - 1);
  for (size_t i = 0; i < n; ++i) {
    if ((p.lt_[i] & ~in_range) || ((p.lt_[i] >> i) & 1u) ||
        (p.lt_[i] & p.gt_[i])) {
      throw ContractError("pomset order is not a strict partial order");
    }
    uint64_t row = p.lt_[i];
    while (row) {
      int j = __builtin_ctzll(row);
      row &= row - 1;
      if (p.lt_[j] & ~p.lt_[i]) {
        throw ContractError("pomset order is not transitively closed");
      }
    }
  }
  return p;
}

Pomset Pomset::seq(const Pomset& u, const Pomset& v) {
  const int n = u.size(), m = v.size();
  if (n + m > 64) {
    throw ResourceError("pomset of " + std::to_string(n + m) +
                        " nodes exceeds the 64-node representation limit");
  }
  Pomset r;
  r.labels_ = u.labels_;
  r.labels_.insert(r.labels_.end(), v.labels_.begin(), v.labels_.end());
  r.lt_.assign(n + m, 0);
  const uint64_t vmask = (m == 64 ? ~0ull : ((1ull << m) - 1)) << n;
  for (int i = 0; i < n; ++i) r.lt_[i] = u.lt_[i] | vmask;
  for (int j = 0; j < m; ++j) r.lt_[n + j] = v.lt_[j] << n;
  r.rebuild_gt();
  return r;
}

Pomset Pomset::par(const Pomset& u, const Pomset& v) {
  const int n = u.size(), m = v.size();
  if (n + m > 64) {
    throw ResourceError("pomset of " + std::to_string(n + m) +
                        " nodes exceeds the 64-node representation limit");
  }
  Pomset r;
  r.labels_ = u.labels_;
  r.labels_.insert(r.labels_.end(), v.labels_.begin(), v.labels_.end());
  r.lt_.assign(n + m, 0);
  for (int i = 0; i < n; ++i) r.lt_[i] = u.lt_[i];
  for (int j = 0; j < m; ++j) r.lt_[n + j] = v.lt_[j] << n;
  r.rebuild_gt();
  return r;
}

Pomset Pomset::restrict_nodes(const std::vector<int>& keep) const {
  std::vector<Label> labels;
  labels.reserve(keep.size());
  for (int i : keep) labels.push_back(labels_[i]);
  std::vector<uint64_t> lt(keep.size(), 0);
  for (size_t a = 0; a < keep.size(); ++a) {
    for (size_t b = 0; b < keep.size(); ++b) {
      if (a != b && less(keep[a], keep[b])) lt[a] |= (1ull << b);
    }
  }
  return from_parts(std::move(labels), std::move(lt));
}

std::vector<std::pair<int, int>> Pomset::cover_edges() const {
  std::vector<std::pair<int, int>> out;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    uint64_t row = lt_[i];
    while (row) {
      int j = __builtin_ctzll(row);
      row &= row - 1;
      // j covers i iff nothing sits strictly between
      if ((lt_[i] & gt_[j]) == 0) out.push_back({i, j});
    }
  }
  return out;
}

std::optional<int> Pomset::unique_min() const {
  int found = -1;
  for (int i = 0; i < size(); ++i) {
    if (gt_[i] == 0) {
      if (found >= 0) return std::nullopt;
      found = i;
    }
  }
  if (found < 0) return std::nullopt;
  return found;
}

std::optional<int> Pomset::unique_max() const {
  int found = -1;
  for (int i = 0; i < size(); ++i) {
    if (lt_[i] == 0) {
      if (found >= 0) return std::nullopt;
      found = i;
    }
  }
  if (found < 0) return std::nullopt;
  return found;
}

// ---------------------------------------------------------------------------
// Canonical form: ordered-partition refinement with individualization,
// minimizing the serialized (labels, order-matrix) string.

namespace {

struct CanonSearch {
  const Pomset& p;
  int n;
  std::string best;
  bool have = false;

  explicit CanonSearch(const Pomset& pom) : p(pom), n(pom.size()) {}

  using Cells = std::vector<std::vector<int>>;

  void refine(Cells& cells) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t ci = 0; ci < cells.size(); ++ci) {
        auto& cell = cells[ci];
        if (cell.size() <= 1) continue;
        std::vector<std::pair<std::vector<int>, int>> sig;
        sig.reserve(cell.size());
        for (int x : cell) {
          std::vector<int> s;
          s.reserve(cells.size() * 2);
          for (const auto& c2 : cells) {
            int sc = 0, pc = 0;
            for (int y : c2) {
              sc += static_cast<int>((p.succ_mask(x) >> y) & 1u);
              pc += static_cast<int>((p.pred_mask(x) >> y) & 1u);
            }
            s.push_back(sc);
            s.push_back(pc);
          }
          sig.emplace_back(std::move(s), x);
        }
        std::stable_sort(sig.begin(), sig.end(),
                         [](const auto& a, const auto& b) {
                           return a.first < b.first;
                         });
        bool uniform = true;
        for (size_t k = 1; k < sig.size(); ++k) {
          if (sig[k].first != sig[0].first) {
            uniform = false;
            break;
          }
        }
        if (uniform) continue;
        Cells split;
        std::vector<int> cur;
        for (size_t k = 0; k < sig.size(); ++k) {
          if (k > 0 && sig[k].first != sig[k - 1].first) {
            split.push_back(cur);
            cur.clear();
          }
          cur.push_back(sig[k].second);
        }
        split.push_back(cur);
        cells.erase(cells.begin() + ci);
        cells.insert(cells.begin() + ci, split.begin(), split.end());
        changed = true;
        break;
      }
    }
  }

  std::string leaf_string(const std::vector<int>& order) const {
    std::string s;
    s.push_back(static_cast<char>(n));
    for (int node : order) {
      const Label& l = p.label(node);
      s.push_back(static_cast<char>(l.kind()));
      uint32_t len = static_cast<uint32_t>(l.repr().size());
      s.push_back(static_cast<char>(len & 0xff));
      s.push_back(static_cast<char>((len >> 8) & 0xff));
      s += l.repr();
    }
    int bit = 0;
    char acc = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        acc = static_cast<char>(acc << 1);
        if (p.less(order[i], order[j])) acc |= 1;
        if (++bit == 8) {
          s.push_back(acc);
          bit = 0;
          acc = 0;
        }
      }
    }
    if (bit > 0) s.push_back(static_cast<char>(acc << (8 - bit)));
    return s;
  }

  void descend(Cells cells) {
    refine(cells);
    int target = -1;
    for (size_t ci = 0; ci < cells.size(); ++ci) {
      if (cells[ci].size() > 1) {
        target = static_cast<int>(ci);
        break;
      }
    }
    if (target < 0) {
      std::vector<int> order;
      order.reserve(n);
      for (const auto& c : cells) order.push_back(c[0]);
      std::string s = leaf_string(order);
      if (!have || s < best) {
        best = std::move(s);
        have = true;
      }
      return;
    }
    for (int x : cells[target]) {
      Cells next = cells;
      std::vector<int> rest;
      for (int y : cells[target]) {
        if (y != x) rest.push_back(y);
      }
      next[target] = {x};
      next.insert(next.begin() + target + 1, rest);
      descend(std::move(next));
    }
  }

  std::string run() {
    if (n == 0) return std::string(1, '\0');
    // initial partition: cells grouped by label, in label order
    std::vector<int> ord(n);
    for (int i = 0; i < n; ++i) ord[i] = i;
    std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
      return p.label(a) < p.label(b);
    });
    Cells cells;
    for (int i = 0; i < n; ++i) {
      if (i == 0 || !(p.label(ord[i]) == p.label(ord[i - 1]))) {
        cells.push_back({ord[i]});
      } else {
        cells.back().push_back(ord[i]);
      }
    }
    descend(std::move(cells));
    return best;
  }
};

}  // namespace

const std::string& Pomset::canonical_key() const {
  if (canon_.empty()) {
    CanonSearch cs(*this);
    canon_ = cs.run();
  }
  return canon_;
}

bool Pomset::iso(const Pomset& o) const {
  if (size() != o.size()) return false;
  return canonical_key() == o.canonical_key();
}

// ---------------------------------------------------------------------------
// Relational checks between pomsets. All three are backtracking searches over
// label-compatible node maps from v to u.

namespace {

struct LabelCounts {
  // local label ids shared between the two pomsets
  std::unordered_map<std::string, int> ids;
  std::vector<bool> is_state;

  int id_of(const Label& l) {
    std::string key;
    key.push_back(static_cast<char>(l.kind()));
    key += l.repr();
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(ids.size());
    ids.emplace(std::move(key), id);
    is_state.push_back(l.is_state());
    return id;
  }
};

}  // namespace

bool subsumed_by(const Pomset& u, const Pomset& v) {
  const int n = v.size();
  if (u.size() != n) return false;
  if (n == 0) return true;
  LabelCounts lc;
  std::vector<int> vl(n), ul(n);
  std::vector<int> count(128, 0);
  for (int i = 0; i < n; ++i) vl[i] = lc.id_of(v.label(i));
  for (int i = 0; i < n; ++i) ul[i] = lc.id_of(u.label(i));
  count.assign(lc.ids.size(), 0);
  for (int i = 0; i < n; ++i) count[vl[i]]++;
  for (int i = 0; i < n; ++i) {
    if (--count[ul[i]] < 0) return false;
  }

  // candidates per v-node: u-nodes with the same label
  std::vector<std::vector<int>> cand(n);
  for (int x = 0; x < n; ++x) {
    for (int m = 0; m < n; ++m) {
      if (vl[x] == ul[m]) cand[x].push_back(m);
    }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return cand[a].size() < cand[b].size();
  });

  std::vector<int> assign(n, -1);
  uint64_t used = 0;
  std::function<bool(int)> go = [&](int k) -> bool {
    if (k == n) return true;
    int x = order[k];
    for (int m : cand[x]) {
      if ((used >> m) & 1u) continue;
      bool ok = true;
      for (int k2 = 0; k2 < k; ++k2) {
        int y = order[k2];
        int my = assign[y];
        if (v.less(x, y) && !u.less(m, my)) { ok = false; break; }
        if (v.less(y, x) && !u.less(my, m)) { ok = false; break; }
      }
      if (!ok) continue;
      assign[x] = m;
      used |= (1ull << m);
      if (go(k + 1)) return true;
      used &= ~(1ull << m);
      assign[x] = -1;
    }
    return false;
  };
  return go(0);
}

namespace {

enum class MapMode { Contract, ClosureMember };

// Searches for a surjection g from v onto u. In Contract mode the full
// contraction conditions are enforced; in ClosureMember mode only
// label+order preservation with state-only merge fibers (which characterizes
// membership of u in the closure of {v}).
bool surjection_search(const Pomset& u, const Pomset& v, MapMode mode) {
  const int nv = v.size(), nu = u.size();
  if (nu > nv) return false;
  if (nu == 0) return nv == 0;

  LabelCounts lc;
  std::vector<int> vl(nv), ul(nu);
  for (int i = 0; i < nv; ++i) vl[i] = lc.id_of(v.label(i));
  for (int i = 0; i < nu; ++i) ul[i] = lc.id_of(u.label(i));
  const int nl = static_cast<int>(lc.ids.size());
  std::vector<int> cu(nl, 0), cv(nl, 0);
  for (int i = 0; i < nu; ++i) cu[ul[i]]++;
  for (int i = 0; i < nv; ++i) cv[vl[i]]++;
  for (int l = 0; l < nl; ++l) {
    if (cu[l] == 0 && cv[l] > 0) return false;
    if (cv[l] < cu[l]) return false;
    if (!lc.is_state[l] && cv[l] != cu[l]) return false;
  }

  std::vector<std::vector<int>> cand(nv);
  for (int x = 0; x < nv; ++x) {
    for (int m = 0; m < nu; ++m) {
      if (vl[x] == ul[m]) cand[x].push_back(m);
    }
  }
  std::vector<int> order(nv);
  for (int i = 0; i < nv; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return cand[a].size() < cand[b].size();
  });

  std::vector<int> assign(nv, -1);
  std::vector<int> cover(nu, 0);
  int covered = 0;
  // remaining[l]: unassigned v-nodes with label l
  std::vector<int> remaining = cv;
  // uncovered[l]: u-nodes with label l not yet hit
  std::vector<int> uncovered = cu;

  std::function<bool(int)> go = [&](int k) -> bool {
    if (k == nv) return covered == nu;
    int x = order[k];
    for (int m : cand[x]) {
      if (cover[m] > 0 && !lc.is_state[ul[m]]) continue;
      bool ok = true;
      for (int k2 = 0; k2 < k && ok; ++k2) {
        int y = order[k2];
        int my = assign[y];
        // order preservation from v into u (reflexive target order)
        if (v.less(x, y) && !(m == my || u.less(m, my))) ok = false;
        if (ok && v.less(y, x) && !(my == m || u.less(my, m))) ok = false;
        if (!ok) break;
        if (mode == MapMode::Contract) {
          // order reflection: through state pairs order may flip to mere
          // comparability, otherwise it must already be present in v
          bool both_state = lc.is_state[vl[x]] && lc.is_state[vl[y]];
          if (m == my || u.less(m, my)) {
            if (both_state) {
              if (!(x == y || v.comparable(x, y))) ok = false;
            } else if (!v.less(x, y) && x != y) {
              ok = false;
            }
          }
          if (ok && (my == m || u.less(my, m))) {
            if (both_state) {
              if (!(x == y || v.comparable(x, y))) ok = false;
            } else if (!v.less(y, x) && x != y) {
              ok = false;
            }
          }
        }
      }
      if (!ok) continue;
      assign[x] = m;
      bool newly = (cover[m] == 0);
      cover[m]++;
      if (newly) {
        covered++;
        uncovered[ul[m]]--;
      }
      remaining[vl[x]]--;
      // capacity: enough unassigned v-nodes left to cover the rest
      bool feasible = true;
      for (int l = 0; l < nl && feasible; ++l) {
        if (remaining[l] < uncovered[l]) feasible = false;
      }
      if (feasible && go(k + 1)) return true;
      remaining[vl[x]]++;
      cover[m]--;
      if (newly) {
        covered--;
        uncovered[ul[m]]++;
      }
      assign[x] = -1;
    }
    return false;
  };
  return go(0);
}

}  // namespace

bool contracts_to(const Pomset& u, const Pomset& v) {
  return surjection_search(u, v, MapMode::Contract);
}

bool in_closure_of(const Pomset& u, const Pomset& v) {
  return surjection_search(u, v, MapMode::ClosureMember);
}

// ---------------------------------------------------------------------------

PomsetLanguage::PomsetLanguage(const std::vector<Pomset>& members) {
  for (const auto& p : members) insert(p);
}

bool PomsetLanguage::insert(const Pomset& p) {
  if (!keyset_.insert(p.canonical_key()).second) return false;
  members_.push_back(p);
  sorted_keys_.clear();
  return true;
}

bool PomsetLanguage::contains(const Pomset& p) const {
  return keyset_.count(p.canonical_key()) > 0;
}

const std::vector<std::string>& PomsetLanguage::sorted_keys() const {
  if (sorted_keys_.size() != members_.size()) {
    sorted_keys_.assign(keyset_.begin(), keyset_.end());
    std::sort(sorted_keys_.begin(), sorted_keys_.end());
  }
  return sorted_keys_;
}

bool PomsetLanguage::operator==(const PomsetLanguage& o) const {
  return sorted_keys() == o.sorted_keys();
}

bool PomsetLanguage::subset_of(const PomsetLanguage& o) const {
  for (const auto& k : keyset_) {
    if (!o.keyset_.count(k)) return false;
  }
  return true;
}

void PomsetLanguage::sort_canonically() {
  std::sort(members_.begin(), members_.end(),
            [](const Pomset& a, const Pomset& b) {
              return a.canonical_key() < b.canonical_key();
            });
}

// ---------------------------------------------------------------------------
// Closure. Order extensions are enumerated on the fixed carrier of each
// member (deduplicated by order matrix), then adjacent equal-state merges are
// applied to a fixpoint.

namespace {

struct RowsHash {
  size_t operator()(const std::vector<uint64_t>& rows) const {
    size_t h = rows.size();
    for (uint64_t r : rows) {
      h ^= std::hash<uint64_t>()(r) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

// Merge node j into node i (requires i < j in the order, same state label,
// j covering i). Returns the contracted pomset.
Pomset merge_pair(const Pomset& q, int i, int j) {
  const int n = q.size();
  std::vector<int> map(n);
  int idx = 0;
  for (int a = 0; a < n; ++a) {
    if (a == j) {
      map[a] = -1;
      continue;
    }
    map[a] = idx++;
  }
  map[j] = map[i];
  std::vector<Label> labels;
  labels.reserve(n - 1);
  for (int a = 0; a < n; ++a) {
    if (a != j) labels.push_back(q.label(a));
  }
  std::vector<uint64_t> lt(n - 1, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || !q.less(a, b)) continue;
      int ma = map[a], mb = map[b];
      if (ma != mb) lt[ma] |= (1ull << mb);
    }
  }
  return Pomset::from_parts(std::move(labels), std::move(lt));
}

// Visits the iterated interval-adjacent same-state merges of q. Returns
// false when the visitor stopped the walk.
bool contraction_dfs(const Pomset& q,
                     std::unordered_set<std::string>& seen_keys,
                     const ClosureBudget& budget,
                     const std::function<bool(const Pomset&)>& fn) {
  for (auto [i, j] : q.cover_edges()) {
    if (!(q.label(i).is_state() && q.label(i) == q.label(j))) continue;
    // the pair must be interval-adjacent: anything below j goes through i,
    // anything above i goes through j, otherwise the merge manufactures
    // order that contraction is not allowed to introduce
    if (q.pred_mask(j) != (q.pred_mask(i) | (1ull << i))) continue;
    if (q.succ_mask(i) != (q.succ_mask(j) | (1ull << j))) continue;
    Pomset merged = merge_pair(q, i, j);
    if (seen_keys.insert(merged.canonical_key()).second) {
      if (seen_keys.size() > budget.population) {
        throw ResourceError(
            "closure population budget of " +
            std::to_string(budget.population) + " exceeded");
      }
      if (!fn(merged)) return false;
      if (!contraction_dfs(merged, seen_keys, budget, fn)) return false;
    }
  }
  return true;
}

}  // namespace

bool for_each_closure_member(const Pomset& v, const ClosureBudget& budget,
                             const std::function<bool(const Pomset&)>& fn) {
  if (v.size() > budget.node_budget) {
    throw ResourceError("pomset of " + std::to_string(v.size()) +
                        " nodes exceeds the node budget of " +
                        std::to_string(budget.node_budget));
  }
  const int n = v.size();
  std::unordered_set<std::vector<uint64_t>, RowsHash> seen;
  std::unordered_set<std::string> merged_keys;
  std::deque<std::vector<uint64_t>> work;
  work.push_back(v.order_rows());
  seen.insert(work.back());
  std::vector<Label> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(v.label(i));
  while (!work.empty()) {
    std::vector<uint64_t> rows = std::move(work.front());
    work.pop_front();
    Pomset w = Pomset::from_parts(labels, rows);
    if (seen.size() + merged_keys.size() > budget.population) {
      throw ResourceError("closure population budget of " +
                          std::to_string(budget.population) + " exceeded");
    }
    if (!fn(w)) return false;
    if (!contraction_dfs(w, merged_keys, budget, fn)) return false;
    // one-step order extensions
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || ((rows[i] >> j) & 1u) || ((rows[j] >> i) & 1u)) {
          continue;
        }
        std::vector<uint64_t> ext = rows;
        uint64_t above = (1ull << j) | rows[j];
        for (int a = 0; a < n; ++a) {
          if (a == i || ((rows[a] >> i) & 1u)) {
            ext[a] |= above;
          }
        }
        if (seen.insert(ext).second) work.push_back(std::move(ext));
      }
    }
  }
  return true;
}

PomsetLanguage close(const PomsetLanguage& l, const ClosureBudget& budget) {
  PomsetLanguage out;
  for (const Pomset& v : l.members()) {
    for_each_closure_member(v, budget, [&](const Pomset& w) {
      out.insert(w);
      if (out.size() > budget.population) {
        throw ResourceError("closure population budget of " +
                            std::to_string(budget.population) + " exceeded");
      }
      return true;
    });
  }
  out.sort_canonically();
  return out;
}

Pomset project_state(const Pomset& u) {
  std::vector<int> keep;
  for (int i = 0; i < u.size(); ++i) {
    if (u.label(i).kind() != LabelKind::Packets) keep.push_back(i);
  }
  return u.restrict_nodes(keep);
}

std::string pomset_to_string(const Pomset& u) {
  if (u.empty()) return "1";
  std::string s;
  for (int i = 0; i < u.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(i) + ":" + u.label(i).repr();
  }
  auto covers = u.cover_edges();
  if (!covers.empty()) {
    s += " |";
    for (auto [i, j] : covers) {
      s += " " + std::to_string(i) + "->" + std::to_string(j);
    }
  }
  return s;
}

std::string pomset_to_dot(const Pomset& u, const std::string& name) {
  std::string s = "digraph \"" + name + "\" {\n";
  s += "  rankdir=LR;\n";
  for (int i = 0; i < u.size(); ++i) {
    std::string esc;
    for (char c : u.label(i).repr()) {
      if (c == '"' || c == '\\') esc += '\\';
      esc += c;
    }
    s += "  n" + std::to_string(i) + " [label=\"" + esc + "\"];\n";
  }
  for (auto [i, j] : u.cover_edges()) {
    s += "  n" + std::to_string(i) + " -> n" + std::to_string(j) + ";\n";
  }
  s += "}\n";
  return s;
}

}  // namespace cnetkat
