#include "cnetkat/rewrite.hpp"

#include <algorithm>
#include <map>

#include "cnetkat/errors.hpp"
#include "cnetkat/printer.hpp"

namespace cnetkat {

namespace {

void flatten_seq(const ProgPtr& p, std::vector<ProgPtr>& out) {
  if (p->kind == Program::Kind::Seq) {
    flatten_seq(p->lhs, out);
    flatten_seq(p->rhs, out);
  } else {
    out.push_back(p);
  }
}

void flatten_par(const ProgPtr& p, std::vector<ProgPtr>& out) {
  if (p->kind == Program::Kind::Par) {
    flatten_par(p->lhs, out);
    flatten_par(p->rhs, out);
  } else {
    out.push_back(p);
  }
}

// Complete-assignment run: units[i..i+k) are field writes in field order.
bool match_assignment_run(const Universe& u, const std::vector<ProgPtr>& units,
                          size_t i, Packet& out) {
  const size_t k = static_cast<size_t>(u.field_count());
  if (k == 0 || i + k > units.size()) return false;
  Packet pk;
  pk.values.assign(k, 0);
  for (size_t f = 0; f < k; ++f) {
    const ProgPtr& unit = units[i + f];
    if (unit->kind != Program::Kind::FieldMod ||
        unit->field != static_cast<int>(f)) {
      return false;
    }
    pk.values[f] = static_cast<uint8_t>(unit->value);
  }
  out = pk;
  return true;
}

// Complete-test run: units[i..i+k) are field tests in field order.
bool match_test_run(const Universe& u, const std::vector<ProgPtr>& units,
                    size_t i, Packet& out) {
  const size_t k = static_cast<size_t>(u.field_count());
  if (k == 0 || i + k > units.size()) return false;
  Packet pk;
  pk.values.assign(k, 0);
  for (size_t f = 0; f < k; ++f) {
    const ProgPtr& unit = units[i + f];
    if (unit->kind != Program::Kind::Pred ||
        unit->pred->kind != Predicate::Kind::Test ||
        unit->pred->field != static_cast<int>(f)) {
      return false;
    }
    pk.values[f] = static_cast<uint8_t>(unit->pred->value);
  }
  out = pk;
  return true;
}

// A parallel of complete assignments (two or more branches).
bool match_pi_unit(const Universe& u, const ProgPtr& unit, PacketSet& out) {
  if (unit->kind != Program::Kind::Par) return false;
  std::vector<ProgPtr> branches;
  flatten_par(unit, branches);
  PacketSet a;
  for (const auto& b : branches) {
    std::vector<ProgPtr> chain;
    flatten_seq(b, chain);
    Packet pk;
    if (chain.size() != static_cast<size_t>(u.field_count()) ||
        !match_assignment_run(u, chain, 0, pk)) {
      return false;
    }
    a.insert(pk);
  }
  out = a;
  return true;
}

struct AtomChunk {
  enum class Kind { Assignment, Test, Pi, Other };
  Kind kind = Kind::Other;
  size_t start = 0;
  size_t len = 0;
  Packet tuple;
  PacketSet pi;
};

// Greedy left-to-right chunking of a sequential chain into atom runs.
std::vector<AtomChunk> chunk_units(const Universe& u,
                                   const std::vector<ProgPtr>& units) {
  std::vector<AtomChunk> chunks;
  const size_t k = static_cast<size_t>(u.field_count());
  size_t i = 0;
  while (i < units.size()) {
    AtomChunk c;
    c.start = i;
    Packet pk;
    PacketSet ps;
    if (match_assignment_run(u, units, i, pk)) {
      c.kind = AtomChunk::Kind::Assignment;
      c.len = k;
      c.tuple = pk;
    } else if (match_test_run(u, units, i, pk)) {
      c.kind = AtomChunk::Kind::Test;
      c.len = k;
      c.tuple = pk;
    } else if (match_pi_unit(u, units[i], ps)) {
      c.kind = AtomChunk::Kind::Pi;
      c.len = 1;
      c.pi = ps;
    } else {
      c.kind = AtomChunk::Kind::Other;
      c.len = 1;
    }
    chunks.push_back(c);
    i += c.len;
  }
  return chunks;
}

ProgPtr rebuild_seq(const std::vector<ProgPtr>& units) {
  return Program::seq_all(units);
}

// One pass of the reduced rewrites over a sequential chain. Returns true and
// replaces `units` when a redex was contracted.
bool reduce_chain_once(const Universe& u, std::vector<ProgPtr>& units) {
  auto chunks = chunk_units(u, units);
  using K = AtomChunk::Kind;
  for (size_t c = 0; c + 1 < chunks.size(); ++c) {
    const AtomChunk& x = chunks[c];
    const AtomChunk& y = chunks[c + 1];
    auto erase_chunk = [&](const AtomChunk& victim) {
      units.erase(units.begin() + victim.start,
                  units.begin() + victim.start + victim.len);
    };
    if (x.kind == K::Assignment && y.kind == K::Test && x.tuple == y.tuple) {
      erase_chunk(y);  // pi ; alpha_pi -> pi
      return true;
    }
    if (x.kind == K::Test && y.kind == K::Assignment && x.tuple == y.tuple) {
      erase_chunk(y);  // alpha ; pi_alpha -> alpha
      return true;
    }
    if (x.kind == K::Assignment && y.kind == K::Assignment) {
      erase_chunk(x);  // pi ; pi' -> pi'
      return true;
    }
    if (x.kind == K::Test && y.kind == K::Test && !(x.tuple == y.tuple)) {
      // alpha ; beta -> drop
      units.erase(units.begin() + x.start,
                  units.begin() + y.start + y.len);
      units.insert(units.begin() + x.start,
                   Program::mk_pred(Predicate::mk_false()));
      return true;
    }
    bool x_is_pi = (x.kind == K::Pi) || (x.kind == K::Assignment);
    bool y_is_pi = (y.kind == K::Pi) || (y.kind == K::Assignment);
    if (x_is_pi && y_is_pi &&
        !(x.kind == K::Assignment && y.kind == K::Assignment)) {
      erase_chunk(x);  // Pi_a ; Pi_b -> Pi_b
      return true;
    }
  }
  return false;
}

}  // namespace

ProgPtr reduce_atoms(const Universe& u, const ProgPtr& p) {
  switch (p->kind) {
    case Program::Kind::Plus:
      return Program::plus(reduce_atoms(u, p->lhs), reduce_atoms(u, p->rhs));
    case Program::Kind::Par:
      return Program::par(reduce_atoms(u, p->lhs), reduce_atoms(u, p->rhs));
    case Program::Kind::Star:
      return Program::star(reduce_atoms(u, p->lhs));
    case Program::Kind::Seq: {
      std::vector<ProgPtr> units;
      flatten_seq(p, units);
      for (auto& unit : units) {
        if (unit->kind != Program::Kind::Seq) unit = reduce_atoms(u, unit);
      }
      // re-flatten in case reduction exposed nested chains
      std::vector<ProgPtr> flat;
      for (const auto& unit : units) flatten_seq(unit, flat);
      units = std::move(flat);
      while (reduce_chain_once(u, units)) {
      }
      return rebuild_seq(units);
    }
    default:
      return p;
  }
}

// ---------------------------------------------------------------------------

namespace {

ProgPtr splus(const ProgPtr& a, const ProgPtr& b) {
  if (a->kind == Program::Kind::Abort) return b;
  if (b->kind == Program::Kind::Abort) return a;
  return Program::plus(a, b);
}

ProgPtr sseq(const ProgPtr& a, const ProgPtr& b) {
  if (a->kind == Program::Kind::Abort || b->kind == Program::Kind::Abort) {
    return Program::mk_abort();
  }
  if (a->kind == Program::Kind::Skip) return b;
  if (b->kind == Program::Kind::Skip) return a;
  return Program::seq(a, b);
}

ProgPtr sstar(const ProgPtr& a) {
  if (a->kind == Program::Kind::Abort || a->kind == Program::Kind::Skip) {
    return Program::mk_skip();
  }
  return Program::star(a);
}

std::vector<Summand> norm_rec(const Universe& u, const PacketSet& a,
                              const ProgPtr& p, const NormalizeBudget& budget);

std::vector<Summand> norm_star(const Universe& u, const PacketSet& a,
                               const ProgPtr& body,
                               const NormalizeBudget& budget) {
  StateMatrix m = build_matrix(u, a, body, budget);
  StateMatrix s = matrix_star(m);
  // row of the input set (index 0 by construction)
  std::vector<Summand> out;
  for (size_t j = 0; j < s.q.size(); ++j) {
    out.push_back(Summand{s.entries[0][j], s.q[j]});
  }
  return out;
}

std::vector<Summand> norm_rec(const Universe& u, const PacketSet& a,
                              const ProgPtr& p, const NormalizeBudget& budget) {
  std::vector<Summand> out;
  if (a.empty()) return out;
  switch (p->kind) {
    case Program::Kind::Pred:
      out.push_back(Summand{Program::mk_skip(), bsem(u, p->pred, a)});
      return out;
    case Program::Kind::Skip:
      out.push_back(Summand{Program::mk_skip(), a});
      return out;
    case Program::Kind::Abort:
      out.push_back(Summand{Program::mk_abort(), a});
      return out;
    case Program::Kind::Obs:
      out.push_back(Summand{Program::mk_obs(p->obs), a});
      return out;
    case Program::Kind::FieldMod:
      out.push_back(
          Summand{Program::mk_skip(), set_update(u, a, p->field, p->value)});
      return out;
    case Program::Kind::StateMod:
      out.push_back(Summand{Program::state_mod(p->action), a});
      return out;
    case Program::Kind::Dup:
      out.push_back(Summand{Program::packet_lit(a), a});
      return out;
    case Program::Kind::PacketLit:
      out.push_back(Summand{Program::packet_lit(p->packets), a});
      return out;
    case Program::Kind::Plus: {
      out = norm_rec(u, a, p->lhs, budget);
      auto r = norm_rec(u, a, p->rhs, budget);
      out.insert(out.end(), r.begin(), r.end());
      if (out.size() > budget.summand_limit) {
        throw ResourceError("normal form exceeded the summand budget");
      }
      return out;
    }
    case Program::Kind::Seq: {
      for (const auto& s1 : norm_rec(u, a, p->lhs, budget)) {
        if (s1.output.empty()) {
          out.push_back(Summand{s1.state_program, PacketSet()});
          continue;
        }
        for (const auto& s2 : norm_rec(u, s1.output, p->rhs, budget)) {
          out.push_back(
              Summand{sseq(s1.state_program, s2.state_program), s2.output});
        }
        if (out.size() > budget.summand_limit) {
          throw ResourceError("normal form exceeded the summand budget");
        }
      }
      return out;
    }
    case Program::Kind::Par: {
      auto l = norm_rec(u, a, p->lhs, budget);
      auto r = norm_rec(u, a, p->rhs, budget);
      for (const auto& s1 : l) {
        for (const auto& s2 : r) {
          // (s;y) || (v;z)  ==  (s||v) ; (y||z), and parallel packet parts
          // union their sets
          ProgPtr sp;
          if (s1.state_program->kind == Program::Kind::Skip) {
            sp = s2.state_program;
          } else if (s2.state_program->kind == Program::Kind::Skip) {
            sp = s1.state_program;
          } else {
            sp = Program::par(s1.state_program, s2.state_program);
          }
          out.push_back(
              Summand{sp, PacketSet::unite(s1.output, s2.output)});
        }
      }
      if (out.size() > budget.summand_limit) {
        throw ResourceError("normal form exceeded the summand budget");
      }
      return out;
    }
    case Program::Kind::Star:
      return norm_star(u, a, p->lhs, budget);
  }
  return out;
}

}  // namespace

NormalForm normalize(const Universe& u, const PacketSet& a, const ProgPtr& p,
                     const NormalizeBudget& budget) {
  NormalForm nf;
  nf.input_set = a;
  nf.summands = norm_rec(u, a, p, budget);
  return nf;
}

StateMatrix build_matrix(const Universe& u, const PacketSet& a,
                         const ProgPtr& body, const NormalizeBudget& budget) {
  StateMatrix m;
  std::map<std::string, size_t> index;
  std::vector<std::vector<Summand>> rows;
  m.q.push_back(a);
  index.emplace(packet_set_key(a), 0);
  for (size_t i = 0; i < m.q.size(); ++i) {
    rows.push_back(norm_rec(u, m.q[i], body, budget));
    for (const auto& s : rows[i]) {
      std::string key = packet_set_key(s.output);
      if (index.find(key) == index.end()) {
        index.emplace(key, m.q.size());
        m.q.push_back(s.output);
        if (m.q.size() > budget.q_limit) {
          throw ResourceError("state-matrix budget of " +
                              std::to_string(budget.q_limit) +
                              " representatives exceeded");
        }
      }
    }
  }
  const size_t n = m.q.size();
  m.entries.assign(n, std::vector<ProgPtr>(n, Program::mk_abort()));
  for (size_t i = 0; i < n; ++i) {
    for (const auto& s : rows[i]) {
      size_t j = index[packet_set_key(s.output)];
      m.entries[i][j] = splus(m.entries[i][j], s.state_program);
    }
  }
  return m;
}

namespace {

using Mat = std::vector<std::vector<ProgPtr>>;

Mat mat_mul(const Mat& a, const Mat& b) {
  const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat out(n, std::vector<ProgPtr>(m, Program::mk_abort()));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      for (size_t x = 0; x < k; ++x) {
        out[i][j] = splus(out[i][j], sseq(a[i][x], b[x][j]));
      }
    }
  }
  return out;
}

Mat mat_add(const Mat& a, const Mat& b) {
  Mat out = a;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < a[i].size(); ++j) {
      out[i][j] = splus(a[i][j], b[i][j]);
    }
  }
  return out;
}

Mat mat_star_rec(const Mat& m) {
  const size_t n = m.size();
  if (n == 0) return m;
  if (n == 1) return {{sstar(m[0][0])}};
  const size_t k = n / 2;
  auto block = [&](size_t r0, size_t r1, size_t c0, size_t c1) {
    Mat out;
    for (size_t i = r0; i < r1; ++i) {
      out.push_back(std::vector<ProgPtr>(m[i].begin() + c0,
                                         m[i].begin() + c1));
    }
    return out;
  };
  Mat a = block(0, k, 0, k);
  Mat b = block(0, k, k, n);
  Mat c = block(k, n, 0, k);
  Mat d = block(k, n, k, n);
  Mat ds = mat_star_rec(d);
  Mat f = mat_add(a, mat_mul(mat_mul(b, ds), c));
  Mat fs = mat_star_rec(f);
  Mat top_right = mat_mul(mat_mul(fs, b), ds);
  Mat bottom_left = mat_mul(mat_mul(ds, c), fs);
  Mat bottom_right = mat_add(ds, mat_mul(mat_mul(ds, c), top_right));
  Mat out(n, std::vector<ProgPtr>(n));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) out[i][j] = fs[i][j];
    for (size_t j = k; j < n; ++j) out[i][j] = top_right[i][j - k];
  }
  for (size_t i = k; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) out[i][j] = bottom_left[i - k][j];
    for (size_t j = k; j < n; ++j) out[i][j] = bottom_right[i - k][j - k];
  }
  return out;
}

}  // namespace

StateMatrix matrix_star(const StateMatrix& m) {
  StateMatrix out;
  out.q = m.q;
  out.entries = mat_star_rec(m.entries);
  return out;
}

ProgPtr NormalForm::denote(const Universe& u) const {
  std::vector<ProgPtr> terms;
  for (const auto& s : summands) {
    terms.push_back(Program::seq(s.state_program, pi_program(u, s.output)));
  }
  return Program::seq(pi_program(u, input_set), Program::sum(terms));
}

std::string NormalForm::pretty(const Universe& u) const {
  std::string s = "Pi" + packet_set_to_string(u, input_set) + " ; (";
  if (summands.empty()) s += " abort";
  for (size_t i = 0; i < summands.size(); ++i) {
    if (i) s += " +";
    s += " [" + print_program(summands[i].state_program, u) + "] ; Pi" +
         packet_set_to_string(u, summands[i].output);
  }
  s += " )";
  return s;
}

NormalForm merge_summands(const NormalForm& nf) {
  NormalForm out;
  out.input_set = nf.input_set;
  std::vector<std::string> keys;
  for (const auto& s : nf.summands) {
    std::string key = packet_set_key(s.output);
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      out.summands.push_back(s);
    } else {
      size_t i = static_cast<size_t>(it - keys.begin());
      out.summands[i].state_program =
          splus(out.summands[i].state_program, s.state_program);
    }
  }
  return out;
}

namespace {

bool pocka_language_equiv(const Universe& u, const ProgPtr& a,
                          const ProgPtr& b, const EvalConfig& cfg,
                          bool* bounded) {
  bool hit_a = false, hit_b = false;
  PomsetLanguage la = eval_pocka_raw(u, a, cfg, &hit_a);
  PomsetLanguage lb = eval_pocka_raw(u, b, cfg, &hit_b);
  if (bounded) *bounded = *bounded || hit_a || hit_b;
  for (const auto& x : la.members()) {
    bool found = false;
    for (const auto& y : lb.members()) {
      if (in_closure_of(x, y)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  for (const auto& y : lb.members()) {
    bool found = false;
    for (const auto& x : la.members()) {
      if (in_closure_of(y, x)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool pocka_raw_empty(const Universe& u, const ProgPtr& p,
                     const EvalConfig& cfg) {
  return eval_pocka_raw(u, p, cfg).size() == 0;
}

}  // namespace

NfVerdict nf_equiv(const Universe& u, const NormalForm& a, const NormalForm& b,
                   const EvalConfig& cfg) {
  NfVerdict v;
  auto check_merged = [](const NormalForm& nf) {
    std::vector<std::string> keys;
    for (const auto& s : nf.summands) {
      std::string key = packet_set_key(s.output);
      if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
        throw ContractError("nf_equiv requires merged normal forms");
      }
      keys.push_back(key);
    }
  };
  check_merged(a);
  check_merged(b);
  if (!(a.input_set == b.input_set)) {
    v.detail = "input sets differ";
    return v;
  }
  // summands whose state program denotes no pomset at all are inert
  auto live = [&](const NormalForm& nf) {
    std::vector<Summand> out;
    for (const auto& s : nf.summands) {
      if (!pocka_raw_empty(u, s.state_program, cfg)) out.push_back(s);
    }
    return out;
  };
  std::vector<Summand> sa = live(a), sb = live(b);
  if (sa.size() != sb.size()) {
    v.detail = "summand output sets differ";
    return v;
  }
  for (const auto& x : sa) {
    const Summand* match = nullptr;
    for (const auto& y : sb) {
      if (x.output == y.output) {
        match = &y;
        break;
      }
    }
    if (!match) {
      v.detail = "unmatched output set";
      return v;
    }
    if (!pocka_language_equiv(u, x.state_program, match->state_program, cfg,
                              &v.bounded)) {
      v.detail = "state programs differ on a matched output";
      return v;
    }
  }
  v.equivalent = true;
  return v;
}

}  // namespace cnetkat
