#include "doctest.h"

#include "cnetkat/printer.hpp"
#include "cnetkat/rewrite.hpp"

#include "test_util.hpp"

using namespace cnetkat;
using namespace testutil;

namespace {

EvalConfig fast_cfg(int k = 2, int p = 0) {
  EvalConfig cfg;
  cfg.star_bound = k;
  cfg.pad_bound = p;
  return cfg;
}

ProgPtr ca(const Universe& u, const Packet& pk) {
  return complete_assignment_program(u, pk);
}
ProgPtr ct(const Universe& u, const Packet& pk) {
  return complete_test_program(u, pk);
}

// Mutual inclusion of closed trace sets, decided by closure membership.
bool closed_equal(const Universe& u, const TraceSet& a, const TraceSet& b) {
  for (const auto& t : a.traces()) {
    if (!trace_in_closed(t, b)) return false;
  }
  for (const auto& t : b.traces()) {
    if (!trace_in_closed(t, a)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("reduced axioms") {
  Universe u = mini_universe();
  Packet p0 = mk_packet(u, {{"f", "0"}});
  Packet p1 = mk_packet(u, {{"f", "1"}});

  // pi ; pi' -> pi'
  ProgPtr r1 = reduce_atoms(u, Program::seq(ca(u, p0), ca(u, p1)));
  CHECK(prog_equal(r1, ca(u, p1)));

  // alpha ; beta -> drop for distinct complete tests
  ProgPtr r2 = reduce_atoms(u, Program::seq(ct(u, p0), ct(u, p1)));
  CHECK(prog_equal(r2, Program::mk_pred(Predicate::mk_false())));

  // no redex: fixpoint returns the input
  CHECK(prog_equal(reduce_atoms(u, ca(u, p0)), ca(u, p0)));

  // pi ; alpha_pi -> pi and alpha ; pi_alpha -> alpha
  CHECK(prog_equal(reduce_atoms(u, Program::seq(ca(u, p0), ct(u, p0))), ca(u, p0)));
  CHECK(prog_equal(reduce_atoms(u, Program::seq(ct(u, p0), ca(u, p0))), ct(u, p0)));

  // Pi_a ; Pi_b -> Pi_b on parallels of assignments
  ProgPtr pi_ab = Program::par(ca(u, p0), ca(u, p1));
  ProgPtr r3 = reduce_atoms(u, Program::seq(pi_ab, ca(u, p0)));
  CHECK(prog_equal(r3, ca(u, p0)));
  ProgPtr r4 = reduce_atoms(u, Program::seq(ca(u, p0), pi_ab));
  CHECK(prog_equal(r4, pi_ab));

  // rewrites reach under other operators
  ProgPtr nested = Program::plus(Program::seq(ca(u, p0), ca(u, p1)), ca(u, p0));
  CHECK(prog_equal(reduce_atoms(u, nested), Program::plus(ca(u, p1), ca(u, p0))));
}

TEST_CASE("normalize base cases") {
  Universe u = mini_universe();
  Packet p0 = mk_packet(u, {{"f", "0"}});
  Packet p1 = mk_packet(u, {{"f", "1"}});
  PacketSet a({p0});
  int f = *u.field_index("f");

  // field write: output moves, state part is skip
  NormalForm nf1 = normalize(u, a, Program::field_mod(f, 1));
  REQUIRE(nf1.summands.size() == 1);
  CHECK(nf1.summands[0].state_program->kind == Program::Kind::Skip);
  CHECK(nf1.summands[0].output == PacketSet({p1}));

  // empty input: empty normal form
  CHECK(normalize(u, PacketSet(), Program::mk_dup()).summands.empty());

  // state action commutes out
  NormalForm nf2 = normalize(u, a, Program::state_mod(assign(u, "v", "1")));
  REQUIRE(nf2.summands.size() == 1);
  CHECK(nf2.summands[0].state_program->kind == Program::Kind::StateMod);
  CHECK(nf2.summands[0].output == a);

  // dup becomes the packet-set letter
  NormalForm nf3 = normalize(u, a, Program::mk_dup());
  REQUIRE(nf3.summands.size() == 1);
  CHECK(nf3.summands[0].state_program->kind == Program::Kind::PacketLit);
  CHECK(nf3.summands[0].state_program->packets == a);

  // predicate keeps the satisfying packets
  NormalForm nf4 = normalize(u, PacketSet({p0, p1}),
                             Program::mk_pred(Predicate::test(f, 0)));
  REQUIRE(nf4.summands.size() == 1);
  CHECK(nf4.summands[0].output == PacketSet({p0}));
}

TEST_CASE("matrix construction") {
  Universe u = mini_universe();
  Packet p0 = mk_packet(u, {{"f", "0"}});
  Packet p1 = mk_packet(u, {{"f", "1"}});
  PacketSet a({p0});
  int f = *u.field_index("f");

  StateMatrix m1 = build_matrix(u, a, Program::mk_skip());
  CHECK(m1.q.size() == 1);
  CHECK(m1.entries[0][0]->kind == Program::Kind::Skip);

  StateMatrix m2 = build_matrix(u, a, Program::field_mod(f, 1));
  CHECK(m2.q.size() == 2);
  CHECK(m2.q[0] == a);
  CHECK(m2.q[1] == PacketSet({p1}));

  // drop introduces the empty representative with a dead row
  StateMatrix m3 = build_matrix(u, a, Program::mk_pred(Predicate::mk_false()));
  REQUIRE(m3.q.size() == 2);
  CHECK(m3.q[1].empty());
  CHECK(m3.entries[1][0]->kind == Program::Kind::Abort);
  CHECK(m3.entries[1][1]->kind == Program::Kind::Abort);
}

TEST_CASE("matrix star") {
  Universe u = mini_universe();
  PacketSet a({mk_packet(u, {{"f", "0"}})});

  // one-cell matrix: the star of the entry
  StateMatrix m;
  m.q = {a};
  m.entries = {{Program::state_mod(assign(u, "v", "1"))}};
  StateMatrix s = matrix_star(m);
  CHECK(s.entries[0][0]->kind == Program::Kind::Star);

  // zero matrix: identity
  StateMatrix z;
  z.q = {a, PacketSet()};
  z.entries = {{Program::mk_abort(), Program::mk_abort()},
               {Program::mk_abort(), Program::mk_abort()}};
  StateMatrix zs = matrix_star(z);
  CHECK(zs.entries[0][0]->kind == Program::Kind::Skip);
  CHECK(zs.entries[1][1]->kind == Program::Kind::Skip);
  CHECK(zs.entries[0][1]->kind == Program::Kind::Abort);
  CHECK(zs.entries[1][0]->kind == Program::Kind::Abort);

  // the starred entry agrees with its star-free bounded expansion
  Universe mu = mini_universe();
  EvalConfig cfg = fast_cfg(2, 0);
  ProgPtr body = Program::state_mod(assign(mu, "v", "1"));
  ProgPtr expansion = Program::plus(
      Program::mk_skip(), Program::plus(body, Program::seq(body, body)));
  PomsetLanguage l1 = eval_pocka_raw(mu, s.entries[0][0], cfg);
  PomsetLanguage l2 = eval_pocka_raw(mu, expansion, cfg);
  CHECK(l1 == l2);
}

TEST_CASE("merge summands") {
  Universe u = mini_universe();
  PacketSet b({mk_packet(u, {{"f", "0"}})});
  NormalForm nf;
  nf.input_set = b;
  nf.summands.push_back(Summand{Program::state_mod(assign(u, "v", "0")), b});
  nf.summands.push_back(Summand{Program::state_mod(assign(u, "v", "1")), b});
  NormalForm merged = merge_summands(nf);
  REQUIRE(merged.summands.size() == 1);
  CHECK(merged.summands[0].state_program->kind == Program::Kind::Plus);

  CHECK(merge_summands(NormalForm{b, {}}).summands.empty());
  NormalForm unique;
  unique.input_set = b;
  unique.summands.push_back(Summand{Program::mk_skip(), b});
  unique.summands.push_back(Summand{Program::mk_skip(), PacketSet()});
  CHECK(merge_summands(unique).summands.size() == 2);

  // merged outputs are pairwise distinct, whatever the input
  Gen g(u, 61);
  for (int i = 0; i < 40; ++i) {
    NormalForm raw = normalize(u, g.random_packet_set(), g.random_program(3, 1));
    NormalForm m = merge_summands(raw);
    for (size_t x = 0; x < m.summands.size(); ++x) {
      for (size_t y = x + 1; y < m.summands.size(); ++y) {
        CHECK_FALSE(m.summands[x].output == m.summands[y].output);
      }
    }
  }
}

TEST_CASE("normal form equivalence") {
  Universe u = mini_universe();
  PacketSet b({mk_packet(u, {{"f", "0"}})});
  EvalConfig cfg = fast_cfg(2, 0);

  NormalForm nf;
  nf.input_set = b;
  nf.summands.push_back(Summand{Program::state_mod(assign(u, "v", "1")), b});
  CHECK(nf_equiv(u, nf, nf, cfg).equivalent);

  NormalForm other;
  other.input_set = b;
  other.summands.push_back(Summand{Program::state_mod(assign(u, "v", "1")),
                                   PacketSet()});
  NfVerdict v = nf_equiv(u, nf, other, cfg);
  CHECK_FALSE(v.equivalent);

  // v<-1 ; v<-1 differs from v<-1 as a closed pomset language
  NormalForm twice;
  twice.input_set = b;
  twice.summands.push_back(
      Summand{Program::seq(Program::state_mod(assign(u, "v", "1")),
                           Program::state_mod(assign(u, "v", "1"))),
              b});
  CHECK_FALSE(nf_equiv(u, nf, twice, cfg).equivalent);

  // abort-like summands are inert
  NormalForm with_dead = nf;
  with_dead.summands.push_back(Summand{Program::mk_abort(), PacketSet()});
  CHECK(nf_equiv(u, nf, with_dead, cfg).equivalent);
}

TEST_CASE("normalization soundness") {
  Universe u = mini_universe();
  Gen g(u, 63);
  EvalConfig cfg = fast_cfg(2, 1);
  int done = 0;
  for (int i = 0; done < 60 && i < 400; ++i) {
    ProgPtr p = g.random_program(3, 1);
    PacketSet a = g.random_packet_set();
    PacketSet b = g.random_packet_set();
    if (b.empty()) continue;
    NormalForm nf;
    try {
      nf = normalize(u, a, p);
    } catch (const ResourceError&) {
      continue;
    }
    ProgPtr lhs = Program::seq(pi_program(u, a), p);
    ProgPtr rhs = nf.denote(u);
    TraceSet tl = eval(u, lhs, b, cfg);
    TraceSet tr = eval(u, rhs, b, cfg);
    // left-to-right inclusion holds at matched bounds
    for (const auto& t : tl.traces()) {
      CAPTURE(print_program(p, u));
      CHECK(trace_in_closed(t, tr));
    }
    // right-to-left after giving the original star enough unrollings
    bool included = false;
    for (int k = cfg.star_bound; k <= 10 && !included; ++k) {
      EvalConfig wide = cfg;
      wide.star_bound = k;
      TraceSet tl_wide = eval(u, lhs, b, wide);
      included = true;
      for (const auto& t : tr.traces()) {
        if (!trace_in_closed(t, tl_wide)) {
          included = false;
          break;
        }
      }
    }
    CAPTURE(print_program(p, u));
    CHECK(included);
    ++done;
  }
  CHECK(done == 60);
}

TEST_CASE("star fixpoint sanity") {
  Universe u = mini_universe();
  Gen g(u, 65);
  // depth four covers every packet-set chain of this universe, so the exact
  // packet star and the bounded state star both coincide with the expansion
  EvalConfig cfg = fast_cfg(4, 0);
  cfg.trace_budget = 30000;
  PacketSet b({mk_packet(u, {{"f", "0"}})});
  int done = 0;
  for (int i = 0; done < 25 && i < 200; ++i) {
    ProgPtr body = g.random_program(2, 0);
    PacketSet a = g.random_packet_set();
    ProgPtr starred = Program::seq(pi_program(u, a), Program::star(body));
    ProgPtr expansion = Program::mk_skip();
    ProgPtr power = body;
    for (int n = 1; n <= 4; ++n) {
      expansion = Program::plus(expansion, power);
      power = Program::seq(power, body);
    }
    ProgPtr unfolded = Program::seq(pi_program(u, a), expansion);
    try {
      TraceSet ts = eval(u, starred, b, cfg);
      TraceSet te = eval(u, unfolded, b, cfg);
      CHECK(closed_equal(u, ts, te));
      ++done;
    } catch (const ResourceError&) {
      // oversized sample, try another
    }
  }
  CHECK(done == 25);
}
