#include "doctest.h"

#include "cnetkat/guard.hpp"
#include "cnetkat/semantics.hpp"

#include "test_util.hpp"

using namespace cnetkat;
using namespace testutil;

namespace {

Universe guard_universe() { return mini_universe(); }

}  // namespace

TEST_CASE("guardedness base cases") {
  Universe u = guard_universe();
  State empty = empty_state(u);
  State v1 = mk_state(u, {{"v", "1"}});

  CHECK(is_guarded(u, Pomset::single(Label(u, empty))).has_value());
  CHECK_FALSE(is_guarded(u, Pomset::single(Label(u, assign(u, "v", "1")))).has_value());
  CHECK_FALSE(is_guarded(u, empty_pomset()).has_value());

  // alpha . e . alpha[e]
  Pomset step = chain({Label(u, empty), Label(u, assign(u, "v", "1")), Label(u, v1)});
  auto w = is_guarded(u, step);
  REQUIRE(w.has_value());
  CHECK((*w)->replay(u).iso(step));

  // wrong post-state
  Pomset bad = chain({Label(u, empty), Label(u, assign(u, "v", "1")),
                      Label(u, mk_state(u, {{"v", "0"}}))});
  CHECK_FALSE(is_guarded(u, bad).has_value());

  // two states in a row are not guarded
  Pomset two = chain({Label(u, empty), Label(u, empty)});
  CHECK_FALSE(is_guarded(u, two).has_value());

  // packet labels are rejected up front
  PacketSet pk({mk_packet(u, {{"f", "0"}})});
  CHECK_THROWS_AS(is_guarded(u, Pomset::single(Label(u, pk))), ContractError);
}

TEST_CASE("guardedness of the forwarding race projections") {
  Universe u = running_universe();
  State beta = mk_state(u, {{"v", "1"}});
  State alpha = mk_state(u, {{"v", "0"}});
  State gamma = empty_state(u);
  Label w0(u, assign(u, "v", "0"));
  Label w1(u, assign(u, "v", "1"));

  // beta observed in parallel with the write that would justify it: no cause
  Pomset unguarded = Pomset::seq(
      Pomset::single(w0),
      Pomset::par(Pomset::single(Label(u, beta)), Pomset::single(w1)));
  CHECK_FALSE(is_guarded(u, unguarded).has_value());

  // gamma . v<-0 . alpha . v<-1 . beta justifies the change in valuation
  Pomset guarded = chain({Label(u, gamma), w0, Label(u, alpha), w1, Label(u, beta)});
  CHECK(is_guarded(u, guarded).has_value());
}

TEST_CASE("guardedness parallel rule") {
  Universe u;
  u.add_field("f", {"0"});
  u.add_var("v", {"0", "1"});
  u.add_var("w", {"0", "1"});

  State v0 = mk_state(u, {{"v", "0"}});
  State w1 = mk_state(u, {{"w", "1"}});
  State v0w1 = mk_state(u, {{"v", "0"}, {"w", "1"}});

  // (v<-0 thread || w<-1 thread) glued at merged endpoints
  Pomset left_mid = Pomset::single(Label(u, assign(u, "v", "0")));
  Pomset right_mid = Pomset::single(Label(u, assign(u, "w", "1")));
  Pomset p = Pomset::single(Label(u, empty_state(u)));
  p = Pomset::seq(p, Pomset::par(left_mid, right_mid));
  p = Pomset::seq(p, Pomset::single(Label(u, v0w1)));
  auto witness = is_guarded(u, p);
  REQUIRE(witness.has_value());
  CHECK((*witness)->replay(u).iso(p));
  CHECK((*witness)->rule == GuardWitness::Rule::ParGlue);

  // sanity: the endpoint split really multiplies out
  CHECK(state_merge(v0, w1).has_value());
}

TEST_CASE("decision procedure agrees with bottom-up generation") {
  Universe u = guard_universe();
  PomsetLanguage all_guarded = generate_guarded(u, 5);
  CHECK(all_guarded.size() > 0);
  for (const auto& p : all_guarded.members()) {
    CAPTURE(pomset_to_string(p));
    CHECK(is_guarded(u, p).has_value());
  }

  // exhaustive small posets over a reduced alphabet
  std::vector<Label> alphabet = {
      Label(u, empty_state(u)), Label(u, mk_state(u, {{"v", "0"}})),
      Label(u, mk_state(u, {{"v", "1"}})), Label(u, assign(u, "v", "0")),
      Label(u, assign(u, "v", "1"))};
  Gen g(u, 71);
  int accepted = 0;
  for (int i = 0; i < 4000; ++i) {
    Pomset cand = g.random_pomset(alphabet, 4);
    bool decided = is_guarded(u, cand).has_value();
    CHECK(decided == all_guarded.contains(cand));
    if (decided) ++accepted;
  }
  CHECK(accepted > 0);
}

TEST_CASE("paths") {
  Universe u;
  u.add_field("f", {"0"});
  u.add_var("v", {"0", "1"});
  u.add_var("w", {"0", "1"});

  State v0 = mk_state(u, {{"v", "0"}});
  State v1 = mk_state(u, {{"v", "1"}});
  int v = *u.var_index("v");

  // trivial path to itself
  Pomset single = Pomset::single(Label(u, v0));
  auto w0 = find_path(single, v, 0, 0);
  REQUIRE(w0.has_value());
  CHECK(w0->nodes.size() == 1);

  // one action explains the change
  Pomset good = chain({Label(u, v0), Label(u, assign(u, "v", "1")), Label(u, v1)});
  auto w1 = find_path(good, v, 0, 2);
  REQUIRE(w1.has_value());
  CHECK(w1->nodes == std::vector<int>({0, 1, 2}));

  // a write to another variable cannot explain it
  Pomset bad = chain({Label(u, v0), Label(u, assign(u, "w", "1")), Label(u, v1)});
  CHECK_FALSE(find_path(bad, v, 0, 2).has_value());

  // undefined variable at the start
  Pomset undef = chain({Label(u, empty_state(u)), Label(u, assign(u, "v", "1")),
                        Label(u, v1)});
  CHECK_FALSE(find_path(undef, v, 0, 2).has_value());
}

TEST_CASE("bottlenecks") {
  Universe u = guard_universe();
  Label a(u, assign(u, "v", "0"));
  Label b(u, assign(u, "v", "1"));
  State s0 = mk_state(u, {{"v", "0"}});

  Pomset three = chain({a, Label(u, s0), b});
  CHECK(is_bottleneck(three, 0, 1, 2));

  // diamond: branch nodes are not bottlenecks, the join is
  Pomset diamond = Pomset::seq(
      Pomset::seq(Pomset::single(a), Pomset::par(Pomset::single(b), Pomset::single(b))),
      Pomset::single(Label(u, s0)));
  CHECK_FALSE(is_bottleneck(diamond, 0, 1, 3));
  CHECK(is_bottleneck(diamond, 0, 3, 3));
  CHECK(is_bottleneck(diamond, 0, 0, 3));
}

TEST_CASE("bottlenecks lie on paths") {
  Universe u = guard_universe();
  PomsetLanguage guarded = generate_guarded(u, 5);
  int v = *u.var_index("v");
  int checked = 0;
  for (const auto& p : guarded.members()) {
    for (int x = 0; x < p.size(); ++x) {
      if (!p.label(x).is_state()) continue;
      for (int y = 0; y < p.size(); ++y) {
        if (x == y || !p.label(y).is_state() || !p.leq(x, y)) continue;
        auto path = find_path(p, v, x, y);
        if (!path) continue;
        // anchored witness: the found sequence starts and ends at the
        // endpoints themselves
        if (path->nodes.front() != x || path->nodes.back() != y) continue;
        for (int z = 0; z < p.size(); ++z) {
          if (!is_bottleneck(p, x, z, y)) continue;
          if (!p.leq(x, z) || !p.leq(z, y)) continue;
          bool on_path = false;
          for (int node : path->nodes) {
            if (node == z) on_path = true;
          }
          CHECK(on_path);
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("property A5 and A7") {
  Universe u = guard_universe();
  State v1 = mk_state(u, {{"v", "1"}});
  State v0 = mk_state(u, {{"v", "0"}});
  Label w1(u, assign(u, "v", "1"));

  Pomset ok = chain({Label(u, empty_state(u)), w1, Label(u, v1)});
  CHECK(check_A5(ok));
  CHECK(check_A7(ok));

  Pomset bad = chain({Label(u, empty_state(u)), w1, Label(u, v0)});
  CHECK_FALSE(check_A5(bad));
  CHECK(a5_violations(bad) == std::vector<int>({1}));

  // the observed value appears from nowhere
  Pomset uncaused = chain({Label(u, empty_state(u)), Label(u, v1)});
  CHECK_FALSE(check_A7(uncaused));

  // guarded pomsets satisfy both necessary conditions
  PomsetLanguage small = generate_guarded(u, 5);
  for (const auto& p : small.members()) {
    CAPTURE(pomset_to_string(p));
    CHECK(check_A5(p));
    CHECK(check_A7(p));
  }
}

namespace {

// Appendix-style one-iteration pomset of the forwarding example.
Pomset one_iteration_pomset(const Universe& u) {
  PacketSet both({mk_packet(u, {{"sw", "1"}, {"type", "heart"}}),
                  mk_packet(u, {{"sw", "1"}, {"type", "spade"}})});
  PacketSet heart({mk_packet(u, {{"sw", "1"}, {"type", "heart"}})});
  PacketSet spade({mk_packet(u, {{"sw", "1"}, {"type", "spade"}})});
  PacketSet heart3({mk_packet(u, {{"sw", "3"}, {"type", "heart"}})});
  PacketSet spade2({mk_packet(u, {{"sw", "2"}, {"type", "spade"}})});
  State beta = mk_state(u, {{"v", "1"}});

  // v<-0 ; {hs} ; ((beta ; {s} ; {s2}) || ({h} ; {h3} ; v<-1))
  Pomset left = chain({Label(u, beta), Label(u, spade), Label(u, spade2)});
  Pomset right = chain({Label(u, heart), Label(u, heart3),
                        Label(u, assign(u, "v", "1"))});
  Pomset p = Pomset::single(Label(u, assign(u, "v", "0")));
  p = Pomset::seq(p, Pomset::single(Label(u, both)));
  p = Pomset::seq(p, Pomset::par(left, right));
  return p;
}

}  // namespace

TEST_CASE("property P") {
  Universe u = running_universe();
  OrderSpec spec = running_order_spec(u);

  Pomset witness = one_iteration_pomset(u);
  auto a = has_property_P(witness, spec);
  REQUIRE(a.has_value());
  CHECK(witness.label(a->u1).action().value == spec.v0);
  CHECK(witness.label(a->u2).action().value == spec.v1);

  CHECK_FALSE(has_property_P(empty_pomset(), spec).has_value());

  // a third write to v kills the property
  Pomset three_writers = Pomset::seq(
      witness, Pomset::single(Label(u, assign(u, "v", "1"))));
  CHECK_FALSE(has_property_P(three_writers, spec).has_value());
}

TEST_CASE("property P survives closure") {
  Universe u = running_universe();
  OrderSpec spec = running_order_spec(u);
  Pomset witness = one_iteration_pomset(u);
  REQUIRE(has_property_P(witness, spec).has_value());

  PomsetLanguage lang;
  lang.insert(witness);
  PomsetLanguage closed = close(lang);
  for (const auto& member : closed.members()) {
    CAPTURE(pomset_to_string(member));
    CHECK(has_property_P(member, spec).has_value());
  }
}

TEST_CASE("verify order") {
  Universe u = running_universe();
  OrderSpec spec = running_order_spec(u);

  // fully sequentialized guarded variant: writes justify the observation
  PacketSet both({mk_packet(u, {{"sw", "1"}, {"type", "heart"}}),
                  mk_packet(u, {{"sw", "1"}, {"type", "spade"}})});
  PacketSet heart({mk_packet(u, {{"sw", "1"}, {"type", "heart"}})});
  PacketSet spade({mk_packet(u, {{"sw", "1"}, {"type", "spade"}})});
  PacketSet heart3({mk_packet(u, {{"sw", "3"}, {"type", "heart"}})});
  PacketSet spade2({mk_packet(u, {{"sw", "2"}, {"type", "spade"}})});
  State alpha = mk_state(u, {{"v", "0"}});
  State beta = mk_state(u, {{"v", "1"}});

  Pomset good = chain({Label(u, empty_state(u)), Label(u, assign(u, "v", "0")),
                       Label(u, alpha), Label(u, both), Label(u, heart),
                       Label(u, heart3), Label(u, assign(u, "v", "1")),
                       Label(u, beta), Label(u, spade), Label(u, spade2)});
  REQUIRE(has_property_P(good, spec).has_value());
  REQUIRE(is_guarded_trace(u, good).has_value());
  CHECK(verify_order(u, good, spec));

  // the unguarded one-iteration pomset is rejected by precondition
  Pomset unguarded = one_iteration_pomset(u);
  REQUIRE(has_property_P(unguarded, spec).has_value());
  CHECK_FALSE(is_guarded_trace(u, unguarded).has_value());
  CHECK_THROWS_AS(verify_order(u, unguarded, spec), ContractError);
}
