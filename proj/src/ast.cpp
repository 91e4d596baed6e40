#include "cnetkat/ast.hpp"

namespace cnetkat {

PredPtr Predicate::mk_false() {
  auto p = std::make_shared<Predicate>();
  p->kind = Kind::False;
  return p;
}
PredPtr Predicate::mk_true() {
  auto p = std::make_shared<Predicate>();
  p->kind = Kind::True;
  return p;
}
PredPtr Predicate::test(int field, int value) {
  auto p = std::make_shared<Predicate>();
  p->kind = Kind::Test;
  p->field = field;
  p->value = value;
  return p;
}
PredPtr Predicate::por(PredPtr a, PredPtr b) {
  auto p = std::make_shared<Predicate>();
  p->kind = Kind::Or;
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}
PredPtr Predicate::pand(PredPtr a, PredPtr b) {
  auto p = std::make_shared<Predicate>();
  p->kind = Kind::And;
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}
PredPtr Predicate::pnot(PredPtr a) {
  auto p = std::make_shared<Predicate>();
  p->kind = Kind::Not;
  p->lhs = std::move(a);
  return p;
}

ObsPtr Observation::mk_bot() {
  auto p = std::make_shared<Observation>();
  p->kind = Kind::Bot;
  return p;
}
ObsPtr Observation::mk_top() {
  auto p = std::make_shared<Observation>();
  p->kind = Kind::Top;
  return p;
}
ObsPtr Observation::test(int var, int value) {
  auto p = std::make_shared<Observation>();
  p->kind = Kind::Test;
  p->var = var;
  p->value = value;
  return p;
}
ObsPtr Observation::oor(ObsPtr a, ObsPtr b) {
  auto p = std::make_shared<Observation>();
  p->kind = Kind::Or;
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}
ObsPtr Observation::oand(ObsPtr a, ObsPtr b) {
  auto p = std::make_shared<Observation>();
  p->kind = Kind::And;
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}
ObsPtr Observation::complement(ObsPtr a) {
  auto p = std::make_shared<Observation>();
  p->kind = Kind::Complement;
  p->lhs = std::move(a);
  return p;
}

namespace {
std::shared_ptr<Program> prog(Program::Kind k) {
  auto p = std::make_shared<Program>();
  p->kind = k;
  return p;
}
}  // namespace

ProgPtr Program::mk_abort() { return prog(Kind::Abort); }
ProgPtr Program::mk_skip() { return prog(Kind::Skip); }
ProgPtr Program::mk_pred(PredPtr t) {
  auto p = prog(Kind::Pred);
  p->pred = std::move(t);
  return p;
}
ProgPtr Program::mk_obs(ObsPtr o) {
  auto p = prog(Kind::Obs);
  p->obs = std::move(o);
  return p;
}
ProgPtr Program::field_mod(int field, int value) {
  auto p = prog(Kind::FieldMod);
  p->field = field;
  p->value = value;
  return p;
}
ProgPtr Program::state_mod(const StateAction& e) {
  auto p = prog(Kind::StateMod);
  p->action = e;
  return p;
}
ProgPtr Program::mk_dup() { return prog(Kind::Dup); }
ProgPtr Program::packet_lit(const PacketSet& a) {
  auto p = prog(Kind::PacketLit);
  p->packets = a;
  return p;
}
ProgPtr Program::plus(ProgPtr a, ProgPtr b) {
  auto p = prog(Kind::Plus);
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}
ProgPtr Program::seq(ProgPtr a, ProgPtr b) {
  auto p = prog(Kind::Seq);
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}
ProgPtr Program::par(ProgPtr a, ProgPtr b) {
  auto p = prog(Kind::Par);
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}
ProgPtr Program::star(ProgPtr a) {
  auto p = prog(Kind::Star);
  p->lhs = std::move(a);
  return p;
}

ProgPtr Program::sum(const std::vector<ProgPtr>& terms) {
  if (terms.empty()) return mk_abort();
  ProgPtr acc = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) acc = plus(acc, terms[i]);
  return acc;
}

ProgPtr Program::seq_all(const std::vector<ProgPtr>& terms) {
  if (terms.empty()) return mk_skip();
  ProgPtr acc = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) acc = seq(acc, terms[i]);
  return acc;
}

bool pred_equal(const PredPtr& a, const PredPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Predicate::Kind::False:
    case Predicate::Kind::True:
      return true;
    case Predicate::Kind::Test:
      return a->field == b->field && a->value == b->value;
    case Predicate::Kind::Not:
      return pred_equal(a->lhs, b->lhs);
    default:
      return pred_equal(a->lhs, b->lhs) && pred_equal(a->rhs, b->rhs);
  }
}

bool obs_equal(const ObsPtr& a, const ObsPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Observation::Kind::Bot:
    case Observation::Kind::Top:
      return true;
    case Observation::Kind::Test:
      return a->var == b->var && a->value == b->value;
    case Observation::Kind::Complement:
      return obs_equal(a->lhs, b->lhs);
    default:
      return obs_equal(a->lhs, b->lhs) && obs_equal(a->rhs, b->rhs);
  }
}

bool prog_equal(const ProgPtr& a, const ProgPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Program::Kind::Abort:
    case Program::Kind::Skip:
    case Program::Kind::Dup:
      return true;
    case Program::Kind::Pred:
      return pred_equal(a->pred, b->pred);
    case Program::Kind::Obs:
      return obs_equal(a->obs, b->obs);
    case Program::Kind::FieldMod:
      return a->field == b->field && a->value == b->value;
    case Program::Kind::StateMod:
      return a->action == b->action;
    case Program::Kind::PacketLit:
      return a->packets == b->packets;
    case Program::Kind::Star:
      return prog_equal(a->lhs, b->lhs);
    default:
      return prog_equal(a->lhs, b->lhs) && prog_equal(a->rhs, b->rhs);
  }
}

bool is_packet_program(const ProgPtr& p) {
  switch (p->kind) {
    case Program::Kind::Pred:
    case Program::Kind::FieldMod:
      return true;
    case Program::Kind::Plus:
    case Program::Kind::Seq:
    case Program::Kind::Par:
      return is_packet_program(p->lhs) && is_packet_program(p->rhs);
    case Program::Kind::Star:
      return is_packet_program(p->lhs);
    default:
      return false;
  }
}

bool is_det_packet_program(const ProgPtr& p) {
  switch (p->kind) {
    case Program::Kind::Pred:
    case Program::Kind::FieldMod:
      return true;
    case Program::Kind::Seq:
    case Program::Kind::Par:
      return is_det_packet_program(p->lhs) && is_det_packet_program(p->rhs);
    default:
      return false;
  }
}

bool is_state_program(const ProgPtr& p, const StateAlphabet& sigma) {
  switch (p->kind) {
    case Program::Kind::Abort:
    case Program::Kind::Skip:
      return true;
    case Program::Kind::Obs:
      return sigma.obs;
    case Program::Kind::StateMod:
      return sigma.act;
    case Program::Kind::PacketLit:
      return sigma.packet_letters;
    case Program::Kind::Dup:
      return sigma.dup;
    case Program::Kind::Plus:
    case Program::Kind::Seq:
    case Program::Kind::Par:
      return is_state_program(p->lhs, sigma) && is_state_program(p->rhs, sigma);
    case Program::Kind::Star:
      return is_state_program(p->lhs, sigma);
    default:
      return false;
  }
}

bool is_netkat_program(const ProgPtr& p) {
  switch (p->kind) {
    case Program::Kind::Pred:
    case Program::Kind::FieldMod:
      return true;
    case Program::Kind::Plus:
    case Program::Kind::Seq:
      return is_netkat_program(p->lhs) && is_netkat_program(p->rhs);
    case Program::Kind::Star:
      return is_netkat_program(p->lhs);
    default:
      return false;
  }
}

bool contains_dup(const ProgPtr& p) {
  switch (p->kind) {
    case Program::Kind::Dup:
      return true;
    case Program::Kind::Plus:
    case Program::Kind::Seq:
    case Program::Kind::Par:
      return contains_dup(p->lhs) || contains_dup(p->rhs);
    case Program::Kind::Star:
      return contains_dup(p->lhs);
    default:
      return false;
  }
}

ProgramClass classify(const ProgPtr& p) {
  ProgramClass c;
  c.is_packet_program = is_packet_program(p);
  c.is_state_program = is_state_program(p);
  c.is_det_packet_program = is_det_packet_program(p);
  return c;
}

ProgPtr complete_assignment_program(const Universe& u, const Packet& pk) {
  std::vector<ProgPtr> parts;
  for (int f = 0; f < u.field_count(); ++f) {
    parts.push_back(Program::field_mod(f, pk.values[f]));
  }
  return Program::seq_all(parts);
}

ProgPtr complete_test_program(const Universe& u, const Packet& pk) {
  std::vector<ProgPtr> parts;
  for (int f = 0; f < u.field_count(); ++f) {
    parts.push_back(Program::mk_pred(Predicate::test(f, pk.values[f])));
  }
  return Program::seq_all(parts);
}

ProgPtr pi_program(const Universe& u, const PacketSet& a) {
  if (a.empty()) return Program::mk_pred(Predicate::mk_false());
  ProgPtr acc;
  for (const auto& pk : a.packets()) {
    ProgPtr pi = complete_assignment_program(u, pk);
    acc = acc ? Program::par(acc, pi) : pi;
  }
  return acc;
}

}  // namespace cnetkat
