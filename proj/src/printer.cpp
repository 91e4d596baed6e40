#include "cnetkat/printer.hpp"

namespace cnetkat {

namespace {

// Precedence: + (1) < || (2) < ; (3) < * (4) < or,\/ (6) < and,/\ (7)
// < not,~ (8) < atoms (9).

int pred_level(const PredPtr& t) {
  switch (t->kind) {
    case Predicate::Kind::Or: return 6;
    case Predicate::Kind::And: return 7;
    case Predicate::Kind::Not: return 8;
    default: return 9;
  }
}

int obs_level(const ObsPtr& o) {
  switch (o->kind) {
    case Observation::Kind::Or: return 6;
    case Observation::Kind::And: return 7;
    case Observation::Kind::Complement: return 8;
    default: return 9;
  }
}

int prog_level(const ProgPtr& p) {
  switch (p->kind) {
    case Program::Kind::Plus: return 1;
    case Program::Kind::Par: return 2;
    case Program::Kind::Seq: return 3;
    case Program::Kind::Star: return 4;
    case Program::Kind::Pred: return pred_level(p->pred);
    case Program::Kind::Obs: return obs_level(p->obs);
    default: return 9;
  }
}

std::string pred_str(const PredPtr& t, const Universe& u, int min_level);
std::string obs_str(const ObsPtr& o, const Universe& u, int min_level);

std::string pred_str_raw(const PredPtr& t, const Universe& u) {
  switch (t->kind) {
    case Predicate::Kind::False: return "drop";
    case Predicate::Kind::True: return "pass";
    case Predicate::Kind::Test:
      return u.field_name(t->field) + "=" + u.field_values(t->field)[t->value];
    case Predicate::Kind::Or:
      return pred_str(t->lhs, u, 6) + " or " + pred_str(t->rhs, u, 7);
    case Predicate::Kind::And:
      return pred_str(t->lhs, u, 7) + " and " + pred_str(t->rhs, u, 8);
    case Predicate::Kind::Not:
      return "not " + pred_str(t->lhs, u, 8);
  }
  return "?";
}

std::string pred_str(const PredPtr& t, const Universe& u, int min_level) {
  std::string s = pred_str_raw(t, u);
  if (pred_level(t) < min_level) return "(" + s + ")";
  return s;
}

std::string obs_str_raw(const ObsPtr& o, const Universe& u) {
  switch (o->kind) {
    case Observation::Kind::Bot: return "bot";
    case Observation::Kind::Top: return "top";
    case Observation::Kind::Test:
      return u.var_name(o->var) + "=" + u.var_values(o->var)[o->value];
    case Observation::Kind::Or:
      return obs_str(o->lhs, u, 6) + " \\/ " + obs_str(o->rhs, u, 7);
    case Observation::Kind::And:
      return obs_str(o->lhs, u, 7) + " /\\ " + obs_str(o->rhs, u, 8);
    case Observation::Kind::Complement:
      return "~" + obs_str(o->lhs, u, 8);
  }
  return "?";
}

std::string obs_str(const ObsPtr& o, const Universe& u, int min_level) {
  std::string s = obs_str_raw(o, u);
  if (obs_level(o) < min_level) return "(" + s + ")";
  return s;
}

std::string prog_str(const ProgPtr& p, const Universe& u, int min_level);

std::string prog_str_raw(const ProgPtr& p, const Universe& u) {
  switch (p->kind) {
    case Program::Kind::Abort: return "abort";
    case Program::Kind::Skip: return "skip";
    case Program::Kind::Dup: return "dup";
    case Program::Kind::Pred: return pred_str_raw(p->pred, u);
    case Program::Kind::Obs: return obs_str_raw(p->obs, u);
    case Program::Kind::FieldMod:
      return u.field_name(p->field) + "<-" +
             u.field_values(p->field)[p->value];
    case Program::Kind::StateMod:
      return state_action_to_string(u, p->action);
    case Program::Kind::PacketLit:
      return packet_set_to_string(u, p->packets);
    case Program::Kind::Plus:
      return prog_str(p->lhs, u, 1) + " + " + prog_str(p->rhs, u, 2);
    case Program::Kind::Par:
      return prog_str(p->lhs, u, 2) + " || " + prog_str(p->rhs, u, 3);
    case Program::Kind::Seq:
      return prog_str(p->lhs, u, 3) + " ; " + prog_str(p->rhs, u, 4);
    case Program::Kind::Star:
      return prog_str(p->lhs, u, 4) + "*";
  }
  return "?";
}

std::string prog_str(const ProgPtr& p, const Universe& u, int min_level) {
  std::string s = prog_str_raw(p, u);
  if (prog_level(p) < min_level) return "(" + s + ")";
  return s;
}

}  // namespace

std::string print_program(const ProgPtr& p, const Universe& u) {
  return prog_str(p, u, 0);
}

std::string print_predicate(const PredPtr& t, const Universe& u) {
  return pred_str(t, u, 0);
}

std::string print_observation(const ObsPtr& o, const Universe& u) {
  return obs_str(o, u, 0);
}

std::string print_universe(const Universe& u) {
  std::string s;
  if (u.field_count() > 0) {
    s += "fields ";
    for (int f = 0; f < u.field_count(); ++f) {
      if (f) s += ", ";
      s += u.field_name(f);
    }
    s += ";\n";
  }
  if (u.var_count() > 0) {
    s += "vars ";
    for (int v = 0; v < u.var_count(); ++v) {
      if (v) s += ", ";
      s += u.var_name(v);
    }
    s += ";\n";
  }
  for (int f = 0; f < u.field_count(); ++f) {
    s += "values " + u.field_name(f) + " = {";
    const auto& vals = u.field_values(f);
    for (size_t i = 0; i < vals.size(); ++i) {
      if (i) s += ", ";
      s += vals[i];
    }
    s += "};\n";
  }
  for (int v = 0; v < u.var_count(); ++v) {
    s += "values " + u.var_name(v) + " = {";
    const auto& vals = u.var_values(v);
    for (size_t i = 0; i < vals.size(); ++i) {
      if (i) s += ", ";
      s += vals[i];
    }
    s += "};\n";
  }
  return s;
}

}  // namespace cnetkat
