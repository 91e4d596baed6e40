#ifndef CNETKAT_AST_HPP
#define CNETKAT_AST_HPP

#include <memory>
#include <string>
#include <vector>

#include "cnetkat/universe.hpp"

namespace cnetkat {

// Packet predicates form a Boolean algebra over field tests.
struct Predicate;
using PredPtr = std::shared_ptr<const Predicate>;

struct Predicate {
  enum class Kind { False, True, Test, Or, And, Not };
  Kind kind;
  int field = 0;
  int value = 0;
  PredPtr lhs, rhs;

  static PredPtr mk_false();
  static PredPtr mk_true();
  static PredPtr test(int field, int value);
  static PredPtr por(PredPtr a, PredPtr b);
  static PredPtr pand(PredPtr a, PredPtr b);
  static PredPtr pnot(PredPtr a);
};

// State observations form a pseudocomplemented distributive lattice over
// variable tests.
struct Observation;
using ObsPtr = std::shared_ptr<const Observation>;

struct Observation {
  enum class Kind { Bot, Top, Test, Or, And, Complement };
  Kind kind;
  int var = 0;
  int value = 0;
  ObsPtr lhs, rhs;

  static ObsPtr mk_bot();
  static ObsPtr mk_top();
  static ObsPtr test(int var, int value);
  static ObsPtr oor(ObsPtr a, ObsPtr b);
  static ObsPtr oand(ObsPtr a, ObsPtr b);
  static ObsPtr complement(ObsPtr a);
};

struct Program;
using ProgPtr = std::shared_ptr<const Program>;

struct Program {
  enum class Kind {
    Abort,
    Skip,
    Pred,       // packet predicate
    Obs,        // state observation
    FieldMod,   // f <- n
    StateMod,   // v <- n  or  v <- v'
    Dup,
    PacketLit,  // packet-set literal
    Plus,
    Seq,
    Par,
    Star
  };
  Kind kind;
  PredPtr pred;
  ObsPtr obs;
  int field = 0;
  int value = 0;
  StateAction action;
  PacketSet packets;
  ProgPtr lhs, rhs;

  static ProgPtr mk_abort();
  static ProgPtr mk_skip();
  static ProgPtr mk_pred(PredPtr t);
  static ProgPtr mk_obs(ObsPtr o);
  static ProgPtr field_mod(int field, int value);
  static ProgPtr state_mod(const StateAction& e);
  static ProgPtr mk_dup();
  static ProgPtr packet_lit(const PacketSet& a);
  static ProgPtr plus(ProgPtr a, ProgPtr b);
  static ProgPtr seq(ProgPtr a, ProgPtr b);
  static ProgPtr par(ProgPtr a, ProgPtr b);
  static ProgPtr star(ProgPtr a);

  static ProgPtr sum(const std::vector<ProgPtr>& terms);  // empty = abort
  static ProgPtr seq_all(const std::vector<ProgPtr>& terms);  // empty = skip
};

// Structural equality of ASTs (used by the round-trip property).
bool prog_equal(const ProgPtr& a, const ProgPtr& b);
bool pred_equal(const PredPtr& a, const PredPtr& b);
bool obs_equal(const ObsPtr& a, const ObsPtr& b);

// Syntactic fragments.
struct ProgramClass {
  bool is_packet_program = false;
  bool is_state_program = false;  // over observations, actions, packet-set
                                  // letters and dup
  bool is_det_packet_program = false;
};

// Alphabet selector for the state-program grammar.
struct StateAlphabet {
  bool obs = true;
  bool act = true;
  bool packet_letters = true;
  bool dup = true;
};

ProgramClass classify(const ProgPtr& p);
bool is_packet_program(const ProgPtr& p);
bool is_det_packet_program(const ProgPtr& p);
bool is_state_program(const ProgPtr& p, const StateAlphabet& sigma = {});
// NetKAT fragment: packet program without parallel composition.
bool is_netkat_program(const ProgPtr& p);
bool contains_dup(const ProgPtr& p);

// Program for a complete assignment (every field written, in field order).
ProgPtr complete_assignment_program(const Universe& u, const Packet& pk);
// Program for a complete test (every field tested, in field order).
ProgPtr complete_test_program(const Universe& u, const Packet& pk);
// Parallel of complete assignments for the packets of a; drop when empty.
ProgPtr pi_program(const Universe& u, const PacketSet& a);

}  // namespace cnetkat

#endif
