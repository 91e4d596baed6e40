#ifndef CNETKAT_REWRITE_HPP
#define CNETKAT_REWRITE_HPP

#include <string>
#include <vector>

#include "cnetkat/ast.hpp"
#include "cnetkat/semantics.hpp"
#include "cnetkat/universe.hpp"

namespace cnetkat {

// Simplification over complete tests and complete assignments:
//   pi ; alpha_pi -> pi        alpha ; pi_alpha -> alpha
//   pi ; pi'      -> pi'       alpha ; beta     -> drop   (alpha != beta)
//   Pi_a ; Pi_b   -> Pi_b      (a nonempty)
// applied to a fixpoint on sequential chains.
ProgPtr reduce_atoms(const Universe& u, const ProgPtr& p);

struct Summand {
  ProgPtr state_program;
  PacketSet output;
};

// Pi_a ; sum of (state program ; Pi_b) certificates.
struct NormalForm {
  PacketSet input_set;
  std::vector<Summand> summands;

  ProgPtr denote(const Universe& u) const;
  std::string pretty(const Universe& u) const;
};

struct NormalizeBudget {
  size_t q_limit = 256;
  size_t summand_limit = 20000;
};

NormalForm normalize(const Universe& u, const PacketSet& a, const ProgPtr& p,
                     const NormalizeBudget& budget = {});

// Q x Q matrix of state programs over the packet sets reachable from a by
// one-step normalization of the star body.
struct StateMatrix {
  std::vector<PacketSet> q;
  std::vector<std::vector<ProgPtr>> entries;
};

StateMatrix build_matrix(const Universe& u, const PacketSet& a,
                         const ProgPtr& body,
                         const NormalizeBudget& budget = {});

// Kleene star by recursive two-by-two block decomposition; entries stay
// syntactic, with only unit/zero absorption applied.
StateMatrix matrix_star(const StateMatrix& m);

// Sums state programs of summands that share an output set.
NormalForm merge_summands(const NormalForm& nf);

struct NfVerdict {
  bool equivalent = false;
  bool bounded = false;
  std::string detail;
};

// Matches summands by output set and compares the matched state programs as
// closed pomset languages at the configured bounds.
NfVerdict nf_equiv(const Universe& u, const NormalForm& a, const NormalForm& b,
                   const EvalConfig& cfg);

}  // namespace cnetkat

#endif
