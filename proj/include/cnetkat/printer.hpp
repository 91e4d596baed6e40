#ifndef CNETKAT_PRINTER_HPP
#define CNETKAT_PRINTER_HPP

#include <string>

#include "cnetkat/ast.hpp"
#include "cnetkat/universe.hpp"

namespace cnetkat {

// Concrete-syntax rendering with minimal parentheses; parse(print(p)) is
// AST-equal to p.
std::string print_program(const ProgPtr& p, const Universe& u);
std::string print_predicate(const PredPtr& t, const Universe& u);
std::string print_observation(const ObsPtr& o, const Universe& u);

// Header declarations for a universe, in the program-file syntax.
std::string print_universe(const Universe& u);

}  // namespace cnetkat

#endif
