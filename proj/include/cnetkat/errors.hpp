#ifndef CNETKAT_ERRORS_HPP
#define CNETKAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cnetkat {

// Lexical or syntactic problem in a program file. Carries a source position.
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

// A configured budget (node count, closure population, Q size) was exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition or domain violation: undeclared identifiers, values out of
// range, operations applied outside their stated fragment.
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cnetkat

#endif
