#ifndef CNETKAT_PARSER_HPP
#define CNETKAT_PARSER_HPP

#include <string>

#include "cnetkat/ast.hpp"
#include "cnetkat/universe.hpp"

namespace cnetkat {

// Reads the declaration header of a program file:
//
//   fields sw, type;
//   vars v;
//   values sw = {1, 2, 3, 4};
//   values type = {heart, spade};
//   values v = {0, 1};
//
// Declarations may appear in any order but every field/var needs a value set.
Universe parse_universe(const std::string& source);

// Parses the program body of `source` against `universe`, skipping any
// declaration header. Whole grammar, with precedence  * > ; > || > +  and
// boolean connectives binding tighter than program operators.
ProgPtr parse(const std::string& source, const Universe& universe);

// Convenience: header and body from one file.
struct ParsedFile {
  Universe universe;
  ProgPtr program;
};
ParsedFile parse_file_text(const std::string& source);

// Packet-set literal, e.g. "{[sw=1,type=heart],[sw=2,type=spade]}" or "{}".
PacketSet parse_packet_set(const std::string& text, const Universe& universe);

}  // namespace cnetkat

#endif
