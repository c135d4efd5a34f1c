#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "lexenum/model.hpp"

namespace lexenum {

// Raised on malformed instance text. line is 1-based; 0 means the problem is
// not tied to a single line (for example a missing directive).
struct ParseError : std::runtime_error {
    ParseError(int line_, const std::string& what_)
        : std::runtime_error(what_), line(line_) {}
    int line;
};

// Read the line-oriented instance format:
//
//   # comment to end of line
//   csp NAME
//   vars N
//   dom I MIN MAX
//   ext K I1..IK ; T11..T1K ; T21..T2K ; ...
//   neq I J
//   alldiff I1..IK          (expands to all pairwise neq constraints)
//   sym IMG1..IMGN
//   lex K L1..LK <= R1..RK
//   order I1..IN
//
// Indices are 1-based in the text and 0-based in the returned Csp. `vars`
// must appear exactly once before any variable-referencing line. The parsed
// instance is run through validate_csp; violations raise ParseError too.
Csp parse_instance(std::istream& in);
Csp parse_instance_file(const std::string& path);

// Canonical text for an instance; parse_instance(print_instance(c)) yields
// a Csp equal to c. Throws std::invalid_argument on constraints the format
// cannot express (unary value lists).
std::string print_instance(const Csp& csp);

} // namespace lexenum
