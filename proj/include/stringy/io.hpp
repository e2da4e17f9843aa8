#pragma once

#include "stringy/identities.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace stringy {

enum class PolytopeFormat { matrix, palp };

// matrix: "d n" header then n rows of d integers (vertices as rows).
// palp:   "r c [comment]" then an r×c integer matrix; vertices are columns
//         when r ≤ c, rows otherwise; square matrices read as rows (warning).
Polytope parse_polytope(const std::string& text, PolytopeFormat format, std::ostream* warnings = nullptr);

std::string emit_polytope(const Polytope& p, PolytopeFormat format);

// Fan file:
//   rays <n> <d>      followed by n rows of d integers
//   cones <k>         followed by k lines of ray indices (0-based)
//   divisor <name> <n rationals>     (optional, repeatable; "K" reserved)
struct ParsedFan {
  Fan fan;
  std::map<std::string, TorusDivisor> divisors;
};
ParsedFan parse_fan(const std::string& text, std::ostream* warnings = nullptr);

bool looks_like_fan_file(const std::string& text);

// CLI entry point; writes reports to `out`, diagnostics to `err`.
// Exit codes: 0 all checks pass, 1 identity failure, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stringy
