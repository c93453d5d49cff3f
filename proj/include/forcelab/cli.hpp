#pragma once

// Command-line front end. `run` parses argv-style arguments, dispatches to
// the subcommand, and writes a report: exit 0 on success, 1 when a domain
// precondition fails, 2 on usage errors.
//
// Subcommands: parse, eval, complete, ultra, quotient, force, cohen,
// selfcheck. Reports come in two formats: `text` renders `key: value` lines,
// `records` renders machine-parseable `key<TAB>value` lines.

#include <iosfwd>
#include <string>
#include <vector>

namespace forcelab::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace forcelab::cli
