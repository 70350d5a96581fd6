#pragma once

#include <iosfwd>
#include <string>

#include "graphcode.hpp"
#include "presentation.hpp"

namespace gcode {

// Presentation files use an scc2020 dialect with two index blocks:
//
//   scc2020
//   2
//   <relations> <generators>
//   <scale> <height> ; <gen indices...>     (one line per relation)
//   <scale> <height> ;                      (one line per generator)
//
// Graphcode files:
//
//   graphcode
//   <m> <n>
//   <V>
//   <b> <d> <h>                             (one line per vertex)
//   <E>
//   <u> <v>                                 (one line per edge, 0-based)
//
// '#' starts a comment in both formats; blank lines and CRLF are tolerated.
// Writers emit a canonical LF-only form, so write . parse . write is stable.

Presentation parse_presentation(std::istream& in, const std::string& source = "<input>");
void write_presentation(const Presentation& p, std::ostream& out);

Graphcode parse_graphcode(std::istream& in, const std::string& source = "<input>");
void write_graphcode(const Graphcode& g, std::ostream& out);

// File-path convenience wrappers; parse errors name the file.
Presentation load_presentation(const std::string& path);
void save_presentation(const Presentation& p, const std::string& path);
Graphcode load_graphcode(const std::string& path);
void save_graphcode(const Graphcode& g, const std::string& path);

/// Peeks at the first meaningful line to distinguish the two formats.
/// Returns "scc2020", "graphcode", or "" when neither header matches.
std::string sniff_format(std::istream& in);

} // namespace gcode
