#pragma once

#include "graphcode.hpp"
#include "presentation.hpp"

namespace gcode {

/// Reads a presentation off a generalized graphcode: one generator g_I at
/// (b,h) per vertex I = (b,d,h); a death relation {g_I} at (d,h) whenever
/// d <= m; and, for every vertex below the top height, a propagation relation
/// {g_I, g_1, ..., g_s} at (b,h') where g_1..g_s are the out-neighbours and
/// h' is their common height (h+1 when the vertex has no out-edges).
/// Relations are sorted by (height, scale), ties kept in construction order.
Presentation presentation_from_graphcode(const Graphcode& g);

/// Repeatedly cancels generator/relation pairs at equal bigrade joined by a
/// nonzero entry, then drops zero columns and duplicate columns at identical
/// grades. Presents an isomorphic module; never grows either count.
Presentation minimize(const Presentation& p);

/// Whether rebuilding from presentation_from_graphcode(g) reproduces g
/// (uncompressed build, label isomorphism). Requires distinct bars per
/// height in g.
bool roundtrip_check(const Graphcode& g);

} // namespace gcode
