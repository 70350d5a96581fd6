#pragma once

#include <cstdint>
#include <vector>

#include "graphcode.hpp"
#include "presentation.hpp"

namespace gcode {

enum class BuildMode { compressed, uncompressed };

/// Counters reported by build_graphcode (and surfaced by the CLI).
struct BuildStats {
    index gens = 0;
    index rels = 0;
    index vertices = 0;
    index edges = 0;
    index components = 0;
    std::uint64_t column_additions = 0;
    double wall_ms = 0.0;
};

/// Result of reducing one slice M_(-,h): the barcode plus the reduced
/// relation columns (entries are positions in the slice's row order).
struct SliceReduction {
    std::vector<Bar> bars;
    std::vector<F2Column> reduced_columns;
};

/// Reduces the one-parameter slice at the given height independently of the
/// batch algorithm: generators/relations active at the height are sorted by
/// (scale, index) and the columns are reduced left to right. Bars are the
/// non-trivial pivot pairs plus one never-dying bar per unpaired generator.
SliceReduction reduce_slice(const Presentation& p, index height);

/// Builds the graphcode of the presented module by batch reduction: the
/// columns of the top slice matrix are inserted batch by batch at their final
/// positions, each batch is re-reduced, and the recorded column additions
/// become the edges. In compressed mode, vertices of columns untouched by a
/// batch are suppressed and the identity edges bridge across them; every bar
/// keeps a vertex at its creation height and, while alive, at height n.
Graphcode build_graphcode(const Presentation& p, BuildMode mode,
                          BuildStats* stats = nullptr);

} // namespace gcode
