#pragma once

#include <span>
#include <vector>

#include "core_algebra.hpp"

namespace gcode {

/// A bigraded presentation of a two-parameter persistence module over GF(2).
/// Rows are generators, columns are relations; the presented module is the
/// cokernel of the relation matrix. Every relation entry must sit at a
/// generator whose bigrade is componentwise <= the relation's bigrade
/// (homogeneity). The grid extents m,n are carried explicitly: files infer
/// them from the maximal coordinates, but programmatic constructions (for
/// instance from a graphcode) may have empty top slices.
struct Presentation {
    index m = 0;
    index n = 0;
    std::vector<Bigrade> generators;       // row bigrades, in file order
    std::vector<Bigrade> relation_grades;  // column bigrades, in file order
    std::vector<F2Column> relations;       // column entries: 0-based generator indices

    index gen_count() const { return static_cast<index>(generators.size()); }
    index rel_count() const { return static_cast<index>(relations.size()); }

    friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Checks the Presentation invariants: coordinates within 1..m x 1..n,
/// entry indices valid and strictly increasing, homogeneous columns.
/// Throws invariant_error on violation.
void validate(const Presentation& p);

/// Infers extents from the maximal occurring coordinates ((0,0) when empty)
/// and writes them into p.
void infer_extents(Presentation& p);

/// Direct sum of presentations on a common grid: generators and relations are
/// concatenated, entry indices of later summands are offset.
Presentation block_diagonal(std::span<const Presentation> parts);

} // namespace gcode
