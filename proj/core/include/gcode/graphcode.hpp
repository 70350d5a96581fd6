#pragma once

#include <utility>
#include <vector>

#include "core_algebra.hpp"

namespace gcode {

/// A graphcode on the grid G(m,n): a directed graph whose vertices carry bar
/// labels. Invariants (the generalized form):
///   - every label satisfies 1 <= b <= m, b < d <= m+1, 1 <= h <= n;
///   - every edge (u,v) goes strictly upward: h(v) > h(u);
///   - every edge is entangled: bar(v) is entangled below bar(u);
///   - all out-neighbours of a vertex sit at one common height.
/// The strict form additionally has every edge span exactly one height.
struct Graphcode {
    index m = 0;
    index n = 0;
    std::vector<Bar> vertices;                    // labels, in file order
    std::vector<std::pair<index, index>> edges;   // directed (u,v), sorted, unique

    index vertex_count() const { return static_cast<index>(vertices.size()); }
    index edge_count() const { return static_cast<index>(edges.size()); }

    friend bool operator==(const Graphcode&, const Graphcode&) = default;
};

/// Checks the generalized graphcode invariants; throws invariant_error.
void validate(const Graphcode& g);

/// Whether every edge spans exactly one height.
bool is_strict(const Graphcode& g);

/// Removes superfluous vertices until none remain. A vertex w is superfluous
/// if it has exactly one incoming edge (v,w), v and w carry the same (b,d),
/// w has at least one outgoing edge and v has no outgoing edge besides (v,w);
/// removing w rewires v to w's out-neighbours. The result is independent of
/// removal order; this runs in linear time in |V|+|E|.
Graphcode compress(const Graphcode& g);

/// Inverse of compression: every edge spanning k > 1 heights is replaced by a
/// chain of k-1 fresh vertices carrying the source's (b,d). The result is a
/// strict graphcode.
Graphcode expand(const Graphcode& g);

/// Weakly connected components, ordered by smallest vertex index; each part
/// keeps the parent extents and the relative vertex order.
std::vector<Graphcode> connected_components(const Graphcode& g);

/// Whether every vertex has in-degree <= 1 and out-degree <= 1 (a disjoint
/// union of directed paths; cycles cannot occur since edges increase height).
bool is_disjoint_path_union(const Graphcode& g);

/// Equality up to vertex relabeling. Requires distinct bars per height in
/// both arguments (the canonical bijection is then forced); throws
/// precondition_error otherwise.
bool label_isomorphic(const Graphcode& a, const Graphcode& b);

} // namespace gcode
