#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

namespace gcode {

using index = std::int32_t;

/// A point of the grid G(m,n). Both coordinates are 1-based.
struct Bigrade {
    index scale = 0;
    index height = 0;

    friend bool operator==(const Bigrade&, const Bigrade&) = default;
};

/// Componentwise partial order on the grid.
inline bool leq(const Bigrade& a, const Bigrade& b) {
    return a.scale <= b.scale && a.height <= b.height;
}

/// (height, scale) lexicographic order; used when sorting relations for output.
inline bool height_scale_less(const Bigrade& a, const Bigrade& b) {
    return std::tie(a.height, a.scale) < std::tie(b.height, b.scale);
}

/// One bar of a slice barcode: the half-open interval [b,d) at height h.
/// A bar with d == m+1 never dies inside the grid; there is no separate
/// infinity sentinel.
struct Bar {
    index b = 0; // birth scale, 1 <= b <= m
    index d = 0; // death scale, b < d <= m+1
    index h = 0; // height, 1 <= h <= n

    friend bool operator==(const Bar&, const Bar&) = default;
};

/// Lexicographic order on (b,d); the order used for bars at a fixed height.
inline bool bar_lex_less(const Bar& x, const Bar& y) {
    return std::tie(x.b, x.d) < std::tie(y.b, y.d);
}

/// Whether the bar j is entangled below the bar i (j receives a nonzero
/// morphism from i): b_j <= b_i < d_j <= d_i. Heights are ignored; callers
/// compare bars of adjacent heights.
inline bool entangled(const Bar& j, const Bar& i) {
    return j.b <= i.b && i.b < j.d && j.d <= i.d;
}

/// Sparse column over GF(2): strictly increasing row indices.
using F2Column = std::vector<index>;

/// Symmetric difference of two sorted columns (addition over GF(2)).
inline F2Column add_columns(const F2Column& a, const F2Column& b) {
    F2Column out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

/// In-place variant of add_columns.
inline void add_columns_into(F2Column& a, const F2Column& b) {
    a = add_columns(a, b);
}

/// The pivot of a column: its maximal row index ("lowest" row when rows are
/// listed top to bottom by increasing index). Empty columns have no pivot.
inline std::optional<index> pivot(const F2Column& a) {
    if (a.empty())
        return std::nullopt;
    return a.back();
}

} // namespace gcode
