#include "gcode/f2dense.hpp"

#include <stdexcept>

namespace gcode {

F2Matrix multiply(const F2Matrix& a, const F2Matrix& b) {
    assert(a.cols == b.rows);
    F2Matrix out(a.rows, b.cols);
    for (index r = 0; r < a.rows; ++r) {
        auto* dst = out.row(r);
        for (index k = 0; k < a.cols; ++k)
            if (a.get(r, k)) {
                const auto* src = b.row(k);
                for (index wd = 0; wd < out.wpr(); ++wd)
                    dst[wd] ^= src[wd];
            }
    }
    return out;
}

F2Matrix add(const F2Matrix& a, const F2Matrix& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    F2Matrix out = a;
    for (std::size_t i = 0; i < out.w.size(); ++i)
        out.w[i] ^= b.w[i];
    return out;
}

index rank(F2Matrix a) {
    index r = 0;
    for (index c = 0; c < a.cols && r < a.rows; ++c) {
        index piv = -1;
        for (index i = r; i < a.rows; ++i)
            if (a.get(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != r)
            for (index k = 0; k < a.wpr(); ++k)
                std::swap(a.row(piv)[k], a.row(r)[k]);
        for (index i = r + 1; i < a.rows; ++i)
            if (a.get(i, c))
                a.add_row_into(r, i);
        ++r;
    }
    return r;
}

bool invertible(const F2Matrix& a) {
    return a.rows == a.cols && rank(a) == a.rows;
}

F2Matrix solve_in_column_space(const F2Matrix& a, const F2Matrix& rhs) {
    assert(a.rows == rhs.rows);
    // Gaussian elimination on [A | rhs], then back-substitution.
    F2Matrix work(a.rows, a.cols + rhs.cols);
    for (index r = 0; r < a.rows; ++r) {
        for (index c = 0; c < a.cols; ++c)
            if (a.get(r, c))
                work.set(r, c, true);
        for (index c = 0; c < rhs.cols; ++c)
            if (rhs.get(r, c))
                work.set(r, a.cols + c, true);
    }
    std::vector<index> pivot_col;
    index r = 0;
    for (index c = 0; c < a.cols && r < work.rows; ++c) {
        index piv = -1;
        for (index i = r; i < work.rows; ++i)
            if (work.get(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != r)
            for (index k = 0; k < work.wpr(); ++k)
                std::swap(work.row(piv)[k], work.row(r)[k]);
        for (index i = 0; i < work.rows; ++i)
            if (i != r && work.get(i, c))
                work.add_row_into(r, i);
        pivot_col.push_back(c);
        ++r;
    }
    for (index i = r; i < work.rows; ++i)
        for (index c = 0; c < rhs.cols; ++c)
            if (work.get(i, a.cols + c))
                throw std::logic_error("solve_in_column_space: inconsistent system");
    F2Matrix x(a.cols, rhs.cols);
    for (index i = 0; i < static_cast<index>(pivot_col.size()); ++i)
        for (index c = 0; c < rhs.cols; ++c)
            if (work.get(i, a.cols + c))
                x.set(pivot_col[i], c, true);
    return x;
}

F2Matrix nullspace(const F2Matrix& a) {
    F2Matrix work = a;
    std::vector<index> pivot_of_col(a.cols, -1);
    index r = 0;
    for (index c = 0; c < a.cols && r < work.rows; ++c) {
        index piv = -1;
        for (index i = r; i < work.rows; ++i)
            if (work.get(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != r)
            for (index k = 0; k < work.wpr(); ++k)
                std::swap(work.row(piv)[k], work.row(r)[k]);
        for (index i = 0; i < work.rows; ++i)
            if (i != r && work.get(i, c))
                work.add_row_into(r, i);
        pivot_of_col[c] = r;
        ++r;
    }
    std::vector<index> free_cols;
    for (index c = 0; c < a.cols; ++c)
        if (pivot_of_col[c] < 0)
            free_cols.push_back(c);
    F2Matrix basis(a.cols, static_cast<index>(free_cols.size()));
    for (index k = 0; k < static_cast<index>(free_cols.size()); ++k) {
        index f = free_cols[k];
        basis.set(f, k, true);
        for (index c = 0; c < f; ++c)
            if (pivot_of_col[c] >= 0 && work.get(pivot_of_col[c], f))
                basis.set(c, k, true);
    }
    return basis;
}

} // namespace gcode
