#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "core_algebra.hpp"

namespace gcode {

/// Dense GF(2) matrix with 64-bit packed rows; the workhorse of the oracle.
struct F2Matrix {
    index rows = 0;
    index cols = 0;
    std::vector<std::uint64_t> w; // rows * words_per_row

    F2Matrix() = default;
    F2Matrix(index r, index c)
        : rows(r), cols(c), w(static_cast<std::size_t>(r) * words_per_row(c), 0) {}

    static index words_per_row(index c) { return (c + 63) / 64; }
    index wpr() const { return words_per_row(cols); }

    std::uint64_t* row(index r) { return w.data() + static_cast<std::size_t>(r) * wpr(); }
    const std::uint64_t* row(index r) const {
        return w.data() + static_cast<std::size_t>(r) * wpr();
    }

    bool get(index r, index c) const { return (row(r)[c >> 6] >> (c & 63)) & 1u; }
    void set(index r, index c, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (c & 63);
        if (v)
            row(r)[c >> 6] |= mask;
        else
            row(r)[c >> 6] &= ~mask;
    }
    void flip(index r, index c) { row(r)[c >> 6] ^= std::uint64_t{1} << (c & 63); }

    static F2Matrix identity(index nn) {
        F2Matrix e(nn, nn);
        for (index i = 0; i < nn; ++i)
            e.set(i, i, true);
        return e;
    }

    bool is_zero() const {
        for (auto x : w)
            if (x)
                return false;
        return true;
    }

    bool is_identity() const {
        if (rows != cols)
            return false;
        for (index r = 0; r < rows; ++r)
            for (index c = 0; c < cols; ++c)
                if (get(r, c) != (r == c))
                    return false;
        return true;
    }

    void add_row_into(index src, index dst) {
        auto* s = row(src);
        auto* d = row(dst);
        for (index k = 0; k < wpr(); ++k)
            d[k] ^= s[k];
    }

    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;
};

F2Matrix multiply(const F2Matrix& a, const F2Matrix& b);
F2Matrix add(const F2Matrix& a, const F2Matrix& b);
index rank(F2Matrix a); // by value: destructive elimination on a copy
bool invertible(const F2Matrix& a);

/// Solves A x = b for each column b of rhs; A must have full column rank on
/// its column space and the system must be consistent (callers guarantee
/// both). Returns x with one column per rhs column.
F2Matrix solve_in_column_space(const F2Matrix& a, const F2Matrix& rhs);

/// A basis of {x : A x = 0}, one solution per column of the returned matrix.
F2Matrix nullspace(const F2Matrix& a);

} // namespace gcode
