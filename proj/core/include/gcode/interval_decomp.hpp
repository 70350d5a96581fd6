#pragma once

#include <cstdint>
#include <vector>

#include "graphcode.hpp"

namespace gcode {

/// Dense GF(2) matrix used for the slice-to-slice morphisms; small by design.
struct EtaMatrix {
    index rows = 0;
    index cols = 0;
    std::vector<std::uint8_t> a; // row-major

    EtaMatrix() = default;
    EtaMatrix(index r, index c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    std::uint8_t& at(index r, index c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    std::uint8_t at(index r, index c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    friend bool operator==(const EtaMatrix&, const EtaMatrix&) = default;
};

/// A persistence module in slicewise form: the barcode of every slice plus
/// the matrices eta^i of the morphisms M_(-,i) -> M_(-,i+1) expressed in the
/// barcode bases. Invariants:
///   - bars_at(i) is strictly (b,d)-lexicographically sorted (hence distinct);
///   - eta(i) has one row per bar at height i+1 and one column per bar at
///     height i;
///   - support constraint: a nonzero entry (r,c) requires the row's bar to be
///     entangled below the column's bar.
struct EtaSequence {
    index m = 0;
    index n = 0;
    std::vector<std::vector<Bar>> bars; // bars[h-1] = barcode at height h
    std::vector<EtaMatrix> eta;         // eta[i-1] = matrix of M_(-,i) -> M_(-,i+1)

    std::vector<Bar>& bars_at(index h) { return bars[h - 1]; }
    const std::vector<Bar>& bars_at(index h) const { return bars[h - 1]; }
    EtaMatrix& eta_at(index i) { return eta[i - 1]; }
    const EtaMatrix& eta_at(index i) const { return eta[i - 1]; }
};

/// Checks the EtaSequence invariants; throws invariant_error. Duplicate bars
/// at one height throw precondition_error ("DuplicateBars").
void validate(const EtaSequence& s);

/// Expands g to strict form and reads off bars and matrices. Throws
/// precondition_error when some height holds duplicate bars.
EtaSequence eta_from_graphcode(const Graphcode& g);

/// Column operation on eta(i): col_l += col_k, then entries (r,l) whose row
/// bar is not entangled below column l's bar are truncated to zero.
/// Requires k < l and entangled(bar_k, bar_l); throws precondition_error.
void apply_column_add(EtaSequence& s, index i, index k, index l,
                      std::uint64_t* counter = nullptr);

/// Row operation on eta(i): row_p += row_q (with truncation), together with
/// the companion column operation col_q += col_p on eta(i+1) when that matrix
/// exists. Requires p < q and entangled(bar_p, bar_q) at height i+1.
void apply_row_add(EtaSequence& s, index i, index q, index p,
                   std::uint64_t* counter = nullptr);

/// Which column additions on eta(i) extend to isomorphisms of the part of the
/// module below height i. Symmetric data is not stored: valid(k,l) is only
/// meaningful for k < l.
struct ValidOpTable {
    index size = 0;
    std::vector<std::uint8_t> v;

    ValidOpTable() = default;
    explicit ValidOpTable(index s) : size(s), v(static_cast<std::size_t>(s) * s, 0) {}
    std::uint8_t& at(index k, index l) { return v[static_cast<std::size_t>(k) * size + l]; }
    bool operator()(index k, index l) const {
        return v[static_cast<std::size_t>(k) * size + l] != 0;
    }
};

/// Computes the table for height i. For i == 1 a column addition is valid iff
/// the bars are entangled. For i > 1 it additionally requires, with row(x)
/// the row of bar x in the (already normalized) eta(i-1): row(l) is zero; or
/// row(l) has its unique entry at a column whose bar is disjoint from bar_k;
/// or both rows have unique entries at columns s,t with prev->at(s,t) valid.
ValidOpTable update_valid_ops(const EtaSequence& s, index i,
                              const ValidOpTable* prev);

/// Whether every matrix has at most one nonzero entry per row and per column.
bool normal_form_check(const EtaSequence& s);

/// One slice of a staircase interval.
struct StaircaseSlice {
    index h = 0;
    index b = 0;
    index d = 0;

    friend bool operator==(const StaircaseSlice&, const StaircaseSlice&) = default;
    friend auto operator<=>(const StaircaseSlice&, const StaircaseSlice&) = default;
};

/// An interval summand: one bar per consecutive height, each slice entangled
/// below its predecessor.
struct StaircaseInterval {
    std::vector<StaircaseSlice> slices;

    friend bool operator==(const StaircaseInterval&, const StaircaseInterval&) = default;
    friend auto operator<=>(const StaircaseInterval&, const StaircaseInterval&) = default;
};

enum class FailStep { pivot_conflict, row_elimination_failed };

struct DecisionResult {
    bool decomposed = false;
    std::vector<StaircaseInterval> intervals; // when decomposed, sorted
    index fail_height = 0;                    // stage i of the failure
    FailStep fail_step = FailStep::pivot_conflict;
    std::vector<index> fail_bars;             // involved column/row indices at the failure
    std::uint64_t additions = 0;              // column + row + companion operations
};

/// Decides interval-decomposability by bringing every eta(i) into normal form
/// left to right, using only column additions the valid-op table allows and
/// row additions of the pivot row that are entangled. Succeeds iff the module
/// is a direct sum of staircase intervals, which are then read off the normal
/// forms; fails with the stage and step otherwise.
DecisionResult decide_interval_decomposition(const EtaSequence& s);

} // namespace gcode
