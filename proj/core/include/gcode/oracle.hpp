#pragma once

#include <vector>

#include "f2dense.hpp"
#include "graphcode.hpp"
#include "presentation.hpp"

namespace gcode {

/// A two-parameter persistence module given by explicit vector spaces and
/// unit-step matrices; the independent witness the rest of the project is
/// tested against. Grid points are addressed 1-based; maps out of the top
/// row/column do not exist.
struct GridModule {
    index m = 0;
    index n = 0;
    std::vector<index> dims;      // dims[idx(x,y)]
    std::vector<F2Matrix> horiz;  // (x,y) -> (x+1,y), for x < m
    std::vector<F2Matrix> vert;   // (x,y) -> (x,y+1), for y < n

    std::size_t idx(index x, index y) const {
        return static_cast<std::size_t>(y - 1) * m + (x - 1);
    }
    std::size_t hidx(index x, index y) const {
        return static_cast<std::size_t>(y - 1) * (m - 1) + (x - 1);
    }
    std::size_t vidx(index x, index y) const {
        return static_cast<std::size_t>(y - 1) * m + (x - 1);
    }
    index dim_at(index x, index y) const { return dims[idx(x, y)]; }
    index total_dim() const;
};

/// Checks map shapes and commutativity of every unit square; throws
/// invariant_error.
void validate(const GridModule& mod);

/// Total dimension budget for explicit module construction.
inline constexpr index kModuleDimBudget = 4096;

/// Cokernel of the relation matrix, with explicit chosen bases (the
/// non-pivot generators at every grid point). Throws budget_error when the
/// total dimension exceeds kModuleDimBudget.
GridModule module_from_presentation(const Presentation& p);

/// Direct sum of the interval modules a strict graphcode describes, glued by
/// its edges; generalized graphcodes are expanded first. Same budget.
GridModule module_from_graphcode(const Graphcode& g);

std::vector<index> dimension_function(const GridModule& mod);

/// Ranks of all composite maps M(p) -> M(q) over pairs p <= q, in row-major
/// order of (p,q); composites are path-independent by commutativity.
struct RankInvariant {
    index m = 0;
    index n = 0;
    std::vector<index> ranks;

    friend bool operator==(const RankInvariant&, const RankInvariant&) = default;
};
RankInvariant rank_invariant(const GridModule& mod);

/// One homomorphism: a matrix per grid point.
using HomElement = std::vector<F2Matrix>;

/// A basis of Hom(M,N), found by solving the commuting-square equations.
/// Throws budget_error when the linear system or the solution space is too
/// large to enumerate downstream (> 20 basis elements).
std::vector<HomElement> hom_space(const GridModule& M, const GridModule& N);

/// Exhaustively searches Hom(M,N) for an everywhere-invertible element after
/// comparing dimension functions. Throws budget_error via hom_space.
bool are_isomorphic(const GridModule& M, const GridModule& N);

/// Decides interval-decomposability from first principles: enumerates
/// idempotent endomorphisms to split M until every summand is indecomposable,
/// then checks each leaf is thin with convex connected support. Budgets:
/// total dimension <= 10 and dim End <= 16 at every recursion step; throws
/// budget_error beyond either.
bool is_interval_decomposable_bruteforce(const GridModule& M);

} // namespace gcode
