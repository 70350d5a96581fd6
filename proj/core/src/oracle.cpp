#include "gcode/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "gcode/errors.hpp"

namespace gcode {

index GridModule::total_dim() const {
    return std::accumulate(dims.begin(), dims.end(), index{0});
}

void validate(const GridModule& mod) {
    index m = mod.m, n = mod.n;
    if (static_cast<index>(mod.dims.size()) != m * n ||
        static_cast<index>(mod.horiz.size()) != (m > 0 ? (m - 1) * n : 0) ||
        static_cast<index>(mod.vert.size()) != (n > 0 ? m * (n - 1) : 0))
        throw invariant_error("ShapeMismatch: module container sizes do not match extents");
    for (index y = 1; y <= n; ++y)
        for (index x = 1; x < m; ++x) {
            const F2Matrix& h = mod.horiz[mod.hidx(x, y)];
            if (h.rows != mod.dim_at(x + 1, y) || h.cols != mod.dim_at(x, y))
                throw invariant_error("ShapeMismatch: horizontal map at wrong size");
        }
    for (index y = 1; y < n; ++y)
        for (index x = 1; x <= m; ++x) {
            const F2Matrix& v = mod.vert[mod.vidx(x, y)];
            if (v.rows != mod.dim_at(x, y + 1) || v.cols != mod.dim_at(x, y))
                throw invariant_error("ShapeMismatch: vertical map at wrong size");
        }
    for (index y = 1; y < n; ++y)
        for (index x = 1; x < m; ++x) {
            F2Matrix up_right = multiply(mod.vert[mod.vidx(x + 1, y)], mod.horiz[mod.hidx(x, y)]);
            F2Matrix right_up = multiply(mod.horiz[mod.hidx(x, y + 1)], mod.vert[mod.vidx(x, y)]);
            if (!(up_right == right_up))
                throw invariant_error("CommutativityViolated: unit square at (" +
                                      std::to_string(x) + "," + std::to_string(y) + ")");
        }
}

namespace {

// Chosen basis of coker at one grid point: reduced relation columns indexed
// by pivot generator, and the surviving (non-pivot) generators.
struct PointQuotient {
    std::vector<F2Column> owner_content; // by generator id; empty = no owner
    std::vector<std::uint8_t> owned;
    std::vector<index> qpos;             // generator id -> basis position or -1
    index dim = 0;
};

PointQuotient quotient_at(const Presentation& p, index x, index y) {
    PointQuotient q;
    q.owner_content.resize(p.gen_count());
    q.owned.assign(p.gen_count(), 0);
    q.qpos.assign(p.gen_count(), -1);
    for (index j = 0; j < p.rel_count(); ++j) {
        if (!leq(p.relation_grades[j], Bigrade{x, y}))
            continue;
        F2Column col = p.relations[j];
        while (!col.empty() && q.owned[col.back()])
            add_columns_into(col, q.owner_content[col.back()]);
        if (!col.empty()) {
            q.owned[col.back()] = 1;
            q.owner_content[col.back()] = std::move(col);
        }
    }
    for (index i = 0; i < p.gen_count(); ++i)
        if (leq(p.generators[i], Bigrade{x, y}) && !q.owned[i])
            q.qpos[i] = q.dim++;
    return q;
}

// Writes the class of the generator-set `v` into column `c` of `out`,
// expressed in the quotient basis of `q`.
void project_into(const PointQuotient& q, F2Column v, F2Matrix& out, index c) {
    while (!v.empty()) {
        index g = v.back();
        if (q.owned[g]) {
            add_columns_into(v, q.owner_content[g]);
        } else {
            out.flip(q.qpos[g], c);
            v.pop_back();
        }
    }
}

F2Matrix induced_map(const Presentation& p, const PointQuotient& src,
                     const PointQuotient& dst) {
    F2Matrix map(dst.dim, src.dim);
    for (index g = 0; g < p.gen_count(); ++g)
        if (src.qpos[g] >= 0)
            project_into(dst, F2Column{g}, map, src.qpos[g]);
    return map;
}

} // namespace

GridModule module_from_presentation(const Presentation& p) {
    GridModule mod;
    mod.m = p.m;
    mod.n = p.n;
    std::vector<PointQuotient> pts;
    pts.reserve(static_cast<std::size_t>(p.m) * p.n);
    index total = 0;
    for (index y = 1; y <= p.n; ++y)
        for (index x = 1; x <= p.m; ++x) {
            pts.push_back(quotient_at(p, x, y));
            total += pts.back().dim;
            if (total > kModuleDimBudget)
                throw budget_error("BudgetExceeded: module dimension beyond " +
                                   std::to_string(kModuleDimBudget));
            mod.dims.push_back(pts.back().dim);
        }
    auto at = [&](index x, index y) -> const PointQuotient& {
        return pts[static_cast<std::size_t>(y - 1) * p.m + (x - 1)];
    };
    for (index y = 1; y <= p.n; ++y)
        for (index x = 1; x < p.m; ++x)
            mod.horiz.push_back(induced_map(p, at(x, y), at(x + 1, y)));
    for (index y = 1; y < p.n; ++y)
        for (index x = 1; x <= p.m; ++x)
            mod.vert.push_back(induced_map(p, at(x, y), at(x, y + 1)));
    return mod;
}

GridModule module_from_graphcode(const Graphcode& g) {
    Graphcode s = expand(g);
    GridModule mod;
    mod.m = s.m;
    mod.n = s.n;

    std::vector<std::vector<index>> by_height(s.n + 1);
    for (index v = 0; v < s.vertex_count(); ++v)
        by_height[s.vertices[v].h].push_back(v);
    std::vector<std::vector<index>> outs(s.vertex_count());
    for (auto [u, v] : s.edges)
        outs[u].push_back(v);

    // Basis position of vertex v at scale x, or -1 when the bar is not alive.
    auto positions_at = [&](index x, index y) {
        std::vector<std::pair<index, index>> alive; // (vertex, position)
        index pos = 0;
        for (index v : by_height[y])
            if (s.vertices[v].b <= x && x < s.vertices[v].d)
                alive.emplace_back(v, pos++);
        return alive;
    };

    index total = 0;
    for (index y = 1; y <= s.n; ++y)
        for (index x = 1; x <= s.m; ++x) {
            index d = 0;
            for (index v : by_height[y])
                if (s.vertices[v].b <= x && x < s.vertices[v].d)
                    ++d;
            total += d;
            if (total > kModuleDimBudget)
                throw budget_error("BudgetExceeded: module dimension beyond " +
                                   std::to_string(kModuleDimBudget));
            mod.dims.push_back(d);
        }

    for (index y = 1; y <= s.n; ++y)
        for (index x = 1; x < s.m; ++x) {
            auto src = positions_at(x, y);
            auto dst = positions_at(x + 1, y);
            std::vector<index> dpos(s.vertex_count(), -1);
            for (auto [v, pos] : dst)
                dpos[v] = pos;
            F2Matrix map(mod.dim_at(x + 1, y), mod.dim_at(x, y));
            for (auto [v, pos] : src)
                if (dpos[v] >= 0)
                    map.set(dpos[v], pos, true);
            mod.horiz.push_back(std::move(map));
        }
    for (index y = 1; y < s.n; ++y)
        for (index x = 1; x <= s.m; ++x) {
            auto src = positions_at(x, y);
            auto dst = positions_at(x, y + 1);
            std::vector<index> dpos(s.vertex_count(), -1);
            for (auto [v, pos] : dst)
                dpos[v] = pos;
            F2Matrix map(mod.dim_at(x, y + 1), mod.dim_at(x, y));
            for (auto [v, pos] : src)
                for (index w : outs[v])
                    if (dpos[w] >= 0)
                        map.flip(dpos[w], pos);
            mod.vert.push_back(std::move(map));
        }
    return mod;
}

std::vector<index> dimension_function(const GridModule& mod) {
    return mod.dims;
}

RankInvariant rank_invariant(const GridModule& mod) {
    RankInvariant inv;
    inv.m = mod.m;
    inv.n = mod.n;
    for (index py = 1; py <= mod.n; ++py)
        for (index px = 1; px <= mod.m; ++px) {
            // comp[qx] carries the composite (px,py) -> (qx,qy) for the
            // current qy; advance row by row.
            std::vector<F2Matrix> comp(mod.m + 1);
            for (index qy = py; qy <= mod.n; ++qy) {
                for (index qx = px; qx <= mod.m; ++qx) {
                    if (qy == py)
                        comp[qx] = (qx == px)
                                       ? F2Matrix::identity(mod.dim_at(px, py))
                                       : multiply(mod.horiz[mod.hidx(qx - 1, qy)], comp[qx - 1]);
                    else
                        comp[qx] = multiply(mod.vert[mod.vidx(qx, qy - 1)], comp[qx]);
                    inv.ranks.push_back(rank(comp[qx]));
                }
            }
        }
    return inv;
}

std::vector<HomElement> hom_space(const GridModule& M, const GridModule& N) {
    if (M.m != N.m || M.n != N.n)
        throw invariant_error("ShapeMismatch: hom between modules on different grids");
    index points = M.m * M.n;
    std::vector<index> offset(points + 1, 0);
    for (index p = 0; p < points; ++p)
        offset[p + 1] = offset[p] + N.dims[p] * M.dims[p];
    index unknowns = offset[points];

    index equations = 0;
    for (index y = 1; y <= M.n; ++y)
        for (index x = 1; x < M.m; ++x)
            equations += N.dim_at(x + 1, y) * M.dim_at(x, y);
    for (index y = 1; y < M.n; ++y)
        for (index x = 1; x <= M.m; ++x)
            equations += N.dim_at(x, y + 1) * M.dim_at(x, y);
    if (unknowns > 20000 || equations > 20000)
        throw budget_error("BudgetExceeded: hom system too large");

    F2Matrix sys(equations, unknowns);
    index row = 0;
    auto var = [&](index x, index y, index i, index j) {
        std::size_t p = M.idx(x, y);
        return offset[p] + i * M.dims[p] + j;
    };
    // phi_target * A_M + A_N * phi_source = 0, one equation per entry.
    auto add_square = [&](index sx, index sy, index tx, index ty, const F2Matrix& aM,
                          const F2Matrix& aN) {
        for (index i = 0; i < N.dim_at(tx, ty); ++i)
            for (index j = 0; j < M.dim_at(sx, sy); ++j) {
                for (index k = 0; k < M.dim_at(tx, ty); ++k)
                    if (aM.get(k, j))
                        sys.flip(row, var(tx, ty, i, k));
                for (index l = 0; l < N.dim_at(sx, sy); ++l)
                    if (aN.get(i, l))
                        sys.flip(row, var(sx, sy, l, j));
                ++row;
            }
    };
    for (index y = 1; y <= M.n; ++y)
        for (index x = 1; x < M.m; ++x)
            add_square(x, y, x + 1, y, M.horiz[M.hidx(x, y)], N.horiz[N.hidx(x, y)]);
    for (index y = 1; y < M.n; ++y)
        for (index x = 1; x <= M.m; ++x)
            add_square(x, y, x, y + 1, M.vert[M.vidx(x, y)], N.vert[N.vidx(x, y)]);

    F2Matrix basis = nullspace(sys);
    if (basis.cols > 20)
        throw budget_error("BudgetExceeded: hom space dimension " +
                           std::to_string(basis.cols) + " > 20");
    std::vector<HomElement> out;
    for (index c = 0; c < basis.cols; ++c) {
        HomElement elem;
        for (index y = 1; y <= M.n; ++y)
            for (index x = 1; x <= M.m; ++x) {
                std::size_t p = M.idx(x, y);
                F2Matrix phi(N.dims[p], M.dims[p]);
                for (index i = 0; i < N.dims[p]; ++i)
                    for (index j = 0; j < M.dims[p]; ++j)
                        if (basis.get(offset[p] + i * M.dims[p] + j, c))
                            phi.set(i, j, true);
                elem.push_back(std::move(phi));
            }
        out.push_back(std::move(elem));
    }
    return out;
}

namespace {

void xor_into(HomElement& acc, const HomElement& e) {
    for (std::size_t p = 0; p < acc.size(); ++p)
        for (std::size_t w = 0; w < acc[p].w.size(); ++w)
            acc[p].w[w] ^= e[p].w[w];
}

bool everywhere_invertible(const HomElement& phi) {
    for (const F2Matrix& f : phi)
        if (!invertible(f))
            return false;
    return true;
}

} // namespace

bool are_isomorphic(const GridModule& M, const GridModule& N) {
    if (M.m != N.m || M.n != N.n || M.dims != N.dims)
        return false;
    if (M.total_dim() == 0)
        return true;
    std::vector<HomElement> basis = hom_space(M, N);
    if (basis.empty())
        return false;
    HomElement cur;
    for (index y = 1; y <= M.n; ++y)
        for (index x = 1; x <= M.m; ++x)
            cur.emplace_back(N.dim_at(x, y), M.dim_at(x, y));
    // Gray-code walk over all nonzero combinations: one basis flip per step.
    std::uint32_t count = std::uint32_t{1} << basis.size();
    for (std::uint32_t i = 1; i < count; ++i) {
        std::uint32_t bit = 0;
        while (!((i >> bit) & 1u))
            ++bit;
        xor_into(cur, basis[bit]);
        if (everywhere_invertible(cur))
            return true;
    }
    return false;
}

namespace {

bool is_idempotent(const HomElement& e) {
    for (const F2Matrix& f : e)
        if (!(multiply(f, f) == f))
            return false;
    return true;
}

bool is_identity_family(const HomElement& e) {
    for (const F2Matrix& f : e)
        if (!f.is_identity())
            return false;
    return true;
}

bool is_zero_family(const HomElement& e) {
    for (const F2Matrix& f : e)
        if (!f.is_zero())
            return false;
    return true;
}

// Column-space basis of e at one point, as explicit coordinate columns.
F2Matrix image_basis(const F2Matrix& e) {
    std::vector<F2Column> cols;
    std::vector<index> owner(e.rows, -1);
    for (index c = 0; c < e.cols; ++c) {
        F2Column col;
        for (index r = 0; r < e.rows; ++r)
            if (e.get(r, c))
                col.push_back(r);
        while (!col.empty() && owner[col.back()] != -1)
            add_columns_into(col, cols[owner[col.back()]]);
        if (!col.empty()) {
            owner[col.back()] = static_cast<index>(cols.size());
            cols.push_back(std::move(col));
        }
    }
    F2Matrix basis(e.rows, static_cast<index>(cols.size()));
    for (index c = 0; c < basis.cols; ++c)
        for (index r : cols[c])
            basis.set(r, c, true);
    return basis;
}

GridModule restrict_to_image(const GridModule& M, const HomElement& e) {
    GridModule sub;
    sub.m = M.m;
    sub.n = M.n;
    std::vector<F2Matrix> bases;
    for (std::size_t p = 0; p < e.size(); ++p) {
        bases.push_back(image_basis(e[p]));
        sub.dims.push_back(bases.back().cols);
    }
    auto restricted = [&](const F2Matrix& arrow, std::size_t src, std::size_t dst) {
        return solve_in_column_space(bases[dst], multiply(arrow, bases[src]));
    };
    for (index y = 1; y <= M.n; ++y)
        for (index x = 1; x < M.m; ++x)
            sub.horiz.push_back(
                restricted(M.horiz[M.hidx(x, y)], M.idx(x, y), M.idx(x + 1, y)));
    for (index y = 1; y < M.n; ++y)
        for (index x = 1; x <= M.m; ++x)
            sub.vert.push_back(
                restricted(M.vert[M.vidx(x, y)], M.idx(x, y), M.idx(x, y + 1)));
    return sub;
}

bool support_is_convex_connected(const GridModule& M) {
    auto in_support = [&](index x, index y) { return M.dim_at(x, y) > 0; };
    std::vector<std::pair<index, index>> supp;
    for (index y = 1; y <= M.n; ++y)
        for (index x = 1; x <= M.m; ++x)
            if (in_support(x, y))
                supp.emplace_back(x, y);
    if (supp.empty())
        return false;
    // Convexity: p <= q <= r with p,r in support forces q in support.
    for (auto [px, py] : supp)
        for (auto [rx, ry] : supp) {
            if (px > rx || py > ry)
                continue;
            for (index qy = py; qy <= ry; ++qy)
                for (index qx = px; qx <= rx; ++qx)
                    if (!in_support(qx, qy))
                        return false;
        }
    // Connectivity by grid adjacency within the support.
    std::vector<std::pair<index, index>> stack{supp.front()};
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(M.m) * M.n, 0);
    seen[M.idx(supp.front().first, supp.front().second)] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        const index dx[4] = {1, -1, 0, 0};
        const index dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            index nx = x + dx[k], ny = y + dy[k];
            if (nx < 1 || nx > M.m || ny < 1 || ny > M.n)
                continue;
            if (!in_support(nx, ny) || seen[M.idx(nx, ny)])
                continue;
            seen[M.idx(nx, ny)] = 1;
            ++visited;
            stack.emplace_back(nx, ny);
        }
    }
    return visited == supp.size();
}

bool is_thin(const GridModule& M) {
    return std::all_of(M.dims.begin(), M.dims.end(), [](index d) { return d <= 1; });
}

} // namespace

bool is_interval_decomposable_bruteforce(const GridModule& M) {
    if (M.total_dim() > 10)
        throw budget_error("BudgetExceeded: brute-force decomposition beyond dimension 10");
    if (M.total_dim() == 0)
        return true;
    std::vector<HomElement> basis = hom_space(M, M);
    if (static_cast<index>(basis.size()) > 16)
        throw budget_error("BudgetExceeded: endomorphism space dimension " +
                           std::to_string(basis.size()) + " > 16");
    HomElement cur;
    for (index y = 1; y <= M.n; ++y)
        for (index x = 1; x <= M.m; ++x)
            cur.emplace_back(M.dim_at(x, y), M.dim_at(x, y));
    std::uint32_t count = std::uint32_t{1} << basis.size();
    for (std::uint32_t i = 1; i < count; ++i) {
        std::uint32_t bit = 0;
        while (!((i >> bit) & 1u))
            ++bit;
        xor_into(cur, basis[bit]);
        if (!is_idempotent(cur) || is_zero_family(cur) || is_identity_family(cur))
            continue;
        HomElement complement = cur; // 1 - e over F2 is id + e
        for (std::size_t p = 0; p < complement.size(); ++p)
            for (index d = 0; d < complement[p].rows; ++d)
                complement[p].flip(d, d);
        return is_interval_decomposable_bruteforce(restrict_to_image(M, cur)) &&
               is_interval_decomposable_bruteforce(restrict_to_image(M, complement));
    }
    return is_thin(M) && support_is_convex_connected(M);
}

} // namespace gcode
