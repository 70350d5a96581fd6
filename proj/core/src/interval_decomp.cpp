#include "gcode/interval_decomp.hpp"

#include <algorithm>
#include <string>

#include "gcode/errors.hpp"

namespace gcode {

void validate(const EtaSequence& s) {
    if (static_cast<index>(s.bars.size()) != s.n)
        throw invariant_error("ShapeMismatch: bar lists do not match the height count");
    if (static_cast<index>(s.eta.size()) != (s.n > 0 ? s.n - 1 : 0))
        throw invariant_error("ShapeMismatch: matrix count does not match the height count");
    for (index h = 1; h <= s.n; ++h) {
        const auto& bars = s.bars_at(h);
        for (std::size_t c = 0; c < bars.size(); ++c) {
            const Bar& bar = bars[c];
            if (bar.b < 1 || bar.b > s.m || bar.d <= bar.b || bar.d > s.m + 1 || bar.h != h)
                throw invariant_error("BarOutOfRange: bar at height " + std::to_string(h));
            if (c > 0) {
                if (bars[c - 1] == bar)
                    throw precondition_error("DuplicateBars: height " + std::to_string(h));
                if (!bar_lex_less(bars[c - 1], bar))
                    throw invariant_error("BarsUnsorted: height " + std::to_string(h));
            }
        }
    }
    for (index i = 1; i < s.n; ++i) {
        const EtaMatrix& e = s.eta_at(i);
        if (e.rows != static_cast<index>(s.bars_at(i + 1).size()) ||
            e.cols != static_cast<index>(s.bars_at(i).size()))
            throw invariant_error("ShapeMismatch: matrix " + std::to_string(i));
        for (index r = 0; r < e.rows; ++r)
            for (index c = 0; c < e.cols; ++c) {
                if (e.at(r, c) > 1)
                    throw invariant_error("BadEntry: matrix " + std::to_string(i));
                if (e.at(r, c) && !entangled(s.bars_at(i + 1)[r], s.bars_at(i)[c]))
                    throw invariant_error("SupportViolated: matrix " + std::to_string(i) +
                                          " entry (" + std::to_string(r) + "," +
                                          std::to_string(c) + ")");
            }
    }
}

EtaSequence eta_from_graphcode(const Graphcode& g) {
    validate(g);
    Graphcode strict = expand(g);
    EtaSequence s;
    s.m = strict.m;
    s.n = strict.n;
    s.bars.assign(s.n, {});
    // Bars sorted lex per height; remember where each vertex lands.
    std::vector<std::vector<index>> verts(s.n + 1);
    for (index v = 0; v < strict.vertex_count(); ++v)
        verts[strict.vertices[v].h].push_back(v);
    std::vector<index> pos(strict.vertex_count(), -1);
    for (index h = 1; h <= s.n; ++h) {
        std::sort(verts[h].begin(), verts[h].end(), [&](index a, index b) {
            return bar_lex_less(strict.vertices[a], strict.vertices[b]);
        });
        for (std::size_t c = 0; c < verts[h].size(); ++c) {
            const Bar& bar = strict.vertices[verts[h][c]];
            if (c > 0 && s.bars_at(h)[c - 1] == bar)
                throw precondition_error("DuplicateBars: height " + std::to_string(h));
            pos[verts[h][c]] = static_cast<index>(c);
            s.bars_at(h).push_back(bar);
        }
    }
    for (index i = 1; i < s.n; ++i)
        s.eta.emplace_back(static_cast<index>(s.bars_at(i + 1).size()),
                           static_cast<index>(s.bars_at(i).size()));
    for (auto [u, v] : strict.edges)
        s.eta_at(strict.vertices[u].h).at(pos[v], pos[u]) = 1;
    return s;
}

void apply_column_add(EtaSequence& s, index i, index k, index l, std::uint64_t* counter) {
    if (i < 1 || i >= s.n)
        throw precondition_error("PreconditionViolated: no matrix at height " +
                                 std::to_string(i));
    EtaMatrix& e = s.eta_at(i);
    if (k < 0 || l >= e.cols || k >= l)
        throw precondition_error("PreconditionViolated: need columns k < l");
    if (!entangled(s.bars_at(i)[k], s.bars_at(i)[l]))
        throw precondition_error("PreconditionViolated: columns not entangled");
    for (index r = 0; r < e.rows; ++r) {
        e.at(r, l) ^= e.at(r, k);
        // Composites of interval morphisms vanish outside the support
        // constraint, so the formal sum is truncated back onto it.
        if (e.at(r, l) && !entangled(s.bars_at(i + 1)[r], s.bars_at(i)[l]))
            e.at(r, l) = 0;
    }
    if (counter)
        ++*counter;
}

void apply_row_add(EtaSequence& s, index i, index q, index p, std::uint64_t* counter) {
    if (i < 1 || i >= s.n)
        throw precondition_error("PreconditionViolated: no matrix at height " +
                                 std::to_string(i));
    EtaMatrix& e = s.eta_at(i);
    if (p < 0 || q >= e.rows || p >= q)
        throw precondition_error("PreconditionViolated: need rows p < q");
    if (!entangled(s.bars_at(i + 1)[p], s.bars_at(i + 1)[q]))
        throw precondition_error("PreconditionViolated: rows not entangled");
    for (index c = 0; c < e.cols; ++c) {
        e.at(p, c) ^= e.at(q, c);
        if (e.at(p, c) && !entangled(s.bars_at(i + 1)[p], s.bars_at(i)[c]))
            e.at(p, c) = 0;
    }
    if (counter)
        ++*counter;
    if (i + 1 < s.n)
        apply_column_add(s, i + 1, p, q, counter);
}

namespace {

// The unique nonzero column of a row in a normalized matrix, or -1.
index row_pivot(const EtaMatrix& e, index r) {
    for (index c = 0; c < e.cols; ++c)
        if (e.at(r, c))
            return c;
    return -1;
}

bool ranges_disjoint(const Bar& x, const Bar& y) {
    return x.d <= y.b || y.d <= x.b;
}

} // namespace

ValidOpTable update_valid_ops(const EtaSequence& s, index i, const ValidOpTable* prev) {
    const auto& bars = s.bars_at(i);
    index count = static_cast<index>(bars.size());
    ValidOpTable table(count);
    const EtaMatrix* below = (i > 1) ? &s.eta_at(i - 1) : nullptr;
    for (index k = 0; k < count; ++k)
        for (index l = k + 1; l < count; ++l) {
            if (!entangled(bars[k], bars[l]))
                continue;
            if (!below) {
                table.at(k, l) = 1;
                continue;
            }
            index t = row_pivot(*below, l);
            if (t < 0) { // the addition changes nothing below
                table.at(k, l) = 1;
                continue;
            }
            if (ranges_disjoint(bars[k], s.bars_at(i - 1)[t])) {
                table.at(k, l) = 1; // the induced entry is a zero composite
                continue;
            }
            index sc = row_pivot(*below, k);
            // The induced entry can be cleared below iff that clearing is
            // itself a valid addition one height down.
            if (sc >= 0 && sc < t && prev && (*prev)(sc, t))
                table.at(k, l) = 1;
        }
    return table;
}

bool normal_form_check(const EtaSequence& s) {
    for (const EtaMatrix& e : s.eta) {
        for (index r = 0; r < e.rows; ++r) {
            index seen = 0;
            for (index c = 0; c < e.cols; ++c)
                seen += e.at(r, c);
            if (seen > 1)
                return false;
        }
        for (index c = 0; c < e.cols; ++c) {
            index seen = 0;
            for (index r = 0; r < e.rows; ++r)
                seen += e.at(r, c);
            if (seen > 1)
                return false;
        }
    }
    return true;
}

DecisionResult decide_interval_decomposition(const EtaSequence& s) {
    validate(s);
    DecisionResult res;
    EtaSequence w = s;
    ValidOpTable prev;
    for (index i = 1; i < w.n; ++i) {
        ValidOpTable table = update_valid_ops(w, i, i > 1 ? &prev : nullptr);
        EtaMatrix& e = w.eta_at(i);
        std::vector<index> col_pivot(e.cols, -1); // pivot row of each normalized column
        std::vector<index> row_owner(e.rows, -1); // normalized column owning a pivot row
        for (index j = 0; j < e.cols; ++j) {
            // Clear whatever the valid additions from the left can reach,
            // to a fixed point.
            bool changed = true;
            while (changed) {
                changed = false;
                for (index k = 0; k < j; ++k)
                    if (col_pivot[k] >= 0 && e.at(col_pivot[k], j) && table(k, j)) {
                        apply_column_add(w, i, k, j, &res.additions);
                        changed = true;
                        break;
                    }
            }
            index piv = -1;
            for (index r = e.rows - 1; r >= 0; --r)
                if (e.at(r, j)) {
                    piv = r;
                    break;
                }
            if (piv < 0)
                continue;
            if (row_owner[piv] >= 0) {
                res.fail_height = i;
                res.fail_step = FailStep::pivot_conflict;
                res.fail_bars = {piv, row_owner[piv], j};
                return res;
            }
            // Remaining entries sit above the pivot; eliminate bottom-to-top
            // with pivot-row additions, each a basis change at height i+1.
            for (index p = piv - 1; p >= 0; --p) {
                if (!e.at(p, j))
                    continue;
                if (!entangled(w.bars_at(i + 1)[p], w.bars_at(i + 1)[piv])) {
                    res.fail_height = i;
                    res.fail_step = FailStep::row_elimination_failed;
                    res.fail_bars = {p, piv, j};
                    return res;
                }
                apply_row_add(w, i, piv, p, &res.additions);
            }
            col_pivot[j] = piv;
            row_owner[piv] = j;
        }
        prev = std::move(table);
    }

    // Every matrix is now a partial matching; read off the directed paths.
    res.decomposed = true;
    for (index h = 1; h <= w.n; ++h) {
        for (index c = 0; c < static_cast<index>(w.bars_at(h).size()); ++c) {
            if (h > 1 && row_pivot(w.eta_at(h - 1), c) >= 0)
                continue; // continuation of a lower slice
            StaircaseInterval iv;
            index ch = h, cur = c;
            while (true) {
                const Bar& bar = w.bars_at(ch)[cur];
                iv.slices.push_back({ch, bar.b, bar.d});
                if (ch >= w.n)
                    break;
                const EtaMatrix& up = w.eta_at(ch);
                index next = -1;
                for (index r = 0; r < up.rows; ++r)
                    if (up.at(r, cur)) {
                        next = r;
                        break;
                    }
                if (next < 0)
                    break;
                ++ch;
                cur = next;
            }
            res.intervals.push_back(std::move(iv));
        }
    }
    std::sort(res.intervals.begin(), res.intervals.end());
    return res;
}

} // namespace gcode
