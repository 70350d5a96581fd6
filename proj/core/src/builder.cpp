#include "gcode/builder.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

namespace gcode {

namespace {

// Sorts 0..count-1 by (scale of grade, height of grade descending, original
// index). Scale ascending is the reduction order; the height-descending tie
// means everything a batch inserts sits left of equal-scale slots carried
// over from earlier batches. That way a carried-over column that re-reduces
// only ever cascades through columns that already own their final pivots, so
// its toggle set names exactly the bars its class flows into — the property
// the presentation roundtrip depends on. Ties within one height keep the
// original file order.
std::vector<index> positions_by_scale(const std::vector<Bigrade>& grades) {
    std::vector<index> order(grades.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](index a, index b) {
        if (grades[a].scale != grades[b].scale)
            return grades[a].scale < grades[b].scale;
        if (grades[a].height != grades[b].height)
            return grades[a].height > grades[b].height;
        return a < b;
    });
    return order;
}

} // namespace

SliceReduction reduce_slice(const Presentation& p, index height) {
    // Row order: active generators by (scale, index).
    std::vector<index> row_gens;
    for (index i = 0; i < p.gen_count(); ++i)
        if (p.generators[i].height <= height)
            row_gens.push_back(i);
    std::sort(row_gens.begin(), row_gens.end(), [&](index a, index b) {
        if (p.generators[a].scale != p.generators[b].scale)
            return p.generators[a].scale < p.generators[b].scale;
        return a < b;
    });
    std::vector<index> row_of_gen(p.gen_count(), -1);
    for (index r = 0; r < static_cast<index>(row_gens.size()); ++r)
        row_of_gen[row_gens[r]] = r;

    std::vector<index> cols;
    for (index j = 0; j < p.rel_count(); ++j)
        if (p.relation_grades[j].height <= height)
            cols.push_back(j);
    std::sort(cols.begin(), cols.end(), [&](index a, index b) {
        if (p.relation_grades[a].scale != p.relation_grades[b].scale)
            return p.relation_grades[a].scale < p.relation_grades[b].scale;
        return a < b;
    });

    SliceReduction out;
    out.reduced_columns.resize(cols.size());
    std::vector<index> owner(row_gens.size(), -1); // pivot row -> column slot
    for (index c = 0; c < static_cast<index>(cols.size()); ++c) {
        F2Column col;
        for (index g : p.relations[cols[c]])
            col.push_back(row_of_gen[g]);
        std::sort(col.begin(), col.end());
        while (!col.empty() && owner[col.back()] != -1)
            add_columns_into(col, out.reduced_columns[owner[col.back()]]);
        if (!col.empty()) {
            owner[col.back()] = c;
            index b = p.generators[row_gens[col.back()]].scale;
            index d = p.relation_grades[cols[c]].scale;
            if (b < d)
                out.bars.push_back(Bar{b, d, height});
        }
        out.reduced_columns[c] = std::move(col);
    }
    for (index r = 0; r < static_cast<index>(row_gens.size()); ++r)
        if (owner[r] == -1)
            out.bars.push_back(Bar{p.generators[row_gens[r]].scale, p.m + 1, height});
    std::sort(out.bars.begin(), out.bars.end(), bar_lex_less);
    return out;
}

namespace {

// One out-of-order reduction over all heights. Columns sit at their final
// position in the (scale, height desc, index) order from the start; each
// batch inserts the rows and columns born at that height and restores
// reducedness. Ownership of a pivot row can move to a column further left
// ("steal"), which dirties the old owner; dirty columns are reprocessed in
// ascending position, so a column consumed as a source is always in its
// final state for the batch.
struct BatchBuilder {
    const Presentation& p;
    BuildMode mode;

    index gens, rels;

    // Global orders.
    std::vector<index> col_of_pos, col_pos_of_rel;
    std::vector<index> row_of_pos, row_pos_of_gen;
    std::vector<index> row_scale;                  // by row position
    std::vector<std::vector<index>> rows_at, cols_at; // per height: positions

    // Column state, indexed by position.
    std::vector<F2Column> content;
    std::vector<index> col_death;                  // relation scale, fixed
    std::vector<index> col_birth;                  // pivot row scale
    std::vector<index> col_batch;                  // insertion batch, 0 = not yet
    std::vector<std::uint8_t> col_alive;           // inserted and nonzero
    std::vector<std::vector<index>> added;         // per-batch toggle set
    std::vector<index> col_epoch, row_epoch;       // last touching batch
    std::vector<index> col_prev_birth;             // birth at batch start
    std::vector<std::uint8_t> col_prev_alive;

    // Row state, indexed by row position.
    std::vector<index> row_batch;                  // insertion batch, 0 = not yet
    std::vector<index> owner;                      // owning column position or -1

    // Output bookkeeping.
    std::vector<index> col_last_v, col_last_h, row_last_v, row_last_h;
    std::vector<index> col_src, row_src; // per batch, valid for touched slots
    Graphcode out;
    std::uint64_t additions = 0;

    // Per-batch scratch.
    index batch = 0;
    std::vector<index> touched_cols, touched_rows;
    std::set<index> dirty;
    std::vector<index> paired_rows; // rows of earlier batches paired now

    struct RewriteSpec {
        index row;
        std::vector<index> consumed_cols, consumed_rows;
    };
    std::vector<RewriteSpec> rewrites;

    explicit BatchBuilder(const Presentation& pres, BuildMode m)
        : p(pres), mode(m), gens(pres.gen_count()), rels(pres.rel_count()) {
        col_of_pos = positions_by_scale(p.relation_grades);
        col_pos_of_rel.assign(rels, 0);
        for (index c = 0; c < rels; ++c)
            col_pos_of_rel[col_of_pos[c]] = c;
        row_of_pos = positions_by_scale(p.generators);
        row_pos_of_gen.assign(gens, 0);
        row_scale.assign(gens, 0);
        for (index r = 0; r < gens; ++r) {
            row_pos_of_gen[row_of_pos[r]] = r;
            row_scale[r] = p.generators[row_of_pos[r]].scale;
        }
        rows_at.resize(p.n + 1);
        cols_at.resize(p.n + 1);
        for (index r = 0; r < gens; ++r)
            rows_at[p.generators[row_of_pos[r]].height].push_back(r);
        for (index c = 0; c < rels; ++c)
            cols_at[p.relation_grades[col_of_pos[c]].height].push_back(c);

        content.resize(rels);
        col_death.assign(rels, 0);
        for (index c = 0; c < rels; ++c)
            col_death[c] = p.relation_grades[col_of_pos[c]].scale;
        col_birth.assign(rels, 0);
        col_batch.assign(rels, 0);
        col_alive.assign(rels, 0);
        added.resize(rels);
        col_epoch.assign(rels, 0);
        row_epoch.assign(gens, 0);
        col_prev_birth.assign(rels, 0);
        col_prev_alive.assign(rels, 0);
        row_batch.assign(gens, 0);
        owner.assign(gens, -1);
        col_last_v.assign(rels, -1);
        col_last_h.assign(rels, 0);
        row_last_v.assign(gens, -1);
        row_last_h.assign(gens, 0);
        col_src.assign(rels, -1);
        row_src.assign(gens, -1);
        out.m = p.m;
        out.n = p.n;
    }

    void touch_col(index c) {
        if (col_epoch[c] == batch)
            return;
        col_epoch[c] = batch;
        added[c].clear();
        col_prev_birth[c] = col_birth[c];
        col_prev_alive[c] = col_alive[c];
        touched_cols.push_back(c);
    }

    void touch_row(index r) {
        if (row_epoch[r] == batch)
            return;
        row_epoch[r] = batch;
        touched_rows.push_back(r);
    }

    void toggle_added(index c, index a) {
        auto& list = added[c];
        auto it = std::find(list.begin(), list.end(), a);
        if (it != list.end())
            list.erase(it);
        else
            list.push_back(a);
    }

    index add_vertex(index b, index d, index h) {
        out.vertices.push_back(Bar{b, d, h});
        return out.vertex_count() - 1;
    }

    void claim(index c, index r) {
        owner[r] = c;
        col_birth[c] = row_scale[r];
        if (row_batch[r] < batch) {
            paired_rows.push_back(r);
            touch_row(r);
        }
    }

    void reduce_from(index c) {
        while (true) {
            if (content[c].empty()) {
                col_alive[c] = 0;
                return;
            }
            index piv = content[c].back();
            index o = owner[piv];
            if (o == -1) {
                claim(c, piv);
                return;
            }
            if (o < c) {
                touch_col(o);
                add_columns_into(content[c], content[o]);
                toggle_added(c, o);
                ++additions;
                continue;
            }
            // c takes the pivot; the old owner re-reduces later.
            owner[piv] = c;
            col_birth[c] = row_scale[piv];
            touch_col(o);
            add_columns_into(content[o], content[c]);
            toggle_added(o, c);
            ++additions;
            dirty.insert(o);
            return;
        }
    }

    void run_worklist() {
        while (!dirty.empty()) {
            index c = *dirty.begin();
            dirty.erase(dirty.begin());
            reduce_from(c);
        }
    }

    // Expresses the retired basis vector e_row in the stabilized basis
    // (owner columns by pivot, unit vectors for still-unpaired rows) and
    // records everything consumed on the way.
    void run_rewrites() {
        std::sort(paired_rows.begin(), paired_rows.end());
        for (index r : paired_rows) {
            RewriteSpec spec;
            spec.row = r;
            F2Column s{r};
            while (!s.empty()) {
                index piv = s.back();
                index o = owner[piv];
                if (o != -1) {
                    spec.consumed_cols.push_back(o);
                    touch_col(o);
                    add_columns_into(s, content[o]);
                } else {
                    spec.consumed_rows.push_back(piv);
                    touch_row(piv);
                    s.pop_back();
                }
                ++additions;
            }
            rewrites.push_back(std::move(spec));
        }
    }

    // Emits the height-(batch-1) vertex of every touched slot that predates
    // this batch and has none yet, bridging from the slot's previous vertex.
    // Only compressed mode ever leaves such gaps.
    void late_pass() {
        index h = batch - 1;
        for (index c : touched_cols) {
            if (col_batch[c] == batch || !col_prev_alive[c])
                continue;
            if (col_prev_birth[c] >= col_death[c] || col_last_h[c] >= h)
                continue;
            index v = add_vertex(col_prev_birth[c], col_death[c], h);
            if (col_last_v[c] >= 0)
                out.edges.emplace_back(col_last_v[c], v);
            col_last_v[c] = v;
            col_last_h[c] = h;
        }
        for (index r : touched_rows) {
            if (row_batch[r] == batch || row_last_h[r] >= h)
                continue;
            index v = add_vertex(row_scale[r], p.m + 1, h);
            if (row_last_v[r] >= 0)
                out.edges.emplace_back(row_last_v[r], v);
            row_last_v[r] = v;
            row_last_h[r] = h;
        }
    }

    void capture_sources() {
        index h = batch - 1;
        for (index c : touched_cols)
            col_src[c] = (col_last_h[c] == h && col_last_v[c] >= 0) ? col_last_v[c] : -1;
        for (index r : touched_rows)
            row_src[r] = (row_last_h[r] == h && row_last_v[r] >= 0) ? row_last_v[r] : -1;
    }

    void emit_col(index c) {
        if (!col_alive[c] || col_birth[c] >= col_death[c])
            return;
        index src = (col_last_h[c] == batch - 1) ? col_last_v[c] : -1;
        index v = add_vertex(col_birth[c], col_death[c], batch);
        if (src >= 0)
            out.edges.emplace_back(src, v);
        col_last_v[c] = v;
        col_last_h[c] = batch;
    }

    void emit_row(index r) {
        if (owner[r] != -1)
            return;
        index src = (row_last_h[r] == batch - 1) ? row_last_v[r] : -1;
        index v = add_vertex(row_scale[r], p.m + 1, batch);
        if (src >= 0)
            out.edges.emplace_back(src, v);
        row_last_v[r] = v;
        row_last_h[r] = batch;
    }

    void early_pass() {
        if (mode == BuildMode::uncompressed) {
            for (index c = 0; c < rels; ++c)
                if (col_batch[c] != 0)
                    emit_col(c);
            for (index r = 0; r < gens; ++r)
                if (row_batch[r] != 0)
                    emit_row(r);
        } else {
            std::sort(touched_cols.begin(), touched_cols.end());
            std::sort(touched_rows.begin(), touched_rows.end());
            for (index c : touched_cols)
                emit_col(c);
            for (index r : touched_rows)
                emit_row(r);
        }
    }

    void emit_change_edges() {
        for (index c : touched_cols) {
            if (added[c].empty() || col_src[c] < 0)
                continue;
            Bar old{col_prev_birth[c], col_death[c], batch - 1};
            for (index a : added[c]) {
                Bar now{col_birth[a], col_death[a], batch};
                if (entangled(now, old) && col_last_h[a] == batch)
                    out.edges.emplace_back(col_src[c], col_last_v[a]);
            }
        }
        for (const RewriteSpec& spec : rewrites) {
            index src = row_src[spec.row];
            if (src < 0)
                continue;
            Bar old{row_scale[spec.row], p.m + 1, batch - 1};
            for (index o : spec.consumed_cols) {
                Bar now{col_birth[o], col_death[o], batch};
                if (entangled(now, old) && col_last_h[o] == batch)
                    out.edges.emplace_back(src, col_last_v[o]);
            }
            for (index r : spec.consumed_rows)
                if (row_last_h[r] == batch)
                    out.edges.emplace_back(src, row_last_v[r]);
        }
    }

    void run_batch(index h) {
        batch = h;
        touched_cols.clear();
        touched_rows.clear();
        paired_rows.clear();
        rewrites.clear();

        for (index r : rows_at[h]) {
            row_batch[r] = h;
            touch_row(r);
        }
        for (index c : cols_at[h]) {
            col_batch[c] = h;
            touch_col(c);
            F2Column col;
            for (index g : p.relations[col_of_pos[c]])
                col.push_back(row_pos_of_gen[g]);
            std::sort(col.begin(), col.end());
            content[c] = std::move(col);
            if (!content[c].empty()) {
                col_alive[c] = 1;
                dirty.insert(c);
            }
        }
        run_worklist();
        run_rewrites();
        if (mode == BuildMode::compressed)
            late_pass();
        capture_sources();
        early_pass();
        emit_change_edges();
    }

    // In compressed mode, every bar alive at the top height still gets its
    // height-n vertex so the final slice is fully represented.
    void final_pass() {
        if (mode == BuildMode::uncompressed || p.n == 0)
            return;
        for (index c = 0; c < rels; ++c) {
            if (col_batch[c] == 0 || !col_alive[c])
                continue;
            if (col_birth[c] >= col_death[c] || col_last_h[c] >= p.n)
                continue;
            index v = add_vertex(col_birth[c], col_death[c], p.n);
            if (col_last_v[c] >= 0)
                out.edges.emplace_back(col_last_v[c], v);
        }
        for (index r = 0; r < gens; ++r) {
            if (row_batch[r] == 0 || owner[r] != -1 || row_last_h[r] >= p.n)
                continue;
            index v = add_vertex(row_scale[r], p.m + 1, p.n);
            if (row_last_v[r] >= 0)
                out.edges.emplace_back(row_last_v[r], v);
        }
    }

    Graphcode run() {
        for (index h = 1; h <= p.n; ++h)
            run_batch(h);
        final_pass();
        std::sort(out.edges.begin(), out.edges.end());
        out.edges.erase(std::unique(out.edges.begin(), out.edges.end()),
                        out.edges.end());
        return std::move(out);
    }
};

index count_components(const Graphcode& g) {
    std::vector<index> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](index x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (auto [u, v] : g.edges)
        parent[find(u)] = find(v);
    index count = 0;
    for (index v = 0; v < g.vertex_count(); ++v)
        if (find(v) == v)
            ++count;
    return count;
}

} // namespace

Graphcode build_graphcode(const Presentation& p, BuildMode mode, BuildStats* stats) {
    auto start = std::chrono::steady_clock::now();
    BatchBuilder builder(p, mode);
    Graphcode g = builder.run();
    if (stats) {
        stats->gens = p.gen_count();
        stats->rels = p.rel_count();
        stats->vertices = g.vertex_count();
        stats->edges = g.edge_count();
        stats->components = count_components(g);
        stats->column_additions = builder.additions;
        auto end = std::chrono::steady_clock::now();
        stats->wall_ms =
            std::chrono::duration<double, std::milli>(end - start).count();
    }
    return g;
}

} // namespace gcode
