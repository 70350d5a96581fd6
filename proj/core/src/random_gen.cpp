#include "gcode/random_gen.hpp"

#include "gcode/builder.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace gcode {

Presentation random_presentation(Rng& rng, index max_gens, index max_rels,
                                 index max_m, index max_n) {
    Presentation p;
    p.m = rng.uniform(1, max_m);
    p.n = rng.uniform(1, max_n);
    index gens = rng.uniform(1, max_gens);
    index rels = rng.uniform(0, max_rels);
    for (index i = 0; i < gens; ++i)
        p.generators.push_back({rng.uniform(1, p.m), rng.uniform(1, p.n)});
    for (index j = 0; j < rels; ++j) {
        // Anchor each relation at some generator so the column is never
        // trivially empty and homogeneity has room to hold.
        index anchor = rng.uniform(0, gens - 1);
        Bigrade at{rng.uniform(p.generators[anchor].scale, p.m),
                   rng.uniform(p.generators[anchor].height, p.n)};
        F2Column col;
        for (index i = 0; i < gens; ++i)
            if (leq(p.generators[i], at) && (i == anchor || rng.chance(1, 3)))
                col.push_back(i);
        p.relation_grades.push_back(at);
        p.relations.push_back(std::move(col));
    }
    return p;
}

Graphcode random_strict_graphcode(Rng& rng, index max_m, index max_n,
                                  index max_bars_per_height) {
    // Sample from the image of the reduction: build the uncompressed graphcode
    // of a random presentation and keep it once every height carries pairwise
    // distinct bars. Hand-wired edge sets are generally not in that image —
    // they encode the connecting maps in a barcode basis the reduction never
    // picks, so rebuilding a presentation from them and reducing again yields
    // an isomorphic module under a different labeled graph. Sampling builder
    // output is what makes the presentation roundtrip exact.
    for (;;) {
        Presentation p = random_presentation(rng, max_bars_per_height,
                                             max_bars_per_height, max_m, max_n);
        Graphcode g = build_graphcode(p, BuildMode::uncompressed);
        if (g.vertex_count() == 0)
            continue;
        std::set<std::pair<std::pair<index, index>, index>> seen;
        bool distinct = true;
        for (const Bar& v : g.vertices)
            if (!seen.insert({{v.b, v.d}, v.h}).second) {
                distinct = false;
                break;
            }
        if (!distinct)
            continue;

        // Shuffle vertex ids so consumers cannot rely on any insertion order.
        index count = g.vertex_count();
        std::vector<index> to_new(count);
        for (index i = 0; i < count; ++i)
            to_new[i] = i;
        for (index i = count - 1; i > 0; --i)
            std::swap(to_new[i], to_new[rng.uniform(0, i)]);
        std::vector<Bar> shuffled(count);
        for (index i = 0; i < count; ++i)
            shuffled[to_new[i]] = g.vertices[i];
        g.vertices = std::move(shuffled);
        for (auto& [u, v] : g.edges) {
            u = to_new[u];
            v = to_new[v];
        }
        std::sort(g.edges.begin(), g.edges.end());
        return g;
    }
}

StaircaseInterval random_staircase(Rng& rng, index m, index n) {
    StaircaseInterval iv;
    index lo = rng.uniform(1, n);
    index hi = rng.uniform(lo, n);
    index b = rng.uniform(1, m);
    index d = rng.uniform(b + 1, m + 1);
    iv.slices.push_back({lo, b, d});
    for (index h = lo + 1; h <= hi; ++h) {
        // Each higher slice is entangled below its predecessor.
        index nb = rng.uniform(1, b);
        index nd = rng.uniform(b + 1, d);
        iv.slices.push_back({h, nb, nd});
        b = nb;
        d = nd;
    }
    return iv;
}

StaircaseSum random_staircase_sum(Rng& rng, index max_intervals, index m, index n) {
    StaircaseSum out;
    index want = rng.uniform(1, max_intervals);
    std::vector<std::set<std::pair<index, index>>> used(n + 1);
    for (index k = 0; k < want; ++k) {
        for (int attempt = 0; attempt < 32; ++attempt) {
            StaircaseInterval iv = random_staircase(rng, m, n);
            bool fresh = true;
            for (const auto& sl : iv.slices)
                if (used[sl.h].count({sl.b, sl.d}))
                    fresh = false;
            if (!fresh)
                continue;
            for (const auto& sl : iv.slices)
                used[sl.h].insert({sl.b, sl.d});
            out.intervals.push_back(std::move(iv));
            break;
        }
    }
    std::sort(out.intervals.begin(), out.intervals.end());

    EtaSequence s;
    s.m = m;
    s.n = n;
    s.bars.assign(n, {});
    std::vector<std::vector<std::pair<Bar, index>>> per_h(n + 1); // (bar, interval)
    for (index id = 0; id < static_cast<index>(out.intervals.size()); ++id)
        for (const auto& sl : out.intervals[id].slices)
            per_h[sl.h].push_back({Bar{sl.b, sl.d, sl.h}, id});
    std::vector<std::vector<index>> pos_of(
        n + 1, std::vector<index>(out.intervals.size(), -1));
    for (index h = 1; h <= n; ++h) {
        std::sort(per_h[h].begin(), per_h[h].end(),
                  [](const auto& x, const auto& y) { return bar_lex_less(x.first, y.first); });
        for (index c = 0; c < static_cast<index>(per_h[h].size()); ++c) {
            s.bars_at(h).push_back(per_h[h][c].first);
            pos_of[h][per_h[h][c].second] = c;
        }
    }
    for (index i = 1; i < n; ++i) {
        EtaMatrix e(static_cast<index>(s.bars_at(i + 1).size()),
                    static_cast<index>(s.bars_at(i).size()));
        for (index id = 0; id < static_cast<index>(out.intervals.size()); ++id)
            if (pos_of[i][id] >= 0 && pos_of[i + 1][id] >= 0)
                e.at(pos_of[i + 1][id], pos_of[i][id]) = 1;
        s.eta.push_back(std::move(e));
    }
    out.eta = std::move(s);
    return out;
}

void scramble_eta(EtaSequence& s, Rng& rng, index ops) {
    for (index t = 0; t < ops; ++t) {
        for (int attempt = 0; attempt < 16; ++attempt) {
            index j = rng.uniform(1, s.n);
            const auto& bars = s.bars_at(j);
            index cnt = static_cast<index>(bars.size());
            if (cnt < 2)
                continue;
            index k = rng.uniform(0, cnt - 1);
            index l = rng.uniform(0, cnt - 1);
            if (k > l)
                std::swap(k, l);
            if (k == l || !entangled(bars[k], bars[l]))
                continue;
            // The basis change e_l -> e_l + e_k at height j touches the
            // matrix below (rows) and the matrix above (columns); apply_row_add
            // performs both halves, so a single call keeps the module intact.
            if (j > 1)
                apply_row_add(s, j - 1, l, k);
            else if (s.n > 1)
                apply_column_add(s, 1, k, l);
            break;
        }
    }
}

} // namespace gcode
