#include "gcode/presentation_gen.hpp"

#include <algorithm>
#include <numeric>

#include "gcode/builder.hpp"

namespace gcode {

Presentation presentation_from_graphcode(const Graphcode& g) {
    validate(g);
    Presentation p;
    p.m = g.m;
    p.n = g.n;
    p.generators.reserve(g.vertices.size());
    for (const Bar& bar : g.vertices)
        p.generators.push_back(Bigrade{bar.b, bar.h});

    std::vector<std::vector<index>> outs(g.vertex_count());
    for (auto [u, v] : g.edges)
        outs[u].push_back(v);

    // One death relation per finite bar, one propagation relation per vertex
    // below the top height: the vertex's class continues as the sum of its
    // out-neighbours (an empty sum if it has none).
    for (index v = 0; v < g.vertex_count(); ++v) {
        const Bar& bar = g.vertices[v];
        if (bar.d <= g.m) {
            p.relation_grades.push_back(Bigrade{bar.d, bar.h});
            p.relations.push_back(F2Column{v});
        }
        if (bar.h < g.n) {
            index up = outs[v].empty() ? bar.h + 1 : g.vertices[outs[v][0]].h;
            F2Column col{v};
            for (index w : outs[v])
                col.push_back(w);
            std::sort(col.begin(), col.end());
            p.relation_grades.push_back(Bigrade{bar.b, up});
            p.relations.push_back(std::move(col));
        }
    }

    std::vector<index> order(p.rel_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](index a, index b) {
        return height_scale_less(p.relation_grades[a], p.relation_grades[b]);
    });
    Presentation sorted = p;
    for (index j = 0; j < p.rel_count(); ++j) {
        sorted.relation_grades[j] = p.relation_grades[order[j]];
        sorted.relations[j] = std::move(p.relations[order[j]]);
    }
    return sorted;
}

Presentation minimize(const Presentation& p) {
    index gens = p.gen_count();
    std::vector<Bigrade> rel_grades = p.relation_grades;
    std::vector<F2Column> rels = p.relations;
    std::vector<std::uint8_t> gen_dead(gens, 0), rel_dead(rels.size(), 0);

    // Cancel (generator, relation) pairs at equal bigrade: the relation kills
    // the generator on the nose, so both can be eliminated after clearing the
    // generator from every other relation.
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t j = 0; j < rels.size() && !progress; ++j) {
            if (rel_dead[j])
                continue;
            for (index i : rels[j]) {
                if (p.generators[i] != rel_grades[j])
                    continue;
                for (std::size_t k = 0; k < rels.size(); ++k) {
                    if (k == j || rel_dead[k])
                        continue;
                    if (std::binary_search(rels[k].begin(), rels[k].end(), i))
                        add_columns_into(rels[k], rels[j]);
                }
                gen_dead[i] = 1;
                rel_dead[j] = 1;
                progress = true;
                break;
            }
        }
    }

    std::vector<index> remap(gens, -1);
    Presentation out;
    out.m = p.m;
    out.n = p.n;
    for (index i = 0; i < gens; ++i) {
        if (gen_dead[i])
            continue;
        remap[i] = out.gen_count();
        out.generators.push_back(p.generators[i]);
    }
    std::vector<std::pair<Bigrade, F2Column>> seen;
    for (std::size_t j = 0; j < rels.size(); ++j) {
        if (rel_dead[j] || rels[j].empty())
            continue;
        F2Column col;
        for (index i : rels[j])
            col.push_back(remap[i]);
        std::sort(col.begin(), col.end());
        bool duplicate = false;
        for (const auto& [grade, other] : seen)
            if (grade == rel_grades[j] && other == col) {
                duplicate = true;
                break;
            }
        if (duplicate)
            continue;
        seen.emplace_back(rel_grades[j], col);
        out.relation_grades.push_back(rel_grades[j]);
        out.relations.push_back(std::move(col));
    }
    return out;
}

bool roundtrip_check(const Graphcode& g) {
    Presentation p = presentation_from_graphcode(g);
    Graphcode rebuilt = build_graphcode(p, BuildMode::uncompressed);
    return label_isomorphic(rebuilt, g);
}

} // namespace gcode
