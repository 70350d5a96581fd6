#include "gcode/graphcode.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "gcode/errors.hpp"

namespace gcode {

void validate(const Graphcode& g) {
    const index V = g.vertex_count();
    for (index v = 0; v < V; ++v) {
        const Bar& bar = g.vertices[v];
        if (bar.b < 1 || bar.b > g.m || bar.d <= bar.b || bar.d > g.m + 1 ||
            bar.h < 1 || bar.h > g.n)
            throw invariant_error("LabelInvariantViolated: vertex " + std::to_string(v) +
                                  " label (" + std::to_string(bar.b) + "," +
                                  std::to_string(bar.d) + "," + std::to_string(bar.h) +
                                  ") outside grid (" + std::to_string(g.m) + "," +
                                  std::to_string(g.n) + ")");
    }
    std::vector<index> out_height(V, 0);
    for (auto [u, v] : g.edges) {
        if (u < 0 || u >= V || v < 0 || v >= V)
            throw invariant_error("DanglingEdge: edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ") with " + std::to_string(V) +
                                  " vertices");
        const Bar& src = g.vertices[u];
        const Bar& dst = g.vertices[v];
        if (dst.h <= src.h)
            throw invariant_error("InvalidGraphcode: edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ") does not increase height");
        if (!entangled(dst, src))
            throw invariant_error("InvalidGraphcode: edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ") is not entangled");
        if (out_height[u] == 0)
            out_height[u] = dst.h;
        else if (out_height[u] != dst.h)
            throw invariant_error("InvalidGraphcode: vertex " + std::to_string(u) +
                                  " has out-neighbours at different heights");
    }
}

bool is_strict(const Graphcode& g) {
    for (auto [u, v] : g.edges)
        if (g.vertices[v].h != g.vertices[u].h + 1)
            return false;
    return true;
}

Graphcode compress(const Graphcode& g) {
    const index V = g.vertex_count();
    std::vector<std::vector<index>> out(V), in(V);
    for (auto [u, v] : g.edges) {
        out[u].push_back(v);
        in[v].push_back(u);
    }
    std::vector<bool> removed(V, false);

    // Superfluity is stable under removing other superfluous vertices, so a
    // single pass suffices; ascending height makes every spliced edge move
    // exactly once.
    std::vector<index> by_height(V);
    std::iota(by_height.begin(), by_height.end(), 0);
    std::stable_sort(by_height.begin(), by_height.end(), [&](index a, index b) {
        return g.vertices[a].h < g.vertices[b].h;
    });

    for (index w : by_height) {
        if (in[w].size() != 1 || out[w].empty())
            continue;
        index v = in[w][0];
        if (g.vertices[v].b != g.vertices[w].b || g.vertices[v].d != g.vertices[w].d)
            continue;
        if (out[v].size() != 1) // the single edge (v,w)
            continue;
        removed[w] = true;
        out[v] = std::move(out[w]);
        out[w].clear();
        for (index x : out[v])
            for (index& p : in[x])
                if (p == w)
                    p = v;
        in[w].clear();
    }

    Graphcode r;
    r.m = g.m;
    r.n = g.n;
    std::vector<index> new_id(V, -1);
    for (index v = 0; v < V; ++v)
        if (!removed[v]) {
            new_id[v] = r.vertex_count();
            r.vertices.push_back(g.vertices[v]);
        }
    for (index v = 0; v < V; ++v)
        if (!removed[v])
            for (index x : out[v])
                r.edges.emplace_back(new_id[v], new_id[x]);
    std::sort(r.edges.begin(), r.edges.end());
    return r;
}

Graphcode expand(const Graphcode& g) {
    validate(g);
    Graphcode r;
    r.m = g.m;
    r.n = g.n;
    r.vertices = g.vertices;

    // Group out-edges by source; each long edge bundle gets one fresh chain.
    std::vector<std::vector<index>> out(g.vertex_count());
    for (auto [u, v] : g.edges)
        out[u].push_back(v);

    for (index u = 0; u < g.vertex_count(); ++u) {
        if (out[u].empty())
            continue;
        index target_h = g.vertices[out[u][0]].h;
        index tail = u;
        for (index h = g.vertices[u].h + 1; h < target_h; ++h) {
            index fresh = r.vertex_count();
            r.vertices.push_back(Bar{g.vertices[u].b, g.vertices[u].d, h});
            r.edges.emplace_back(tail, fresh);
            tail = fresh;
        }
        for (index v : out[u])
            r.edges.emplace_back(tail, v);
    }
    std::sort(r.edges.begin(), r.edges.end());
    return r;
}

std::vector<Graphcode> connected_components(const Graphcode& g) {
    const index V = g.vertex_count();
    std::vector<index> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](index x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : g.edges) {
        index a = find(u), b = find(v);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }

    // Roots in ascending order == components ordered by smallest vertex index.
    std::map<index, index> root_to_comp;
    std::vector<Graphcode> comps;
    std::vector<index> comp_of(V), local_id(V);
    for (index v = 0; v < V; ++v) {
        index root = find(v);
        auto [it, fresh] = root_to_comp.try_emplace(root, static_cast<index>(comps.size()));
        if (fresh) {
            comps.emplace_back();
            comps.back().m = g.m;
            comps.back().n = g.n;
        }
        comp_of[v] = it->second;
        local_id[v] = comps[it->second].vertex_count();
        comps[it->second].vertices.push_back(g.vertices[v]);
    }
    for (auto [u, v] : g.edges)
        comps[comp_of[u]].edges.emplace_back(local_id[u], local_id[v]);
    for (Graphcode& c : comps)
        std::sort(c.edges.begin(), c.edges.end());
    return comps;
}

bool is_disjoint_path_union(const Graphcode& g) {
    std::vector<index> indeg(g.vertex_count(), 0), outdeg(g.vertex_count(), 0);
    for (auto [u, v] : g.edges)
        if (++outdeg[u] > 1 || ++indeg[v] > 1)
            return false;
    return true;
}

bool label_isomorphic(const Graphcode& a, const Graphcode& b) {
    if (a.m != b.m || a.n != b.n || a.vertex_count() != b.vertex_count() ||
        a.edge_count() != b.edge_count())
        return false;

    auto canonical = [](const Graphcode& g) {
        std::vector<index> order(g.vertex_count());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](index x, index y) {
            const Bar &bx = g.vertices[x], &by = g.vertices[y];
            return std::tie(bx.h, bx.b, bx.d) < std::tie(by.h, by.b, by.d);
        });
        for (index i = 0; i + 1 < g.vertex_count(); ++i) {
            if (g.vertices[order[i]] == g.vertices[order[i + 1]])
                throw precondition_error(
                    "PreconditionViolated: label_isomorphic needs distinct bars per height");
        }
        std::vector<index> pos(g.vertex_count());
        for (index i = 0; i < g.vertex_count(); ++i)
            pos[order[i]] = i;
        std::vector<Bar> labels(g.vertex_count());
        for (index i = 0; i < g.vertex_count(); ++i)
            labels[i] = g.vertices[order[i]];
        std::vector<std::pair<index, index>> edges;
        edges.reserve(g.edges.size());
        for (auto [u, v] : g.edges)
            edges.emplace_back(pos[u], pos[v]);
        std::sort(edges.begin(), edges.end());
        return std::pair(std::move(labels), std::move(edges));
    };

    return canonical(a) == canonical(b);
}

} // namespace gcode
