#include "gcode/presentation.hpp"

#include <string>

#include "gcode/errors.hpp"

namespace gcode {

static void check_grade(const Bigrade& g, index m, index n, const char* what,
                        index i) {
    if (g.scale < 1 || g.scale > m || g.height < 1 || g.height > n)
        throw invariant_error("GradeOutOfRange: " + std::string(what) + " " +
                              std::to_string(i) + " at (" + std::to_string(g.scale) +
                              "," + std::to_string(g.height) + ") outside grid (" +
                              std::to_string(m) + "," + std::to_string(n) + ")");
}

void validate(const Presentation& p) {
    if (p.m < 0 || p.n < 0)
        throw invariant_error("GradeOutOfRange: negative grid extents");
    if (p.relation_grades.size() != p.relations.size())
        throw invariant_error("MalformedPresentation: relation grade/column count mismatch");
    for (index i = 0; i < p.gen_count(); ++i)
        check_grade(p.generators[i], p.m, p.n, "generator", i);
    for (index j = 0; j < p.rel_count(); ++j) {
        check_grade(p.relation_grades[j], p.m, p.n, "relation", j);
        const F2Column& col = p.relations[j];
        index prev = -1;
        for (index e : col) {
            if (e <= prev)
                throw invariant_error("MalformedPresentation: relation " +
                                      std::to_string(j) +
                                      " entries not strictly increasing");
            prev = e;
            if (e < 0 || e >= p.gen_count())
                throw invariant_error("IndexOutOfRange: relation " + std::to_string(j) +
                                      " references generator " + std::to_string(e));
            if (!leq(p.generators[e], p.relation_grades[j]))
                throw invariant_error(
                    "NonHomogeneous: relation " + std::to_string(j) + " at (" +
                    std::to_string(p.relation_grades[j].scale) + "," +
                    std::to_string(p.relation_grades[j].height) +
                    ") hits generator " + std::to_string(e) + " at (" +
                    std::to_string(p.generators[e].scale) + "," +
                    std::to_string(p.generators[e].height) + ")");
        }
    }
}

void infer_extents(Presentation& p) {
    index m = 0, n = 0;
    for (const Bigrade& g : p.generators) {
        m = std::max(m, g.scale);
        n = std::max(n, g.height);
    }
    for (const Bigrade& g : p.relation_grades) {
        m = std::max(m, g.scale);
        n = std::max(n, g.height);
    }
    p.m = m;
    p.n = n;
}

Presentation block_diagonal(std::span<const Presentation> parts) {
    Presentation out;
    for (const Presentation& part : parts) {
        out.m = std::max(out.m, part.m);
        out.n = std::max(out.n, part.n);
        index offset = out.gen_count();
        out.generators.insert(out.generators.end(), part.generators.begin(),
                              part.generators.end());
        for (index j = 0; j < part.rel_count(); ++j) {
            out.relation_grades.push_back(part.relation_grades[j]);
            F2Column col = part.relations[j];
            for (index& e : col)
                e += offset;
            out.relations.push_back(std::move(col));
        }
    }
    return out;
}

} // namespace gcode
