#include "gcode/scc_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gcode/errors.hpp"

namespace gcode {

namespace {

// Hands out meaningful lines: comments ('#' to end of line), CR and blank
// lines are stripped. Keeps the line number for error messages.
struct LineReader {
    std::istream& in;
    const std::string& source;
    long lineno = 0;

    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++lineno;
            if (auto hash = raw.find('#'); hash != std::string::npos)
                raw.erase(hash);
            while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
                raw.pop_back();
            std::size_t start = raw.find_first_not_of(" \t");
            if (start == std::string::npos)
                continue;
            out = raw.substr(start);
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& kind, const std::string& what) const {
        throw parse_error(kind + ": " + what + " (" + source + ":" +
                          std::to_string(lineno) + ")");
    }

    std::string require(const char* what) {
        std::string line;
        if (!next(line))
            fail("MalformedLine", std::string("missing ") + what);
        return line;
    }
};

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t)
        toks.push_back(t);
    return toks;
}

index parse_int(const std::string& tok, LineReader& r) {
    index value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        r.fail("MalformedLine", "expected integer, got '" + tok + "'");
    return value;
}

// "<scale> <height> ; <entries...>"; the entries stay unvalidated here.
void parse_graded_line(const std::string& line, LineReader& r, Bigrade& grade,
                       std::vector<index>& entries, bool allow_entries) {
    auto toks = tokens_of(line);
    if (toks.size() < 3 || toks[2] != ";")
        r.fail("MalformedLine", "expected '<scale> <height> ; ...'");
    grade.scale = parse_int(toks[0], r);
    grade.height = parse_int(toks[1], r);
    entries.clear();
    if (!allow_entries && toks.size() > 3)
        r.fail("MalformedLine", "generator line carries entries");
    for (std::size_t i = 3; i < toks.size(); ++i)
        entries.push_back(parse_int(toks[i], r));
}

} // namespace

Presentation parse_presentation(std::istream& in, const std::string& source) {
    LineReader r{in, source};

    std::string line = r.require("header");
    if (line != "scc2020")
        r.fail("BadHeader", "expected 'scc2020', got '" + line + "'");

    line = r.require("parameter count");
    if (parse_int(line, r) != 2)
        r.fail("BadParameterCount", "expected 2 parameters, got '" + line + "'");

    line = r.require("block sizes");
    auto sizes = tokens_of(line);
    if (sizes.size() != 2)
        r.fail("MalformedLine", "expected '<relations> <generators>'");
    index rels = parse_int(sizes[0], r);
    index gens = parse_int(sizes[1], r);
    if (rels < 0 || gens < 0)
        r.fail("MalformedLine", "negative block size");

    Presentation p;
    p.relations.resize(rels);
    p.relation_grades.resize(rels);
    for (index j = 0; j < rels; ++j) {
        line = r.require("relation line");
        parse_graded_line(line, r, p.relation_grades[j], p.relations[j], true);
        std::sort(p.relations[j].begin(), p.relations[j].end());
        for (std::size_t e = 0; e + 1 < p.relations[j].size(); ++e)
            if (p.relations[j][e] == p.relations[j][e + 1])
                r.fail("MalformedLine", "duplicate generator index in relation " +
                                            std::to_string(j));
        for (index e : p.relations[j])
            if (e < 0 || e >= gens)
                r.fail("IndexOutOfRange", "relation " + std::to_string(j) +
                                              " references generator " + std::to_string(e) +
                                              " of " + std::to_string(gens));
    }
    p.generators.resize(gens);
    std::vector<index> dummy;
    for (index i = 0; i < gens; ++i) {
        line = r.require("generator line");
        parse_graded_line(line, r, p.generators[i], dummy, false);
    }
    if (std::string extra; r.next(extra))
        r.fail("MalformedLine", "trailing content '" + extra + "'");

    infer_extents(p);
    try {
        validate(p); // NonHomogeneous, GradeOutOfRange
    } catch (const invariant_error& e) {
        // A file that parses into a broken structure is a bad file.
        throw parse_error(std::string(e.what()) + " (" + source + ")");
    }
    return p;
}

void write_presentation(const Presentation& p, std::ostream& out) {
    out << "scc2020\n2\n";
    out << p.rel_count() << ' ' << p.gen_count() << '\n';
    for (index j = 0; j < p.rel_count(); ++j) {
        out << p.relation_grades[j].scale << ' ' << p.relation_grades[j].height << " ;";
        for (index e : p.relations[j])
            out << ' ' << e;
        out << '\n';
    }
    for (const Bigrade& g : p.generators)
        out << g.scale << ' ' << g.height << " ;\n";
}

Graphcode parse_graphcode(std::istream& in, const std::string& source) {
    LineReader r{in, source};

    std::string line = r.require("header");
    if (line != "graphcode")
        r.fail("BadHeader", "expected 'graphcode', got '" + line + "'");

    line = r.require("grid extents");
    auto ext = tokens_of(line);
    if (ext.size() != 2)
        r.fail("MalformedLine", "expected '<m> <n>'");
    Graphcode g;
    g.m = parse_int(ext[0], r);
    g.n = parse_int(ext[1], r);

    line = r.require("vertex count");
    index V = parse_int(line, r);
    if (V < 0)
        r.fail("MalformedLine", "negative vertex count");
    g.vertices.resize(V);
    for (index v = 0; v < V; ++v) {
        line = r.require("vertex line");
        auto toks = tokens_of(line);
        if (toks.size() != 3)
            r.fail("MalformedLine", "expected '<b> <d> <h>'");
        g.vertices[v] = Bar{parse_int(toks[0], r), parse_int(toks[1], r),
                            parse_int(toks[2], r)};
    }

    line = r.require("edge count");
    index E = parse_int(line, r);
    if (E < 0)
        r.fail("MalformedLine", "negative edge count");
    g.edges.reserve(E);
    for (index e = 0; e < E; ++e) {
        line = r.require("edge line");
        auto toks = tokens_of(line);
        if (toks.size() != 2)
            r.fail("MalformedLine", "expected '<u> <v>'");
        g.edges.emplace_back(parse_int(toks[0], r), parse_int(toks[1], r));
    }
    if (std::string extra; r.next(extra))
        r.fail("MalformedLine", "trailing content '" + extra + "'");

    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    try {
        validate(g); // LabelInvariantViolated, DanglingEdge, InvalidGraphcode
    } catch (const invariant_error& e) {
        throw parse_error(std::string(e.what()) + " (" + source + ")");
    }
    return g;
}

void write_graphcode(const Graphcode& g, std::ostream& out) {
    out << "graphcode\n";
    out << g.m << ' ' << g.n << '\n';
    out << g.vertex_count() << '\n';
    for (const Bar& bar : g.vertices)
        out << bar.b << ' ' << bar.d << ' ' << bar.h << '\n';
    out << g.edge_count() << '\n';
    for (auto [u, v] : g.edges)
        out << u << ' ' << v << '\n';
}

static std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("BadHeader: cannot open '" + path + "'");
    return in;
}

static std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw parse_error("BadHeader: cannot open '" + path + "' for writing");
    return out;
}

Presentation load_presentation(const std::string& path) {
    auto in = open_input(path);
    return parse_presentation(in, path);
}

void save_presentation(const Presentation& p, const std::string& path) {
    auto out = open_output(path);
    write_presentation(p, out);
}

Graphcode load_graphcode(const std::string& path) {
    auto in = open_input(path);
    return parse_graphcode(in, path);
}

void save_graphcode(const Graphcode& g, const std::string& path) {
    auto out = open_output(path);
    write_graphcode(g, out);
}

std::string sniff_format(std::istream& in) {
    std::string none;
    LineReader r{in, none};
    std::string line;
    if (!r.next(line))
        return "";
    if (line == "scc2020" || line == "graphcode")
        return line;
    return "";
}

} // namespace gcode
