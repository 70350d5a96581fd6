#include <doctest.h>

#include <sstream>
#include <string>

#include "gcode/errors.hpp"
#include "gcode/random_gen.hpp"
#include "gcode/scc_io.hpp"

using namespace gcode;

namespace {

Presentation parse_pres(const std::string& text) {
    std::istringstream in(text);
    return parse_presentation(in, "<test>");
}

Graphcode parse_gc(const std::string& text) {
    std::istringstream in(text);
    return parse_graphcode(in, "<test>");
}

std::string write_pres(const Presentation& p) {
    std::ostringstream out;
    write_presentation(p, out);
    return out.str();
}

std::string write_gc(const Graphcode& g) {
    std::ostringstream out;
    write_graphcode(g, out);
    return out.str();
}

} // namespace

TEST_CASE("presentation: minimal files parse") {
    Presentation p = parse_pres("scc2020\n2\n0 1\n1 1 ;\n");
    CHECK(p.gen_count() == 1);
    CHECK(p.rel_count() == 0);
    CHECK(p.generators[0] == Bigrade{1, 1});
    CHECK(p.m == 1);
    CHECK(p.n == 1);

    Presentation q = parse_pres("scc2020\n2\n1 1\n3 2 ; 0\n1 1 ;\n");
    CHECK(q.gen_count() == 1);
    CHECK(q.rel_count() == 1);
    CHECK(q.relation_grades[0] == Bigrade{3, 2});
    CHECK(q.relations[0] == F2Column{0});
    CHECK(q.m == 3);
    CHECK(q.n == 2);
}

TEST_CASE("presentation: empty file roundtrip") {
    Presentation p;
    CHECK(write_pres(p) == "scc2020\n2\n0 0\n");
    Presentation back = parse_pres(write_pres(p));
    CHECK(back.gen_count() == 0);
    CHECK(back.rel_count() == 0);
}

TEST_CASE("presentation: comments, blank lines and CRLF are tolerated") {
    std::string text =
        "# a comment\r\n"
        "scc2020\r\n"
        "\r\n"
        "2\n"
        "1 1   # counts\n"
        "2 1 ; 0\n"
        "\n"
        "1 1 ;\n";
    Presentation p = parse_pres(text);
    CHECK(p.gen_count() == 1);
    CHECK(p.rel_count() == 1);
    CHECK(p.relation_grades[0] == Bigrade{2, 1});
}

TEST_CASE("presentation: parse failures carry a kind tag and location") {
    auto expect = [](const std::string& text, const std::string& kind) {
        try {
            parse_pres(text);
            FAIL("expected parse_error for kind " << kind);
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find(kind) != std::string::npos);
            CHECK(std::string(e.what()).find("<test>") != std::string::npos);
        }
    };
    expect("scc2021\n2\n0 0\n", "BadHeader");
    expect("", "MalformedLine"); // empty input: no header line to classify
    expect("scc2020\n3\n0 0\n", "BadParameterCount");
    expect("scc2020\n2\nzero 0\n", "MalformedLine");
    expect("scc2020\n2\n1 1\n2 1 0\n1 1 ;\n", "MalformedLine");          // missing ';'
    expect("scc2020\n2\n1 1\n2 1 ; 0 0\n1 1 ;\n", "MalformedLine");      // duplicate entry
    expect("scc2020\n2\n1 1\n2 1 ; 1\n1 1 ;\n", "IndexOutOfRange");      // only gen 0 exists
    expect("scc2020\n2\n0 1\n1 1 ;\nextra\n", "MalformedLine");          // trailing content
    expect("scc2020\n2\n0 1\n1 1 ; 0\n", "MalformedLine");               // gen line with entries
    expect("scc2020\n2\n1 1\n1 1 ; 0\n2 1 ;\n", "NonHomogeneous");       // rel below its gen
    expect("scc2020\n2\n0 1\n0 1 ;\n", "GradeOutOfRange");               // scale < 1
}

TEST_CASE("presentation: write . parse . write is byte identical") {
    Rng rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        Presentation p = random_presentation(rng, 8, 10, 6, 6);
        std::string once = write_pres(p);
        Presentation back = parse_pres(once);
        CHECK(back.gen_count() == p.gen_count());
        CHECK(back.rel_count() == p.rel_count());
        CHECK(back.generators == p.generators);
        CHECK(back.relation_grades == p.relation_grades);
        CHECK(back.relations == p.relations);
        CHECK(write_pres(back) == once);
    }
}

TEST_CASE("graphcode: minimal files parse") {
    Graphcode g = parse_gc("graphcode\n0 0\n0\n0\n");
    CHECK(g.vertex_count() == 0);
    CHECK(g.edge_count() == 0);

    Graphcode h = parse_gc("graphcode\n3 1\n1\n1 4 1\n0\n");
    CHECK(h.m == 3);
    CHECK(h.n == 1);
    CHECK(h.vertices == std::vector<Bar>{{1, 4, 1}});
}

TEST_CASE("graphcode: edges are sorted and deduplicated on parse") {
    Graphcode g = parse_gc(
        "graphcode\n2 2\n3\n1 3 1\n2 3 1\n1 3 2\n3\n1 2\n0 2\n1 2\n");
    CHECK(g.edge_count() == 2);
    CHECK(g.edges[0] == std::pair<index, index>{0, 2});
    CHECK(g.edges[1] == std::pair<index, index>{1, 2});
}

TEST_CASE("graphcode: parse failures carry a kind tag") {
    auto expect = [](const std::string& text, const std::string& kind) {
        try {
            parse_gc(text);
            FAIL("expected parse_error for kind " << kind);
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find(kind) != std::string::npos);
        }
    };
    expect("scc2020\n2\n0 0\n", "BadHeader");
    expect("graphcode\n2\n0\n0\n", "MalformedLine");
    expect("graphcode\n2 2\n1\n1 3\n0\n", "MalformedLine");
    expect("graphcode\n2 2\n1\n1 1 1\n0\n", "LabelInvariantViolated");   // b == d
    expect("graphcode\n2 2\n1\n1 3 1\n1\n0 1\n", "DanglingEdge");
    expect("graphcode\n2 2\n2\n1 3 1\n1 3 2\n1\n1 0\n", "InvalidGraphcode"); // downward edge
    expect("graphcode\n2 2\n2\n1 3 1\n2 3 2\n1\n0 1\n", "InvalidGraphcode"); // not entangled
}

TEST_CASE("graphcode: random roundtrips are byte stable") {
    Rng rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        Graphcode g = random_strict_graphcode(rng, 6, 4, 4);
        std::string once = write_gc(g);
        Graphcode back = parse_gc(once);
        CHECK(back == g);
        CHECK(write_gc(back) == once);
    }
}

TEST_CASE("sniff_format distinguishes the two formats") {
    std::istringstream a("# leading comment\nscc2020\n2\n0 0\n");
    CHECK(sniff_format(a) == "scc2020");
    std::istringstream b("graphcode\n0 0\n0\n0\n");
    CHECK(sniff_format(b) == "graphcode");
    std::istringstream c("who knows\n");
    CHECK(sniff_format(c).empty());
    std::istringstream d("");
    CHECK(sniff_format(d).empty());
}
