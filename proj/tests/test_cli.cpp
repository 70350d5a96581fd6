#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gcode/scc_io.hpp"

using namespace gcode;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

const char* cli_path() {
    const char* p = std::getenv("GRAPHCODE_CLI");
    REQUIRE_MESSAGE(p != nullptr, "GRAPHCODE_CLI must point at the tool");
    return p;
}

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "gcode_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

RunResult run(const std::string& args) {
    fs::path out = work_dir() / "stdout.txt";
    fs::path err = work_dir() / "stderr.txt";
    std::string cmd = std::string("'") + cli_path() + "' " + args + " > '" +
                      out.string() + "' 2> '" + err.string() + "'";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

const std::string kTinyPresentation = "scc2020\n2\n1 1\n3 2 ; 0\n1 1 ;\n";
const std::string kDoubleEdge = "scc2020\n2\n1 2\n3 2 ; 0 1\n1 2 ;\n2 1 ;\n";
const std::string kPathGraphcode = "graphcode\n3 2\n2\n1 3 1\n1 2 2\n1\n0 1\n";

} // namespace

TEST_CASE("build produces a loadable graphcode") {
    fs::path in = work_dir() / "tiny.scc";
    fs::path out = work_dir() / "tiny.gc";
    spit(in, kTinyPresentation);

    RunResult r = run("build '" + in.string() + "' -o '" + out.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("mode=compressed") != std::string::npos);
    Graphcode g = load_graphcode(out.string());
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);

    RunResult u = run("build --uncompressed '" + in.string() + "'");
    CHECK(u.exit_code == 0);
    std::istringstream buf(u.out);
    Graphcode gu = parse_graphcode(buf);
    CHECK(gu.vertex_count() == 2);
}

TEST_CASE("build on an empty presentation") {
    fs::path in = work_dir() / "empty.scc";
    spit(in, "scc2020\n2\n0 0\n");
    RunResult r = run("build '" + in.string() + "'");
    CHECK(r.exit_code == 0);
    std::istringstream buf(r.out);
    CHECK(parse_graphcode(buf).vertex_count() == 0);
}

TEST_CASE("parse failures exit with 2") {
    fs::path in = work_dir() / "broken.scc";
    spit(in, "scc1999\n2\n0 0\n");
    RunResult r = run("build '" + in.string() + "'");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("BadHeader") != std::string::npos);

    RunResult missing = run("build '" + (work_dir() / "no_such_file.scc").string() + "'");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("intervals reports YES with the staircases") {
    fs::path in = work_dir() / "path.gc";
    spit(in, kPathGraphcode);
    RunResult r = run("intervals '" + in.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "YES\nintervals 1\ninterval 2\n1 1 3\n2 1 2\n");
}

TEST_CASE("intervals reports NO with the failing stage") {
    fs::path in = work_dir() / "double.scc";
    spit(in, kDoubleEdge);
    RunResult r = run("intervals '" + in.string() + "'");
    CHECK(r.exit_code == 1);
    CHECK(r.out == "NO\nheight=1 step=row_elimination_failed\n");
}

TEST_CASE("components writes one file per part") {
    fs::path in = work_dir() / "two_parts.gc";
    spit(in, "graphcode\n3 2\n4\n1 3 1\n1 3 2\n2 4 1\n2 4 2\n2\n0 1\n2 3\n");
    fs::path outdir = work_dir() / "parts";
    RunResult r = run("components '" + in.string() + "' '" + outdir.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("components=2") != std::string::npos);
    Graphcode a = load_graphcode((outdir / "component_1.gc").string());
    Graphcode b = load_graphcode((outdir / "component_2.gc").string());
    CHECK(a.vertex_count() == 2);
    CHECK(b.vertex_count() == 2);
    CHECK(!fs::exists(outdir / "component_3.gc"));
}

TEST_CASE("present inverts build") {
    fs::path in = work_dir() / "path2.gc";
    spit(in, kPathGraphcode);
    RunResult r = run("present '" + in.string() + "'");
    CHECK(r.exit_code == 0);
    std::istringstream buf(r.out);
    Presentation p = parse_presentation(buf);
    CHECK(p.gen_count() == 2);
    CHECK(p.rel_count() == 3);

    RunResult m = run("present --minimize '" + in.string() + "'");
    CHECK(m.exit_code == 0);
    std::istringstream mbuf(m.out);
    Presentation q = parse_presentation(mbuf);
    CHECK(q.gen_count() <= p.gen_count());
    CHECK(q.rel_count() <= p.rel_count());
}

TEST_CASE("oracle compare judges equality") {
    fs::path pres = work_dir() / "cmp.scc";
    fs::path gc = work_dir() / "cmp.gc";
    spit(pres, kTinyPresentation);
    REQUIRE(run("build '" + pres.string() + "' -o '" + gc.string() + "'").exit_code == 0);

    RunResult same = run("oracle compare '" + pres.string() + "' '" + gc.string() + "'");
    CHECK(same.exit_code == 0);
    CHECK(same.out.find("dimension_function: equal") != std::string::npos);
    CHECK(same.out.find("rank_invariant: equal") != std::string::npos);
    CHECK(same.out.find("isomorphic: yes") != std::string::npos);

    fs::path other = work_dir() / "other.scc";
    spit(other, "scc2020\n2\n0 1\n1 1 ;\n");
    RunResult diff = run("oracle compare '" + pres.string() + "' '" + other.string() + "'");
    CHECK(diff.exit_code == 1);
    CHECK(diff.out.find("dimension_function: different") != std::string::npos);
}

TEST_CASE("gen is deterministic per seed") {
    RunResult a = run("gen presentation --seed 5");
    RunResult b = run("gen presentation --seed 5");
    RunResult c = run("gen presentation --seed 6");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    std::istringstream buf(a.out);
    parse_presentation(buf); // must be well-formed

    RunResult d = run("gen graphcode --seed 9");
    RunResult e = run("gen graphcode --seed 9");
    CHECK(d.exit_code == 0);
    CHECK(d.out == e.out);
    std::istringstream gbuf(d.out);
    parse_graphcode(gbuf);
}

TEST_CASE("stats works on both file kinds") {
    fs::path gc = work_dir() / "stats.gc";
    spit(gc, kPathGraphcode);
    RunResult r = run("stats '" + gc.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("vertices=2") != std::string::npos);

    fs::path pres = work_dir() / "stats.scc";
    spit(pres, kTinyPresentation);
    RunResult s = run("stats '" + pres.string() + "'");
    CHECK(s.exit_code == 0);
}
