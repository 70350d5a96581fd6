#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gcode/builder.hpp"
#include "gcode/errors.hpp"
#include "gcode/graphcode.hpp"
#include "gcode/interval_decomp.hpp"
#include "gcode/oracle.hpp"
#include "gcode/presentation_gen.hpp"
#include "gcode/random_gen.hpp"
#include "gcode/scc_io.hpp"

namespace {

using namespace gcode;

void emit_presentation(const Presentation& p, const std::string& out) {
    if (out.empty()) {
        write_presentation(p, std::cout);
    } else {
        save_presentation(p, out);
    }
}

void emit_graphcode(const Graphcode& g, const std::string& out) {
    if (out.empty()) {
        write_graphcode(g, std::cout);
    } else {
        save_graphcode(g, out);
    }
}

std::string sniff_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("BadHeader: cannot open '" + path + "'");
    return sniff_format(in);
}

// Accepts either file format and lands on a graphcode.
Graphcode graphcode_from_any(const std::string& path) {
    std::string kind = sniff_file(path);
    if (kind == "graphcode")
        return load_graphcode(path);
    return build_graphcode(load_presentation(path), BuildMode::compressed);
}

GridModule module_from_any(const std::string& path) {
    std::string kind = sniff_file(path);
    if (kind == "graphcode")
        return module_from_graphcode(load_graphcode(path));
    return module_from_presentation(load_presentation(path));
}

void print_build_stats(const char* mode, const BuildStats& st) {
    std::cerr << "mode=" << mode << " gens=" << st.gens << " rels=" << st.rels
              << " vertices=" << st.vertices << " edges=" << st.edges
              << " components=" << st.components
              << " column_additions=" << st.column_additions << " wall_ms=" << st.wall_ms
              << "\n";
}

int cmd_build(const std::string& in, const std::string& out, bool uncompressed,
              bool fully_compress) {
    Presentation p = load_presentation(in);
    BuildStats st;
    BuildMode mode = uncompressed ? BuildMode::uncompressed : BuildMode::compressed;
    Graphcode g = build_graphcode(p, mode, &st);
    if (fully_compress) {
        g = compress(g);
        st.vertices = g.vertex_count();
        st.edges = g.edge_count();
    }
    emit_graphcode(g, out);
    print_build_stats(uncompressed ? "uncompressed" : "compressed", st);
    return 0;
}

int cmd_components(const std::string& in, const std::string& outdir) {
    Graphcode g = load_graphcode(in);
    std::vector<Graphcode> parts = connected_components(g);
    std::filesystem::create_directories(outdir);
    for (std::size_t k = 0; k < parts.size(); ++k)
        save_graphcode(parts[k], outdir + "/component_" + std::to_string(k + 1) + ".gc");
    std::cerr << "components=" << parts.size() << "\n";
    return 0;
}

int cmd_present(const std::string& in, const std::string& out, bool minimized) {
    Graphcode g = load_graphcode(in);
    Presentation p = presentation_from_graphcode(g);
    if (minimized)
        p = minimize(p);
    emit_presentation(p, out);
    std::cerr << "gens=" << p.gen_count() << " rels=" << p.rel_count() << "\n";
    return 0;
}

int cmd_intervals(const std::string& in) {
    EtaSequence s = eta_from_graphcode(graphcode_from_any(in));
    DecisionResult res = decide_interval_decomposition(s);
    if (!res.decomposed) {
        std::cout << "NO\n";
        std::cout << "height=" << res.fail_height << " step="
                  << (res.fail_step == FailStep::pivot_conflict ? "pivot_conflict"
                                                                : "row_elimination_failed")
                  << "\n";
        return 1;
    }
    std::cout << "YES\n";
    std::cout << "intervals " << res.intervals.size() << "\n";
    for (const StaircaseInterval& iv : res.intervals) {
        std::cout << "interval " << iv.slices.size() << "\n";
        for (const StaircaseSlice& sl : iv.slices)
            std::cout << sl.h << " " << sl.b << " " << sl.d << "\n";
    }
    std::cerr << "additions=" << res.additions << "\n";
    return 0;
}

int cmd_oracle_compare(const std::string& a, const std::string& b) {
    GridModule ma = module_from_any(a);
    GridModule mb = module_from_any(b);
    bool ok = true;

    bool dims_equal = ma.m == mb.m && ma.n == mb.n && ma.dims == mb.dims;
    std::cout << "dimension_function: " << (dims_equal ? "equal" : "different") << "\n";
    ok = ok && dims_equal;

    bool ranks_equal = dims_equal && rank_invariant(ma) == rank_invariant(mb);
    std::cout << "rank_invariant: " << (ranks_equal ? "equal" : "different") << "\n";
    ok = ok && ranks_equal;

    if (dims_equal) {
        try {
            bool iso = are_isomorphic(ma, mb);
            std::cout << "isomorphic: " << (iso ? "yes" : "no") << "\n";
            ok = ok && iso;
        } catch (const budget_error&) {
            std::cout << "isomorphic: skipped (budget exceeded)\n";
        }
    } else {
        std::cout << "isomorphic: no\n";
    }
    return ok ? 0 : 1;
}

int cmd_gen_presentation(std::uint64_t seed, const std::string& out, gcode::index max_gens,
                         gcode::index max_rels, gcode::index max_m, gcode::index max_n) {
    Rng rng(seed);
    emit_presentation(random_presentation(rng, max_gens, max_rels, max_m, max_n), out);
    return 0;
}

int cmd_gen_graphcode(std::uint64_t seed, const std::string& out, gcode::index max_m,
                      gcode::index max_n, gcode::index max_bars) {
    Rng rng(seed);
    emit_graphcode(random_strict_graphcode(rng, max_m, max_n, max_bars), out);
    return 0;
}

int cmd_stats(const std::string& in) {
    std::string kind = sniff_file(in);
    if (kind == "graphcode") {
        Graphcode g = load_graphcode(in);
        std::cout << "vertices=" << g.vertex_count() << " edges=" << g.edge_count()
                  << " components=" << connected_components(g).size() << "\n";
        return 0;
    }
    Presentation p = load_presentation(in);
    BuildStats st;
    build_graphcode(p, BuildMode::compressed, &st);
    print_build_stats("compressed", st);
    build_graphcode(p, BuildMode::uncompressed, &st);
    print_build_stats("uncompressed", st);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphcode: two-parameter persistence via compressed graphcodes"};
    app.require_subcommand(1);
    std::function<int()> action;

    std::string in, out, outdir = ".";
    bool uncompressed = false, fully_compress = false, minimized = false;
    std::uint64_t seed = 1;
    gcode::index max_gens = 12, max_rels = 16, max_m = 8, max_n = 8, max_bars = 6;

    auto* build = app.add_subcommand("build", "presentation file -> graphcode file");
    build->add_option("input", in)->required();
    build->add_option("-o,--output", out);
    build->add_flag("--uncompressed", uncompressed);
    build->add_flag("--fully-compress", fully_compress);
    build->callback([&] { action = [&] { return cmd_build(in, out, uncompressed, fully_compress); }; });

    auto* components = app.add_subcommand("components", "split a graphcode into weak components");
    components->add_option("input", in)->required();
    components->add_option("outdir", outdir);
    components->callback([&] { action = [&] { return cmd_components(in, outdir); }; });

    auto* present = app.add_subcommand("present", "graphcode file -> presentation file");
    present->add_option("input", in)->required();
    present->add_option("-o,--output", out);
    present->add_flag("--minimize", minimized);
    present->callback([&] { action = [&] { return cmd_present(in, out, minimized); }; });

    auto* intervals = app.add_subcommand("intervals", "decide interval-decomposability");
    intervals->add_option("input", in)->required();
    intervals->callback([&] { action = [&] { return cmd_intervals(in); }; });

    auto* oracle = app.add_subcommand("oracle", "independent module-level checks");
    oracle->require_subcommand(1);
    std::string second;
    auto* compare = oracle->add_subcommand("compare", "compare the presented modules of two files");
    compare->add_option("a", in)->required();
    compare->add_option("b", second)->required();
    compare->callback([&] { action = [&] { return cmd_oracle_compare(in, second); }; });

    auto* gen = app.add_subcommand("gen", "reproducible random instances");
    gen->require_subcommand(1);
    auto* gen_p = gen->add_subcommand("presentation");
    gen_p->add_option("--seed", seed);
    gen_p->add_option("-o,--output", out);
    gen_p->add_option("--max-gens", max_gens);
    gen_p->add_option("--max-rels", max_rels);
    gen_p->add_option("--max-m", max_m);
    gen_p->add_option("--max-n", max_n);
    gen_p->callback([&] {
        action = [&] { return cmd_gen_presentation(seed, out, max_gens, max_rels, max_m, max_n); };
    });
    auto* gen_g = gen->add_subcommand("graphcode");
    gen_g->add_option("--seed", seed);
    gen_g->add_option("-o,--output", out);
    gen_g->add_option("--max-m", max_m);
    gen_g->add_option("--max-n", max_n);
    gen_g->add_option("--max-bars", max_bars);
    gen_g->callback([&] {
        action = [&] { return cmd_gen_graphcode(seed, out, max_m, max_n, max_bars); };
    });

    auto* stats = app.add_subcommand("stats", "counters for either file kind");
    stats->add_option("input", in)->required();
    stats->callback([&] { action = [&] { return cmd_stats(in); }; });

    CLI11_PARSE(app, argc, argv);
    try {
        return action();
    } catch (const gcode::parse_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const gcode::invariant_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const gcode::precondition_error& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const gcode::budget_error& e) {
        std::cerr << e.what() << "\n";
        return 5;
    }
}
