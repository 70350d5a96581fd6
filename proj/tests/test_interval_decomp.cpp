#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "gcode/builder.hpp"
#include "gcode/errors.hpp"
#include "gcode/interval_decomp.hpp"
#include "gcode/oracle.hpp"
#include "gcode/random_gen.hpp"

using namespace gcode;

namespace {

EtaSequence two_heights(index m, std::vector<Bar> lower, std::vector<Bar> upper,
                        std::vector<std::pair<index, index>> entries) {
    EtaSequence s;
    s.m = m;
    s.n = 2;
    s.bars = {std::move(lower), std::move(upper)};
    s.eta = {EtaMatrix(static_cast<index>(s.bars[1].size()),
                       static_cast<index>(s.bars[0].size()))};
    for (auto [r, c] : entries) s.eta[0].at(r, c) = 1;
    return s;
}

} // namespace

TEST_CASE("eta_from_graphcode on tiny graphcodes") {
    Graphcode empty;
    EtaSequence s = eta_from_graphcode(empty);
    CHECK(s.n == 0);
    CHECK(s.bars.empty());
    CHECK(s.eta.empty());

    Graphcode path;
    path.m = 3;
    path.n = 2;
    path.vertices = {{1, 3, 1}, {1, 2, 2}};
    path.edges = {{0, 1}};
    s = eta_from_graphcode(path);
    validate(s);
    REQUIRE(s.n == 2);
    CHECK(s.bars_at(1) == std::vector<Bar>{{1, 3, 1}});
    CHECK(s.bars_at(2) == std::vector<Bar>{{1, 2, 2}});
    REQUIRE(s.eta_at(1).rows == 1);
    REQUIRE(s.eta_at(1).cols == 1);
    CHECK(s.eta_at(1).at(0, 0) == 1);
}

TEST_CASE("eta_from_graphcode merges edges from two bars") {
    Graphcode g;
    g.m = 3;
    g.n = 2;
    g.vertices = {{1, 3, 1}, {2, 4, 1}, {1, 3, 2}};
    g.edges = {{0, 2}, {1, 2}};
    validate(g);
    EtaSequence s = eta_from_graphcode(g);
    validate(s);
    CHECK(s.bars_at(1) == std::vector<Bar>{{1, 3, 1}, {2, 4, 1}});
    CHECK(s.bars_at(2) == std::vector<Bar>{{1, 3, 2}});
    REQUIRE(s.eta_at(1).rows == 1);
    REQUIRE(s.eta_at(1).cols == 2);
    CHECK(s.eta_at(1).at(0, 0) == 1);
    CHECK(s.eta_at(1).at(0, 1) == 1);
}

TEST_CASE("eta_from_graphcode expands generalized inputs") {
    Graphcode g;
    g.m = 2;
    g.n = 3;
    g.vertices = {{1, 3, 1}, {1, 2, 3}};
    g.edges = {{0, 1}};
    validate(g);
    EtaSequence s = eta_from_graphcode(g);
    validate(s);
    CHECK(s.bars_at(2) == std::vector<Bar>{{1, 3, 2}});
    CHECK(s.eta_at(1).at(0, 0) == 1);
    CHECK(s.eta_at(2).at(0, 0) == 1);
}

TEST_CASE("eta_from_graphcode rejects duplicate bars at one height") {
    Graphcode g;
    g.m = 2;
    g.n = 1;
    g.vertices = {{1, 3, 1}, {1, 3, 1}};
    CHECK_THROWS_AS(eta_from_graphcode(g), precondition_error);
}

TEST_CASE("eta sequence validation catches each invariant") {
    auto expect = [](EtaSequence s, const std::string& kind) {
        try {
            validate(s);
            FAIL("expected failure of kind " << kind);
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find(kind) != std::string::npos);
        }
    };

    EtaSequence good = two_heights(3, {{1, 3, 1}}, {{1, 2, 2}}, {{0, 0}});
    validate(good);

    EtaSequence bad = good;
    bad.bars[0][0].d = 9;
    expect(bad, "BarOutOfRange");

    bad = two_heights(3, {{2, 4, 1}, {1, 3, 1}}, {{1, 2, 2}}, {});
    expect(bad, "BarsUnsorted");

    bad = two_heights(3, {{1, 3, 1}, {1, 3, 1}}, {{1, 2, 2}}, {});
    expect(bad, "DuplicateBars");

    bad = good;
    bad.eta[0].a[0] = 2;
    expect(bad, "BadEntry");

    // Entry whose row bar is not entangled below the column bar.
    bad = two_heights(3, {{1, 2, 1}}, {{2, 4, 2}}, {{0, 0}});
    expect(bad, "SupportViolated");

    bad = good;
    bad.eta[0] = EtaMatrix(2, 1);
    expect(bad, "ShapeMismatch");
}

TEST_CASE("column addition truncates entries outside the support") {
    // Moving the only entry onto a column whose bar the row cannot map into.
    EtaSequence s = two_heights(5, {{1, 4, 1}, {2, 5, 1}}, {{3, 6, 2}}, {});
    s.eta[0].at(0, 0) = 1; // raw construction; not a valid sequence
    std::uint64_t counter = 0;
    apply_column_add(s, 1, 0, 1, &counter);
    CHECK(s.eta[0].at(0, 0) == 1);
    CHECK(s.eta[0].at(0, 1) == 0);
    CHECK(counter == 1);

    // The same effect inside a valid sequence.
    EtaSequence t = two_heights(5, {{1, 4, 1}, {3, 6, 1}}, {{1, 3, 2}}, {{0, 0}});
    validate(t);
    apply_column_add(t, 1, 0, 1);
    CHECK(t.eta[0].at(0, 0) == 1);
    CHECK(t.eta[0].at(0, 1) == 0);
}

TEST_CASE("column addition preconditions") {
    EtaSequence s = two_heights(3, {{1, 3, 1}, {2, 4, 1}}, {{2, 3, 2}}, {});
    CHECK_THROWS_AS(apply_column_add(s, 1, 1, 0), precondition_error);
    CHECK_THROWS_AS(apply_column_add(s, 1, 0, 0), precondition_error);
    CHECK_THROWS_AS(apply_column_add(s, 2, 0, 1), precondition_error);

    // Non-entangled columns cannot be combined.
    EtaSequence u = two_heights(3, {{1, 2, 1}, {3, 4, 1}}, {{1, 2, 2}}, {});
    CHECK_THROWS_AS(apply_column_add(u, 1, 0, 1), precondition_error);
}

TEST_CASE("row addition carries its companion column operation") {
    // Three heights; a row operation on eta(1) touches eta(2) as well.
    EtaSequence s;
    s.m = 3;
    s.n = 3;
    s.bars = {{{2, 4, 1}}, {{1, 4, 2}, {2, 4, 2}}, {{1, 3, 3}}};
    s.eta = {EtaMatrix(2, 1), EtaMatrix(1, 2)};
    s.eta[0].at(1, 0) = 1; // [2,4) at height 2 receives the height-1 bar
    s.eta[1].at(0, 0) = 1; // [1,3) at height 3 receives [1,4)
    validate(s);

    std::uint64_t counter = 0;
    // row_0 += row_1 on eta(1): e_1 -> e_1 + e_0 at height 2, so the
    // companion on eta(2) is col_1 += col_0.
    apply_row_add(s, 1, 1, 0, &counter);
    CHECK(counter == 2);
    CHECK(s.eta[0].at(0, 0) == 1);
    CHECK(s.eta[0].at(1, 0) == 1);
    CHECK(s.eta[1].at(0, 0) == 1);
    CHECK(s.eta[1].at(0, 1) == 1);
    validate(s); // support still holds after both halves

    // The top matrix has no companion.
    counter = 0;
    EtaSequence t = two_heights(3, {{1, 4, 1}, {2, 4, 1}}, {{1, 4, 2}, {2, 4, 2}},
                                {{0, 0}, {1, 1}});
    validate(t);
    apply_row_add(t, 1, 1, 0, &counter);
    CHECK(counter == 1);
}

TEST_CASE("scrambling keeps the sequence valid") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        StaircaseSum sum = random_staircase_sum(rng, 4, 6, 4);
        validate(sum.eta);
        scramble_eta(sum.eta, rng, 12);
        validate(sum.eta);
    }
}

TEST_CASE("valid operation table at height 1 is entanglement") {
    EtaSequence s = two_heights(4, {{1, 2, 1}, {1, 4, 1}, {3, 5, 1}}, {{1, 2, 2}}, {});
    ValidOpTable t = update_valid_ops(s, 1, nullptr);
    CHECK(t(0, 1)); // [1,2) maps onto [1,4)
    CHECK(!t(0, 2)); // [1,2) and [3,5) are disjoint
    CHECK(t(1, 2)); // [1,4) maps onto [3,5)
}

TEST_CASE("valid operation table consults the matrix below") {
    // Three heights, no bars at height 1, identity matching at the top.
    EtaSequence s;
    s.m = 7;
    s.n = 3;
    s.bars = {{},
              {{2, 6, 2}, {3, 5, 2}, {5, 7, 2}},
              {{1, 4, 3}, {3, 5, 3}, {3, 6, 3}}};
    s.eta = {EtaMatrix(3, 0), EtaMatrix(3, 3)};
    for (index i = 0; i < 3; ++i) s.eta[1].at(i, i) = 1;
    validate(s);

    ValidOpTable t1 = update_valid_ops(s, 1, nullptr);
    ValidOpTable t2 = update_valid_ops(s, 2, &t1);
    // With no columns below, validity at height 2 is plain entanglement.
    CHECK(!t2(0, 1));
    CHECK(t2(0, 2));
    CHECK(!t2(1, 2));

    ValidOpTable t3 = update_valid_ops(s, 3, &t2);
    // [1,4) -> [3,5): predecessors [2,6) -> [3,5) give no morphism below.
    CHECK(!t3(0, 1));
    // [1,4) -> [3,6): the predecessor [5,7) is disjoint from [1,4).
    CHECK(t3(0, 2));
    // [3,5) -> [3,6): the predecessor [5,7) is disjoint from [3,5).
    CHECK(t3(1, 2));
}

TEST_CASE("valid operation table threads through chained morphisms") {
    EtaSequence s;
    s.m = 4;
    s.n = 2;
    s.bars = {{{1, 4, 1}, {2, 5, 1}}, {{1, 3, 2}, {2, 5, 2}}};
    s.eta = {EtaMatrix(2, 2)};
    s.eta[0].at(0, 0) = 1;
    s.eta[0].at(1, 1) = 1;
    validate(s);

    ValidOpTable t1 = update_valid_ops(s, 1, nullptr);
    CHECK(t1(0, 1));
    ValidOpTable t2 = update_valid_ops(s, 2, &t1);
    // Rows 0,1 have pivots 0,1 below; [1,3) overlaps [2,5), so only the
    // recursive condition applies, and it holds.
    CHECK(t2(0, 1));
}

TEST_CASE("normal form predicate") {
    EtaSequence s = two_heights(3, {{1, 3, 1}, {2, 4, 1}}, {{1, 3, 2}, {2, 4, 2}},
                                {{0, 0}, {1, 1}});
    CHECK(normal_form_check(s));
    s.eta[0].at(0, 1) = 1;
    CHECK(!normal_form_check(s));
}

TEST_CASE("decide on a single path") {
    EtaSequence s = two_heights(3, {{1, 3, 1}}, {{1, 2, 2}}, {{0, 0}});
    DecisionResult r = decide_interval_decomposition(s);
    REQUIRE(r.decomposed);
    REQUIRE(r.intervals.size() == 1);
    CHECK(r.intervals[0].slices ==
          std::vector<StaircaseSlice>{{1, 1, 3}, {2, 1, 2}});
    CHECK(r.additions == 0);
}

TEST_CASE("decide untangles a mixed basis") {
    EtaSequence s = two_heights(3, {{1, 4, 1}, {2, 4, 1}}, {{1, 4, 2}, {2, 4, 2}},
                                {{0, 0}, {0, 1}, {1, 1}});
    validate(s);
    DecisionResult r = decide_interval_decomposition(s);
    REQUIRE(r.decomposed);
    REQUIRE(r.intervals.size() == 2);
    CHECK(r.intervals[0].slices ==
          std::vector<StaircaseSlice>{{1, 1, 4}, {2, 1, 4}});
    CHECK(r.intervals[1].slices ==
          std::vector<StaircaseSlice>{{1, 2, 4}, {2, 2, 4}});
    CHECK(r.additions == 1);
}

TEST_CASE("decide fails with row_elimination_failed on the double-edge module") {
    // One bar at height 1 feeding two bars at height 2 whose column cannot
    // be brought to a single entry.
    Presentation p;
    p.m = 3;
    p.n = 2;
    p.generators = {{1, 2}, {2, 1}};
    p.relation_grades = {{3, 2}};
    p.relations = {{0, 1}};

    Graphcode g = build_graphcode(p, BuildMode::uncompressed);
    EtaSequence s = eta_from_graphcode(g);
    DecisionResult r = decide_interval_decomposition(s);
    REQUIRE(!r.decomposed);
    CHECK(r.fail_height == 1);
    CHECK(r.fail_step == FailStep::row_elimination_failed);

    // The exhaustive oracle agrees.
    CHECK(!is_interval_decomposable_bruteforce(module_from_presentation(p)));
}

TEST_CASE("decide fails with pivot_conflict on colliding columns") {
    EtaSequence s = two_heights(5, {{2, 6, 1}, {3, 5, 1}}, {{2, 4, 2}},
                                {{0, 0}, {0, 1}});
    validate(s);
    DecisionResult r = decide_interval_decomposition(s);
    REQUIRE(!r.decomposed);
    CHECK(r.fail_height == 1);
    CHECK(r.fail_step == FailStep::pivot_conflict);
    CHECK(r.fail_bars == std::vector<index>{0, 0, 1});
}

TEST_CASE("decide recovers scrambled staircase sums") {
    Rng rng(78);
    std::uint64_t worst = 0;
    for (int trial = 0; trial < 150; ++trial) {
        StaircaseSum sum = random_staircase_sum(rng, 4, 5, 5);
        scramble_eta(sum.eta, rng, 12);
        DecisionResult r = decide_interval_decomposition(sum.eta);
        REQUIRE(r.decomposed);
        CHECK(r.intervals == sum.intervals);

        // Operation count stays within the cubic bound.
        std::uint64_t total = 0, smax = 0;
        for (const auto& bars : sum.eta.bars) {
            total += bars.size();
            smax = std::max<std::uint64_t>(smax, bars.size());
        }
        std::uint64_t bound = 8 * std::min(total * total * total,
                                           sum.eta.n * smax * smax * smax);
        CHECK(r.additions <= bound);
        worst = std::max(worst, r.additions);
    }
    CHECK(worst > 0); // the corpus actually exercises operations
}
