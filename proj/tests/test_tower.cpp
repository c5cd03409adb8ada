#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ptower/tower.hpp"

using namespace ptower;

TEST(Tower, MaterializeFig7Collapse) {
    auto tb = fixtures::fig7();
    pointwise_tower pt = materialize(tb.tower);
    const poset& p = *tb.base;
    grade_id x4 = p.id_of("x4"), x5 = p.id_of("x5");
    uint32_t e = pt.edge_index(x4, x5);

    // uv maps to uw under the collapse v -> w
    EXPECT_TRUE(pt.at(x4).count(simplex({"u", "v"})));
    EXPECT_EQ(pt.map_simplex(e, simplex({"u", "v"})), simplex({"u", "w"}));
    // vw degenerates to a vertex and leaves degree one
    EXPECT_EQ(pt.map_simplex(e, simplex({"v", "w"})).dim(), 0);
    EXPECT_FALSE(pt.at(x5).count(simplex({"v", "w"})));
    EXPECT_TRUE(pt.at(x5).count(simplex({"u", "w"})));
}

TEST(Tower, MaterializeFiltrationIsUnionOfGenerators) {
    poset p({"x0", "x1"}, {{"x0", "x1"}});
    poset_tower t = make_tower(&p, {{"x0", {"v"}}, {"x1", {"w"}}, {"x1", {"v", "w"}}}, {});
    pointwise_tower pt = materialize(t);
    EXPECT_EQ(pt.at(0).size(), 1u);
    EXPECT_EQ(pt.at(1).size(), 3u);
    // no events: all edge maps are inclusions
    for (const auto& m : pt.edge_maps) EXPECT_TRUE(m.empty());
}

TEST(Tower, MaterializeMissingFace) {
    poset p({"x0"}, {});
    poset_tower t = make_tower(&p, {{"x0", {"u", "v"}}}, {});
    EXPECT_THROW(materialize(t), face_closure_error);
}

TEST(Tower, EventValidation) {
    poset p({"x0", "x1"}, {{"x0", "x1"}});
    EXPECT_THROW(make_tower(&p, {{"x0", {"v"}}}, {{"x0", "x1", "v", "v"}}), invalid_tower_error);
    EXPECT_THROW(
        make_tower(&p, {{"x0", {"v"}}}, {{"x0", "x1", "v", "w"}, {"x0", "x1", "v", "u"}}),
        duplicate_event_error);
    EXPECT_THROW(make_tower(&p, {{"x0", {"v"}}}, {{"x1", "x0", "v", "w"}}), invalid_tower_error);
}

TEST(Tower, ValidatePassesOnPaperExamples) {
    EXPECT_TRUE(validate(fixtures::fig7().tower).ok());
    EXPECT_TRUE(validate(fixtures::fig10().tower).ok());
}

TEST(Tower, ValidateDuplicateGenerator) {
    poset p({"x0"}, {});
    poset_tower t = make_tower(&p, {{"x0", {"v"}}, {"x0", {"v"}}}, {});
    auto rep = validate(t);
    ASSERT_FALSE(rep.ok());
    EXPECT_NE(rep.violations[0].find("duplicate generator"), std::string::npos);
}

TEST(Tower, ValidateNonGenuineGenerator) {
    poset p({"x0", "x1"}, {{"x0", "x1"}});
    // v is already present at x1 through the inclusion from x0
    poset_tower t = make_tower(&p, {{"x0", {"v"}}, {"x1", {"v"}}}, {});
    auto rep = validate(t);
    ASSERT_FALSE(rep.ok());
    EXPECT_NE(rep.violations[0].find("not genuine"), std::string::npos);
}

TEST(Tower, ValidatePathInconsistency) {
    // diamond with a collapse on only one of the two parallel paths
    poset p({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
    poset_tower t =
        make_tower(&p, {{"a", {"v"}}, {"a", {"w"}}}, {{"b", "d", "v", "w"}});
    auto rep = validate(t);
    ASSERT_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("differ along different paths") != std::string::npos) found = true;
    EXPECT_TRUE(found);
}

TEST(Tower, ValidateChainedEventsOnOneEdgeAreLegal) {
    // v -> w and w -> u on the same edge: applied per source vertex, no
    // composition within the edge
    poset p({"x0", "x1"}, {{"x0", "x1"}});
    poset_tower t = make_tower(
        &p, {{"x0", {"u"}}, {"x0", {"v"}}, {"x0", {"w"}}, {"x1", {"v"}}},
        {{"x0", "x1", "v", "w"}, {"x0", "x1", "w", "u"}});
    EXPECT_TRUE(validate(t).ok()) << validate(t).violations[0];
    pointwise_tower pt = materialize(t);
    uint32_t e = pt.edge_index(0, 1);
    EXPECT_EQ(pt.map_vertex(e, "v"), "w");
    EXPECT_EQ(pt.map_vertex(e, "w"), "u");
}

TEST(Tower, ExtractChainFiltration) {
    poset p({"x0", "x1"}, {{"x0", "x1"}});
    pointwise_tower pt;
    pt.base = &p;
    pt.complexes = {{simplex({"v"})}, {simplex({"v"}), simplex({"w"}), simplex({"v", "w"})}};
    pt.edge_maps.resize(1);
    poset_tower t = extract(pt);
    ASSERT_EQ(t.generators.size(), 3u);
    EXPECT_EQ(t.generators[0].simp, simplex({"v"}));
    EXPECT_EQ(t.generators[0].grade, 0u);
    EXPECT_EQ(t.generators[1].grade, 1u);
    EXPECT_TRUE(t.events.empty());
}

TEST(Tower, ExtractFig10HasEightGenerators) {
    auto tb = fixtures::fig10();
    poset_tower t = extract(materialize(tb.tower));
    EXPECT_EQ(t.generators.size(), 8u);
    EXPECT_TRUE(t.events.empty());
    // v is the only simplex with two generators
    std::map<simplex, int> count;
    for (const auto& g : t.generators) count[g.simp]++;
    for (const auto& [s, c] : count) EXPECT_EQ(c, s == simplex({"v"}) ? 2 : 1) << s.str();
}

// extract . materialize is the identity on the compact encoding.
TEST(Tower, RoundTripOnRandomTowers) {
    auto corpus = fixtures::corpus(100, 500);
    for (const auto& tb : corpus) {
        ASSERT_TRUE(validate(tb.tower).ok());
        pointwise_tower pt = materialize(tb.tower);
        poset_tower back = extract(pt);
        ASSERT_EQ(back.generators.size(), tb.tower.generators.size());
        std::set<std::pair<grade_id, simplex>> a, b;
        for (const auto& g : tb.tower.generators) a.insert({g.grade, g.simp});
        for (const auto& g : back.generators) b.insert({g.grade, g.simp});
        EXPECT_EQ(a, b);
        std::set<std::tuple<grade_id, grade_id, std::string, std::string>> ea, eb;
        for (const auto& e : tb.tower.events) ea.insert({e.from, e.to, e.source, e.target});
        for (const auto& e : back.events) eb.insert({e.from, e.to, e.source, e.target});
        EXPECT_EQ(ea, eb);
        // and the rebuilt functor agrees pointwise
        pointwise_tower pt2 = materialize(back);
        for (grade_id x = 0; x < tb.base->node_count(); ++x) EXPECT_EQ(pt.at(x), pt2.at(x));
    }
}
