#include "properties.hpp"

#include <bicirc/forcing.hpp>
#include <bicirc/report.hpp>

#include <doctest.h>

using namespace bicirc;

namespace
{
    auto set_of(const BipartiteGraph & g, std::initializer_list<const char *> names) -> VertexSet
    {
        VertexSet s;
        for (auto name : names)
            s.insert(g.parse_vertex(name));
        return s;
    }
}

TEST_CASE("closure on K33 from two vertices per side")
{
    auto g = build_graph(CirculantSpec(3, {0, 1, 2}));
    auto trace = closure(g, set_of(g, {"L0", "L1", "R0", "R1"}));
    CHECK(trace.final == g.all_vertices());
    CHECK(trace.steps.size() == 2);
    CHECK(trace.steps[0] == Force{0, 5});
    CHECK(trace.steps[1] == Force{3, 2});
    CHECK(trace_is_valid(g, trace));
}

TEST_CASE("closure of the empty and full sets")
{
    for (auto text : {"3:3:0,1,2", "6:3:0,1,3", "1:1:0", "8:2:0,5"}) {
        auto g = build_graph(CirculantSpec::parse(text));
        auto empty = closure(g, {});
        CHECK(empty.final.empty());
        CHECK(empty.steps.empty());
        auto full = closure(g, g.all_vertices());
        CHECK(full.final == g.all_vertices());
        CHECK(full.steps.empty());
    }
}

TEST_CASE("is_forcing_set")
{
    auto k33 = build_graph(CirculantSpec(3, {0, 1, 2}));
    CHECK(is_forcing_set(k33, set_of(k33, {"L0", "L1", "R0", "R1"})));
    int forcing_triples = 0;
    for (std::uint64_t m = 0 ; m < 64 ; ++m)
        if (std::popcount(m) == 3)
            forcing_triples += is_forcing_set(k33, VertexSet{m});
    CHECK(forcing_triples == 0);

    auto g = build_graph(CirculantSpec(6, {0, 1, 3}));
    auto first = set_of(g, {"L0", "L1", "L2", "R0", "R1", "R2"});
    CHECK(is_forcing_set(g, first));
    auto adj = oracle::circulant_adjacency(6, {0, 1, 3});
    CHECK(oracle::forces_all(adj, oracle::from_mask(first.bits(), 12)));
}

TEST_CASE("trace is deterministic and ascends within a round")
{
    auto g = build_graph(CirculantSpec(6, {0, 1, 3}));
    auto start = set_of(g, {"L0", "L1", "L2", "R0", "R1", "R2"});
    auto a = closure(g, start), b = closure(g, start);
    CHECK(a.steps == b.steps);
    CHECK(a.initial == start);
    REQUIRE_FALSE(a.steps.empty());
}

TEST_CASE("trace_is_valid rejects forged traces")
{
    auto g = build_graph(CirculantSpec(3, {0, 1, 2}));
    auto trace = closure(g, set_of(g, {"L0", "L1", "R0", "R1"}));
    auto forged = trace;
    forged.steps[0].forced = 4;
    CHECK_FALSE(trace_is_valid(g, forged));
    forged = trace;
    forged.final = g.all_vertices() & ~VertexSet::single(2);
    CHECK_FALSE(trace_is_valid(g, forged));
    forged = trace;
    forged.steps.insert(forged.steps.begin(), Force{2, 5});
    CHECK_FALSE(trace_is_valid(g, forged));
}

TEST_CASE("trace lines")
{
    auto g = build_graph(CirculantSpec(3, {0, 1, 2}));
    auto lines = trace_lines(g, closure(g, set_of(g, {"L0", "L1", "R0", "R1"})));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].dump() == R"({"step":1,"forcer":"L0","forced":"R2"})");
    CHECK(lines[2].at("forcing_set") == true);
}

TEST_CASE("closure agrees with the oracle on every starting set of small graphs")
{
    for (auto text : {"3:2:0,1", "4:2:0,1", "4:3:0,1,2", "5:3:0,1,3", "6:3:0,1,3"}) {
        auto spec = CirculantSpec::parse(text);
        auto g = build_graph(spec);
        auto adj = oracle::circulant_adjacency(spec.n(), props::powers_of(spec));
        int v = g.vertex_count();
        for (std::uint64_t m = 0 ; m < (std::uint64_t{1} << v) ; ++m) {
            auto expect = props::to_mask(oracle::closure(adj, oracle::from_mask(m, v)));
            REQUIRE(closure_set(g, VertexSet{m}) == expect);
        }
    }
}

TEST_CASE("closure order independence, 100 orders on 50 instances")
{
    CHECK(props::order_independence(50, 100, 11) == 0);
}

TEST_CASE("monotonicity, idempotence, superset stability")
{
    CHECK(props::closure_laws(50, 40, 12) == 0);
}
