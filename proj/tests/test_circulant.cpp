#include "oracles.hpp"

#include <bicirc/circulant.hpp>
#include <bicirc/errors.hpp>
#include <bicirc/iso.hpp>
#include <bicirc/report.hpp>

#include <doctest.h>

#include <random>

using namespace bicirc;

namespace
{
    auto powers_of(const CirculantSpec & s) -> std::vector<int>
    {
        return {s.powers().begin(), s.powers().end()};
    }

    auto neighbour_names(const BipartiteGraph & g, int v) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        g.neighbours(v).for_each([&] (int w) { out.push_back(g.vertex_name(w)); });
        return out;
    }
}

TEST_CASE("spec parsing and validation")
{
    auto s = CirculantSpec::parse("6:3:3,0,1");
    CHECK(s.n() == 6);
    CHECK(s.k() == 3);
    CHECK(powers_of(s) == std::vector{0, 1, 3});
    CHECK(s.to_string() == "6:3:0,1,3");
    CHECK(CirculantSpec::parse(s.to_string()) == s);

    CHECK_THROWS_AS(CirculantSpec(6, {}), ValidationError);
    CHECK_THROWS_AS(CirculantSpec(6, {0, 1, 1}), ValidationError);
    CHECK_THROWS_AS(CirculantSpec(6, {0, 6}), ValidationError);
    CHECK_THROWS_AS(CirculantSpec(6, {-1, 2}), ValidationError);
    CHECK_THROWS_AS(CirculantSpec(0, {0}), ValidationError);
    CHECK_THROWS_AS(CirculantSpec::parse("6:2:0,1,3"), ValidationError);
    CHECK_THROWS_AS(CirculantSpec::parse("6:3"), ValidationError);
    CHECK_THROWS_AS(CirculantSpec::parse("x:1:0"), ValidationError);

    CHECK(CirculantSpec(3, {0, 1, 2}).is_complete());
    CHECK_FALSE(CirculantSpec(4, {0, 1, 2}).is_complete());
}

TEST_CASE("build_graph follows the neighbour rule")
{
    auto g = build_graph(CirculantSpec(6, {0, 1, 3}));
    CHECK(g.vertex_count() == 12);
    CHECK(g.edge_count() == 18);
    CHECK(neighbour_names(g, 0) == std::vector<std::string>{"R0", "R1", "R3"});

    auto single = build_graph(CirculantSpec(1, {0}));
    CHECK(single.vertex_count() == 2);
    CHECK(single.edge_count() == 1);
    CHECK(single.adjacent(0, 1));

    auto k33 = build_graph(CirculantSpec(3, {0, 1, 2}));
    for (int l = 0 ; l < 3 ; ++l)
        for (int r = 0 ; r < 3 ; ++r)
            CHECK(k33.adjacent(l, k33.right_vertex(r)));

    CHECK_THROWS_AS(build_graph(CirculantSpec(40, {0, 1})), ValidationError);
}

TEST_CASE("regularity and neighbour formulas for every small spec")
{
    for (int n = 1 ; n <= 9 ; ++n)
        for (int k = 1 ; k <= n ; ++k)
            for (auto & spec : all_specs(n, k)) {
                auto g = build_graph(spec);
                auto ref = oracle::circulant_adjacency(n, powers_of(spec));
                REQUIRE(g.regular_degree() == k);
                for (int m = 0 ; m < n ; ++m)
                    for (int p : spec.powers()) {
                        CHECK(g.adjacent(m, n + (m + p) % n));
                        CHECK(g.adjacent(n + m, ((m - p) % n + n) % n));
                    }
                for (int v = 0 ; v < 2 * n ; ++v) {
                    std::set<int> expect(ref[v].begin(), ref[v].end());
                    auto got = g.neighbours(v).to_vector();
                    CHECK(std::set<int>(got.begin(), got.end()) == expect);
                }
            }
}

TEST_CASE("normalize")
{
    CHECK(normalize(CirculantSpec(6, {1, 2, 4})) == CirculantSpec(6, {0, 1, 3}));
    CHECK(normalize(CirculantSpec(6, {0, 1, 3})) == CirculantSpec(6, {0, 1, 3}));
    auto norm = normalize(CirculantSpec(15, {3, 6, 8}));
    CHECK(norm == CirculantSpec(15, {0, 3, 5}));
    CHECK(bipartite_isomorphic(build_graph(CirculantSpec(15, {3, 6, 8})), build_graph(norm)).isomorphic());
}

TEST_CASE("affine_transform")
{
    CirculantSpec a(6, {0, 1, 3});
    CHECK(affine_transform(a, {1, 1}) == CirculantSpec(6, {1, 2, 4}));
    CHECK(affine_transform(a, {1, 0}) == a);
    auto scaled = affine_transform(a, {5, 0});
    CHECK(scaled == CirculantSpec(6, {0, 3, 5}));
    CHECK(bipartite_isomorphic(build_graph(a), build_graph(scaled)).isomorphic());
    CHECK_THROWS_AS(affine_transform(a, {2, 0}), ValidationError);
    CHECK_THROWS_AS(affine_transform(a, {3, 1}), ValidationError);
}

TEST_CASE("affine vertex map carries edges onto the image graph")
{
    std::mt19937_64 rng(7);
    for (int n = 2 ; n <= 10 ; ++n) {
        auto maps = affine_maps(n);
        for (int k = 1 ; k <= std::min(n, 4) ; ++k)
            for (auto & spec : all_specs(n, k)) {
                auto & map = maps[rng() % maps.size()];
                auto image = affine_transform(spec, map);
                auto vmap = affine_vertex_map(n, map);
                CHECK(verify_mapping(build_graph(spec), build_graph(image), vmap));
                CHECK(invert_vertex_map(vmap)[vmap[1 % (2 * n)]] == 1 % (2 * n));
            }
    }
}

TEST_CASE("affine_maps enumerates phi(n) * n maps")
{
    for (int n = 1 ; n <= 16 ; ++n) {
        int phi = 0;
        for (int u = 1 ; u <= n ; ++u)
            phi += std::gcd(u, n) == 1;
        CHECK(static_cast<int>(affine_maps(n).size()) == phi * n);
    }
}

TEST_CASE("canonical_form matches the orbit oracle")
{
    CHECK(canonical_form(CirculantSpec(6, {1, 2, 4})) == CirculantSpec(6, {0, 1, 3}));
    CHECK(canonical_form(CirculantSpec(3, {0, 1, 2})) == CirculantSpec(3, {0, 1, 2}));
    CHECK(canonical_form(CirculantSpec(6, {0, 3, 5})) == CirculantSpec(6, {0, 1, 3}));

    for (int n = 1 ; n <= 10 ; ++n)
        for (int k = 1 ; k <= std::min(n, 4) ; ++k)
            for (auto & spec : all_specs(n, k)) {
                auto orbit = oracle::affine_orbit(n, powers_of(spec));
                auto canon = canonical_form(spec);
                CHECK(powers_of(canon) == *orbit.begin());
                CHECK(canonical_form(canon) == canon);
                for (auto & map : affine_maps(n))
                    if (map.shift == n - 1)
                        CHECK(canonical_form(affine_transform(spec, map)) == canon);
            }
}

TEST_CASE("connectivity: gcd criterion and BFS agree")
{
    CHECK(is_connected_gcd(CirculantSpec(15, {0, 3, 5})));
    CHECK_FALSE(is_connected_gcd(CirculantSpec(6, {0, 2, 4})));
    CHECK(is_connected_gcd(CirculantSpec(8, {0, 1, 2, 3})));
    CHECK(is_connected_bfs(build_graph(CirculantSpec(15, {0, 3, 5}))));
    CHECK_FALSE(is_connected_bfs(build_graph(CirculantSpec(6, {0, 2, 4}))));
    // unnormalised input
    CHECK(is_connected_gcd(CirculantSpec(6, {1, 2, 4})));
    CHECK_FALSE(is_connected_gcd(CirculantSpec(6, {1, 3, 5})));

    for (int n = 1 ; n <= 12 ; ++n)
        for (int k = 1 ; k <= std::min(n, 4) ; ++k)
            for (auto & spec : all_specs(n, k)) {
                auto g = build_graph(spec);
                bool gcd = is_connected_gcd(spec);
                CHECK(gcd == is_connected_bfs(g));
                int comps = oracle::components(oracle::circulant_adjacency(n, powers_of(spec)));
                CHECK(static_cast<int>(connected_components(g).size()) == comps);
                CHECK(connectivity_gcd(spec) == comps);
            }
}

TEST_CASE("cycle decomposition")
{
    CirculantSpec s(15, {0, 3, 5});
    auto g = build_graph(s);

    auto check_partition = [&] (const CycleDecomposition & dec, int a, int b) {
        std::vector<int> hits(30, 0);
        for (auto & cycle : dec.cycles) {
            CHECK(static_cast<int>(cycle.size()) == 2 * 15 / dec.d);
            int residue = -1;
            for (std::size_t i = 0 ; i < cycle.size() ; ++i) {
                ++hits[cycle[i]];
                int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
                CHECK(g.adjacent(u, v));
                // every edge comes from P^a or P^b
                int l = g.is_left(u) ? u : v, r = (g.is_left(u) ? v : u) - 15;
                int diff = ((r - l) % 15 + 15) % 15;
                CHECK((diff == a || diff == b));
                if (g.is_left(u)) {
                    int res = u % dec.d;
                    if (residue < 0)
                        residue = res;
                    CHECK(res == residue);
                }
            }
        }
        for (int h : hits)
            CHECK(h == 1);
    };

    auto fives = cycle_decomposition(s, 0, 5);
    CHECK(fives.d == 5);
    CHECK(fives.cycles.size() == 5);
    // same cyclic sequence as (0L, 0R, 10L, 10R, 5L, 5R), walked the other way
    std::vector<std::string> first;
    for (int v : fives.cycles[0])
        first.push_back(g.vertex_name(v));
    std::vector<std::string> expect{"L0", "R0", "L10", "R10", "L5", "R5"};
    std::reverse(expect.begin() + 1, expect.end());
    CHECK(first == expect);
    check_partition(fives, 0, 5);

    auto threes = cycle_decomposition(s, 0, 3);
    CHECK(threes.d == 3);
    CHECK(threes.cycles.size() == 3);
    CHECK(threes.cycles[0].size() == 10);
    // the cycle through 0L also contains 3R and 3L
    auto & c0 = threes.cycles[0];
    CHECK(std::vector<int>(c0.begin(), c0.begin() + 4) == std::vector{0, 15 + 3, 3, 15 + 6});
    check_partition(threes, 0, 3);

    auto one = cycle_decomposition(CirculantSpec(4, {0, 1}), 0, 1);
    CHECK(one.d == 1);
    CHECK(one.cycles.size() == 1);
    CHECK(one.cycles[0].size() == 8);

    CHECK_THROWS_AS(cycle_decomposition(s, 3, 3), ValidationError);
    CHECK_THROWS_AS(cycle_decomposition(s, 0, 4), ValidationError);
}

TEST_CASE("complement_spec")
{
    CHECK(complement_spec(CirculantSpec(6, {0, 2})) == CirculantSpec(6, {1, 3, 4, 5}));
    CHECK(complement_spec(CirculantSpec(3, {0})) == CirculantSpec(3, {1, 2}));
    CHECK(complement_spec(CirculantSpec(8, {4, 6})) == CirculantSpec(8, {0, 1, 2, 3, 5, 7}));
    CHECK_THROWS_AS(complement_spec(CirculantSpec(3, {0, 1, 2})), ValidationError);
}

TEST_CASE("modular helpers")
{
    CHECK(modulo(-1, 6) == 5);
    CHECK(modulo(13, 6) == 1);
    CHECK(mod_inverse(5, 6) == 5);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK_THROWS(mod_inverse(2, 6));
    CHECK(all_specs(5, 3).size() == 10);
    CHECK(all_specs(5, 3).front() == CirculantSpec(5, {0, 1, 2}));
}

TEST_CASE("graph export")
{
    auto g = build_graph(CirculantSpec(6, {0, 1, 3}));
    auto dot = to_dot(g);
    CHECK(dot.starts_with("graph G {"));
    int edges = 0;
    for (std::size_t at = 0 ; (at = dot.find(" -- ", at)) != std::string::npos ; ++at)
        ++edges;
    CHECK(edges == 18);
    CHECK(dot.find("L0 -- R3;") != std::string::npos);

    auto json = to_json(g);
    CHECK(json.at("left") == 6);
    CHECK(json.at("edges") == 18);
    CHECK(json.at("adjacency").at("L0") == Json::array({"R0", "R1", "R3"}));

    CHECK(g.parse_vertex("R3") == 9);
    CHECK(g.parse_vertex("L5") == 5);
    CHECK_THROWS_AS(g.parse_vertex("R6"), ValidationError);
    CHECK_THROWS_AS(g.parse_vertex("Q1"), ValidationError);
}
