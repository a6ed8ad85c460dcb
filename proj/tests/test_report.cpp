#include <bicirc/errors.hpp>
#include <bicirc/report.hpp>

#include <doctest.h>

using namespace bicirc;

TEST_CASE("single-row scan")
{
    ScanConfig config;
    config.n_min = config.n_max = 3;
    auto json = to_json(run_scan(config));
    REQUIRE(json.at("rows").size() == 1);
    auto & row = json.at("rows")[0];
    CHECK(row.at("spec") == "3:3:0,1,2");
    CHECK(row.at("z") == 4);
    CHECK(json.at("summary").at("tightness").at("lower_bipartite") == 1.0);
    CHECK(json.at("summary").at("tightness").at("upper_cycle").is_null());
}

TEST_CASE("cubic scan up to n = 8: every z = 4 row is case 1")
{
    ScanConfig config;
    auto report = run_scan(config);
    auto json = to_json(report);
    int z4 = 0;
    for (auto & row : report.rows) {
        CHECK(row.sandwich_holds());
        REQUIRE(row.z);
        if (*row.z != 4)
            continue;
        ++z4;
        REQUIRE_FALSE(row.families.empty());
        CHECK(row.families[0].variant == FamilyCase::Case1);
    }
    CHECK(z4 == 6);
    CHECK(json.at("summary").at("sandwich_violations") == 0);
}

TEST_CASE("cycle-gcd filtered scan obeys d < z <= d + 2(n/d) - 2")
{
    ScanConfig config;
    config.n_max = 10;
    config.require_cycle_gcd = true;
    auto report = run_scan(config);
    CHECK_FALSE(report.rows.empty());
    for (auto & row : report.rows) {
        REQUIRE(row.bounds.lower_cycle);
        REQUIRE(row.bounds.upper_cycle);
        REQUIRE(row.z);
        CHECK(*row.bounds.lower_cycle <= *row.z);
        CHECK(*row.z <= row.bounds.upper_cycle->value);
    }
}

TEST_CASE("scan JSON is schema-stable and reproducible")
{
    ScanConfig config;
    config.n_max = 7;
    config.k_min = 2;
    config.k_max = 4;
    auto a = to_json(run_scan(config)).dump();
    auto b = to_json(run_scan(config)).dump();
    CHECK(a == b);

    config.threads = 3;
    CHECK(to_json(run_scan(config)).dump() == a);

    auto json = Json::parse(a);
    std::vector<std::string> keys;
    for (auto & [key, value] : json.at("rows")[0].items())
        keys.push_back(key);
    for (auto & row : json.at("rows")) {
        std::vector<std::string> here;
        for (auto & [key, value] : row.items())
            here.push_back(key);
        CHECK(here == keys);
    }
    // a row without a cycle bound still carries the column
    CHECK(json.at("rows")[0].at("upper_cycle").is_null());

    auto table = scan_table(json);
    CHECK(table.find("3:3:0,1,2") != std::string::npos);
    CHECK(table.find("sandwich violations 0") != std::string::npos);
}

TEST_CASE("scan budget errors become row errors")
{
    ScanConfig config;
    config.n_min = config.n_max = 9;
    config.solve.budget.max_nodes = 1;
    auto report = run_scan(config);
    bool errored = false;
    for (auto & row : report.rows)
        if (row.error) {
            errored = true;
            CHECK_FALSE(row.z);
            CHECK(row.mr_bound);
        }
    CHECK(errored);

    ScanConfig wide;
    wide.n_max = 20;
    CHECK_THROWS_AS(run_scan(wide), BudgetExceeded);
    ScanConfig empty;
    empty.n_min = 5;
    empty.n_max = 4;
    CHECK_THROWS_AS(run_scan(empty), ValidationError);
}

TEST_CASE("solve and bound JSON")
{
    auto spec = CirculantSpec(3, {0, 1, 2});
    auto g = build_graph(spec);
    auto out = to_json(g, solve_exact(spec));
    CHECK(out.at("z") == 4);
    CHECK(out.at("witness") == Json::array({"L0", "L1", "R0", "R1"}));
    auto bounds = to_json(g, bounds_report(spec));
    CHECK(bounds.at("best_lower") == 4);
    CHECK(bounds.at("lower_cycle").is_null());
}
