#pragma once

#include <bicirc/circulant.hpp>
#include <bicirc/classifier.hpp>
#include <bicirc/forcing.hpp>
#include <bicirc/iso.hpp>
#include <bicirc/solver.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bicirc
{
    using Json = nlohmann::ordered_json;

    auto to_dot(const BipartiteGraph & graph, const std::string & name = "G") -> std::string;
    auto to_json(const BipartiteGraph & graph) -> Json;

    auto vertex_names(const BipartiteGraph & graph, VertexSet set) -> Json;
    auto to_json(const BipartiteGraph & graph, const BoundWitness & bound) -> Json;
    auto to_json(const BipartiteGraph & graph, const BoundReport & report) -> Json;
    auto to_json(const BipartiteGraph & graph, const SolveResult & result) -> Json;
    auto to_json(const FamilyDescriptor & desc) -> Json;
    auto to_json(const ScanFinding & finding) -> Json;

    /// One JSON object per force, then a summary line.
    auto trace_lines(const BipartiteGraph & graph, const ForcingTrace & trace) -> std::vector<Json>;

    struct ScanConfig
    {
        int n_min = 3, n_max = 8;
        int k_min = 3, k_max = 3;
        SolveOptions solve;
        int threads = 1;
        /// Keep only cubic specs where some pair of powers differs by a
        /// non-unit (so the cycle bounds apply).
        bool require_cycle_gcd = false;
        RunReading reading = RunReading::ClassCount;
    };

    struct ScanRow
    {
        CirculantSpec spec;
        bool connected = true;
        BoundReport bounds;
        int upper_span_orbit = 0;
        std::optional<int> z;
        std::optional<int> predicted_z;
        std::vector<FamilyDescriptor> families;
        int rank = 0;
        std::optional<int> mr_bound;
        std::uint64_t nodes = 0;
        std::optional<std::string> error;

        auto sandwich_holds() const -> bool;
    };

    struct ScanReport
    {
        ScanConfig config;
        std::vector<ScanRow> rows;
    };

    /// Every connected canonical spec in range, with bounds, exact Z,
    /// classification and rank. Rows are sorted by (n, k, spec).
    auto run_scan(const ScanConfig & config) -> ScanReport;

    auto to_json(const ScanReport & report) -> Json;

    /// Human table built from the JSON form of a report.
    auto scan_table(const Json & report) -> std::string;
}
