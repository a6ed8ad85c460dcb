#pragma once

#include <bicirc/circulant.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bicirc
{
    /// An upper bound on Z(G) together with a zero forcing set of that size.
    struct BoundWitness
    {
        int value;
        VertexSet witness;
        std::string source;
    };

    struct BoundReport
    {
        int lower_regular = 0;
        int lower_bipartite = 0;
        std::optional<int> lower_cycle;
        std::optional<BoundWitness> upper_span;
        std::optional<BoundWitness> upper_cycle;
        int best_lower = 0;
        int best_upper = 0;
        std::vector<std::string> warnings;
    };

    struct Budget
    {
        int max_vertices = 32;
        std::uint64_t max_nodes = 0;   // 0 means unlimited
        double max_seconds = 0.0;      // 0 means unlimited
    };

    struct SolveOptions
    {
        Budget budget;
        int threads = 1;
        bool allow_disconnected = false;
        /// Start iterative deepening at the proven lower bound. Switching this
        /// off starts at 1, which lets tests check the lower bounds themselves.
        bool start_at_lower_bound = true;
    };

    struct SolveResult
    {
        int z = 0;
        VertexSet witness;
        std::uint64_t nodes_explored = 0;
        std::chrono::duration<double> wall_time{};
        int components = 1;
    };

    /// Lower bounds only; upper fields stay empty and best_upper is the trivial 2n - 1.
    auto lower_bounds(const CirculantSpec & spec) -> BoundReport;

    /// First i_k vertices on each side of the normalised spec. With
    /// orbit_search, the smallest such bound over the whole affine orbit,
    /// with the witness mapped back onto build_graph(spec).
    auto upper_bound_span(const CirculantSpec & spec, bool orbit_search = false) -> BoundWitness;

    /// Every cycle-decomposition witness for a connected cubic spec, one per
    /// ordered pair (anchor a, cycle power b) with gcd(b - a, n) > 1.
    auto cycle_bound_candidates(const CirculantSpec & spec) -> std::vector<BoundWitness>;

    /// Best of cycle_bound_candidates, or nothing if none apply.
    auto upper_bound_cycle(const CirculantSpec & spec) -> std::optional<BoundWitness>;

    auto bounds_report(const CirculantSpec & spec, bool orbit_search = false) -> BoundReport;

    auto solve_exact(const CirculantSpec & spec, const SolveOptions & options = {}) -> SolveResult;

    /// Exact Z for an arbitrary bipartite graph; no symmetry is assumed.
    auto solve_graph(const BipartiteGraph & graph, const SolveOptions & options = {}) -> SolveResult;

    /// Subgraph induced on a set of vertices, relabelled compactly. Fills
    /// `original` with the old index of each new vertex.
    auto induced_subgraph(const BipartiteGraph & graph, VertexSet vertices, std::vector<int> & original) -> BipartiteGraph;
}
