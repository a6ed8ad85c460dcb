#pragma once

#include <bicirc/circulant.hpp>

#include <vector>

namespace bicirc
{
    struct Force
    {
        int forcer;
        int forced;

        auto operator== (const Force &) const -> bool = default;
    };

    struct ForcingTrace
    {
        VertexSet initial;
        std::vector<Force> steps;
        VertexSet final;
    };

    /// Applies the zero forcing rule until nothing changes. Each round scans
    /// black vertices in ascending index and forces immediately, so the trace
    /// is reproducible.
    auto closure(const BipartiteGraph & graph, VertexSet initial) -> ForcingTrace;

    /// Final black set only. This is the solver's inner loop.
    inline auto closure_set(const BipartiteGraph & graph, VertexSet black) -> VertexSet
    {
        auto all = graph.all_vertices();
        bool changed = true;
        while (changed && black != all) {
            changed = false;
            auto candidates = black.bits();
            while (candidates) {
                int v = std::countr_zero(candidates);
                candidates &= candidates - 1;
                auto white = graph.neighbours(v).bits() & ~black.bits();
                if (white && ! (white & (white - 1))) {
                    black = VertexSet{black.bits() | white};
                    changed = true;
                }
            }
        }
        return black;
    }

    inline auto is_forcing_set(const BipartiteGraph & graph, VertexSet candidate) -> bool
    {
        return closure_set(graph, candidate) == graph.all_vertices();
    }

    /// Checks that every step of a trace is a legal force and that the final
    /// set is what the steps produce.
    auto trace_is_valid(const BipartiteGraph & graph, const ForcingTrace & trace) -> bool;
}
