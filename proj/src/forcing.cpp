#include <bicirc/forcing.hpp>

namespace bicirc
{
    auto closure(const BipartiteGraph & graph, VertexSet initial) -> ForcingTrace
    {
        ForcingTrace trace{initial, {}, initial};
        auto & black = trace.final;

        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0 ; v < graph.vertex_count() ; ++v) {
                if (! black.contains(v))
                    continue;
                auto white = graph.neighbours(v) & ~black;
                if (white.size() == 1) {
                    trace.steps.push_back(Force{v, white.lowest()});
                    black |= white;
                    changed = true;
                }
            }
        }
        return trace;
    }

    auto trace_is_valid(const BipartiteGraph & graph, const ForcingTrace & trace) -> bool
    {
        auto black = trace.initial;
        for (auto & step : trace.steps) {
            if (! black.contains(step.forcer) || black.contains(step.forced))
                return false;
            auto white = graph.neighbours(step.forcer) & ~black;
            if (white != VertexSet::single(step.forced))
                return false;
            black.insert(step.forced);
        }
        return black == trace.final;
    }
}
