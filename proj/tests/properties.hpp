#pragma once

// Property checks shared by the unit suites and the acceptance runner.
// Each returns the number of violations found.

#include "oracles.hpp"

#include <bicirc/circulant.hpp>
#include <bicirc/forcing.hpp>
#include <bicirc/solver.hpp>

#include <random>

namespace props
{
    using namespace bicirc;

    inline auto powers_of(const CirculantSpec & s) -> std::vector<int>
    {
        return {s.powers().begin(), s.powers().end()};
    }

    inline auto to_mask(const std::vector<bool> & black) -> VertexSet
    {
        VertexSet set;
        for (std::size_t v = 0 ; v < black.size() ; ++v)
            if (black[v])
                set.insert(static_cast<int>(v));
        return set;
    }

    inline auto random_subset(std::mt19937_64 & rng, int vertices, double density) -> VertexSet
    {
        std::bernoulli_distribution pick(density);
        VertexSet set;
        for (int v = 0 ; v < vertices ; ++v)
            if (pick(rng))
                set.insert(v);
        return set;
    }

    /// `count` connected specs drawn with n in [3, 12], k in [2, 5].
    inline auto sample_specs(std::mt19937_64 & rng, int count) -> std::vector<CirculantSpec>
    {
        std::vector<CirculantSpec> out;
        while (static_cast<int>(out.size()) < count) {
            int n = 3 + static_cast<int>(rng() % 10);
            int k = 2 + static_cast<int>(rng() % std::min(4, n - 1));
            std::vector<int> all(n);
            std::iota(all.begin(), all.end(), 0);
            std::shuffle(all.begin(), all.end(), rng);
            CirculantSpec spec(n, {all.begin(), all.begin() + k});
            if (is_connected_gcd(spec))
                out.push_back(spec);
        }
        return out;
    }

    /// The library closure against the oracle under `orders` random forcer orders.
    inline auto order_independence(int instances, int orders, std::uint64_t seed) -> int
    {
        std::mt19937_64 rng(seed);
        int bad = 0;
        for (auto & spec : sample_specs(rng, instances)) {
            auto g = build_graph(spec);
            auto adj = oracle::circulant_adjacency(spec.n(), powers_of(spec));
            int v = g.vertex_count();
            auto start = random_subset(rng, v, 0.3);
            auto expect = closure(g, start).final;
            if (closure_set(g, start) != expect)
                ++bad;
            std::vector<int> order(v);
            std::iota(order.begin(), order.end(), 0);
            for (int t = 0 ; t < orders ; ++t) {
                std::shuffle(order.begin(), order.end(), rng);
                if (to_mask(oracle::closure(adj, oracle::from_mask(start.bits(), v), order)) != expect)
                    ++bad;
            }
        }
        return bad;
    }

    /// B1 subset of B2 implies cl(B1) subset of cl(B2); closure is idempotent;
    /// supersets of forcing sets force; every trace is legal.
    inline auto closure_laws(int instances, int trials, std::uint64_t seed) -> int
    {
        std::mt19937_64 rng(seed);
        int bad = 0;
        for (auto & spec : sample_specs(rng, instances)) {
            auto g = build_graph(spec);
            int v = g.vertex_count();
            for (int t = 0 ; t < trials ; ++t) {
                auto small = random_subset(rng, v, 0.25);
                auto big = small | random_subset(rng, v, 0.2);
                auto cs = closure(g, small);
                auto cb = closure(g, big);
                bad += ! trace_is_valid(g, cs) || ! trace_is_valid(g, cb);
                bad += ! cs.final.is_subset_of(cb.final);
                bad += closure(g, cs.final).final != cs.final;
                bad += ! closure(g, cs.final).steps.empty();
                bad += ! small.is_subset_of(cs.final);
            }
            auto forcing = upper_bound_span(spec).witness;
            bad += ! is_forcing_set(g, forcing);
            for (int t = 0 ; t < trials ; ++t)
                bad += ! is_forcing_set(g, forcing | random_subset(rng, v, 0.3));
        }
        return bad;
    }

    /// Exact z for every connected canonical spec with n <= n_max, checked
    /// against the all-subsets oracle: the witness forces and no smaller set does.
    inline auto minimality(int n_max, int & checked) -> int
    {
        int bad = 0;
        checked = 0;
        for (int n = 1 ; n <= n_max ; ++n)
            for (int k = 1 ; k <= n ; ++k) {
                std::set<CirculantSpec> seen;
                for (auto & spec : all_specs(n, k)) {
                    auto canon = canonical_form(spec);
                    if (! is_connected_gcd(canon) || ! seen.insert(canon).second)
                        continue;
                    auto g = build_graph(canon);
                    auto adj = oracle::circulant_adjacency(n, powers_of(canon));
                    auto result = solve_exact(canon);
                    ++checked;
                    bad += result.witness.size() != result.z;
                    bad += ! oracle::forces_all(adj, oracle::from_mask(result.witness.bits(), 2 * n));
                    if (result.z > 0)
                        bad += oracle::some_forcing_set_of_size(adj, result.z - 1);
                }
            }
        return bad;
    }
}
