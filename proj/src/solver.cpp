#include <bicirc/solver.hpp>
#include <bicirc/errors.hpp>
#include <bicirc/forcing.hpp>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

namespace bicirc
{
    namespace
    {
        using Clock = std::chrono::steady_clock;

        auto verified(const BipartiteGraph & graph, BoundWitness bound) -> BoundWitness
        {
            if (! is_forcing_set(graph, bound.witness))
                throw WitnessFailure("constructed witness for '" + bound.source + "' does not force");
            if (bound.witness.size() != bound.value)
                throw WitnessFailure("witness for '" + bound.source + "' has the wrong size");
            return bound;
        }

        /// Carries a witness on build_graph(affine_transform(spec, map)) back to build_graph(spec).
        auto pull_back(VertexSet witness, int n, const AffineMap & map) -> VertexSet
        {
            return apply_vertex_map(witness, invert_vertex_map(affine_vertex_map(n, map)));
        }

        auto span_bound_under(const CirculantSpec & spec, const AffineMap & map) -> BoundWitness
        {
            int n = spec.n();
            auto image = affine_transform(spec, map);
            AffineMap to_normal{map.unit, map.shift - image.powers().front()};
            auto normal = affine_transform(spec, to_normal);

            int top = normal.powers().back();
            VertexSet witness;
            for (int m = 0 ; m < top ; ++m) {
                witness.insert(m);
                witness.insert(n + m);
            }
            return BoundWitness{2 * top, pull_back(witness, n, to_normal), "span " + normal.to_string()};
        }

        /// Subsets of a fixed part plus `choose` elements of `pool`. Enumerated
        /// in lexicographic order, chunked by the first pool element.
        struct SearchSpace
        {
            VertexSet fixed;
            std::vector<int> pool;
            int choose;

            auto chunk_count() const -> int
            {
                if (choose == 0)
                    return 1;
                return std::max(0, static_cast<int>(pool.size()) - choose + 1);
            }
        };

        class SubsetSearch
        {
            public:
                SubsetSearch(const BipartiteGraph & graph, const SolveOptions & options, Clock::time_point start) :
                    _graph(graph),
                    _options(options),
                    _start(start)
                {
                }

                /// Lexicographically first forcing set in the space, if any.
                auto first_forcing(const SearchSpace & space) -> std::optional<VertexSet>
                {
                    int chunks = space.chunk_count();
                    if (chunks == 0)
                        return std::nullopt;

                    std::vector<std::optional<VertexSet>> found(chunks);
                    std::atomic<int> next_chunk{0};
                    std::atomic<int> best_chunk{chunks};

                    auto worker = [&] {
                        while (! _exhausted.load(std::memory_order_relaxed)) {
                            int c = next_chunk.fetch_add(1);
                            if (c >= chunks || c > best_chunk.load())
                                break;
                            if (auto hit = scan_chunk(space, c, best_chunk)) {
                                found[c] = hit;
                                int current = best_chunk.load();
                                while (c < current && ! best_chunk.compare_exchange_weak(current, c))
                                    ;
                            }
                        }
                    };

                    int threads = std::clamp(_options.threads, 1, chunks);
                    if (threads == 1)
                        worker();
                    else {
                        std::vector<std::jthread> pool;
                        for (int t = 0 ; t < threads ; ++t)
                            pool.emplace_back(worker);
                    }

                    if (_exhausted.load())
                        return std::nullopt;
                    for (auto & hit : found)
                        if (hit)
                            return hit;
                    return std::nullopt;
                }

                auto nodes() const -> std::uint64_t { return _nodes.load(); }
                auto exhausted() const -> bool { return _exhausted.load(); }

            private:
                const BipartiteGraph & _graph;
                const SolveOptions & _options;
                Clock::time_point _start;
                std::atomic<std::uint64_t> _nodes{0};
                std::atomic<bool> _exhausted{false};

                auto charge(std::uint64_t count) -> bool
                {
                    auto total = _nodes.fetch_add(count) + count;
                    auto & budget = _options.budget;
                    if (budget.max_nodes && total > budget.max_nodes)
                        _exhausted.store(true);
                    if (budget.max_seconds > 0.0
                            && std::chrono::duration<double>(Clock::now() - _start).count() > budget.max_seconds)
                        _exhausted.store(true);
                    return ! _exhausted.load();
                }

                auto scan_chunk(const SearchSpace & space, int chunk, const std::atomic<int> & best_chunk) -> std::optional<VertexSet>
                {
                    if (space.choose == 0) {
                        charge(1);
                        return is_forcing_set(_graph, space.fixed) ? std::optional{space.fixed} : std::nullopt;
                    }

                    auto & pool = space.pool;
                    int pool_size = pool.size();
                    int rest = space.choose - 1;
                    auto base = space.fixed | VertexSet::single(pool[chunk]);

                    // idx[j] indexes pool; prefix[j] is base plus pool[idx[0..j-1]]
                    std::vector<int> idx(rest);
                    std::vector<VertexSet> prefix(rest + 1);
                    std::iota(idx.begin(), idx.end(), chunk + 1);
                    prefix[0] = base;
                    for (int j = 0 ; j < rest ; ++j)
                        prefix[j + 1] = prefix[j] | VertexSet::single(pool[idx[j]]);

                    auto all = _graph.all_vertices();
                    std::uint64_t local = 0;
                    while (true) {
                        ++local;
                        if (closure_set(_graph, prefix[rest]) == all) {
                            charge(local);
                            return prefix[rest];
                        }
                        if (local == 4096) {
                            if (! charge(local) || best_chunk.load(std::memory_order_relaxed) < chunk)
                                return std::nullopt;
                            local = 0;
                        }

                        int i = rest - 1;
                        while (i >= 0 && idx[i] == pool_size - rest + i)
                            --i;
                        if (i < 0)
                            break;
                        ++idx[i];
                        for (int j = i + 1 ; j < rest ; ++j)
                            idx[j] = idx[j - 1] + 1;
                        for (int j = i ; j < rest ; ++j)
                            prefix[j + 1] = prefix[j] | VertexSet::single(pool[idx[j]]);
                    }
                    charge(local);
                    return std::nullopt;
                }
        };

        auto graph_lower_bound(const BipartiteGraph & graph) -> int
        {
            int k = graph.regular_degree();
            if (k >= 0)
                return std::max(1, 2 * (k - 1));
            int min_degree = graph.vertex_count();
            for (int v = 0 ; v < graph.vertex_count() ; ++v)
                min_degree = std::min(min_degree, graph.degree(v));
            return std::max(1, min_degree);
        }

        /// Iterative deepening on set size. With shift symmetry, every set
        /// containing a left vertex rotates to one containing 0L, and a set
        /// with no left vertex rotates to one containing 0R.
        auto deepen(const BipartiteGraph & graph, int lower, int upper_hint, bool shift_symmetric,
                const SolveOptions & options) -> SolveResult
        {
            auto start = Clock::now();
            SubsetSearch search(graph, options, start);
            int total = graph.vertex_count();

            for (int size = std::max(1, lower) ; size <= total ; ++size) {
                std::vector<SearchSpace> spaces;
                if (shift_symmetric) {
                    int n = graph.left_count();
                    std::vector<int> rest, right_rest;
                    for (int v = 1 ; v < total ; ++v)
                        rest.push_back(v);
                    for (int v = n + 1 ; v < total ; ++v)
                        right_rest.push_back(v);
                    spaces.push_back(SearchSpace{VertexSet::single(0), rest, size - 1});
                    if (size <= n)
                        spaces.push_back(SearchSpace{VertexSet::single(n), right_rest, size - 1});
                }
                else {
                    std::vector<int> everything(total);
                    std::iota(everything.begin(), everything.end(), 0);
                    spaces.push_back(SearchSpace{VertexSet{}, everything, size});
                }

                for (auto & space : spaces) {
                    auto hit = search.first_forcing(space);
                    if (search.exhausted())
                        throw BudgetExceeded("search budget exhausted while testing sets of size "
                                + std::to_string(size), size, upper_hint);
                    if (hit)
                        return SolveResult{size, *hit, search.nodes(), Clock::now() - start, 1};
                }
            }
            throw WitnessFailure("no zero forcing set found, but the full vertex set always forces");
        }

        auto check_vertex_budget(int vertices, const Budget & budget, int lower, int upper) -> void
        {
            if (vertices > budget.max_vertices)
                throw BudgetExceeded("graph has " + std::to_string(vertices) + " vertices, budget allows "
                        + std::to_string(budget.max_vertices), lower, upper);
        }

        auto solve_connected_spec(const CirculantSpec & spec, const SolveOptions & options) -> SolveResult
        {
            auto report = bounds_report(spec);
            auto graph = build_graph(spec);
            check_vertex_budget(graph.vertex_count(), options.budget, report.best_lower, report.best_upper);
            int lower = options.start_at_lower_bound ? report.best_lower : 1;
            return deepen(graph, lower, report.best_upper, true, options);
        }
    }

    auto lower_bounds(const CirculantSpec & spec) -> BoundReport
    {
        BoundReport report;
        int n = spec.n(), k = spec.k();
        bool connected = is_connected_gcd(spec);

        report.lower_regular = k;
        report.lower_bipartite = std::max(1, 2 * (k - 1));
        if (n == 1 || k == 1)
            report.warnings.push_back("degenerate instance: lower bounds are clamped at 1");
        if (! connected)
            report.warnings.push_back("disconnected: cycle bounds do not apply");

        if (k == 3 && connected) {
            auto p = spec.powers();
            for (int x = 0 ; x < 3 ; ++x)
                for (int y = x + 1 ; y < 3 ; ++y) {
                    int d = gcd_mod(p[y] - p[x], n);
                    if (d > 1)
                        report.lower_cycle = std::max(report.lower_cycle.value_or(0), d + 1);
                }
        }

        report.best_lower = std::max({1, report.lower_regular, report.lower_bipartite, report.lower_cycle.value_or(0)});
        report.best_upper = std::max(1, 2 * n - 1);
        return report;
    }

    auto upper_bound_span(const CirculantSpec & spec, bool orbit_search) -> BoundWitness
    {
        if (! is_connected_gcd(spec))
            throw ValidationError("span bound needs a connected spec, " + spec.to_string() + " is not");

        auto graph = build_graph(spec);
        if (spec.k() == 1)
            return verified(graph, BoundWitness{1, VertexSet::single(0), "single edge"});

        auto best = span_bound_under(spec, AffineMap{1, 0});
        if (orbit_search)
            for (auto & map : affine_maps(spec.n())) {
                auto candidate = span_bound_under(spec, map);
                if (candidate.value < best.value)
                    best = std::move(candidate);
            }
        return verified(graph, std::move(best));
    }

    auto cycle_bound_candidates(const CirculantSpec & spec) -> std::vector<BoundWitness>
    {
        std::vector<BoundWitness> result;
        if (spec.k() != 3 || ! is_connected_gcd(spec))
            return result;

        int n = spec.n();
        auto graph = build_graph(spec);
        auto p = spec.powers();
        for (int x = 0 ; x < 3 ; ++x)
            for (int y = 0 ; y < 3 ; ++y) {
                if (x == y)
                    continue;
                int a = p[x], b = p[y], c = p[3 - x - y];
                int j = modulo(b - a, n), i = modulo(c - a, n);
                int d = std::gcd(j, n);
                if (d <= 1)
                    continue;

                // on I + P^i + P^j: cycle C_0 plus one left vertex per class
                // m mod d, skipping 0 and -i
                VertexSet witness;
                for (int m = 0 ; m < n ; m += d) {
                    witness.insert(m);
                    witness.insert(n + m);
                }
                int skip = modulo(-i, d);
                for (int m = 1 ; m < d ; ++m)
                    if (m != skip)
                        witness.insert(m);

                AffineMap shift{1, -a};
                auto source = "cycle " + normalize(affine_transform(spec, shift)).to_string()
                    + " j=" + std::to_string(j) + " d=" + std::to_string(d);
                result.push_back(verified(graph,
                            BoundWitness{d + 2 * (n / d) - 2, pull_back(witness, n, shift), source}));
            }
        return result;
    }

    auto upper_bound_cycle(const CirculantSpec & spec) -> std::optional<BoundWitness>
    {
        std::optional<BoundWitness> best;
        for (auto & candidate : cycle_bound_candidates(spec))
            if (! best || candidate.value < best->value)
                best = std::move(candidate);
        return best;
    }

    auto bounds_report(const CirculantSpec & spec, bool orbit_search) -> BoundReport
    {
        auto report = lower_bounds(spec);
        if (! is_connected_gcd(spec))
            return report;

        report.upper_span = upper_bound_span(spec, orbit_search);
        report.upper_cycle = upper_bound_cycle(spec);
        report.best_upper = std::min(report.best_upper, report.upper_span->value);
        if (report.upper_cycle)
            report.best_upper = std::min(report.best_upper, report.upper_cycle->value);
        return report;
    }

    auto solve_exact(const CirculantSpec & spec, const SolveOptions & options) -> SolveResult
    {
        int g = connectivity_gcd(spec);
        if (g == 1)
            return solve_connected_spec(spec, options);

        if (! options.allow_disconnected)
            throw ValidationError(spec.to_string() + " is disconnected (" + std::to_string(g)
                    + " components); enable per-component solving to continue");

        // every component is the circulant (n/g, (p - i_1)/g) on left class c
        // and right class c + i_1
        int n = spec.n(), anchor = spec.powers().front();
        check_vertex_budget(2 * n, options.budget, 1, 2 * n - 1);
        std::vector<int> reduced;
        for (int p : spec.powers())
            reduced.push_back((p - anchor) / g);
        CirculantSpec component{n / g, reduced};
        auto inner = solve_connected_spec(component, options);

        SolveResult result{inner.z * g, {}, inner.nodes_explored, inner.wall_time, g};
        int m = n / g;
        for (int c = 0 ; c < g ; ++c)
            inner.witness.for_each([&] (int v) {
                if (v < m)
                    result.witness.insert(c + g * v);
                else
                    result.witness.insert(n + modulo(c + anchor + g * (v - m), n));
            });
        return result;
    }

    auto induced_subgraph(const BipartiteGraph & graph, VertexSet vertices, std::vector<int> & original) -> BipartiteGraph
    {
        original.clear();
        std::vector<int> index(graph.vertex_count(), -1);
        int left = 0, right = 0;
        vertices.for_each([&] (int v) {
            if (graph.is_left(v))
                index[v] = left++;
        });
        vertices.for_each([&] (int v) {
            if (! graph.is_left(v))
                index[v] = right++;
        });

        BipartiteGraph result(left, right);
        original.resize(left + right);
        vertices.for_each([&] (int v) {
            if (graph.is_left(v)) {
                original[index[v]] = v;
                (graph.neighbours(v) & vertices).for_each([&] (int w) { result.add_edge(index[v], index[w]); });
            }
            else
                original[left + index[v]] = v;
        });
        return result;
    }

    auto solve_graph(const BipartiteGraph & graph, const SolveOptions & options) -> SolveResult
    {
        auto components = connected_components(graph);
        if (components.size() == 1) {
            check_vertex_budget(graph.vertex_count(), options.budget, 1, graph.vertex_count() - 1);
            int lower = options.start_at_lower_bound ? graph_lower_bound(graph) : 1;
            return deepen(graph, lower, graph.vertex_count() - 1, false, options);
        }

        if (! options.allow_disconnected)
            throw ValidationError("graph is disconnected (" + std::to_string(components.size())
                    + " components); enable per-component solving to continue");

        check_vertex_budget(graph.vertex_count(), options.budget, 1, graph.vertex_count() - 1);
        SolveResult result;
        result.components = components.size();
        for (auto & component : components) {
            if (component.size() == 1) {
                result.z += 1;
                result.witness |= component;
                continue;
            }
            std::vector<int> original;
            auto sub = induced_subgraph(graph, component, original);
            auto inner = solve_graph(sub, options);
            result.z += inner.z;
            result.nodes_explored += inner.nodes_explored;
            result.wall_time += inner.wall_time;
            inner.witness.for_each([&] (int v) { result.witness.insert(original[v]); });
        }
        return result;
    }
}
