#include <bicirc/iso.hpp>
#include <bicirc/errors.hpp>

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace bicirc
{
    auto to_string(IsoResult result) -> std::string
    {
        switch (result) {
            case IsoResult::Isomorphic: return "isomorphic";
            case IsoResult::IsomorphicSideSwap: return "isomorphic-side-swap";
            case IsoResult::NonIsomorphic: return "non-isomorphic";
        }
        return "unknown";
    }

    auto to_string(ScanStatus status) -> std::string
    {
        switch (status) {
            case ScanStatus::AffineEquivalent: return "affine-equivalent";
            case ScanStatus::Counterexample: return "isomorphic-but-not-affine";
            case ScanStatus::NonIsomorphic: return "non-isomorphic";
        }
        return "unknown";
    }

    namespace
    {
        enum class SideMode
        {
            Preserve,
            Swap,
            Free
        };

        /// Colour refinement run on both graphs at once so colour ids are comparable.
        /// Starts from (degree, 4-cycles through v) and folds in the sorted
        /// neighbour colours three times.
        auto joint_colours(const BipartiteGraph & g1, const BipartiteGraph & g2)
            -> std::pair<std::vector<int>, std::vector<int>>
        {
            auto initial = [] (const BipartiteGraph & g) {
                std::vector<std::vector<long>> sig(g.vertex_count());
                for (int v = 0 ; v < g.vertex_count() ; ++v) {
                    long squares = 0;
                    for (int x = 0 ; x < g.vertex_count() ; ++x)
                        if (x != v && g.is_left(x) == g.is_left(v)) {
                            long common = (g.neighbours(v) & g.neighbours(x)).size();
                            squares += common * (common - 1) / 2;
                        }
                    sig[v] = {g.degree(v), squares};
                }
                return sig;
            };

            auto s1 = initial(g1), s2 = initial(g2);
            std::vector<int> c1(g1.vertex_count()), c2(g2.vertex_count());

            for (int round = 0 ; ; ++round) {
                std::map<std::vector<long>, int> ids;
                for (auto & s : s1)
                    ids.emplace(s, 0);
                for (auto & s : s2)
                    ids.emplace(s, 0);
                int next = 0;
                for (auto & [key, id] : ids)
                    id = next++;
                for (std::size_t v = 0 ; v < s1.size() ; ++v)
                    c1[v] = ids[s1[v]];
                for (std::size_t v = 0 ; v < s2.size() ; ++v)
                    c2[v] = ids[s2[v]];

                if (round == 3)
                    break;

                auto refine = [] (const BipartiteGraph & g, const std::vector<int> & colours) {
                    std::vector<std::vector<long>> sig(g.vertex_count());
                    for (int v = 0 ; v < g.vertex_count() ; ++v) {
                        std::vector<long> around;
                        g.neighbours(v).for_each([&] (int w) { around.push_back(colours[w]); });
                        std::sort(around.begin(), around.end());
                        sig[v].push_back(colours[v]);
                        sig[v].insert(sig[v].end(), around.begin(), around.end());
                    }
                    return sig;
                };
                s1 = refine(g1, c1);
                s2 = refine(g2, c2);
            }
            return {c1, c2};
        }

        class IsoSearch
        {
            public:
                IsoSearch(const BipartiteGraph & g1, const BipartiteGraph & g2,
                        const std::vector<int> & c1, const std::vector<int> & c2, const IsoOptions & options) :
                    _g1(g1), _g2(g2), _c1(c1), _c2(c2), _options(options)
                {
                    // breadth-first order so most vertices have a mapped parent
                    int total = g1.vertex_count();
                    std::vector<bool> seen(total, false);
                    for (int root = 0 ; root < total ; ++root) {
                        if (seen[root])
                            continue;
                        std::size_t head = _order.size();
                        _order.push_back(root);
                        _parent.push_back(-1);
                        seen[root] = true;
                        while (head < _order.size()) {
                            int v = _order[head++];
                            g1.neighbours(v).for_each([&] (int w) {
                                if (! seen[w]) {
                                    seen[w] = true;
                                    _order.push_back(w);
                                    _parent.push_back(v);
                                }
                            });
                        }
                    }
                }

                auto run(SideMode mode) -> std::optional<std::vector<int>>
                {
                    _mode = mode;
                    _map.assign(_g1.vertex_count(), -1);
                    _mapped = VertexSet{};
                    _used = VertexSet{};
                    if (extend(0))
                        return _map;
                    return std::nullopt;
                }

            private:
                const BipartiteGraph & _g1, & _g2;
                const std::vector<int> & _c1, & _c2;
                const IsoOptions & _options;
                std::vector<int> _order, _parent;
                std::vector<int> _map;
                VertexSet _mapped, _used;
                SideMode _mode = SideMode::Preserve;
                std::uint64_t _nodes = 0;

                auto side_ok(int v, int w) const -> bool
                {
                    bool same = _g1.is_left(v) == _g2.is_left(w);
                    switch (_mode) {
                        case SideMode::Preserve: return same;
                        case SideMode::Swap: return ! same;
                        case SideMode::Free: return true;
                    }
                    return false;
                }

                auto extend(std::size_t depth) -> bool
                {
                    if (depth == _order.size())
                        return true;
                    if (++_nodes > _options.max_nodes)
                        throw BudgetExceeded("isomorphism search exceeded its node budget");

                    int v = _order[depth];
                    int parent = _parent[depth];
                    auto candidates = parent >= 0 ? _g2.neighbours(_map[parent]) : _g2.all_vertices();
                    candidates &= ~_used;

                    VertexSet wanted;
                    (_g1.neighbours(v) & _mapped).for_each([&] (int u) { wanted.insert(_map[u]); });

                    bool found = false;
                    candidates.for_each([&] (int w) {
                        if (found || _c2[w] != _c1[v] || ! side_ok(v, w))
                            return;
                        if ((_g2.neighbours(w) & _used) != wanted)
                            return;
                        _map[v] = w;
                        _mapped.insert(v);
                        _used.insert(w);
                        if (extend(depth + 1))
                            found = true;
                        else {
                            _map[v] = -1;
                            _mapped.erase(v);
                            _used.erase(w);
                        }
                    });
                    return found;
                }
        };

        auto histogram(const std::vector<int> & colours, const BipartiteGraph & g, int side) -> std::vector<int>
        {
            std::vector<int> result;
            for (int v = 0 ; v < g.vertex_count() ; ++v)
                if (side < 0 || g.is_left(v) == (side == 0))
                    result.push_back(colours[v]);
            std::sort(result.begin(), result.end());
            return result;
        }
    }

    auto verify_mapping(const BipartiteGraph & g1, const BipartiteGraph & g2, const std::vector<int> & mapping) -> bool
    {
        int total = g1.vertex_count();
        if (g2.vertex_count() != total || static_cast<int>(mapping.size()) != total)
            return false;
        VertexSet image;
        for (int w : mapping) {
            if (w < 0 || w >= total || image.contains(w))
                return false;
            image.insert(w);
        }
        for (int u = 0 ; u < total ; ++u)
            for (int v = 0 ; v < total ; ++v)
                if (g1.adjacent(u, v) != g2.adjacent(mapping[u], mapping[v]))
                    return false;
        return true;
    }

    auto bipartite_isomorphic(const BipartiteGraph & g1, const BipartiteGraph & g2, const IsoOptions & options)
        -> IsoCertificate
    {
        IsoCertificate cert;
        auto differ = [&] (std::string why) {
            cert.distinguishing_invariant = std::move(why);
            return cert;
        };

        if (g1.vertex_count() > options.max_vertices || g2.vertex_count() > options.max_vertices)
            throw BudgetExceeded("isomorphism test limited to " + std::to_string(options.max_vertices) + " vertices");
        if (g1.vertex_count() != g2.vertex_count())
            return differ("vertex count");
        if (g1.edge_count() != g2.edge_count())
            return differ("edge count");

        auto [c1, c2] = joint_colours(g1, g2);
        if (histogram(c1, g1, -1) != histogram(c2, g2, -1))
            return differ("refined degree and 4-cycle colour histogram");

        bool can_preserve = g1.left_count() == g2.left_count()
            && histogram(c1, g1, 0) == histogram(c2, g2, 0);
        bool can_swap = g1.left_count() == g2.right_count()
            && histogram(c1, g1, 0) == histogram(c2, g2, 1);

        IsoSearch search(g1, g2, c1, c2, options);
        auto attempt = [&] (SideMode mode, IsoResult label) -> bool {
            auto mapping = search.run(mode);
            if (! mapping)
                return false;
            if (! verify_mapping(g1, g2, *mapping))
                throw WitnessFailure("isomorphism search produced an invalid mapping");
            cert.result = label;
            cert.mapping = std::move(*mapping);
            return true;
        };

        if (can_preserve && attempt(SideMode::Preserve, IsoResult::Isomorphic))
            return cert;
        if (can_swap && attempt(SideMode::Swap, IsoResult::IsomorphicSideSwap))
            return cert;
        if (! is_connected_bfs(g1) && attempt(SideMode::Free, IsoResult::Isomorphic))
            return cert;
        return differ("exhaustive backtracking search");
    }

    auto ConjectureScan::counterexamples() const -> int
    {
        return std::count_if(findings.begin(), findings.end(),
                [] (const ScanFinding & f) { return f.status == ScanStatus::Counterexample; });
    }

    auto conjecture_scan(int n_max, int k, int threads, const IsoOptions & options) -> ConjectureScan
    {
        if (k < 1)
            throw ValidationError("k must be positive");
        if (2 * n_max > options.max_vertices)
            throw BudgetExceeded("conjecture scan limited to 2n <= " + std::to_string(options.max_vertices));

        struct Job
        {
            int n;
            CirculantSpec first, second;
            bool same_class;
        };

        ConjectureScan scan;
        std::vector<Job> jobs;
        for (int n = k ; n <= n_max ; ++n) {
            ConjectureSummary summary{n};
            std::map<CirculantSpec, std::vector<CirculantSpec>> classes;
            for (auto & spec : all_specs(n, k))
                if (is_connected_gcd(spec)) {
                    ++summary.connected_specs;
                    classes[canonical_form(spec)].push_back(spec);
                }
            summary.classes = classes.size();

            std::vector<CirculantSpec> reps;
            for (auto & [rep, members] : classes) {
                reps.push_back(rep);
                jobs.push_back(Job{n, rep, members.back(), true});
            }
            for (std::size_t a = 0 ; a < reps.size() ; ++a)
                for (std::size_t b = a + 1 ; b < reps.size() ; ++b) {
                    jobs.push_back(Job{n, reps[a], reps[b], false});
                    ++summary.pairs_tested;
                }
            scan.per_n.push_back(summary);
        }

        std::vector<std::optional<ScanFinding>> results(jobs.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t j ; (j = next.fetch_add(1)) < jobs.size() ; ) {
                auto & job = jobs[j];
                auto cert = bipartite_isomorphic(build_graph(job.first), build_graph(job.second), options);
                ScanStatus status;
                if (job.same_class)
                    status = cert.isomorphic() ? ScanStatus::AffineEquivalent : ScanStatus::NonIsomorphic;
                else
                    status = cert.isomorphic() ? ScanStatus::Counterexample : ScanStatus::NonIsomorphic;
                results[j] = ScanFinding{job.n, k, job.first, job.second, status, std::move(cert)};
            }
        };
        if (threads <= 1)
            worker();
        else {
            std::vector<std::jthread> pool;
            for (int t = 0 ; t < threads ; ++t)
                pool.emplace_back(worker);
        }

        for (auto & r : results)
            scan.findings.push_back(std::move(*r));
        for (auto & f : scan.findings)
            if (f.status == ScanStatus::Counterexample)
                for (auto & s : scan.per_n)
                    if (s.n == f.n)
                        ++s.counterexamples;
        return scan;
    }

    auto enumerate_cubic_bipartite(int n_half, const IsoOptions & options) -> std::vector<BipartiteGraph>
    {
        if (n_half > 7 || 2 * n_half > options.max_vertices)
            throw BudgetExceeded("cubic enumeration is limited to n_half <= 7");
        std::vector<BipartiteGraph> reps;
        if (n_half < 3)
            return reps;

        // Columns that agree on every row so far form contiguous blocks; a new
        // row may only take a prefix of each block. Any matrix can be brought
        // to this form by permuting columns within blocks, so nothing is lost.
        std::vector<unsigned> rows(n_half);
        std::vector<int> col_sum(n_half, 0);

        auto blocks_after = [&] (int filled) {
            std::vector<std::pair<int, int>> blocks;
            int start = 0;
            for (int c = 1 ; c <= n_half ; ++c) {
                bool split = c == n_half;
                for (int r = 0 ; r < filled && ! split ; ++r)
                    if (((rows[r] >> c) & 1) != ((rows[r] >> (c - 1)) & 1))
                        split = true;
                if (split) {
                    blocks.emplace_back(start, c);
                    start = c;
                }
            }
            return blocks;
        };

        auto consider = [&] {
            BipartiteGraph g(n_half, n_half);
            for (int r = 0 ; r < n_half ; ++r)
                for (int c = 0 ; c < n_half ; ++c)
                    if ((rows[r] >> c) & 1)
                        g.add_edge(r, c);
            if (! is_connected_bfs(g))
                return;
            for (auto & rep : reps)
                if (bipartite_isomorphic(rep, g, options).isomorphic())
                    return;
            reps.push_back(std::move(g));
        };

        auto place = [&] (auto & self, int row) -> void {
            if (row == n_half) {
                consider();
                return;
            }
            int remaining = n_half - row;
            for (int c = 0 ; c < n_half ; ++c)
                if (3 - col_sum[c] > remaining)
                    return;

            auto blocks = blocks_after(row);
            std::vector<int> take(blocks.size(), 0);
            auto choose = [&] (auto & inner, std::size_t b, int left) -> void {
                if (b == blocks.size()) {
                    if (left != 0)
                        return;
                    unsigned mask = 0;
                    for (std::size_t i = 0 ; i < blocks.size() ; ++i)
                        for (int c = blocks[i].first ; c < blocks[i].first + take[i] ; ++c)
                            mask |= 1u << c;
                    bool ok = true;
                    for (int c = 0 ; c < n_half ; ++c)
                        if (((mask >> c) & 1) && col_sum[c] == 3)
                            ok = false;
                    if (! ok)
                        return;
                    rows[row] = mask;
                    for (int c = 0 ; c < n_half ; ++c)
                        col_sum[c] += (mask >> c) & 1;
                    self(self, row + 1);
                    for (int c = 0 ; c < n_half ; ++c)
                        col_sum[c] -= (mask >> c) & 1;
                    return;
                }
                int width = blocks[b].second - blocks[b].first;
                for (int t = 0 ; t <= std::min(width, left) ; ++t) {
                    take[b] = t;
                    inner(inner, b + 1, left - t);
                }
            };
            choose(choose, 0, 3);
        };
        place(place, 0);
        return reps;
    }

    auto verify_cubic_uniqueness(int n_half, const SolveOptions & solve, const IsoOptions & iso) -> UniquenessReport
    {
        UniquenessReport report{n_half};
        auto graphs = enumerate_cubic_bipartite(n_half, iso);
        report.classes = graphs.size();
        for (std::size_t g = 0 ; g < graphs.size() ; ++g) {
            int z = solve_graph(graphs[g], solve).z;
            report.z_values.push_back(z);
            if (z == 4) {
                ++report.z4_count;
                report.z4_index = g;
            }
        }
        if (report.z4_index)
            report.z4_matches_circulant = bipartite_isomorphic(graphs[*report.z4_index],
                    build_graph(CirculantSpec{n_half, {0, 1, 2}}), iso).isomorphic();
        return report;
    }
}
