#include <bicirc/circulant.hpp>
#include <bicirc/errors.hpp>

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace bicirc
{
    namespace
    {
        auto parse_int(std::string_view text, std::string_view what) -> int
        {
            int value = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
                throw ValidationError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
            return value;
        }
    }

    auto modulo(long long a, int n) -> int
    {
        auto r = a % n;
        return static_cast<int>(r < 0 ? r + n : r);
    }

    auto gcd_mod(int a, int n) -> int
    {
        return std::gcd(modulo(a, n), n);
    }

    auto mod_inverse(int a, int n) -> int
    {
        a = modulo(a, n);
        for (int x = 0 ; x < n ; ++x)
            if (modulo(static_cast<long long>(a) * x, n) == 1 % n)
                return x;
        throw ValidationError(std::to_string(a) + " is not a unit modulo " + std::to_string(n));
    }

    CirculantSpec::CirculantSpec(int n, std::vector<int> powers) :
        _n(n),
        _powers(std::move(powers))
    {
        if (_n < 1)
            throw ValidationError("n must be positive");
        if (_powers.empty())
            throw ValidationError("power set must be nonempty");
        for (int p : _powers)
            if (p < 0 || p >= _n)
                throw ValidationError("power " + std::to_string(p) + " outside [0, " + std::to_string(_n - 1) + "]");
        std::sort(_powers.begin(), _powers.end());
        if (std::adjacent_find(_powers.begin(), _powers.end()) != _powers.end())
            throw ValidationError("duplicate power in power set");
    }

    auto CirculantSpec::parse(std::string_view text) -> CirculantSpec
    {
        auto c1 = text.find(':');
        auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
        if (c2 == std::string_view::npos)
            throw ValidationError("spec must look like n:k:i1,...,ik, got '" + std::string(text) + "'");

        int n = parse_int(text.substr(0, c1), "n");
        int k = parse_int(text.substr(c1 + 1, c2 - c1 - 1), "k");

        std::vector<int> powers;
        auto rest = text.substr(c2 + 1);
        while (true) {
            auto comma = rest.find(',');
            powers.push_back(parse_int(rest.substr(0, comma), "power"));
            if (comma == std::string_view::npos)
                break;
            rest = rest.substr(comma + 1);
        }

        if (static_cast<int>(powers.size()) != k)
            throw ValidationError("k = " + std::to_string(k) + " but " + std::to_string(powers.size()) + " powers given");
        return CirculantSpec{n, std::move(powers)};
    }

    auto CirculantSpec::contains(int power) const -> bool
    {
        return std::binary_search(_powers.begin(), _powers.end(), power);
    }

    auto CirculantSpec::to_string() const -> std::string
    {
        std::ostringstream out;
        out << _n << ':' << k() << ':';
        for (std::size_t i = 0 ; i < _powers.size() ; ++i)
            out << (i ? "," : "") << _powers[i];
        return out.str();
    }

    BipartiteGraph::BipartiteGraph(int left_count, int right_count) :
        _left(left_count),
        _right(right_count),
        _adj(left_count + right_count)
    {
        if (left_count < 1 || right_count < 1)
            throw ValidationError("both sides need at least one vertex");
        if (left_count + right_count > max_vertices)
            throw ValidationError("graph has " + std::to_string(left_count + right_count)
                    + " vertices, limit is " + std::to_string(max_vertices));
    }

    auto BipartiteGraph::from_biadjacency(const std::vector<std::vector<int>> & rows) -> BipartiteGraph
    {
        if (rows.empty() || rows.front().empty())
            throw ValidationError("empty biadjacency matrix");
        BipartiteGraph result(rows.size(), rows.front().size());
        for (std::size_t r = 0 ; r < rows.size() ; ++r) {
            if (rows[r].size() != rows.front().size())
                throw ValidationError("ragged biadjacency matrix");
            for (std::size_t c = 0 ; c < rows[r].size() ; ++c) {
                if (rows[r][c] != 0 && rows[r][c] != 1)
                    throw ValidationError("biadjacency entries must be 0 or 1");
                if (rows[r][c])
                    result.add_edge(r, c);
            }
        }
        return result;
    }

    auto BipartiteGraph::add_edge(int left, int right) -> void
    {
        int r = right_vertex(right);
        _adj[left].insert(r);
        _adj[r].insert(left);
    }

    auto BipartiteGraph::edge_count() const -> int
    {
        int total = 0;
        for (int v = 0 ; v < _left ; ++v)
            total += degree(v);
        return total;
    }

    auto BipartiteGraph::regular_degree() const -> int
    {
        int d = degree(0);
        for (int v = 1 ; v < vertex_count() ; ++v)
            if (degree(v) != d)
                return -1;
        return d;
    }

    auto BipartiteGraph::vertex_name(int v) const -> std::string
    {
        return is_left(v) ? "L" + std::to_string(v) : "R" + std::to_string(v - _left);
    }

    auto BipartiteGraph::parse_vertex(std::string_view name) const -> int
    {
        if (name.size() < 2 || (name[0] != 'L' && name[0] != 'R'))
            throw ValidationError("vertex must look like L3 or R0, got '" + std::string(name) + "'");
        int index = parse_int(name.substr(1), "vertex index");
        int limit = name[0] == 'L' ? _left : _right;
        if (index < 0 || index >= limit)
            throw ValidationError("vertex '" + std::string(name) + "' out of range");
        return name[0] == 'L' ? index : right_vertex(index);
    }

    auto build_graph(const CirculantSpec & spec) -> BipartiteGraph
    {
        int n = spec.n();
        BipartiteGraph graph(n, n);
        for (int m = 0 ; m < n ; ++m)
            for (int p : spec.powers())
                graph.add_edge(m, (m + p) % n);
        return graph;
    }

    auto normalize(const CirculantSpec & spec) -> CirculantSpec
    {
        return affine_transform(spec, AffineMap{1, -spec.powers().front()});
    }

    auto affine_transform(const CirculantSpec & spec, const AffineMap & map) -> CirculantSpec
    {
        int n = spec.n();
        if (std::gcd(modulo(map.unit, n), n) != 1)
            throw ValidationError("affine unit " + std::to_string(map.unit) + " is not coprime to " + std::to_string(n));
        std::vector<int> image;
        image.reserve(spec.k());
        for (int p : spec.powers())
            image.push_back(modulo(static_cast<long long>(map.unit) * p + map.shift, n));
        return CirculantSpec{n, std::move(image)};
    }

    auto affine_maps(int n) -> std::vector<AffineMap>
    {
        std::vector<AffineMap> result;
        for (int u = 0 ; u < n ; ++u)
            if (std::gcd(u, n) == 1)
                for (int z = 0 ; z < n ; ++z)
                    result.push_back(AffineMap{u, z});
        return result;
    }

    auto canonical_form(const CirculantSpec & spec) -> CirculantSpec
    {
        auto best = spec;
        for (auto & map : affine_maps(spec.n())) {
            auto image = affine_transform(spec, map);
            if (std::lexicographical_compare(image.powers().begin(), image.powers().end(),
                        best.powers().begin(), best.powers().end()))
                best = std::move(image);
        }
        return best;
    }

    auto affine_vertex_map(int n, const AffineMap & map) -> std::vector<int>
    {
        // mL -> (u m)L, rR -> (u r + z)R
        std::vector<int> result(2 * n);
        for (int m = 0 ; m < n ; ++m) {
            result[m] = modulo(static_cast<long long>(map.unit) * m, n);
            result[n + m] = n + modulo(static_cast<long long>(map.unit) * m + map.shift, n);
        }
        return result;
    }

    auto invert_vertex_map(const std::vector<int> & map) -> std::vector<int>
    {
        std::vector<int> result(map.size());
        for (std::size_t v = 0 ; v < map.size() ; ++v)
            result[map[v]] = v;
        return result;
    }

    auto apply_vertex_map(VertexSet set, const std::vector<int> & map) -> VertexSet
    {
        VertexSet result;
        set.for_each([&] (int v) { result.insert(map[v]); });
        return result;
    }

    auto connectivity_gcd(const CirculantSpec & spec) -> int
    {
        int g = spec.n();
        int anchor = spec.powers().front();
        for (int p : spec.powers())
            g = std::gcd(g, p - anchor);
        return g;
    }

    auto is_connected_gcd(const CirculantSpec & spec) -> bool
    {
        return connectivity_gcd(spec) == 1;
    }

    auto connected_components(const BipartiteGraph & graph) -> std::vector<VertexSet>
    {
        std::vector<VertexSet> result;
        auto unseen = graph.all_vertices();
        while (! unseen.empty()) {
            auto component = VertexSet::single(unseen.lowest());
            auto frontier = component;
            while (! frontier.empty()) {
                VertexSet next;
                frontier.for_each([&] (int v) { next |= graph.neighbours(v); });
                frontier = next & ~component;
                component |= frontier;
            }
            result.push_back(component);
            unseen &= ~component;
        }
        return result;
    }

    auto is_connected_bfs(const BipartiteGraph & graph) -> bool
    {
        return connected_components(graph).size() == 1;
    }

    auto cycle_decomposition(const CirculantSpec & spec, int a, int b) -> CycleDecomposition
    {
        if (a == b)
            throw ValidationError("cycle decomposition needs two distinct powers");
        if (! spec.contains(a) || ! spec.contains(b))
            throw ValidationError("cycle decomposition powers must belong to the spec");

        int n = spec.n();
        CycleDecomposition result{a, b, gcd_mod(b - a, n), {}};

        // mL -> (m+b)R along P^b, then (r)R -> (r-a)L along P^a
        std::vector<bool> seen(n, false);
        for (int start = 0 ; start < n ; ++start) {
            if (seen[start])
                continue;
            std::vector<int> cycle;
            int m = start;
            do {
                seen[m] = true;
                int r = modulo(m + b, n);
                cycle.push_back(m);
                cycle.push_back(n + r);
                m = modulo(r - a, n);
            } while (m != start);
            result.cycles.push_back(std::move(cycle));
        }
        return result;
    }

    auto complement_spec(const CirculantSpec & spec) -> CirculantSpec
    {
        if (spec.is_complete())
            throw ValidationError("complement of the full power set is empty");
        std::vector<int> rest;
        for (int p = 0 ; p < spec.n() ; ++p)
            if (! spec.contains(p))
                rest.push_back(p);
        return CirculantSpec{spec.n(), std::move(rest)};
    }

    auto all_specs(int n, int k) -> std::vector<CirculantSpec>
    {
        std::vector<CirculantSpec> result;
        if (k < 1 || k > n)
            return result;
        std::vector<int> pick(k);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            result.emplace_back(n, pick);
            int i = k - 1;
            while (i >= 0 && pick[i] == n - k + i)
                --i;
            if (i < 0)
                break;
            ++pick[i];
            for (int j = i + 1 ; j < k ; ++j)
                pick[j] = pick[j - 1] + 1;
        }
        return result;
    }
}
