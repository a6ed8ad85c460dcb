#pragma once

#include <bicirc/vertex_set.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bicirc
{
    /// An n x n (0,1) circulant written as a sum of distinct powers of the
    /// cyclic shift. Powers are kept sorted and distinct; construction validates.
    class CirculantSpec
    {
        public:
            CirculantSpec(int n, std::vector<int> powers);

            /// Parses `n:k:i1,i2,...,ik`. Powers may be given in any order.
            static auto parse(std::string_view text) -> CirculantSpec;

            auto n() const -> int { return _n; }
            auto k() const -> int { return static_cast<int>(_powers.size()); }
            auto powers() const -> std::span<const int> { return _powers; }
            auto contains(int power) const -> bool;
            auto is_complete() const -> bool { return k() == _n; }

            auto to_string() const -> std::string;

            auto operator== (const CirculantSpec &) const -> bool = default;
            auto operator<=> (const CirculantSpec &) const = default;

        private:
            int _n;
            std::vector<int> _powers;
    };

    /// Bipartite graph with left vertices 0..left_count-1 and right vertices
    /// stored at left_count + j. Adjacency rows are bitmasks over all vertices.
    class BipartiteGraph
    {
        public:
            static constexpr int max_vertices = VertexSet::capacity;

            BipartiteGraph(int left_count, int right_count);

            /// rows[r] has bit c set when left r is adjacent to right c.
            static auto from_biadjacency(const std::vector<std::vector<int>> & rows) -> BipartiteGraph;

            auto add_edge(int left, int right) -> void;

            auto left_count() const -> int { return _left; }
            auto right_count() const -> int { return _right; }
            auto vertex_count() const -> int { return _left + _right; }
            auto right_vertex(int j) const -> int { return _left + j; }
            auto is_left(int v) const -> bool { return v < _left; }
            auto all_vertices() const -> VertexSet { return VertexSet::first(vertex_count()); }
            auto left_side() const -> VertexSet { return VertexSet::first(_left); }

            auto neighbours(int v) const -> VertexSet { return _adj[v]; }
            auto adjacent(int u, int v) const -> bool { return _adj[u].contains(v); }
            auto degree(int v) const -> int { return _adj[v].size(); }
            auto edge_count() const -> int;

            /// Regularity degree, or -1 if degrees differ.
            auto regular_degree() const -> int;

            /// Name such as `L3` or `R0`.
            auto vertex_name(int v) const -> std::string;
            auto parse_vertex(std::string_view name) const -> int;

            auto operator== (const BipartiteGraph &) const -> bool = default;

        private:
            int _left, _right;
            std::vector<VertexSet> _adj;
    };

    /// i -> unit * i + shift (mod n).
    struct AffineMap
    {
        int unit = 1;
        int shift = 0;
    };

    struct CycleDecomposition
    {
        int a, b;
        int d;
        std::vector<std::vector<int>> cycles;
    };

    auto build_graph(const CirculantSpec & spec) -> BipartiteGraph;

    auto normalize(const CirculantSpec & spec) -> CirculantSpec;

    /// Throws if gcd(unit, n) != 1.
    auto affine_transform(const CirculantSpec & spec, const AffineMap & map) -> CirculantSpec;

    /// All phi(n) * n affine maps for the given modulus.
    auto affine_maps(int n) -> std::vector<AffineMap>;

    /// Lexicographically least power set over the affine orbit.
    auto canonical_form(const CirculantSpec & spec) -> CirculantSpec;

    /// Vertex relabelling carrying build_graph(spec) onto
    /// build_graph(affine_transform(spec, map)).
    auto affine_vertex_map(int n, const AffineMap & map) -> std::vector<int>;
    auto invert_vertex_map(const std::vector<int> & map) -> std::vector<int>;
    auto apply_vertex_map(VertexSet set, const std::vector<int> & map) -> VertexSet;

    /// gcd of the non-anchor powers together with n, after normalisation.
    auto connectivity_gcd(const CirculantSpec & spec) -> int;
    auto is_connected_gcd(const CirculantSpec & spec) -> bool;
    auto is_connected_bfs(const BipartiteGraph & graph) -> bool;
    auto connected_components(const BipartiteGraph & graph) -> std::vector<VertexSet>;

    auto cycle_decomposition(const CirculantSpec & spec, int a, int b) -> CycleDecomposition;

    auto complement_spec(const CirculantSpec & spec) -> CirculantSpec;

    /// All k-subsets of Z_n as specs, in lexicographic order.
    auto all_specs(int n, int k) -> std::vector<CirculantSpec>;

    auto gcd_mod(int a, int n) -> int;
    auto modulo(long long a, int n) -> int;
    auto mod_inverse(int a, int n) -> int;
}
