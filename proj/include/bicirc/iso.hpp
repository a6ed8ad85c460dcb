#pragma once

#include <bicirc/circulant.hpp>
#include <bicirc/solver.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bicirc
{
    enum class IsoResult
    {
        Isomorphic,
        IsomorphicSideSwap,
        NonIsomorphic
    };

    auto to_string(IsoResult result) -> std::string;

    /// For an isomorphism, `mapping[v]` is the image in the second graph of
    /// vertex v of the first. With a side swap, left vertices land on the
    /// right side and vice versa.
    struct IsoCertificate
    {
        IsoResult result = IsoResult::NonIsomorphic;
        std::vector<int> mapping;
        std::string distinguishing_invariant;

        auto isomorphic() const -> bool { return result != IsoResult::NonIsomorphic; }
    };

    struct IsoOptions
    {
        int max_vertices = 32;
        std::uint64_t max_nodes = 50'000'000;
    };

    /// Exact decision by backtracking over refined vertex colours. Mappings
    /// are checked edge by edge before being returned.
    auto bipartite_isomorphic(const BipartiteGraph & g1, const BipartiteGraph & g2, const IsoOptions & options = {})
        -> IsoCertificate;

    /// True iff `mapping` is a bijection carrying edges to edges and non-edges to non-edges.
    auto verify_mapping(const BipartiteGraph & g1, const BipartiteGraph & g2, const std::vector<int> & mapping) -> bool;

    enum class ScanStatus
    {
        AffineEquivalent,
        Counterexample,
        NonIsomorphic
    };

    auto to_string(ScanStatus status) -> std::string;

    struct ScanFinding
    {
        int n, k;
        CirculantSpec first, second;
        ScanStatus status;
        IsoCertificate certificate;
    };

    struct ConjectureSummary
    {
        int n;
        int connected_specs = 0;
        int classes = 0;
        int pairs_tested = 0;
        int counterexamples = 0;
    };

    struct ConjectureScan
    {
        std::vector<ScanFinding> findings;
        std::vector<ConjectureSummary> per_n;

        auto counterexamples() const -> int;
    };

    /// Splits connected k-subsets of Z_n into affine classes for every
    /// n <= n_max, checks each class is internally isomorphic, and tests every
    /// pair of distinct classes for isomorphism.
    auto conjecture_scan(int n_max, int k, int threads = 1, const IsoOptions & options = {}) -> ConjectureScan;

    /// Connected cubic bipartite graphs on 2 * n_half vertices, one per
    /// isomorphism class.
    auto enumerate_cubic_bipartite(int n_half, const IsoOptions & options = {}) -> std::vector<BipartiteGraph>;

    struct UniquenessReport
    {
        int n_half;
        int classes = 0;
        std::vector<int> z_values;
        int z4_count = 0;
        std::optional<int> z4_index;
        bool z4_matches_circulant = false;

        auto holds() const -> bool { return z4_count == 1 && z4_matches_circulant; }
    };

    auto verify_cubic_uniqueness(int n_half, const SolveOptions & solve = {}, const IsoOptions & iso = {}) -> UniquenessReport;
}
