#pragma once

#include <bicirc/circulant.hpp>

#include <cstdint>
#include <istream>
#include <random>
#include <vector>

namespace bicirc
{
    /// Dense integer matrix, row-major.
    class IntMatrix
    {
        public:
            IntMatrix(int rows, int cols);
            explicit IntMatrix(const std::vector<std::vector<long long>> & rows);

            /// One row per line, whitespace-separated integers. Blank lines are skipped.
            static auto read(std::istream & in) -> IntMatrix;

            auto rows() const -> int { return _rows; }
            auto cols() const -> int { return _cols; }
            auto operator() (int r, int c) const -> long long { return _data[r * _cols + c]; }
            auto operator() (int r, int c) -> long long & { return _data[r * _cols + c]; }

            auto permuted(const std::vector<int> & row_order, const std::vector<int> & col_order) const -> IntMatrix;

            /// Bipartite graph with this matrix as biadjacency; entries must be 0/1.
            auto to_graph() const -> BipartiteGraph;

            auto operator== (const IntMatrix &) const -> bool = default;

        private:
            int _rows, _cols;
            std::vector<long long> _data;
    };

    auto to_matrix(const CirculantSpec & spec) -> IntMatrix;

    /// Exact rank over the rationals, by fraction-free (Bareiss) elimination
    /// in arbitrary precision.
    auto rank(const IntMatrix & m) -> int;

    /// True iff the rank survives `trials` random row and column permutations.
    auto rank_invariance_check(const IntMatrix & m, int trials, std::mt19937_64 & rng) -> bool;
}
