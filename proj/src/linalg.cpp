#include <bicirc/linalg.hpp>
#include <bicirc/errors.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

namespace bicirc
{
    using boost::multiprecision::cpp_int;

    IntMatrix::IntMatrix(int rows, int cols) :
        _rows(rows),
        _cols(cols),
        _data(static_cast<std::size_t>(rows) * cols, 0)
    {
        if (rows < 1 || cols < 1)
            throw ValidationError("matrix dimensions must be positive");
    }

    IntMatrix::IntMatrix(const std::vector<std::vector<long long>> & rows) :
        IntMatrix(rows.size(), rows.empty() ? 0 : rows.front().size())
    {
        for (int r = 0 ; r < _rows ; ++r) {
            if (static_cast<int>(rows[r].size()) != _cols)
                throw ValidationError("ragged matrix: row " + std::to_string(r) + " has "
                        + std::to_string(rows[r].size()) + " entries, expected " + std::to_string(_cols));
            std::copy(rows[r].begin(), rows[r].end(), _data.begin() + static_cast<std::size_t>(r) * _cols);
        }
    }

    auto IntMatrix::read(std::istream & in) -> IntMatrix
    {
        std::vector<std::vector<long long>> rows;
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream fields(line);
            std::vector<long long> row;
            std::string token;
            while (fields >> token) {
                std::size_t used = 0;
                long long value = 0;
                try {
                    value = std::stoll(token, &used);
                }
                catch (const std::exception &) {
                    used = 0;
                }
                if (used != token.size())
                    throw ValidationError("matrix entry '" + token + "' is not an integer");
                row.push_back(value);
            }
            if (! row.empty())
                rows.push_back(std::move(row));
        }
        if (rows.empty())
            throw ValidationError("matrix file contains no rows");
        return IntMatrix{rows};
    }

    auto IntMatrix::permuted(const std::vector<int> & row_order, const std::vector<int> & col_order) const -> IntMatrix
    {
        IntMatrix result(_rows, _cols);
        for (int r = 0 ; r < _rows ; ++r)
            for (int c = 0 ; c < _cols ; ++c)
                result(r, c) = (*this)(row_order[r], col_order[c]);
        return result;
    }

    auto IntMatrix::to_graph() const -> BipartiteGraph
    {
        BipartiteGraph graph(_rows, _cols);
        for (int r = 0 ; r < _rows ; ++r)
            for (int c = 0 ; c < _cols ; ++c) {
                auto x = (*this)(r, c);
                if (x != 0 && x != 1)
                    throw ValidationError("biadjacency entries must be 0 or 1");
                if (x)
                    graph.add_edge(r, c);
            }
        return graph;
    }

    auto to_matrix(const CirculantSpec & spec) -> IntMatrix
    {
        int n = spec.n();
        IntMatrix m(n, n);
        for (int r = 0 ; r < n ; ++r)
            for (int p : spec.powers())
                m(r, (r + p) % n) = 1;
        return m;
    }

    auto rank(const IntMatrix & m) -> int
    {
        int rows = m.rows(), cols = m.cols();
        std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
        for (int r = 0 ; r < rows ; ++r)
            for (int c = 0 ; c < cols ; ++c)
                a[r][c] = m(r, c);

        // Bareiss: after step k every entry below is a (k+1)-minor, and the
        // division by the previous pivot is exact.
        cpp_int previous = 1;
        int rank = 0;
        for (int c = 0 ; c < cols && rank < rows ; ++c) {
            int pivot = rank;
            while (pivot < rows && a[pivot][c] == 0)
                ++pivot;
            if (pivot == rows)
                continue;
            std::swap(a[pivot], a[rank]);

            for (int r = rank + 1 ; r < rows ; ++r) {
                for (int j = c + 1 ; j < cols ; ++j)
                    a[r][j] = (a[rank][c] * a[r][j] - a[r][c] * a[rank][j]) / previous;
                a[r][c] = 0;
            }
            previous = a[rank][c];
            ++rank;
        }
        return rank;
    }

    auto rank_invariance_check(const IntMatrix & m, int trials, std::mt19937_64 & rng) -> bool
    {
        if (trials < 1)
            throw ValidationError("rank invariance check needs at least one trial");
        int expected = rank(m);
        std::vector<int> row_order(m.rows()), col_order(m.cols());
        for (int t = 0 ; t < trials ; ++t) {
            std::iota(row_order.begin(), row_order.end(), 0);
            std::iota(col_order.begin(), col_order.end(), 0);
            std::shuffle(row_order.begin(), row_order.end(), rng);
            std::shuffle(col_order.begin(), col_order.end(), rng);
            if (rank(m.permuted(row_order, col_order)) != expected)
                return false;
        }
        return true;
    }
}
