#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace bicirc
{
    /// A subset of at most 64 vertices, one bit per vertex.
    class VertexSet
    {
        public:
            static constexpr int capacity = 64;

            constexpr VertexSet() = default;
            constexpr explicit VertexSet(std::uint64_t bits) : _bits(bits) { }

            static constexpr auto first(int count) -> VertexSet
            {
                return VertexSet{count >= capacity ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1};
            }

            static constexpr auto single(int v) -> VertexSet { return VertexSet{std::uint64_t{1} << v}; }

            constexpr auto bits() const -> std::uint64_t { return _bits; }
            constexpr auto contains(int v) const -> bool { return (_bits >> v) & 1; }
            constexpr auto size() const -> int { return std::popcount(_bits); }
            constexpr auto empty() const -> bool { return _bits == 0; }
            constexpr auto lowest() const -> int { return std::countr_zero(_bits); }

            constexpr auto insert(int v) -> void { _bits |= std::uint64_t{1} << v; }
            constexpr auto erase(int v) -> void { _bits &= ~(std::uint64_t{1} << v); }

            constexpr auto is_subset_of(VertexSet other) const -> bool { return (_bits & ~other._bits) == 0; }

            constexpr auto operator| (VertexSet o) const -> VertexSet { return VertexSet{_bits | o._bits}; }
            constexpr auto operator& (VertexSet o) const -> VertexSet { return VertexSet{_bits & o._bits}; }
            constexpr auto operator~ () const -> VertexSet { return VertexSet{~_bits}; }
            constexpr auto operator|= (VertexSet o) -> VertexSet & { _bits |= o._bits; return *this; }
            constexpr auto operator&= (VertexSet o) -> VertexSet & { _bits &= o._bits; return *this; }

            constexpr auto operator== (const VertexSet &) const -> bool = default;

            auto to_vector() const -> std::vector<int>
            {
                std::vector<int> result;
                for (auto b = _bits ; b ; b &= b - 1)
                    result.push_back(std::countr_zero(b));
                return result;
            }

            template <typename F>
            constexpr auto for_each(F && f) const -> void
            {
                for (auto b = _bits ; b ; b &= b - 1)
                    f(std::countr_zero(b));
            }

        private:
            std::uint64_t _bits = 0;
    };

    /// Lexicographic order on sorted element lists, e.g. {0,5} < {1,2}.
    inline auto lex_less(VertexSet a, VertexSet b) -> bool
    {
        auto x = a.bits(), y = b.bits();
        while (x && y) {
            int p = std::countr_zero(x), q = std::countr_zero(y);
            if (p != q)
                return p < q;
            x &= x - 1;
            y &= y - 1;
        }
        return y != 0;
    }
}
