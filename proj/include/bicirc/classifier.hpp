#pragma once

#include <bicirc/circulant.hpp>
#include <bicirc/solver.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bicirc
{
    enum class FamilyCase
    {
        Case1,
        Case2,
        Case3a,
        Case3b
    };

    auto to_string(FamilyCase variant) -> std::string;

    /// How to read the bound `c <= m + 2k` in case 3b. RunExtent takes k to
    /// be the number of full classes past [0] in the partial run (l - m);
    /// Regularity takes k to be the degree of the graph. ClassCount asks
    /// that the m + 2(l - m) + 1 classes mod d blackened by the run cover
    /// all d / c classes of beta's class mod c.
    enum class RunReading
    {
        ClassCount,
        RunExtent,
        Regularity
    };

    inline constexpr RunReading all_readings[] = {RunReading::ClassCount, RunReading::RunExtent, RunReading::Regularity};

    auto to_string(RunReading reading) -> std::string;

    /// Parameters of one equality family. Fields a case does not use stay zero.
    ///
    /// Case2 removes the progression alpha, alpha + step, ..., alpha + r*step
    /// from the full power set. Case3 is every class mod c except beta's, plus
    /// beta itself, plus the l classes mod d of beta + alpha, ..., beta + l*alpha,
    /// where c = gcd(d, alpha).
    struct FamilyDescriptor
    {
        FamilyCase variant = FamilyCase::Case1;
        int alpha = 0;
        int step = 0;
        int r = 0;
        int d = 0;
        int c = 0;
        int beta = 0;
        int l = 0;
        int m = 0;
        std::vector<int> gammas;
        RunReading reading = RunReading::ClassCount;

        auto to_string() const -> std::string;

        auto operator== (const FamilyDescriptor &) const -> bool = default;
        auto operator<=> (const FamilyDescriptor &) const = default;
    };

    /// Throws ValidationError when the parameters are invalid, collide, or
    /// do not produce exactly k powers, or when the result is disconnected.
    auto expand_family(const FamilyDescriptor & desc, int n, int k) -> CirculantSpec;

    /// Every valid descriptor for the given n and k, in a fixed order.
    auto family_instances(int n, int k, RunReading reading = RunReading::ClassCount) -> std::vector<FamilyDescriptor>;

    /// Families whose expansion lies in the affine orbit of spec; at most one
    /// descriptor per variant, sorted by variant.
    auto classify(const CirculantSpec & spec, RunReading reading = RunReading::ClassCount) -> std::vector<FamilyDescriptor>;

    auto predict_z(const CirculantSpec & spec, RunReading reading = RunReading::ClassCount) -> std::optional<int>;

    struct PrimeCorollaryReport
    {
        int n, k;
        int classes = 0;
        std::vector<CirculantSpec> achieving;
        bool holds = false;
    };

    /// Solves every affine class of k-subsets of Z_n (n prime) and checks that
    /// only the class of {0, ..., k-1} reaches 2(k-1).
    auto verify_prime_corollary(int n, int k, const SolveOptions & options = {}) -> PrimeCorollaryReport;

    /// 2n - z: a bound on minimum rank from any upper bound z on Z(G).
    auto mr_lower_bound(const CirculantSpec & spec, int z) -> int;

    auto is_prime(int n) -> bool;
}
