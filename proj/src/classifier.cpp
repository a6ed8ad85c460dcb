#include <bicirc/classifier.hpp>
#include <bicirc/errors.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace bicirc
{
    auto to_string(FamilyCase variant) -> std::string
    {
        switch (variant) {
            case FamilyCase::Case1: return "case1";
            case FamilyCase::Case2: return "case2";
            case FamilyCase::Case3a: return "case3a";
            case FamilyCase::Case3b: return "case3b";
        }
        return "unknown";
    }

    auto to_string(RunReading reading) -> std::string
    {
        switch (reading) {
            case RunReading::ClassCount: return "class-count";
            case RunReading::RunExtent: return "run-extent";
            case RunReading::Regularity: return "regularity";
        }
        return "unknown";
    }

    auto FamilyDescriptor::to_string() const -> std::string
    {
        std::ostringstream out;
        out << bicirc::to_string(variant);
        switch (variant) {
            case FamilyCase::Case1:
                break;
            case FamilyCase::Case2:
                out << " alpha=" << alpha << " i=" << step << " r=" << r;
                break;
            case FamilyCase::Case3a:
            case FamilyCase::Case3b:
                out << " d=" << d << " c=" << c << " alpha=" << alpha << " beta=" << beta << " l=" << l;
                if (variant == FamilyCase::Case3b)
                    out << " m=" << m << " reading=" << bicirc::to_string(reading);
                out << " gammas=[";
                for (std::size_t g = 0 ; g < gammas.size() ; ++g)
                    out << (g ? "," : "") << gammas[g];
                out << "]";
                break;
        }
        return out.str();
    }

    auto is_prime(int n) -> bool
    {
        if (n < 2)
            return false;
        for (int p = 2 ; p * p <= n ; ++p)
            if (n % p == 0)
                return false;
        return true;
    }

    namespace
    {
        [[noreturn]] auto fail(const std::string & why) -> void
        {
            throw ValidationError(why);
        }

        auto check_case3(const FamilyDescriptor & desc, int n, int k) -> void
        {
            int d = desc.d, alpha = desc.alpha;
            if (d < 2 || d >= n || n % d != 0)
                fail("case 3 needs a proper divisor d >= 2 of n");
            if (alpha < 1 || alpha >= d)
                fail("case 3 needs alpha in [1, d)");
            int c = std::gcd(d, alpha);
            if (desc.c != c)
                fail("case 3 needs c = gcd(d, alpha) = " + std::to_string(c));
            if (desc.l < 1 || desc.l >= d / c)
                fail("case 3 needs 1 <= l < d / c so the run classes are distinct and miss beta's class");
            if (desc.beta < 0 || desc.beta >= n)
                fail("beta out of range");
            if (static_cast<int>(desc.gammas.size()) != c - 1)
                fail("case 3 needs exactly c - 1 gamma anchors");

            std::set<int> classes{desc.beta % c};
            for (int g : desc.gammas)
                if (g < 0 || ! classes.insert(g % c).second)
                    fail("gamma anchors must lie in distinct classes mod c, away from beta's");

            if (desc.variant == FamilyCase::Case3a) {
                // alpha is 0 mod c, so it sits in a gamma class iff beta does not
                if (desc.beta % c == 0)
                    fail("case 3a needs alpha in one of the gamma classes");
            }
            else {
                if (desc.m < 1 || desc.m >= desc.l)
                    fail("case 3b needs 1 <= m < l so [0] and [alpha] are run classes");
                if (modulo(desc.beta + static_cast<long long>(desc.m) * alpha, d) != 0)
                    fail("case 3b needs beta in [-m alpha] mod d");
                int extent = desc.l - desc.m;
                bool covered = false;
                switch (desc.reading) {
                    case RunReading::ClassCount: covered = d / c <= desc.m + 2 * extent + 1; break;
                    case RunReading::RunExtent: covered = c <= desc.m + 2 * extent; break;
                    case RunReading::Regularity: covered = c <= desc.m + 2 * k; break;
                }
                if (! covered)
                    fail("case 3b run does not cover beta's class under the " + to_string(desc.reading) + " reading");
            }
        }

        auto powers_of(const FamilyDescriptor & desc, int n, int k) -> std::vector<int>
        {
            std::vector<int> powers;
            switch (desc.variant) {
                case FamilyCase::Case1:
                    for (int p = 0 ; p < k ; ++p)
                        powers.push_back(p);
                    break;

                case FamilyCase::Case2: {
                    if (desc.alpha < 0 || desc.alpha >= n || desc.step < 1 || desc.step >= n)
                        fail("case 2 parameters out of range");
                    int g = std::gcd(desc.step, n);
                    if (g <= 1)
                        fail("case 2 needs gcd(i, n) > 1");
                    if (desc.r < 0 || n / g <= desc.r + 1)
                        fail("case 2 needs the order of i to exceed r + 1");
                    std::vector<bool> removed(n, false);
                    for (int t = 0 ; t <= desc.r ; ++t)
                        removed[modulo(desc.alpha + static_cast<long long>(t) * desc.step, n)] = true;
                    for (int p = 0 ; p < n ; ++p)
                        if (! removed[p])
                            powers.push_back(p);
                    break;
                }

                case FamilyCase::Case3a:
                case FamilyCase::Case3b: {
                    check_case3(desc, n, k);
                    int c = desc.c, d = desc.d;
                    std::set<int> gamma_classes;
                    for (int g : desc.gammas)
                        gamma_classes.insert(g % c);
                    for (int x = 0 ; x < n ; ++x)
                        if (gamma_classes.contains(x % c))
                            powers.push_back(x);
                    powers.push_back(desc.beta);
                    for (int t = 1 ; t <= desc.l ; ++t) {
                        int cls = modulo(desc.beta + static_cast<long long>(t) * desc.alpha, d);
                        for (int x = cls ; x < n ; x += d)
                            powers.push_back(x);
                    }
                    break;
                }
            }
            return powers;
        }
    }

    auto expand_family(const FamilyDescriptor & desc, int n, int k) -> CirculantSpec
    {
        if (k < 2 || k > n)
            fail("families need 2 <= k <= n");
        auto powers = powers_of(desc, n, k);
        auto sorted = powers;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail("family parameters produce a repeated power");
        if (static_cast<int>(sorted.size()) != k)
            fail("family parameters produce " + std::to_string(sorted.size()) + " powers, not " + std::to_string(k));
        CirculantSpec spec{n, std::move(sorted)};
        if (! is_connected_gcd(spec))
            fail("family parameters produce a disconnected graph");
        return spec;
    }

    auto family_instances(int n, int k, RunReading reading) -> std::vector<FamilyDescriptor>
    {
        std::vector<FamilyDescriptor> result;
        if (k < 2 || k > n)
            return result;

        auto keep = [&] (const FamilyDescriptor & desc) {
            try {
                expand_family(desc, n, k);
                result.push_back(desc);
            }
            catch (const ValidationError &) {
            }
        };

        keep(FamilyDescriptor{FamilyCase::Case1});

        for (int step = 1 ; step < n ; ++step) {
            int g = std::gcd(step, n);
            if (g <= 1)
                continue;
            int r = n - k - 1;
            if (r < 0 || n / g <= r + 1)
                continue;
            for (int alpha = 0 ; alpha < n ; ++alpha) {
                FamilyDescriptor desc{FamilyCase::Case2};
                desc.alpha = alpha;
                desc.step = step;
                desc.r = r;
                keep(desc);
            }
        }

        for (int d = 2 ; d < n ; ++d) {
            if (n % d != 0)
                continue;
            for (int alpha = 1 ; alpha < d ; ++alpha) {
                int c = std::gcd(d, alpha);
                for (int beta = 0 ; beta < n ; ++beta)
                    for (int l = 1 ; l < d / c ; ++l) {
                        FamilyDescriptor desc;
                        desc.d = d;
                        desc.c = c;
                        desc.alpha = alpha;
                        desc.beta = beta;
                        desc.l = l;
                        for (int g = 0 ; g < c ; ++g)
                            if (g != beta % c)
                                desc.gammas.push_back(g);

                        desc.variant = FamilyCase::Case3a;
                        keep(desc);

                        desc.variant = FamilyCase::Case3b;
                        desc.reading = reading;
                        for (int m = 1 ; m < l ; ++m) {
                            desc.m = m;
                            keep(desc);
                        }
                    }
            }
        }
        return result;
    }

    auto classify(const CirculantSpec & spec, RunReading reading) -> std::vector<FamilyDescriptor>
    {
        if (! is_connected_gcd(spec))
            throw ValidationError("classification needs a connected spec, " + spec.to_string() + " is not");

        auto target = canonical_form(spec);
        std::map<FamilyCase, FamilyDescriptor> matched;
        for (auto & desc : family_instances(spec.n(), spec.k(), reading)) {
            if (matched.contains(desc.variant))
                continue;
            if (canonical_form(expand_family(desc, spec.n(), spec.k())) == target)
                matched.emplace(desc.variant, desc);
        }

        std::vector<FamilyDescriptor> result;
        for (auto & [variant, desc] : matched)
            result.push_back(desc);
        return result;
    }

    auto predict_z(const CirculantSpec & spec, RunReading reading) -> std::optional<int>
    {
        if (classify(spec, reading).empty())
            return std::nullopt;
        return 2 * (spec.k() - 1);
    }

    auto verify_prime_corollary(int n, int k, const SolveOptions & options) -> PrimeCorollaryReport
    {
        if (! is_prime(n))
            throw ValidationError(std::to_string(n) + " is not prime");
        if (k < 2 || k > n)
            throw ValidationError("prime check needs 2 <= k <= n");

        PrimeCorollaryReport report{n, k};
        std::set<CirculantSpec> seen;
        for (auto & spec : all_specs(n, k)) {
            auto canon = canonical_form(spec);
            if (! seen.insert(canon).second || ! is_connected_gcd(canon))
                continue;
            ++report.classes;
            if (solve_exact(canon, options).z == 2 * (k - 1))
                report.achieving.push_back(canon);
        }

        std::vector<int> first(k);
        std::iota(first.begin(), first.end(), 0);
        auto case1 = canonical_form(CirculantSpec{n, first});
        report.holds = report.achieving.size() == 1 && report.achieving.front() == case1;
        return report;
    }

    auto mr_lower_bound(const CirculantSpec & spec, int z) -> int
    {
        return 2 * spec.n() - z;
    }
}
