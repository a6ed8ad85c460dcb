#pragma once

#include <stdexcept>
#include <string>

namespace bicirc
{
    class ValidationError : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    /// Search gave up. Carries whatever bounds were established before it stopped.
    class BudgetExceeded : public std::runtime_error
    {
        public:
            BudgetExceeded(const std::string & what, int lower = -1, int upper = -1) :
                std::runtime_error(what),
                best_lower(lower),
                best_upper(upper)
            {
            }

            int best_lower;
            int best_upper;
    };

    /// A constructed witness failed its forcing check. Only a bug (or a wrong
    /// bound construction) can raise this.
    class WitnessFailure : public std::logic_error
    {
        public:
            using std::logic_error::logic_error;
    };
}
