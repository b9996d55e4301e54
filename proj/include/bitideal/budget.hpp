#pragma once

#include <cstdint>

#include "bitideal/errors.hpp"

namespace bitideal {

// Caps the total number of term evaluations a single command may perform, so
// that exponential enumerations fail loudly instead of hanging.
class Budget {
public:
    static constexpr std::uint64_t kDefaultLimit = 100'000'000;

    explicit Budget(std::uint64_t limit = kDefaultLimit) : limit_(limit) {}

    void charge(std::uint64_t n = 1) {
        used_ += n;
        if (used_ > limit_) throw BudgetExceeded();
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

}  // namespace bitideal
