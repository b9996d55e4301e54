#pragma once

#include <stdexcept>
#include <string>

namespace bitideal {

struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : InputError {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t position)
        : InputError(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
};

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded() : std::runtime_error("evaluation budget exceeded") {}
};

}  // namespace bitideal
