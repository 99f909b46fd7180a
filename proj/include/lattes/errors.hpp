#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lattes {

/// Thrown when a search or enumeration would exceed its configured budget.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// Syntax error in polynomial/fraction/curve text, with the offending position.
struct parse_error : std::invalid_argument {
    parse_error(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

}  // namespace lattes
