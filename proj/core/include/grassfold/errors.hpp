#pragma once

#include <stdexcept>
#include <string>

namespace grassfold {

// Geometric input breaks an operation (coincident projection center,
// non-spanning configuration, join degenerates, ...).
struct degenerate_input : std::runtime_error {
    explicit degenerate_input(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition was violated by the caller.
struct precondition_error : std::logic_error {
    explicit precondition_error(const std::string& what) : std::logic_error(what) {}
};

// Structurally invalid data: bad JSON, unresolvable script reference.
// `where` is a JSON-pointer-like location when one is known.
struct malformed_input : std::runtime_error {
    std::string where;
    malformed_input(const std::string& what, std::string where_ = {})
        : std::runtime_error(what), where(std::move(where_)) {}
};

struct budget_exhausted : std::runtime_error {
    explicit budget_exhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace grassfold
