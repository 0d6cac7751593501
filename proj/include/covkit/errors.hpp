#pragma once

#include <stdexcept>
#include <string>

namespace covkit {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct dimension_error : error {
    using error::error;
};

// An evaluation left the mapping's domain (non-finite output, ln of a
// non-positive number, ...).
struct domain_error : error {
    using error::error;
};

// Point lies where the derivative does not exist.
struct nondifferentiable_error : error {
    using error::error;
};

struct precondition_error : error {
    using error::error;
};

struct not_found_error : error {
    using error::error;
};

// Feasible set of a ball turned out empty.
struct degenerate_ball_error : precondition_error {
    using precondition_error::precondition_error;
};

struct hypothesis_error : precondition_error {
    using precondition_error::precondition_error;
};

struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

} // namespace covkit
