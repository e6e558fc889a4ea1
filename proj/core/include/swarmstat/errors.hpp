#pragma once

#include <stdexcept>
#include <string>

namespace swarmstat {

/// Scenario file is missing or does not parse as the documented format.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A scenario invariant is violated; the message names the first offending field.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Path search start or goal is outside the grid or sits on an obstacle.
struct InvalidEndpointError : std::runtime_error {
    explicit InvalidEndpointError(const std::string& what) : std::runtime_error(what) {}
};

/// No obstacle-free path exists between the requested endpoints.
struct NoPathError : std::runtime_error {
    explicit NoPathError(const std::string& what) : std::runtime_error(what) {}
};

/// No finite-cost assignment covers every agent.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Riccati recursion failed to converge (unstabilizable pair or bad weights).
struct RiccatiError : std::runtime_error {
    explicit RiccatiError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swarmstat
