#pragma once

#include <stdexcept>
#include <string>

namespace fqre
{

// Exit-code mapping lives in the CLI: parse 2, infeasible 3, unsupported 4.
struct ParseError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct DomainError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct InfeasibleError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

}  // namespace fqre
