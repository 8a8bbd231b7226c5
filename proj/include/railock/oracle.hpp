#pragma once

#include "railock/model.hpp"

#include <cstddef>

namespace railock
{

enum class oracle_status
{
    live,
    dead,
    budget_exceeded,
};

const char* to_string( oracle_status s );

struct oracle_result
{
    oracle_status status = oracle_status::dead;
    std::size_t visited = 0;
};

// Explicit depth-first search over settled states, one allocation at a time.
// LIVE iff some reachable state has every train finished.
oracle_result oracle_decide( const problem_instance& inst, std::size_t node_budget = 1'000'000 );

} // namespace railock
