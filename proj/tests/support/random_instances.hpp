#pragma once

#include "railock/model.hpp"
#include "railock/oracle.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace railock::testing
{

// A ladder-shaped layout with random stations (1 to 4), route lengths,
// conflicts and merged elementary routes, and 1 to 4 trains placed on
// random routes heading in either direction. At most 32 partial routes.
problem_instance random_ladder_instance( std::mt19937_64& rng );

// True if every route a train can reach from its head still leads to one of
// its final routes. Under this condition a DEAD instance exhausts global
// progress within U steps.
bool moves_stay_on_destination_paths( const problem_instance& inst );

struct labelled_instance
{
    problem_instance instance;
    oracle_status expected;
    std::uint64_t seed;
};

// Draws random instances until `live` LIVE and `dead` DEAD ones (by the
// oracle) have been collected. Deterministic in `seed`.
std::vector< labelled_instance > balanced_suite( std::uint64_t seed, int live, int dead );

} // namespace railock::testing
