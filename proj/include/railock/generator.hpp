#pragma once

#include "railock/model.hpp"

#include <optional>
#include <stdexcept>

namespace railock
{

class invalid_parameter : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// n two-track stations joined by single-track lines, one train entering from
// each end. With train_len > track_len no station track can hold a train on
// its own, so the trains cannot pass each other.
problem_instance gen_ladder( int n, double train_len = 1.5, double track_len = 1.0 );

// A single line of unit-length routes, usable in both directions, with one
// train at each end heading for the opposite boundary. A train length <= 0
// leaves that end empty. Without an explicit offset, trains that need more
// than one route start one route in from their boundary.
problem_instance gen_corridor( int n_routes, double left_train_len, double right_train_len,
                               std::optional< int > offset = std::nullopt );

// Main line r1..r5 with a siding r6, r7 branching off inside r3; t1 heads
// east from r1, t2 heads west from r7.
problem_instance gen_junction();

// Four-station ladder with two long and two short trains around station 2,
// bound for a deadlock although every train can still move.
problem_instance gen_four_station();

} // namespace railock
