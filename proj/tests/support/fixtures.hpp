#pragma once

#include "railock/model.hpp"

#include <string>
#include <vector>

namespace railock::testing
{

// Nine unit routes, trains of length 2.25 on three routes at each end.
problem_instance corridor_long_trains();
// Nine unit routes, trains of length 0.8 on the two boundary routes.
problem_instance corridor_short_trains();

// Routes r1..rn in a row between delimiters d0..dn, open at both ends,
// each its own elementary route.
infrastructure_description line( int n, double route_len = 1.0 );

problem_instance make_instance( const infrastructure_description& desc,
                                const std::vector< train_description >& trains );

route_index route_id( const problem_instance& inst, const std::string& id );
eroute_index eroute_id( const problem_instance& inst, const std::string& id );
train_index train_id( const problem_instance& inst, const std::string& id );

} // namespace railock::testing
