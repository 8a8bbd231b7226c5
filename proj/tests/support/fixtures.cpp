#include "fixtures.hpp"

#include "railock/generator.hpp"

#include <stdexcept>

namespace railock::testing
{

problem_instance corridor_long_trains() { return gen_corridor( 9, 2.25, 2.25 ); }

problem_instance corridor_short_trains() { return gen_corridor( 9, 0.8, 0.8 ); }

infrastructure_description line( int n, double route_len )
{
    infrastructure_description d;
    for ( int k = 0; k <= n; ++k )
        d.delimiters.push_back( "d" + std::to_string( k ) );
    for ( int k = 1; k <= n; ++k )
    {
        const auto id = "r" + std::to_string( k );
        d.partial_routes.push_back( { id, route_len, "d" + std::to_string( k - 1 ), "d" + std::to_string( k ) } );
        d.elementary_routes.push_back( { id, { id } } );
    }
    d.partial_routes.front().entry.reset();
    d.partial_routes.back().exit.reset();
    return d;
}

problem_instance make_instance( const infrastructure_description& desc,
                                const std::vector< train_description >& trains )
{
    return problem_instance::build( infrastructure::build( desc ), trains );
}

route_index route_id( const problem_instance& inst, const std::string& id )
{
    if ( auto r = inst.infra().find_route( id ) )
        return *r;
    throw std::out_of_range( "no route " + id );
}

eroute_index eroute_id( const problem_instance& inst, const std::string& id )
{
    if ( auto e = inst.infra().find_eroute( id ) )
        return *e;
    throw std::out_of_range( "no elementary route " + id );
}

train_index train_id( const problem_instance& inst, const std::string& id )
{
    if ( auto t = inst.find_train( id ) )
        return *t;
    throw std::out_of_range( "no train " + id );
}

} // namespace railock::testing
