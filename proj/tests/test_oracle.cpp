#include "fixtures.hpp"

#include "railock/generator.hpp"
#include "railock/oracle.hpp"

#include <doctest.h>

using namespace railock;
using namespace railock::testing;

TEST_CASE( "long-train corridor is dead" )
{
    CHECK( oracle_decide( corridor_long_trains() ).status == oracle_status::dead );
}

TEST_CASE( "short-train corridor is dead" )
{
    CHECK( oracle_decide( corridor_short_trains() ).status == oracle_status::dead );
}

TEST_CASE( "four-station instance is dead" )
{
    CHECK( oracle_decide( gen_four_station() ).status == oracle_status::dead );
}

TEST_CASE( "junction is live" )
{
    CHECK( oracle_decide( gen_junction() ).status == oracle_status::live );
}

TEST_CASE( "disjoint parallel tracks are live" )
{
    auto d = line( 3 );
    auto other = line( 3 );
    for ( auto& x : other.delimiters )
        x = "p" + x;
    for ( auto& r : other.partial_routes )
    {
        r.id = "p" + r.id;
        if ( r.entry )
            r.entry = "p" + *r.entry;
        if ( r.exit )
            r.exit = "p" + *r.exit;
    }
    for ( auto& e : other.elementary_routes )
    {
        e.id = "p" + e.id;
        e.parts[ 0 ] = "p" + e.parts[ 0 ];
    }
    d.delimiters.insert( d.delimiters.end(), other.delimiters.begin(), other.delimiters.end() );
    d.partial_routes.insert( d.partial_routes.end(), other.partial_routes.begin(), other.partial_routes.end() );
    d.elementary_routes.insert( d.elementary_routes.end(), other.elementary_routes.begin(), other.elementary_routes.end() );
    const auto inst = make_instance( d, { { "t1", 1.0, { "r2" }, { "r3" } }, { "t2", 1.0, { "pr2" }, { "pr3" } } } );
    CHECK( oracle_decide( inst ).status == oracle_status::live );
}

TEST_CASE( "ladder with long station tracks is live, with short ones dead" )
{
    CHECK( oracle_decide( gen_ladder( 2, 1.5, 2.0 ) ).status == oracle_status::live );
    CHECK( oracle_decide( gen_ladder( 2 ) ).status == oracle_status::dead );
}

TEST_CASE( "no trains, or every train already home" )
{
    CHECK( oracle_decide( make_instance( line( 3 ), {} ) ).status == oracle_status::live );
    CHECK( oracle_decide( make_instance( line( 3 ), { { "t1", 1.0, { "r2" }, { "r2" } } } ) ).status
           == oracle_status::live );
}

TEST_CASE( "unreachable destination is dead" )
{
    CHECK( oracle_decide( make_instance( line( 3 ), { { "t1", 1.0, { "r2" }, { "r1" } } } ) ).status
           == oracle_status::dead );
}

TEST_CASE( "node budget" )
{
    const auto r = oracle_decide( gen_ladder( 3 ), 5 );
    CHECK( r.status == oracle_status::budget_exceeded );
    CHECK( std::string( to_string( r.status ) ) == "budget_exceeded" );
}
