#include "fixtures.hpp"

#include "railock/dynamics.hpp"
#include "railock/generator.hpp"

#include <doctest.h>

using namespace railock;
using namespace railock::testing;

namespace
{

train_action act( const problem_instance& inst, const std::string& t, const std::string& e )
{
    return { train_id( inst, t ), eroute_id( inst, e ) };
}

} // namespace

TEST_CASE( "long-train corridor: both trains can take the middle route" )
{
    const auto inst = corridor_long_trains();
    const auto s = initial_state( inst );
    const auto legal = legal_actions( inst, s );
    REQUIRE( legal.size() == 2 );
    CHECK( legal[ 0 ] == act( inst, "t1", "R5" ) );
    CHECK( legal[ 1 ] == act( inst, "t2", "L5" ) );

    const auto after = apply_action( inst, s, act( inst, "t1", "R5" ) );
    CHECK( legal_actions( inst, after ).empty() );
    CHECK_FALSE( all_finished( after ) );
}

TEST_CASE( "ladder trains meeting head to head have no legal action" )
{
    const auto inst = gen_ladder( 2 );
    auto s = initial_state( inst );
    for ( int guard = 0; guard < 100; ++guard )
    {
        const auto legal = legal_actions( inst, s );
        if ( legal.empty() )
            break;
        s = apply_action( inst, s, legal.front() );
    }
    CHECK( legal_actions( inst, s ).empty() );
    CHECK_FALSE( all_finished( s ) );
    CHECK( s.present[ 0 ] );
    CHECK( s.present[ 1 ] );
}

TEST_CASE( "a short train releases its previous route as it moves" )
{
    const auto inst = corridor_short_trains();
    const auto s = apply_action( inst, initial_state( inst ), act( inst, "t1", "R2" ) );
    CHECK_FALSE( s.occ[ route_id( inst, "R1" ) ] );
    CHECK( s.occ[ route_id( inst, "R2" ) ] == train_id( inst, "t1" ) );
}

TEST_CASE( "a long train keeps enough routes behind it" )
{
    const auto inst = make_instance( line( 6 ), { { "t1", 1.5, { "r1", "r2" }, { "r6" } } } );
    const auto s = apply_action( inst, initial_state( inst ), act( inst, "t1", "r3" ) );
    CHECK( train_chain( inst, s, 0 )
           == std::vector< route_index >{ route_id( inst, "r2" ), route_id( inst, "r3" ) } );
    CHECK( train_head( inst, s, 0 ) == route_id( inst, "r3" ) );
}

TEST_CASE( "a train on a boundary route leaves the model" )
{
    const auto inst = make_instance( line( 3 ), { { "t1", 1.0, { "r2" }, { "r3" } } } );
    const auto s = apply_action( inst, initial_state( inst ), act( inst, "t1", "r3" ) );
    CHECK( s.finished[ 0 ] );
    CHECK_FALSE( s.present[ 0 ] );
    CHECK_FALSE( s.occ[ route_id( inst, "r3" ) ] );
    CHECK( all_finished( s ) );
    CHECK( legal_actions( inst, s ).empty() );
}

TEST_CASE( "illegal allocations" )
{
    const auto inst = corridor_long_trains();
    const auto s = initial_state( inst );
    const auto taken = apply_action( inst, s, act( inst, "t1", "R5" ) );
    SUBCASE( "conflicting route" ) { CHECK_THROWS_AS( apply_action( inst, taken, act( inst, "t2", "L5" ) ), illegal_action ); }
    SUBCASE( "not adjacent to the head" ) { CHECK_THROWS_AS( apply_action( inst, s, act( inst, "t1", "R7" ) ), illegal_action ); }
    SUBCASE( "already held" ) { CHECK_THROWS_AS( apply_action( inst, taken, act( inst, "t1", "R5" ) ), illegal_action ); }
    CHECK_FALSE( is_legal( inst, taken, act( inst, "t2", "L5" ) ) );
}

TEST_CASE( "elementary routes are allocated whole" )
{
    auto d = line( 4 );
    d.elementary_routes = { { "r1", { "r1" } }, { "e23", { "r2", "r3" } }, { "r4", { "r4" } } };
    const auto inst = make_instance( d, { { "t1", 2.0, { "r1" }, { "r4" } } } );
    const auto s = apply_action( inst, initial_state( inst ), act( inst, "t1", "e23" ) );
    CHECK( s.occ[ route_id( inst, "r2" ) ] == train_index{ 0 } );
    CHECK( s.occ[ route_id( inst, "r3" ) ] == train_index{ 0 } );
    CHECK_FALSE( s.occ[ route_id( inst, "r1" ) ] );
}

TEST_CASE( "freeable in the simulator" )
{
    const auto inst = make_instance( line( 5 ), { { "t1", 2.25, { "r1", "r2", "r3" }, { "r5" } } } );
    const auto s = raw_initial_state( inst );
    CHECK_FALSE( freeable( inst, s, 0, route_id( inst, "r1" ), 2.25 ) );
    CHECK( freeable( inst, s, 0, route_id( inst, "r1" ), 2.0 ) );
    CHECK( freeable( inst, s, 0, route_id( inst, "r5" ), 9.0 ) );
    CHECK( freeable( inst, s, 0, route_id( inst, "r1" ), 0.0 ) );
}

TEST_CASE( "initial state settles surplus routes" )
{
    const auto inst = make_instance( line( 5 ), { { "t1", 0.5, { "r1", "r2", "r3" }, { "r5" } } } );
    CHECK( raw_initial_state( inst ).occ[ route_id( inst, "r1" ) ] );
    const auto s = initial_state( inst );
    CHECK_FALSE( s.occ[ route_id( inst, "r1" ) ] );
    CHECK_FALSE( s.occ[ route_id( inst, "r2" ) ] );
    CHECK( s.occ[ route_id( inst, "r3" ) ] );
}

TEST_CASE( "a step releases before it allocates" )
{
    // t2 can enter r3 only once t1 has let go of it.
    auto d = line( 5 );
    d.partial_routes.push_back( { "s1", 1.0, std::nullopt, "d2" } );
    d.elementary_routes.push_back( { "s1", { "s1" } } );
    const auto inst = make_instance( d, { { "t1", 0.5, { "r3", "r4" }, { "r5" } }, { "t2", 0.5, { "s1" }, { "r5" } } } );
    const auto s = raw_initial_state( inst );
    const auto next = execute_step( inst, s, { act( inst, "t2", "r3" ) } );
    CHECK( next.occ[ route_id( inst, "r3" ) ] == train_id( inst, "t2" ) );
    CHECK( next.occ[ route_id( inst, "r4" ) ] == train_id( inst, "t1" ) );
}

TEST_CASE( "state back to an instance" )
{
    const auto inst = corridor_short_trains();
    auto s = apply_action( inst, initial_state( inst ), act( inst, "t1", "R2" ) );
    const auto current = instance_from_state( inst, s );
    CHECK( current.train_count() == 2 );
    CHECK( current.train( 0 ).initial == std::vector< route_index >{ route_id( inst, "R2" ) } );
    CHECK( current.train( 0 ).final == inst.train( 0 ).final );

    const auto gone = make_instance( line( 3 ), { { "t1", 1.0, { "r2" }, { "r3" } } } );
    const auto end = apply_action( gone, initial_state( gone ), act( gone, "t1", "r3" ) );
    CHECK( instance_from_state( gone, end ).train_count() == 0 );
}

TEST_CASE( "JSON views" )
{
    const auto inst = corridor_short_trains();
    const auto s = initial_state( inst );
    const auto doc = state_to_json( inst, s );
    CHECK( doc[ "occ" ][ "R1" ] == "t1" );
    CHECK( doc[ "occ" ][ "L9" ] == "t2" );
    CHECK( doc[ "finished" ].empty() );
    CHECK( doc[ "present" ] == nlohmann::json{ "t1", "t2" } );
    CHECK( action_to_json( inst, act( inst, "t2", "L8" ) )
           == nlohmann::json{ { "train", "t2" }, { "elementary_route", "L8" } } );
}
