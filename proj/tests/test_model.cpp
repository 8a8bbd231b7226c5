#include "fixtures.hpp"

#include "railock/generator.hpp"

#include <doctest.h>

#include <algorithm>

using namespace railock;
using namespace railock::testing;

namespace
{

instance_error_kind build_error( const infrastructure_description& d )
{
    try
    {
        infrastructure::build( d );
    }
    catch ( const instance_error& e )
    {
        return e.kind();
    }
    FAIL( "expected an instance_error" );
    return instance_error_kind::invalid_value;
}

instance_error_kind train_error( const infrastructure_description& d, const std::vector< train_description >& trains )
{
    try
    {
        make_instance( d, trains );
    }
    catch ( const instance_error& e )
    {
        return e.kind();
    }
    FAIL( "expected an instance_error" );
    return instance_error_kind::invalid_value;
}

} // namespace

TEST_CASE( "corridor with two long trains is a valid instance" )
{
    const auto inst = corridor_long_trains();
    CHECK( inst.infra().route_count() == 18 );
    CHECK( inst.train_count() == 2 );
    CHECK( inst.warnings().empty() );
    CHECK( inst.train( 0 ).initial.size() == 3 );
    CHECK( inst.train( 1 ).initial.size() == 3 );
}

TEST_CASE( "undefined delimiter is an unknown reference" )
{
    auto d = line( 3 );
    d.partial_routes[ 1 ].entry = "dX";
    CHECK( build_error( d ) == instance_error_kind::unknown_reference );
}

TEST_CASE( "two routes forming a loop are rejected" )
{
    infrastructure_description d;
    d.delimiters = { "a", "b" };
    d.partial_routes = { { "r1", 1.0, "a", "b" }, { "r2", 1.0, "b", "a" } };
    d.elementary_routes = { { "r1", { "r1" } }, { "r2", { "r2" } } };
    CHECK( build_error( d ) == instance_error_kind::cyclic_route_graph );
}

TEST_CASE( "structural checks on the infrastructure" )
{
    SUBCASE( "negative length" )
    {
        auto d = line( 2 );
        d.partial_routes[ 0 ].length = -1.0;
        CHECK( build_error( d ) == instance_error_kind::invalid_value );
    }
    SUBCASE( "self conflict" )
    {
        auto d = line( 2 );
        d.conflicts.emplace_back( "r1", "r1" );
        CHECK( build_error( d ) == instance_error_kind::invalid_value );
    }
    SUBCASE( "conflict with an unknown route" )
    {
        auto d = line( 2 );
        d.conflicts.emplace_back( "r1", "r9" );
        CHECK( build_error( d ) == instance_error_kind::unknown_reference );
    }
    SUBCASE( "route in two elementary routes" )
    {
        auto d = line( 2 );
        d.elementary_routes.push_back( { "both", { "r1", "r2" } } );
        CHECK( build_error( d ) == instance_error_kind::invalid_value );
    }
    SUBCASE( "elementary route parts not chained" )
    {
        auto d = line( 3 );
        d.elementary_routes = { { "e1", { "r1", "r3" } }, { "r2", { "r2" } } };
        CHECK( build_error( d ) == instance_error_kind::invalid_value );
    }
    SUBCASE( "route not covered by an elementary route" )
    {
        auto d = line( 3 );
        d.elementary_routes.pop_back();
        CHECK( build_error( d ) == instance_error_kind::invalid_value );
    }
}

TEST_CASE( "train validation" )
{
    const auto d = line( 4 );
    CHECK( train_error( d, { { "t1", 1.0, { "r1", "r3" }, { "r4" } } } )
           == instance_error_kind::noncontiguous_initial_position );
    CHECK( train_error( d, { { "t1", 1.0, { "r1" }, { "r4" } }, { "t2", 1.0, { "r1" }, { "r4" } } } )
           == instance_error_kind::conflicting_initial_positions );
    CHECK( train_error( d, { { "t1", 1.0, { "r9" }, { "r4" } } } ) == instance_error_kind::unknown_reference );
    CHECK( train_error( d, { { "t1", 0.0, { "r1" }, { "r4" } } } ) == instance_error_kind::invalid_value );
    CHECK( train_error( d, { { "t1", 1.0, { "r1" }, {} } } ) == instance_error_kind::invalid_value );

    auto c = line( 4 );
    c.conflicts.emplace_back( "r1", "r3" );
    CHECK( train_error( c, { { "t1", 1.0, { "r1" }, { "r4" } }, { "t2", 1.0, { "r3" }, { "r4" } } } )
           == instance_error_kind::conflicting_initial_positions );
}

TEST_CASE( "initial routes are stored tail first whatever the input order" )
{
    const auto inst = make_instance( line( 4 ), { { "t1", 2.0, { "r3", "r2" }, { "r4" } } } );
    CHECK( inst.train( 0 ).initial == std::vector< route_index >{ route_id( inst, "r2" ), route_id( inst, "r3" ) } );
}

TEST_CASE( "unreachable final route gives a warning" )
{
    const auto inst = make_instance( line( 4 ), { { "t1", 1.0, { "r3" }, { "r1" } } } );
    REQUIRE( inst.warnings().size() == 1 );
    CHECK( inst.warnings()[ 0 ].find( "unreachable" ) != std::string::npos );
}

TEST_CASE( "successors at a branching delimiter of the junction" )
{
    const auto inst = gen_junction();
    auto out = successors( inst, "e2" );
    std::sort( out.begin(), out.end() );
    CHECK( out == std::vector< std::string >{ "r3be", "r3e" } );
}

TEST_CASE( "successors at a boundary and inside a line" )
{
    const auto inst = make_instance( line( 3 ), {} );
    CHECK( successors( inst, "d3" ).empty() );
    CHECK( successors( inst, "d1" ) == std::vector< std::string >{ "r2" } );
}

TEST_CASE( "conflicts are symmetric and listed once" )
{
    auto d = line( 3 );
    d.conflicts = { { "r1", "r3" }, { "r3", "r1" } };
    const auto net = infrastructure::build( d );
    const auto r1 = *net.find_route( "r1" );
    const auto r3 = *net.find_route( "r3" );
    CHECK( net.conflicts( r1, r3 ) );
    CHECK( net.conflicts( r3, r1 ) );
    CHECK( net.conflict_pairs().size() == 1 );
}

TEST_CASE( "topological rank follows the route graph" )
{
    const auto inst = make_instance( line( 5 ), {} );
    const auto& net = inst.infra();
    for ( route_index r = 0; r < net.route_count(); ++r )
        for ( auto n : net.next_routes( r ) )
            CHECK( net.topo_rank( r ) < net.topo_rank( n ) );
}

TEST_CASE( "a train on one of its final routes starts finished" )
{
    const auto inst = make_instance( line( 3 ), { { "t1", 1.0, { "r3" }, { "r3" } } } );
    CHECK( inst.starts_finished( 0 ) );
    CHECK( inst.is_final( 0, route_id( inst, "r3" ) ) );
    CHECK_FALSE( inst.is_final( 0, route_id( inst, "r2" ) ) );
}
