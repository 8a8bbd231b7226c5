#include "railock/detector.hpp"
#include "railock/generator.hpp"
#include "railock/oracle.hpp"

#include <doctest.h>

using namespace railock;

TEST_CASE( "ladder route counts" )
{
    CHECK( gen_ladder( 2 ).infra().route_count() == 16 );
    CHECK( gen_ladder( 4 ).infra().route_count() == 32 );
    CHECK( gen_ladder( 10 ).infra().route_count() == 80 );
    CHECK( gen_ladder( 100 ).infra().route_count() == 800 );
}

TEST_CASE( "ladder shape" )
{
    const auto inst = gen_ladder( 3 );
    CHECK( inst.train_count() == 2 );
    CHECK( inst.warnings().empty() );
    const auto& net = inst.infra();
    CHECK( net.route( inst.train( 0 ).initial.back() ).id == "sR1" );
    CHECK( net.route( inst.train( 1 ).initial.back() ).id == "sL3" );
    CHECK( net.route( inst.train( 0 ).final[ 0 ] ).id == "xR3" );
    CHECK( net.route( inst.train( 1 ).final[ 0 ] ).id == "xL1" );
}

TEST_CASE( "ladder parameter checks" )
{
    CHECK_THROWS_AS( gen_ladder( 0 ), invalid_parameter );
    CHECK_THROWS_AS( gen_ladder( 2, 0.0 ), invalid_parameter );
    CHECK_THROWS_AS( gen_ladder( 2, 1.5, -1.0 ), invalid_parameter );
}

TEST_CASE( "trains pass each other on long station tracks" )
{
    CHECK( oracle_decide( gen_ladder( 2, 1.5, 2.0 ) ).status == oracle_status::live );
}

TEST_CASE( "corridor instances" )
{
    const auto long_trains = gen_corridor( 9, 2.25, 2.25 );
    CHECK( long_trains.infra().route_count() == 18 );
    CHECK( long_trains.train( 0 ).initial.size() == 3 );
    CHECK( detect( long_trains, { .algorithm = 2 } ).steps_used == 2 );

    const auto short_trains = gen_corridor( 9, 0.8, 0.8 );
    CHECK( short_trains.train( 0 ).initial.size() == 1 );
    CHECK( short_trains.infra().route( short_trains.train( 0 ).initial[ 0 ] ).id == "R1" );
    CHECK( short_trains.infra().route( short_trains.train( 1 ).initial[ 0 ] ).id == "L9" );
}

TEST_CASE( "corridor with one train" )
{
    const auto inst = gen_corridor( 2, 0.8, 0.0 );
    CHECK( inst.train_count() == 1 );
    const auto v = detect( inst );
    CHECK( v.status == verdict_status::live );
    CHECK( v.steps_used == 1 );
}

TEST_CASE( "corridor parameter checks" )
{
    CHECK_THROWS_AS( gen_corridor( 1, 1.0, 1.0 ), invalid_parameter );
    CHECK_THROWS_AS( gen_corridor( 9, 1.0, 1.0, -1 ), invalid_parameter );
    CHECK_THROWS_AS( gen_corridor( 3, 5.0, 5.0 ), invalid_parameter );
}

TEST_CASE( "junction" )
{
    const auto inst = gen_junction();
    CHECK( inst.infra().route_count() == 16 );
    CHECK( inst.train_count() == 2 );
    CHECK( oracle_decide( inst ).status == oracle_status::live );
    const auto v = detect( inst, { .algorithm = 3 } );
    CHECK( v.status == verdict_status::live );
    CHECK( v.steps_used <= 3 );
}

TEST_CASE( "four stations with two long and two short trains" )
{
    const auto inst = gen_four_station();
    CHECK( inst.train_count() == 4 );
    CHECK( oracle_decide( inst ).status == oracle_status::dead );
    const auto v = detect( inst, { .algorithm = 3 } );
    CHECK( v.status == verdict_status::dead );
    CHECK( v.steps_used <= 5 );
}
