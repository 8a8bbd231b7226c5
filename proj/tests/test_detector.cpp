#include "fixtures.hpp"
#include "random_instances.hpp"

#include "railock/detector.hpp"
#include "railock/generator.hpp"
#include "railock/oracle.hpp"

#include <doctest.h>

using namespace railock;
using namespace railock::testing;

namespace
{

verdict run( const problem_instance& inst, int algorithm, sat::backend b = sat::backend::cadical )
{
    return detect( inst, { .algorithm = algorithm, .timeout = std::chrono::seconds( 60 ), .backend = b } );
}

plan_action at( const problem_instance& inst, int step, const std::string& t, const std::string& e )
{
    return { step, { train_id( inst, t ), eroute_id( inst, e ) } };
}

// The junction plan spread over three steps.
plan three_step_junction_plan( const problem_instance& inst )
{
    return { {
        at( inst, 1, "t1", "r2e" ),
        at( inst, 2, "t1", "r3e" ),
        at( inst, 2, "t1", "r4e" ),
        at( inst, 2, "t1", "r5e" ),
        at( inst, 3, "t2", "r6w" ),
        at( inst, 3, "t2", "r3bw" ),
        at( inst, 3, "t2", "r2w" ),
        at( inst, 3, "t2", "r1w" ),
    } };
}

std::size_t cross_edges( const partial_order& po )
{
    std::size_t n = 0;
    for ( const auto& [ a, b ] : po.edges )
        n += a.first != b.first;
    return n;
}

} // namespace

TEST_CASE( "upper bound on plan length" )
{
    CHECK( compute_upper_bound( corridor_long_trains() ) == 10 );
    CHECK( compute_upper_bound( gen_ladder( 2 ) ) == 10 );
    CHECK( compute_upper_bound( gen_ladder( 4 ) ) == 22 );
    CHECK( compute_upper_bound( make_instance( line( 3 ), { { "t1", 1.0, { "r3" }, { "r3" } } } ) ) == 0 );
    CHECK( compute_upper_bound( make_instance( line( 4 ), { { "t1", 1.0, { "r1" }, { "r4" } } } ) ) == 3 );
}

TEST_CASE( "two-station ladder under each algorithm" )
{
    const auto inst = gen_ladder( 2 );
    for ( auto b : { sat::backend::cadical, sat::backend::dpll } )
    {
        const auto v1 = run( inst, 1, b );
        const auto v2 = run( inst, 2, b );
        const auto v3 = run( inst, 3, b );
        CHECK( v1.status == verdict_status::dead );
        CHECK( v1.steps_used == 10 );
        CHECK( v2.status == verdict_status::dead );
        CHECK( v2.steps_used == 7 );
        CHECK( v3.status == verdict_status::dead );
        CHECK( v3.steps_used == 3 );
    }
}

TEST_CASE( "hundred-station ladder needs three steps" )
{
    const auto v = run( gen_ladder( 100 ), 3 );
    CHECK( v.status == verdict_status::dead );
    CHECK( v.steps_used == 3 );
}

TEST_CASE( "long-train corridor is found dead after two transitions" )
{
    const auto v = run( corridor_long_trains(), 2 );
    CHECK( v.status == verdict_status::dead );
    CHECK( v.steps_used == 2 );
}

TEST_CASE( "short-train corridor: seven free routes allow seven single moves" )
{
    const auto inst = corridor_short_trains();
    CHECK( compute_upper_bound( inst ) == 16 );
    const auto v = run( inst, 2 );
    CHECK( v.status == verdict_status::dead );
    CHECK( v.steps_used == 8 );
}

TEST_CASE( "junction is live within two steps" )
{
    const auto inst = gen_junction();
    const auto v = run( inst, 3 );
    REQUIRE( v.status == verdict_status::live );
    CHECK( v.steps_used == 2 );
    REQUIRE( v.found_plan );
    CHECK( v.found_plan->actions.size() == 8 );
    CHECK( validate_plan( inst, *v.found_plan ).empty() );
    CHECK( v.found_plan->at_step( 1 ).size() + v.found_plan->at_step( 2 ).size() == 8 );
}

TEST_CASE( "junction partial order" )
{
    const auto inst = gen_junction();
    const auto v = run( inst, 3 );
    REQUIRE( v.found_plan );
    const auto hand = three_step_junction_plan( inst );
    REQUIRE( validate_plan( inst, hand ).empty() );

    const auto po = plan_partial_order( inst, *v.found_plan );
    CHECK( po == plan_partial_order( inst, hand ) );
    CHECK( po.nodes.size() == 10 );
    CHECK( po.edges.size() == 9 );
    CHECK( cross_edges( po ) == 1 );

    using node = partial_order::node;
    CHECK( po.edges.contains( { node{ "t1", "r3e" }, node{ "t2", "r3bw" } } ) );
    CHECK( po.edges.contains( { node{ "t1", "r1e" }, node{ "t1", "r2e" } } ) );
    CHECK( po.edges.contains( { node{ "t2", "r7w" }, node{ "t2", "r6w" } } ) );
}

TEST_CASE( "partial order of a single train is its path" )
{
    const auto inst = make_instance( line( 4 ), { { "t1", 1.0, { "r1" }, { "r4" } } } );
    const plan p{ { at( inst, 1, "t1", "r2" ), at( inst, 2, "t1", "r3" ), at( inst, 3, "t1", "r4" ) } };
    const auto po = plan_partial_order( inst, p );
    CHECK( po.nodes.size() == 4 );
    CHECK( po.edges.size() == 3 );
    CHECK( po.edges.contains( { { "t1", "r2" }, { "t1", "r3" } } ) );
}

TEST_CASE( "partial order of independent trains has no cross edges" )
{
    auto d = line( 6 );
    // Two separate lines r1..r3 and r4..r6.
    d.partial_routes[ 2 ].exit.reset();
    d.partial_routes[ 3 ].entry.reset();
    const auto inst = make_instance( d, { { "t1", 1.0, { "r1" }, { "r3" } }, { "t2", 1.0, { "r4" }, { "r6" } } } );
    const auto v = run( inst, 3 );
    REQUIRE( v.found_plan );
    const auto po = plan_partial_order( inst, *v.found_plan );
    CHECK( po.nodes.size() == 6 );
    CHECK( cross_edges( po ) == 0 );
}

TEST_CASE( "trivial plans" )
{
    SUBCASE( "one action" )
    {
        const auto inst = make_instance( line( 2 ), { { "t1", 1.0, { "r1" }, { "r2" } } } );
        const auto v = run( inst, 1 );
        REQUIRE( v.found_plan );
        CHECK( v.found_plan->actions == std::vector{ at( inst, 1, "t1", "r2" ) } );
    }
    SUBCASE( "no trains" )
    {
        const auto inst = make_instance( line( 2 ), {} );
        for ( int a = 1; a <= 3; ++a )
        {
            const auto v = run( inst, a );
            CHECK( v.status == verdict_status::live );
            REQUIRE( v.found_plan );
            CHECK( v.found_plan->actions.empty() );
        }
    }
}

TEST_CASE( "timeout and step cap give unknown" )
{
    const auto big = gen_ladder( 10 );
    const auto v = detect( big, { .algorithm = 1, .timeout = std::chrono::duration< double >( 0.001 ) } );
    CHECK( v.status == verdict_status::unknown );

    const auto capped = detect( gen_ladder( 2 ), { .algorithm = 2, .step_cap = 3 } );
    CHECK( capped.status == verdict_status::unknown );
    CHECK( capped.steps_used == 3 );

    const auto short_k = detect( gen_ladder( 2 ), { .algorithm = 1, .step_cap = 4 } );
    CHECK( short_k.status == verdict_status::dead );
    CHECK( short_k.steps_used == 4 );

    CHECK_THROWS_AS( detect( big, { .algorithm = 4 } ), std::invalid_argument );
}

TEST_CASE( "decoded states replay the extracted plan" )
{
    const auto inst = gen_junction();
    auto solver = sat::make_solver( sat::backend::cadical );
    encoding_session session( inst, *solver, { .with_progress = true, .with_maximal_progress = true } );
    session.extend_step();
    session.extend_step();
    REQUIRE( solver->solve( session.goal_assumptions( 2 ) ) == sat::solve_result::sat );
    const auto states = decode_states( session, *solver, 2 );
    const auto p = extract_plan( session, *solver, 2 );
    REQUIRE( states.size() == 3 );
    auto s = raw_initial_state( inst );
    CHECK( states[ 0 ].occ == s.occ );
    for ( int i = 1; i <= 2; ++i )
    {
        s = execute_step( inst, s, p.at_step( i ) );
        CHECK( s.occ == states[ i ].occ );
    }
}

TEST_CASE( "plan validation catches broken plans" )
{
    const auto inst = gen_junction();
    auto p = three_step_junction_plan( inst );
    p.actions.erase( p.actions.begin() );
    CHECK_FALSE( validate_plan( inst, p ).empty() );

    auto unfinished = three_step_junction_plan( inst );
    unfinished.actions.pop_back();
    CHECK( validate_plan( inst, unfinished ) == "not every train reaches a final route" );
}

TEST_CASE( "plan and verdict JSON" )
{
    const auto inst = gen_junction();
    const auto p = three_step_junction_plan( inst );
    const auto doc = plan_to_json( inst, p );
    CHECK( doc[ 0 ] == nlohmann::json{ { "step", 1 }, { "train", "t1" }, { "elementary_route", "r2e" } } );
    CHECK( plan_from_json( inst, doc ) == p );

    const auto v = run( inst, 3 );
    const auto vj = verdict_to_json( inst, v );
    CHECK( vj[ "status" ] == "live" );
    CHECK( vj[ "steps" ] == 2 );
    CHECK( vj[ "algorithm" ] == 3 );
    CHECK( vj[ "plan" ].size() == 8 );
    CHECK_FALSE( verdict_to_json( inst, v, false ).contains( "plan" ) );
}

TEST_CASE( "algorithms agree with the oracle on random instances" )
{
    for ( const auto& item : balanced_suite( 1000, 15, 15 ) )
    {
        CAPTURE( item.seed );
        const auto expected = item.expected == oracle_status::live ? verdict_status::live : verdict_status::dead;
        const auto v1 = run( item.instance, 1 );
        const auto v2 = run( item.instance, 2 );
        const auto v3 = run( item.instance, 3 );
        CHECK( v1.status == expected );
        CHECK( v2.status == expected );
        CHECK( v3.status == expected );
        for ( const auto* v : { &v1, &v2, &v3 } )
            if ( v->status == verdict_status::live )
                CHECK( validate_plan( item.instance, *v->found_plan ).empty() );
        if ( expected == verdict_status::dead )
        {
            CHECK( v3.steps_used <= v2.steps_used );
            if ( moves_stay_on_destination_paths( item.instance ) )
                CHECK( v2.steps_used <= v1.steps_used );
        }
    }
}
