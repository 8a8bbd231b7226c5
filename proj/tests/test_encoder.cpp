#include "fixtures.hpp"

#include "railock/encoder.hpp"
#include "railock/generator.hpp"

#include <doctest.h>

#include <sstream>

using namespace railock;
using namespace railock::testing;

namespace
{

const encoder_options with_zp{ .with_progress = true, .with_maximal_progress = true };

} // namespace

TEST_CASE( "two-station ladder has no third transition under Z and P" )
{
    const auto inst = gen_ladder( 2 );
    auto solver = sat::make_solver( sat::backend::cadical );
    encoding_session session( inst, *solver, with_zp );
    session.extend_step();
    session.extend_step();
    CHECK( solver->solve( {} ) == sat::solve_result::sat );
    session.extend_step();
    CHECK( session.steps() == 3 );
    CHECK( solver->solve( {} ) == sat::solve_result::unsat );
}

TEST_CASE( "train already on its final route reaches the goal in one step" )
{
    const auto inst = make_instance( line( 3 ), { { "t1", 1.0, { "r3" }, { "r3" } } } );
    auto solver = sat::make_solver( sat::backend::cadical );
    encoding_session session( inst, *solver, {} );
    CHECK( session.extend_step() == 1 );
    CHECK( solver->solve( session.goal_assumptions( 1 ) ) == sat::solve_result::sat );
}

TEST_CASE( "a whole path can be allocated in one transition" )
{
    const auto inst = make_instance( line( 4 ), { { "t1", 1.0, { "r1" }, { "r4" } } } );
    auto solver = sat::make_solver( sat::backend::dpll );
    encoding_session session( inst, *solver, {} );
    session.extend_step();
    REQUIRE( solver->solve( session.goal_assumptions( 1 ) ) == sat::solve_result::sat );
    CHECK( solver->value( session.occ( 1, route_id( inst, "r4" ), 0 ) ) );
    CHECK( solver->value( session.finished( 1, 0 ) ) );
}

TEST_CASE( "freeable over unit routes with a 2.25 train" )
{
    // The route itself counts first, so three occupied successors are needed.
    const auto four = make_instance( line( 9 ), { { "t1", 2.25, { "r1", "r2", "r3", "r4" }, { "r9" } } } );
    const auto three = make_instance( line( 9 ), { { "t1", 2.25, { "r1", "r2", "r3" }, { "r9" } } } );
    sat::cnf_formula a;
    sat::cnf_formula b;
    encoding_session sa( four, a, {} );
    encoding_session sb( three, b, {} );
    CHECK( sa.freeable_formula( 0, route_id( four, "r1" ), 2.25, 0 ) == sa.true_lit() );
    CHECK( sb.freeable_formula( 0, route_id( three, "r1" ), 2.25, 0 ) == sb.false_lit() );
    CHECK( sb.freeable_formula( 0, route_id( three, "r1" ), 2.0, 0 ) == sb.true_lit() );
}

TEST_CASE( "freeable base cases" )
{
    const auto inst = make_instance( line( 3 ), { { "t1", 1.0, { "r3" }, { "r3" } } } );
    sat::cnf_formula f;
    encoding_session s( inst, f, {} );
    s.extend_step();
    CHECK( s.freeable_formula( 0, route_id( inst, "r3" ), 5.0, 1 ) == s.true_lit() );
    CHECK( s.freeable_formula( 0, route_id( inst, "r1" ), 0.0, 1 ) == s.true_lit() );
    const auto open = s.freeable_formula( 0, route_id( inst, "r1" ), 1.5, 1 );
    CHECK_FALSE( s.is_constant( open ) );
    CHECK( s.freeable_formula( 0, route_id( inst, "r1" ), 1.5, 1 ) == open );
}

TEST_CASE( "freeable literal is equivalent to the occupancy pattern" )
{
    const auto inst = make_instance( line( 5 ), { { "t1", 1.5, { "r1" }, { "r5" } } } );
    auto solver = sat::make_solver( sat::backend::cadical );
    encoding_session s( inst, *solver, {} );
    s.extend_step();
    const auto f = s.freeable_formula( 0, route_id( inst, "r1" ), 1.5, 1 );
    const auto r2 = s.occ( 1, route_id( inst, "r2" ), 0 );
    const auto r3 = s.occ( 1, route_id( inst, "r3" ), 0 );
    CHECK( solver->solve( std::vector{ r2, r3, ~f } ) == sat::solve_result::unsat );
    CHECK( solver->solve( std::vector{ ~r3, f } ) == sat::solve_result::unsat );
    CHECK( solver->solve( std::vector{ r2, r3, f } ) == sat::solve_result::sat );
}

TEST_CASE( "goal literals, one per train" )
{
    SUBCASE( "two trains" )
    {
        const auto inst = corridor_long_trains();
        sat::cnf_formula f;
        encoding_session s( inst, f, {} );
        for ( int i = 0; i < 3; ++i )
            s.extend_step();
        CHECK( s.goal_assumptions( 3 ).size() == 2 );
    }
    SUBCASE( "no trains" )
    {
        const auto inst = make_instance( line( 3 ), {} );
        auto solver = sat::make_solver( sat::backend::cadical );
        encoding_session s( inst, *solver, {} );
        s.extend_step();
        CHECK( s.goal_assumptions( 1 ).empty() );
        CHECK( solver->solve( s.goal_assumptions( 1 ) ) == sat::solve_result::sat );
    }
    SUBCASE( "seven trains" )
    {
        std::vector< train_description > trains;
        for ( int k = 0; k < 7; ++k )
            trains.push_back( { "t" + std::to_string( k ), 1.0, { "r" + std::to_string( 2 * k + 1 ) }, { "r15" } } );
        const auto inst = make_instance( line( 15 ), trains );
        sat::cnf_formula f;
        encoding_session s( inst, f, {} );
        s.extend_step();
        s.extend_step();
        CHECK( s.goal_assumptions( 2 ).size() == 7 );
    }
}

TEST_CASE( "action literals exist only with a progress constraint" )
{
    const auto inst = corridor_long_trains();
    sat::cnf_formula plain;
    sat::cnf_formula progress;
    encoding_session a( inst, plain, {} );
    encoding_session b( inst, progress, { .with_progress = true } );
    a.extend_step();
    b.extend_step();
    const auto middle = route_id( inst, "R5" );
    CHECK_FALSE( a.action( 1, 0, middle ) );
    CHECK( b.action( 1, 0, middle ) );
    CHECK( b.options().materialize_actions() );
}

TEST_CASE( "variable map" )
{
    const auto inst = corridor_long_trains();
    sat::cnf_formula f;
    encoding_session s( inst, f, {} );
    s.extend_step();
    const auto r = route_id( inst, "R5" );
    const auto& info = s.info( s.occ( 1, r, 1 ).var() );
    CHECK( info.kind == var_kind::occupancy );
    CHECK( info.step == 1 );
    CHECK( info.train == train_index{ 1 } );
    CHECK( info.route == r );
    CHECK( s.info( s.finished( 1, 0 ).var() ).kind == var_kind::finished );
    CHECK( s.var_count() == f.var_count() );
    CHECK( s.clause_count() == f.clauses().size() );
}

TEST_CASE( "step zero is made of constants" )
{
    const auto inst = corridor_long_trains();
    sat::cnf_formula f;
    encoding_session s( inst, f, {} );
    for ( route_index r = 0; r < inst.infra().route_count(); ++r )
        for ( train_index t = 0; t < inst.train_count(); ++t )
            CHECK( s.is_constant( s.occ( 0, r, t ) ) );
}

TEST_CASE( "DIMACS dump" )
{
    const auto inst = gen_ladder( 2 );
    sat::cnf_formula f;
    encoding_session s( inst, f, with_zp );
    s.extend_step();
    s.extend_step();
    const auto text = to_dimacs( f, s );
    std::istringstream in( text );
    std::string line_text;
    int comments = 0;
    int clauses = 0;
    bool header = false;
    while ( std::getline( in, line_text ) )
    {
        if ( line_text.starts_with( "c " ) )
            ++comments;
        else if ( line_text.starts_with( "p cnf " ) )
        {
            header = true;
            CHECK( line_text
                   == "p cnf " + std::to_string( f.var_count() ) + " " + std::to_string( f.clauses().size() ) );
        }
        else
        {
            CHECK( line_text.ends_with( " 0" ) );
            ++clauses;
        }
    }
    CHECK( header );
    CHECK( comments == f.var_count() );
    CHECK( clauses == static_cast< int >( f.clauses().size() ) );
    CHECK( text.find( "kind=occ train=t1 route=sR1" ) != std::string::npos );
}
