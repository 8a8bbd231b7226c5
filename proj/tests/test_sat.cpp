#include "railock/sat.hpp"

#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

using namespace railock::sat;

namespace
{

const backend all_backends[] = { backend::cadical, backend::dpll };

void add( solver& s, std::vector< int > dimacs )
{
    std::vector< lit > c;
    for ( int x : dimacs )
        c.emplace_back( x );
    s.add_clause( c );
}

std::vector< lit > lits( std::vector< int > dimacs )
{
    std::vector< lit > out;
    for ( int x : dimacs )
        out.emplace_back( x );
    return out;
}

} // namespace

TEST_CASE( "literal helpers" )
{
    const lit a{ 3, false };
    CHECK( a.dimacs() == -3 );
    CHECK( a.var() == 3 );
    CHECK_FALSE( a.positive() );
    CHECK( ~a == lit{ 3 } );
}

TEST_CASE( "backend names" )
{
    CHECK( backend_from_string( "cadical" ) == backend::cadical );
    CHECK( backend_from_string( "dpll" ) == backend::dpll );
    CHECK_FALSE( backend_from_string( "minisat" ) );
    CHECK( std::string( to_string( solve_result::timed_out ) ) == "timed_out" );
}

TEST_CASE( "basic solving on every backend" )
{
    for ( auto which : all_backends )
    {
        CAPTURE( static_cast< int >( which ) );
        SUBCASE( "unit clause" )
        {
            auto s = make_solver( which );
            s->new_var();
            add( *s, { 1 } );
            REQUIRE( s->solve( {} ) == solve_result::sat );
            CHECK( s->value( lit{ 1 } ) );
            CHECK_FALSE( s->value( lit{ -1 } ) );
        }
        SUBCASE( "contradiction" )
        {
            auto s = make_solver( which );
            s->new_var();
            add( *s, { 1 } );
            add( *s, { -1 } );
            CHECK( s->solve( {} ) == solve_result::unsat );
        }
        SUBCASE( "two pigeons, one hole" )
        {
            auto s = make_solver( which );
            s->new_var();
            s->new_var();
            add( *s, { 1 } );
            add( *s, { 2 } );
            add( *s, { -1, -2 } );
            CHECK( s->solve( {} ) == solve_result::unsat );
        }
        SUBCASE( "assumptions" )
        {
            auto s = make_solver( which );
            s->new_var();
            s->new_var();
            add( *s, { 1, 2 } );
            REQUIRE( s->solve( lits( { -1 } ) ) == solve_result::sat );
            CHECK( s->value( lit{ 2 } ) );
            CHECK( s->solve( lits( { -1, -2 } ) ) == solve_result::unsat );
            CHECK( s->solve( {} ) == solve_result::sat );
        }
        SUBCASE( "empty formula" )
        {
            auto s = make_solver( which );
            CHECK( s->solve( {} ) == solve_result::sat );
        }
        SUBCASE( "clauses added after a solve" )
        {
            auto s = make_solver( which );
            for ( int i = 0; i < 3; ++i )
                s->new_var();
            add( *s, { 1, 2, 3 } );
            REQUIRE( s->solve( {} ) == solve_result::sat );
            add( *s, { -1 } );
            add( *s, { -2 } );
            REQUIRE( s->solve( {} ) == solve_result::sat );
            CHECK( s->value( lit{ 3 } ) );
            add( *s, { -3 } );
            CHECK( s->solve( {} ) == solve_result::unsat );
        }
    }
}

TEST_CASE( "backends agree on random 3-SAT near the threshold" )
{
    std::mt19937 rng{ 7 };
    for ( int round = 0; round < 60; ++round )
    {
        const int vars = 20;
        const int clauses = 85;
        auto a = make_solver( backend::cadical );
        auto b = make_solver( backend::dpll );
        for ( int v = 0; v < vars; ++v )
        {
            a->new_var();
            b->new_var();
        }
        std::vector< std::vector< int > > cnf;
        for ( int c = 0; c < clauses; ++c )
        {
            std::vector< int > clause;
            for ( int k = 0; k < 3; ++k )
            {
                const int v = std::uniform_int_distribution( 1, vars )( rng );
                clause.push_back( std::bernoulli_distribution( 0.5 )( rng ) ? v : -v );
            }
            add( *a, clause );
            add( *b, clause );
            cnf.push_back( clause );
        }
        const auto assume = lits( { std::uniform_int_distribution( 1, vars )( rng ) } );
        const auto ra = a->solve( assume );
        const auto rb = b->solve( assume );
        REQUIRE( ra == rb );
        if ( rb == solve_result::sat )
        {
            for ( const auto& clause : cnf )
            {
                bool satisfied = false;
                for ( int x : clause )
                    satisfied = satisfied || b->value( lit{ x } );
                CHECK( satisfied );
            }
            CHECK( b->value( assume[ 0 ] ) );
        }
    }
}

TEST_CASE( "an expired deadline stops a hard search" )
{
    for ( auto which : all_backends )
    {
        auto s = make_solver( which );
        // Pigeonhole 9 into 8 is far beyond a zero time budget.
        const int pigeons = 9;
        const int holes = 8;
        const auto var = [ & ]( int p, int h ) { return p * holes + h + 1; };
        for ( int i = 0; i < pigeons * holes; ++i )
            s->new_var();
        for ( int p = 0; p < pigeons; ++p )
        {
            std::vector< int > c;
            for ( int h = 0; h < holes; ++h )
                c.push_back( var( p, h ) );
            add( *s, c );
        }
        for ( int h = 0; h < holes; ++h )
            for ( int p = 0; p < pigeons; ++p )
                for ( int q = p + 1; q < pigeons; ++q )
                    add( *s, { -var( p, h ), -var( q, h ) } );
        CHECK( s->solve( {}, clock::now() ) == solve_result::timed_out );
    }
}

TEST_CASE( "in-memory formula keeps what it receives" )
{
    cnf_formula f;
    CHECK( f.new_var() == 1 );
    CHECK( f.new_var() == 2 );
    const auto c = lits( { 1, -2 } );
    f.add_clause( c );
    CHECK( f.var_count() == 2 );
    REQUIRE( f.clauses().size() == 1 );
    CHECK( f.clauses()[ 0 ] == c );
}
