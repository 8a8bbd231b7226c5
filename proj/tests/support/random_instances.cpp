#include "random_instances.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

namespace railock::testing
{

namespace
{

std::string num( int j ) { return std::to_string( j ); }

template < typename T >
const T& pick( std::mt19937_64& rng, const std::vector< T >& from )
{
    return from[ std::uniform_int_distribution< std::size_t >( 0, from.size() - 1 )( rng ) ];
}

bool coin( std::mt19937_64& rng, double p ) { return std::bernoulli_distribution( p )( rng ); }

} // namespace

problem_instance random_ladder_instance( std::mt19937_64& rng )
{
    const int n = std::uniform_int_distribution( 1, 4 )( rng );
    const std::vector< double > lengths{ 0.5, 1.0, 1.0, 1.5, 2.0 };

    infrastructure_description d;
    std::set< std::string > delims;
    const auto add = [ & ]( const std::string& id, std::optional< std::string > entry,
                            std::optional< std::string > exit ) {
        for ( const auto& x : { entry, exit } )
            if ( x && delims.insert( *x ).second )
                d.delimiters.push_back( *x );
        d.partial_routes.push_back( { id, pick( rng, lengths ), entry, exit } );
    };
    const auto when = [ & ]( bool c, const std::string& id ) -> std::optional< std::string > {
        if ( c )
            return id;
        return std::nullopt;
    };

    for ( int j = 1; j <= n; ++j )
    {
        const auto s = num( j );
        add( "sR" + s, when( j > 1, "R" + s + "in" ), "R" + s + "s" );
        add( "aR" + s, "R" + s + "s", "R" + s + "t" );
        add( "bR" + s, "R" + s + "s", "R" + s + "t" );
        add( "xR" + s, "R" + s + "t", when( j < n, "R" + num( j + 1 ) + "in" ) );
        add( "sL" + s, when( j < n, "L" + s + "in" ), "L" + s + "s" );
        add( "aL" + s, "L" + s + "s", "L" + s + "t" );
        add( "bL" + s, "L" + s + "s", "L" + s + "t" );
        add( "xL" + s, "L" + s + "t", when( j > 1, "L" + num( j - 1 ) + "in" ) );
    }

    // Line segments between stations are sometimes one elementary route.
    std::set< std::string > merged;
    for ( int j = 1; j < n; ++j )
    {
        if ( coin( rng, 0.3 ) )
        {
            d.elementary_routes.push_back( { "xsR" + num( j ), { "xR" + num( j ), "sR" + num( j + 1 ) } } );
            merged.insert( { "xR" + num( j ), "sR" + num( j + 1 ) } );
        }
        if ( coin( rng, 0.3 ) )
        {
            d.elementary_routes.push_back( { "xsL" + num( j + 1 ), { "xL" + num( j + 1 ), "sL" + num( j ) } } );
            merged.insert( { "xL" + num( j + 1 ), "sL" + num( j ) } );
        }
    }
    for ( const auto& r : d.partial_routes )
        if ( !merged.contains( r.id ) )
            d.elementary_routes.push_back( { r.id, { r.id } } );

    for ( int j = 1; j <= n; ++j )
    {
        const auto s = num( j );
        if ( j > 1 && coin( rng, 0.9 ) )
            d.conflicts.emplace_back( "sR" + s, "sL" + num( j - 1 ) );
        for ( const char* p : { "s", "a", "b", "x" } )
            if ( coin( rng, 0.7 ) )
                d.conflicts.emplace_back( p + std::string( "R" ) + s, p + std::string( "L" ) + s );
        if ( coin( rng, 0.2 ) )
            d.conflicts.emplace_back( "aR" + s, "bL" + s );
        if ( coin( rng, 0.2 ) )
            d.conflicts.emplace_back( "bR" + s, "aL" + s );
    }

    const auto infra = infrastructure::build( d );

    const int k = std::uniform_int_distribution( 1, 4 )( rng );
    const std::vector< double > train_lengths{ 0.4, 0.8, 1.2, 1.6, 2.4 };
    std::vector< train_description > trains;
    std::set< route_index > taken;
    for ( int t = 1; t <= k; ++t )
    {
        const bool right = coin( rng, 0.5 );
        const char dir = right ? 'R' : 'L';
        std::vector< route_index > options;
        for ( route_index r = 0; r < infra.route_count(); ++r )
        {
            if ( infra.route( r ).id[ 1 ] != dir || taken.contains( r ) )
                continue;
            bool clash = false;
            for ( auto o : taken )
                clash = clash || infra.conflicts( r, o );
            if ( !clash )
                options.push_back( r );
        }
        if ( options.empty() )
            break;
        const auto start = pick( rng, options );
        taken.insert( start );

        std::vector< std::string > final;
        if ( coin( rng, 0.6 ) )
        {
            final.push_back( right ? "xR" + num( n ) : "xL1" );
        }
        else
        {
            // Somewhere further along the train's direction.
            std::vector< std::string > ahead;
            std::vector< route_index > frontier{ start };
            std::set< route_index > seen;
            while ( !frontier.empty() )
            {
                const auto r = frontier.back();
                frontier.pop_back();
                for ( auto next : infra.next_routes( r ) )
                {
                    if ( seen.insert( next ).second )
                    {
                        ahead.push_back( infra.route( next ).id );
                        frontier.push_back( next );
                    }
                }
            }
            final.push_back( ahead.empty() ? infra.route( start ).id : pick( rng, ahead ) );
            if ( ahead.size() > 1 && coin( rng, 0.3 ) )
                final.push_back( pick( rng, ahead ) );
        }
        std::sort( final.begin(), final.end() );
        final.erase( std::unique( final.begin(), final.end() ), final.end() );
        trains.push_back( { "t" + num( t ), pick( rng, train_lengths ), { infra.route( start ).id }, final } );
    }
    return problem_instance::build( infra, trains );
}

bool moves_stay_on_destination_paths( const problem_instance& inst )
{
    const auto& net = inst.infra();
    for ( train_index t = 0; t < inst.train_count(); ++t )
    {
        // leads[r]: some final route is reachable from r, r included.
        std::vector< std::optional< bool > > leads( net.route_count() );
        const auto reaches_final = [ & ]( auto&& self, route_index r ) -> bool {
            if ( leads[ r ] )
                return *leads[ r ];
            bool ok = inst.is_final( t, r );
            for ( auto n : net.next_routes( r ) )
                ok = self( self, n ) || ok;
            leads[ r ] = ok;
            return ok;
        };

        std::vector< route_index > stack{ inst.train( t ).initial.back() };
        std::set< route_index > seen;
        while ( !stack.empty() )
        {
            const auto r = stack.back();
            stack.pop_back();
            if ( !reaches_final( reaches_final, r ) )
                return false;
            for ( auto n : net.next_routes( r ) )
                if ( seen.insert( n ).second )
                    stack.push_back( n );
        }
    }
    return true;
}

std::vector< labelled_instance > balanced_suite( std::uint64_t seed, int live, int dead )
{
    std::vector< labelled_instance > out;
    int have_live = 0;
    int have_dead = 0;
    for ( std::uint64_t s = seed; have_live < live || have_dead < dead; ++s )
    {
        std::mt19937_64 rng{ s };
        auto inst = random_ladder_instance( rng );
        const auto o = oracle_decide( inst, 200'000 );
        if ( o.status == oracle_status::live && have_live < live )
        {
            ++have_live;
            out.push_back( { std::move( inst ), o.status, s } );
        }
        else if ( o.status == oracle_status::dead && have_dead < dead )
        {
            ++have_dead;
            out.push_back( { std::move( inst ), o.status, s } );
        }
    }
    return out;
}

} // namespace railock::testing
