#include "railock/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace railock
{

namespace
{

using opt_id = std::optional< std::string >;

struct builder
{
    infrastructure_description desc;

    void delimiter( const opt_id& d )
    {
        if ( d && std::find( desc.delimiters.begin(), desc.delimiters.end(), *d ) == desc.delimiters.end() )
            desc.delimiters.push_back( *d );
    }

    // A partial route that is its own elementary route.
    void route( const std::string& id, double length, const opt_id& entry, const opt_id& exit )
    {
        delimiter( entry );
        delimiter( exit );
        desc.partial_routes.push_back( { id, length, entry, exit } );
        desc.elementary_routes.push_back( { id, { id } } );
    }

    void conflict( const std::string& a, const std::string& b ) { desc.conflicts.emplace_back( a, b ); }
};

std::string num( int k ) { return std::to_string( k ); }

opt_id when( bool cond, std::string id )
{
    if ( cond )
        return id;
    return std::nullopt;
}

builder ladder_layout( int n, double track_len )
{
    builder b;
    for ( int j = 1; j <= n; ++j )
    {
        const auto s = num( j );
        b.route( "sR" + s, track_len, when( j > 1, "R" + s + "in" ), "R" + s + "s" );
        b.route( "aR" + s, track_len, "R" + s + "s", "R" + s + "t" );
        b.route( "bR" + s, track_len, "R" + s + "s", "R" + s + "t" );
        b.route( "xR" + s, track_len, "R" + s + "t", when( j < n, "R" + num( j + 1 ) + "in" ) );

        b.route( "sL" + s, track_len, when( j < n, "L" + s + "in" ), "L" + s + "s" );
        b.route( "aL" + s, track_len, "L" + s + "s", "L" + s + "t" );
        b.route( "bL" + s, track_len, "L" + s + "s", "L" + s + "t" );
        b.route( "xL" + s, track_len, "L" + s + "t", when( j > 1, "L" + num( j - 1 ) + "in" ) );
    }
    for ( int j = 1; j <= n; ++j )
    {
        const auto s = num( j );
        // Single line between stations j-1 and j; both throats are shared.
        if ( j > 1 )
            b.conflict( "sR" + s, "sL" + num( j - 1 ) );
        b.conflict( "sR" + s, "sL" + s );
        b.conflict( "xR" + s, "xL" + s );
        b.conflict( "aR" + s, "aL" + s );
        b.conflict( "bR" + s, "bL" + s );
    }
    return b;
}

} // namespace

problem_instance gen_ladder( int n, double train_len, double track_len )
{
    if ( n < 1 )
        throw invalid_parameter( "ladder needs at least one station" );
    if ( !( train_len > 0.0 ) || !( track_len >= 0.0 ) )
        throw invalid_parameter( "ladder lengths must be positive" );

    auto b = ladder_layout( n, track_len );
    std::vector< train_description > trains{
        { "t1", train_len, { "sR1" }, { "xR" + num( n ) } },
        { "t2", train_len, { "sL" + num( n ) }, { "xL1" } },
    };
    return problem_instance::build( infrastructure::build( b.desc ), trains );
}

problem_instance gen_corridor( int n_routes, double left_train_len, double right_train_len,
                               std::optional< int > offset )
{
    if ( n_routes < 2 )
        throw invalid_parameter( "corridor needs at least two routes" );
    if ( offset && *offset < 0 )
        throw invalid_parameter( "corridor offset must be nonnegative" );

    builder b;
    for ( int k = 1; k <= n_routes; ++k )
    {
        const auto s = num( k );
        b.route( "R" + s, 1.0, when( k > 1, "dR" + num( k - 1 ) ), when( k < n_routes, "dR" + s ) );
    }
    for ( int k = n_routes; k >= 1; --k )
    {
        const auto s = num( k );
        b.route( "L" + s, 1.0, when( k < n_routes, "dL" + s ), when( k > 1, "dL" + num( k - 1 ) ) );
    }
    for ( int k = 1; k <= n_routes; ++k )
        b.conflict( "R" + num( k ), "L" + num( k ) );

    const auto span = []( double len ) { return std::max( 1, static_cast< int >( std::ceil( len - length_epsilon ) ) ); };
    const auto start = [ & ]( int routes ) { return offset ? *offset : ( routes > 1 ? 1 : 0 ); };

    std::vector< train_description > trains;
    int left_end = 0;
    int right_begin = n_routes + 1;
    if ( left_train_len > 0.0 )
    {
        const int k = span( left_train_len );
        const int first = start( k ) + 1;
        left_end = first + k - 1;
        if ( left_end > n_routes )
            throw invalid_parameter( "left train does not fit on the corridor" );
        train_description t{ "t1", left_train_len, {}, { "R" + num( n_routes ) } };
        for ( int r = first; r <= left_end; ++r )
            t.initial.push_back( "R" + num( r ) );
        trains.push_back( std::move( t ) );
    }
    if ( right_train_len > 0.0 )
    {
        const int k = span( right_train_len );
        const int last = n_routes - start( k );
        right_begin = last - k + 1;
        if ( right_begin < 1 )
            throw invalid_parameter( "right train does not fit on the corridor" );
        train_description t{ "t2", right_train_len, {}, { "L1" } };
        for ( int r = right_begin; r <= last; ++r )
            t.initial.push_back( "L" + num( r ) );
        trains.push_back( std::move( t ) );
    }
    if ( left_end >= right_begin )
        throw invalid_parameter( "corridor trains overlap" );

    return problem_instance::build( infrastructure::build( b.desc ), trains );
}

problem_instance gen_junction()
{
    builder b;
    // Eastbound.
    b.route( "r1e", 1.0, std::nullopt, "e1" );
    b.route( "r2e", 1.0, "e1", "e2" );
    b.route( "r3e", 2.0, "e2", "e3" );
    b.route( "r4e", 1.0, "e3", "e4" );
    b.route( "r5e", 1.0, "e4", std::nullopt );
    b.route( "r3be", 2.0, "e2", "e6" );
    b.route( "r6e", 1.0, "e6", "e7" );
    b.route( "r7e", 1.0, "e7", std::nullopt );
    // Westbound.
    b.route( "r7w", 1.0, std::nullopt, "w7" );
    b.route( "r6w", 1.0, "w7", "w6" );
    b.route( "r3bw", 2.0, "w6", "w2" );
    b.route( "r5w", 1.0, std::nullopt, "w4" );
    b.route( "r4w", 1.0, "w4", "w3" );
    b.route( "r3w", 2.0, "w3", "w2" );
    b.route( "r2w", 1.0, "w2", "w1" );
    b.route( "r1w", 1.0, "w1", std::nullopt );

    for ( const char* piece : { "r1", "r2", "r4", "r5", "r6", "r7" } )
        b.conflict( std::string( piece ) + "e", std::string( piece ) + "w" );
    // All four ways over the switch share it.
    const char* over_switch[] = { "r3e", "r3be", "r3w", "r3bw" };
    for ( int i = 0; i < 4; ++i )
        for ( int j = i + 1; j < 4; ++j )
            b.conflict( over_switch[ i ], over_switch[ j ] );

    std::vector< train_description > trains{
        { "t1", 0.8, { "r1e" }, { "r5e" } },
        { "t2", 0.8, { "r7w" }, { "r1w" } },
    };
    return problem_instance::build( infrastructure::build( b.desc ), trains );
}

problem_instance gen_four_station()
{
    auto b = ladder_layout( 4, 1.0 );
    std::vector< train_description > trains{
        { "t1", 1.5, { "aR2" }, { "xR4" } },
        { "t2", 1.5, { "xL2" }, { "xL1" } },
        { "t3", 0.8, { "xR1" }, { "xR4" } },
        { "t4", 0.8, { "sL2" }, { "xL1" } },
    };
    return problem_instance::build( infrastructure::build( b.desc ), trains );
}

} // namespace railock
