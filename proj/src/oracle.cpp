#include "railock/oracle.hpp"

#include "railock/dynamics.hpp"

#include <string>
#include <unordered_set>
#include <vector>

namespace railock
{

const char* to_string( oracle_status s )
{
    switch ( s )
    {
    case oracle_status::live: return "live";
    case oracle_status::dead: return "dead";
    case oracle_status::budget_exceeded: return "budget_exceeded";
    }
    return "?";
}

namespace
{

std::string state_key( const sim_state& s )
{
    std::string key;
    key.reserve( s.occ.size() * 2 + s.finished.size() );
    for ( const auto& o : s.occ )
    {
        const auto v = o ? *o + 1 : 0;
        key.push_back( static_cast< char >( v & 0xff ) );
        key.push_back( static_cast< char >( ( v >> 8 ) & 0xff ) );
    }
    for ( bool f : s.finished )
        key.push_back( f ? '1' : '0' );
    return key;
}

} // namespace

oracle_result oracle_decide( const problem_instance& inst, std::size_t node_budget )
{
    oracle_result result;
    std::unordered_set< std::string > seen;
    std::vector< sim_state > stack{ initial_state( inst ) };
    seen.insert( state_key( stack.back() ) );

    while ( !stack.empty() )
    {
        auto s = std::move( stack.back() );
        stack.pop_back();
        ++result.visited;
        if ( all_finished( s ) )
        {
            result.status = oracle_status::live;
            return result;
        }
        if ( seen.size() > node_budget )
        {
            result.status = oracle_status::budget_exceeded;
            return result;
        }
        for ( auto a : legal_actions( inst, s ) )
        {
            auto next = apply_action( inst, s, a );
            if ( seen.insert( state_key( next ) ).second )
                stack.push_back( std::move( next ) );
        }
    }
    result.status = oracle_status::dead;
    return result;
}

} // namespace railock
