#include "railock/dynamics.hpp"

#include <algorithm>

namespace railock
{

using nlohmann::json;

sim_state raw_initial_state( const problem_instance& inst )
{
    sim_state s;
    s.occ.assign( inst.infra().route_count(), std::nullopt );
    s.finished.assign( inst.train_count(), false );
    s.present.assign( inst.train_count(), true );
    for ( train_index t = 0; t < inst.train_count(); ++t )
    {
        for ( auto r : inst.train( t ).initial )
            s.occ[ r ] = t;
        s.finished[ t ] = inst.starts_finished( t );
    }
    return s;
}

sim_state initial_state( const problem_instance& inst )
{
    auto s = raw_initial_state( inst );
    release_freeable( inst, s );
    return s;
}

std::vector< route_index > train_chain( const problem_instance& inst, const sim_state& s, train_index t )
{
    const auto& net = inst.infra();
    std::vector< route_index > held;
    for ( route_index r = 0; r < s.occ.size(); ++r )
        if ( s.occ[ r ] == t )
            held.push_back( r );
    std::sort( held.begin(), held.end(),
               [ & ]( route_index a, route_index b ) { return net.topo_rank( a ) < net.topo_rank( b ); } );
    return held;
}

std::optional< route_index > train_head( const problem_instance& inst, const sim_state& s, train_index t )
{
    const auto chain = train_chain( inst, s, t );
    if ( chain.empty() )
        return std::nullopt;
    return chain.back();
}

bool freeable( const problem_instance& inst, const sim_state& s, train_index t, route_index r, double length )
{
    const auto& route = inst.infra().route( r );
    if ( !route.exit || length <= length_epsilon )
        return true;
    for ( auto next : inst.infra().next_routes( r ) )
        if ( s.occ[ next ] == t && freeable( inst, s, t, next, length - route.length ) )
            return true;
    return false;
}

void release_freeable( const problem_instance& inst, sim_state& s )
{
    std::vector< route_index > released;
    for ( route_index r = 0; r < s.occ.size(); ++r )
    {
        if ( !s.occ[ r ] )
            continue;
        const auto t = *s.occ[ r ];
        if ( freeable( inst, s, t, r, inst.train( t ).length ) )
            released.push_back( r );
    }
    for ( auto r : released )
        s.occ[ r ].reset();

    std::vector< bool > holds( s.present.size(), false );
    for ( const auto& o : s.occ )
        if ( o )
            holds[ *o ] = true;
    for ( train_index t = 0; t < s.present.size(); ++t )
        s.present[ t ] = s.present[ t ] && holds[ t ];
}

bool is_legal( const problem_instance& inst, const sim_state& s, train_action a )
{
    const auto& net = inst.infra();
    if ( a.train >= inst.train_count() || a.route >= net.eroute_count() || !s.present[ a.train ] )
        return false;
    const auto head = train_head( inst, s, a.train );
    if ( !head || !net.route( *head ).exit )
        return false;

    const auto& parts = net.eroute( a.route ).parts;
    if ( net.route( parts.front() ).entry != net.route( *head ).exit )
        return false;
    for ( auto p : parts )
    {
        if ( s.occ[ p ] )
            return false;
        for ( auto c : net.conflicts_of( p ) )
            if ( s.occ[ c ] )
                return false;
    }
    return true;
}

std::vector< train_action > legal_actions( const problem_instance& inst, const sim_state& s )
{
    const auto& net = inst.infra();
    std::vector< train_action > out;
    for ( train_index t = 0; t < inst.train_count(); ++t )
    {
        if ( !s.present[ t ] )
            continue;
        const auto head = train_head( inst, s, t );
        if ( !head || !net.route( *head ).exit )
            continue;
        for ( auto r : net.successors( *net.route( *head ).exit ) )
        {
            const auto e = net.route( r ).elementary;
            if ( net.eroute( e ).parts.front() == r && is_legal( inst, s, { t, e } ) )
                out.push_back( { t, e } );
        }
    }
    std::sort( out.begin(), out.end() );
    return out;
}

namespace
{

void allocate( const problem_instance& inst, sim_state& s, train_action a )
{
    if ( !is_legal( inst, s, a ) )
        throw illegal_action( "train " + inst.train( a.train ).id + " cannot allocate "
                              + inst.infra().eroute( a.route ).id );
    for ( auto p : inst.infra().eroute( a.route ).parts )
    {
        s.occ[ p ] = a.train;
        if ( inst.is_final( a.train, p ) )
            s.finished[ a.train ] = true;
    }
}

} // namespace

sim_state apply_action( const problem_instance& inst, const sim_state& s, train_action a )
{
    auto next = s;
    allocate( inst, next, a );
    release_freeable( inst, next );
    return next;
}

sim_state execute_step( const problem_instance& inst, const sim_state& s,
                        const std::vector< train_action >& actions )
{
    auto next = s;
    release_freeable( inst, next );
    for ( auto a : actions )
        allocate( inst, next, a );
    return next;
}

bool all_finished( const sim_state& s )
{
    return std::all_of( s.finished.begin(), s.finished.end(), []( bool f ) { return f; } );
}

problem_instance instance_from_state( const problem_instance& inst, const sim_state& s )
{
    const auto& net = inst.infra();
    std::vector< train_description > trains;
    for ( train_index t = 0; t < inst.train_count(); ++t )
    {
        if ( !s.present[ t ] )
            continue;
        const auto& spec = inst.train( t );
        train_description d{ spec.id, spec.length, {}, {} };
        for ( auto r : train_chain( inst, s, t ) )
            d.initial.push_back( net.route( r ).id );
        for ( auto r : spec.final )
            d.final.push_back( net.route( r ).id );
        // A finished train stays finished wherever it has moved on to.
        if ( s.finished[ t ] )
            for ( const auto& id : d.initial )
                if ( std::find( d.final.begin(), d.final.end(), id ) == d.final.end() )
                    d.final.push_back( id );
        trains.push_back( std::move( d ) );
    }
    return problem_instance::build( net, trains );
}

json state_to_json( const problem_instance& inst, const sim_state& s )
{
    json occ = json::object();
    for ( route_index r = 0; r < s.occ.size(); ++r )
        if ( s.occ[ r ] )
            occ[ inst.infra().route( r ).id ] = inst.train( *s.occ[ r ] ).id;
    json finished = json::array();
    json present = json::array();
    for ( train_index t = 0; t < inst.train_count(); ++t )
    {
        if ( s.finished[ t ] )
            finished.push_back( inst.train( t ).id );
        if ( s.present[ t ] )
            present.push_back( inst.train( t ).id );
    }
    return { { "occ", occ }, { "finished", finished }, { "present", present } };
}

json action_to_json( const problem_instance& inst, train_action a )
{
    return { { "train", inst.train( a.train ).id },
             { "elementary_route", inst.infra().eroute( a.route ).id } };
}

std::vector< json > actions_to_json( const problem_instance& inst, const std::vector< train_action >& actions )
{
    std::vector< json > out;
    for ( auto a : actions )
        out.push_back( action_to_json( inst, a ) );
    return out;
}

} // namespace railock
