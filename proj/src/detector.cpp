#include "railock/detector.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace railock
{

using nlohmann::json;

const char* to_string( verdict_status s )
{
    switch ( s )
    {
    case verdict_status::live: return "live";
    case verdict_status::dead: return "dead";
    case verdict_status::unknown: return "unknown";
    }
    return "?";
}

std::vector< train_action > plan::at_step( int step ) const
{
    std::vector< train_action > out;
    for ( const auto& a : actions )
        if ( a.step == step )
            out.push_back( a.action );
    return out;
}

namespace
{

constexpr int unreachable = std::numeric_limits< int >::min() / 2;

// Longest path in elementary routes from r, ending anywhere (targets empty)
// or on one of the targets.
int longest_from( const infrastructure& net, route_index r, const std::vector< route_index >* targets,
                  std::vector< std::optional< int > >& memo )
{
    if ( memo[ r ] )
        return *memo[ r ];
    int best = unreachable;
    if ( !targets || std::find( targets->begin(), targets->end(), r ) != targets->end() )
        best = 0;
    for ( auto next : net.next_routes( r ) )
    {
        const int rest = longest_from( net, next, targets, memo );
        if ( rest == unreachable )
            continue;
        const int cost = net.route( next ).elementary != net.route( r ).elementary ? 1 : 0;
        best = std::max( best, rest + cost );
    }
    memo[ r ] = best;
    return best;
}

int sum_of_longest( const problem_instance& inst, bool to_final )
{
    const auto& net = inst.infra();
    int total = 0;
    for ( train_index t = 0; t < inst.train_count(); ++t )
    {
        const auto& spec = inst.train( t );
        if ( to_final && inst.starts_finished( t ) )
            continue;
        std::vector< std::optional< int > > memo( net.route_count() );
        const int n = longest_from( net, spec.initial.back(), to_final ? &spec.final : nullptr, memo );
        if ( n != unreachable )
            total += n;
    }
    return total;
}

std::vector< train_index > trains_by_id( const problem_instance& inst )
{
    std::vector< train_index > order( inst.train_count() );
    std::iota( order.begin(), order.end(), 0 );
    std::sort( order.begin(), order.end(),
               [ & ]( train_index a, train_index b ) { return inst.train( a ).id < inst.train( b ).id; } );
    return order;
}

} // namespace

int compute_upper_bound( const problem_instance& inst ) { return sum_of_longest( inst, true ); }

int compute_progress_bound( const problem_instance& inst ) { return sum_of_longest( inst, false ); }

std::vector< sim_state > decode_states( const encoding_session& session, const sat::solver& solver, int steps )
{
    const auto& inst = session.instance();
    std::vector< sim_state > out;
    for ( int i = 0; i <= steps; ++i )
    {
        sim_state s;
        s.occ.assign( inst.infra().route_count(), std::nullopt );
        s.finished.assign( inst.train_count(), false );
        s.present.assign( inst.train_count(), false );
        for ( route_index r = 0; r < inst.infra().route_count(); ++r )
        {
            for ( train_index t = 0; t < inst.train_count(); ++t )
            {
                if ( solver.value( session.occ( i, r, t ) ) )
                {
                    if ( s.occ[ r ] )
                        throw internal_inconsistency( "route " + inst.infra().route( r ).id
                                                      + " held by two trains" );
                    s.occ[ r ] = t;
                    s.present[ t ] = true;
                }
            }
        }
        for ( train_index t = 0; t < inst.train_count(); ++t )
            s.finished[ t ] = solver.value( session.finished( i, t ) );
        out.push_back( std::move( s ) );
    }
    return out;
}

plan extract_plan( const encoding_session& session, const sat::solver& solver, int steps )
{
    const auto& inst = session.instance();
    const auto& net = inst.infra();
    const auto order = trains_by_id( inst );
    plan p;
    for ( int i = 1; i <= steps; ++i )
    {
        for ( auto t : order )
        {
            std::vector< eroute_index > taken;
            for ( route_index r = 0; r < net.route_count(); ++r )
            {
                if ( !solver.value( session.occ( i, r, t ) ) || solver.value( session.occ( i - 1, r, t ) ) )
                    continue;
                const auto e = net.route( r ).elementary;
                for ( auto part : net.eroute( e ).parts )
                    if ( !solver.value( session.occ( i, part, t ) ) )
                        throw internal_inconsistency( "elementary route " + net.eroute( e ).id
                                                      + " only partly allocated" );
                if ( std::find( taken.begin(), taken.end(), e ) == taken.end() )
                    taken.push_back( e );
            }
            std::sort( taken.begin(), taken.end(), [ & ]( eroute_index a, eroute_index b ) {
                return net.topo_rank( net.eroute( a ).parts.front() ) < net.topo_rank( net.eroute( b ).parts.front() );
            } );
            for ( auto e : taken )
                p.actions.push_back( { i, { t, e } } );
        }
    }
    return p;
}

std::string validate_plan( const problem_instance& inst, const plan& p )
{
    auto s = raw_initial_state( inst );
    for ( int i = 1; i <= p.step_count(); ++i )
    {
        try
        {
            s = execute_step( inst, s, p.at_step( i ) );
        }
        catch ( const illegal_action& e )
        {
            return "step " + std::to_string( i ) + ": " + e.what();
        }
    }
    if ( !all_finished( s ) )
        return "not every train reaches a final route";
    return {};
}

verdict detect( const problem_instance& inst, const detect_options& opts )
{
    if ( opts.algorithm < 1 || opts.algorithm > 3 )
        throw std::invalid_argument( "algorithm must be 1, 2 or 3" );

    const auto started = sat::clock::now();
    std::optional< sat::clock::time_point > deadline;
    if ( opts.timeout )
        deadline = started + std::chrono::duration_cast< sat::clock::duration >( *opts.timeout );

    verdict v;
    v.algorithm = opts.algorithm;
    const auto finish = [ & ]( verdict_status status, int steps ) {
        v.status = status;
        v.steps_used = steps;
        v.elapsed_s = std::chrono::duration< double >( sat::clock::now() - started ).count();
        return v;
    };

    // Nothing to do: the goal already holds after one idle transition.
    bool done = true;
    for ( train_index t = 0; t < inst.train_count(); ++t )
        done = done && inst.starts_finished( t );
    if ( done )
    {
        v.found_plan = plan{};
        return finish( verdict_status::live, 1 );
    }

    auto solver = sat::make_solver( opts.backend );
    encoding_session session( inst, *solver,
                              { .with_progress = opts.algorithm >= 2, .with_maximal_progress = opts.algorithm >= 3 } );

    const int bound = std::max( compute_upper_bound( inst ), 1 );
    const int cap = opts.algorithm == 1 ? opts.step_cap.value_or( bound )
                                        : opts.step_cap.value_or( std::max( bound, compute_progress_bound( inst ) ) + 1 );

    for ( int i = 1;; ++i )
    {
        session.extend_step();

        if ( opts.algorithm >= 2 )
        {
            const auto r = solver->solve( {}, deadline );
            if ( r == sat::solve_result::timed_out )
                return finish( verdict_status::unknown, i );
            if ( r == sat::solve_result::unsat )
                return finish( verdict_status::dead, i );
        }

        const auto goal = session.goal_assumptions( i );
        const auto r = solver->solve( goal, deadline );
        if ( r == sat::solve_result::timed_out )
            return finish( verdict_status::unknown, i );
        if ( r == sat::solve_result::sat )
        {
            v.found_plan = extract_plan( session, *solver, i );
            return finish( verdict_status::live, i );
        }

        if ( i >= cap )
        {
            if ( opts.algorithm == 1 )
                return finish( verdict_status::dead, i );
            if ( opts.step_cap )
                return finish( verdict_status::unknown, i );
            throw internal_inconsistency( "progress constraint still satisfiable after "
                                          + std::to_string( i ) + " steps" );
        }
    }
}

partial_order plan_partial_order( const problem_instance& inst, const plan& p )
{
    const auto& net = inst.infra();

    // Serialized sequence: initial positions first, then the plan in order.
    std::vector< train_action > seq;
    for ( auto t : trains_by_id( inst ) )
    {
        for ( auto r : inst.train( t ).initial )
        {
            const train_action a{ t, net.route( r ).elementary };
            if ( std::find( seq.begin(), seq.end(), a ) == seq.end() )
                seq.push_back( a );
        }
    }
    for ( const auto& a : p.actions )
        seq.push_back( a.action );

    const auto clash = [ & ]( eroute_index a, eroute_index b ) {
        for ( auto x : net.eroute( a ).parts )
            for ( auto y : net.eroute( b ).parts )
                if ( x == y || net.conflicts( x, y ) )
                    return true;
        return false;
    };

    const auto n = seq.size();
    std::vector< std::vector< bool > > reach( n, std::vector< bool >( n, false ) );
    for ( std::size_t i = 0; i < n; ++i )
    {
        for ( std::size_t j = i + 1; j < n; ++j )
        {
            if ( seq[ i ].train == seq[ j ].train )
            {
                // Path edge to the train's next action only.
                bool adjacent = true;
                for ( std::size_t k = i + 1; k < j; ++k )
                    adjacent = adjacent && seq[ k ].train != seq[ i ].train;
                if ( adjacent )
                    reach[ i ][ j ] = true;
            }
            else if ( clash( seq[ i ].route, seq[ j ].route ) )
                reach[ i ][ j ] = true;
        }
    }
    for ( std::size_t k = 0; k < n; ++k )
        for ( std::size_t i = 0; i < n; ++i )
            if ( reach[ i ][ k ] )
                for ( std::size_t j = 0; j < n; ++j )
                    if ( reach[ k ][ j ] )
                        reach[ i ][ j ] = true;

    const auto name = [ & ]( const train_action& a ) {
        return partial_order::node{ inst.train( a.train ).id, net.eroute( a.route ).id };
    };

    partial_order po;
    for ( const auto& a : seq )
        po.nodes.insert( name( a ) );
    for ( std::size_t i = 0; i < n; ++i )
    {
        for ( std::size_t j = 0; j < n; ++j )
        {
            if ( !reach[ i ][ j ] )
                continue;
            bool implied = false;
            for ( std::size_t k = 0; k < n && !implied; ++k )
                implied = reach[ i ][ k ] && reach[ k ][ j ];
            if ( !implied )
                po.edges.insert( { name( seq[ i ] ), name( seq[ j ] ) } );
        }
    }
    return po;
}

json plan_to_json( const problem_instance& inst, const plan& p )
{
    json out = json::array();
    for ( const auto& a : p.actions )
    {
        out.push_back( { { "step", a.step },
                         { "train", inst.train( a.action.train ).id },
                         { "elementary_route", inst.infra().eroute( a.action.route ).id } } );
    }
    return out;
}

plan plan_from_json( const problem_instance& inst, const json& doc )
{
    plan p;
    for ( const auto& item : doc )
    {
        const auto t = inst.find_train( item.at( "train" ).get< std::string >() );
        const auto e = inst.infra().find_eroute( item.at( "elementary_route" ).get< std::string >() );
        if ( !t || !e )
            throw std::invalid_argument( "plan references an unknown train or route" );
        p.actions.push_back( { item.at( "step" ).get< int >(), { *t, *e } } );
    }
    return p;
}

json verdict_to_json( const problem_instance& inst, const verdict& v, bool with_plan )
{
    json out = {
        { "status", to_string( v.status ) },
        { "steps", v.steps_used },
        { "time_s", v.elapsed_s },
        { "algorithm", v.algorithm },
    };
    if ( with_plan && v.found_plan )
        out[ "plan" ] = plan_to_json( inst, *v.found_plan );
    return out;
}

} // namespace railock
