#include "railock/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace railock
{

using sat::lit;

encoding_session::encoding_session( const problem_instance& inst, sat::clause_sink& sink,
                                    encoder_options opts )
    : _inst{ &inst }, _sink{ &sink }, _opts{ opts }
{
    _var_info.emplace_back(); // index 0 is unused
    _true = fresh( var_kind::constant, 0 );
    _sink->add_clause( std::vector< lit >{ _true } );
    ++_clauses;

    const auto& net = inst.infra();
    const auto trains = inst.train_count();

    step_vars initial;
    initial.occ.assign( net.route_count() * trains, false_lit() );
    initial.finished.assign( trains, false_lit() );
    initial.actions.assign( net.route_count() * trains, std::nullopt );
    for ( train_index t = 0; t < trains; ++t )
        for ( auto r : inst.train( t ).initial )
            initial.occ[ r * trains + t ] = _true;
    _steps.push_back( std::move( initial ) );
}

lit encoding_session::fresh( var_kind kind, int step, std::optional< train_index > t,
                             std::optional< route_index > r )
{
    const int v = _sink->new_var();
    _vars = std::max( _vars, v );
    if ( static_cast< std::size_t >( v ) >= _var_info.size() )
        _var_info.resize( v + 1 );
    _var_info[ v ] = { kind, step, t, r };
    return lit{ v };
}

void encoding_session::emit( std::vector< lit > clause )
{
    std::vector< lit > out;
    out.reserve( clause.size() );
    for ( auto l : clause )
    {
        if ( l == _true )
            return;
        if ( l == false_lit() )
            continue;
        out.push_back( l );
    }
    std::sort( out.begin(), out.end() );
    out.erase( std::unique( out.begin(), out.end() ), out.end() );
    _sink->add_clause( out );
    ++_clauses;
}

void encoding_session::at_most_one( std::vector< lit > lits, int step )
{
    std::erase( lits, false_lit() );
    if ( lits.size() < 2 )
        return;

    if ( lits.size() <= 5 )
    {
        for ( std::size_t a = 0; a < lits.size(); ++a )
            for ( std::size_t b = a + 1; b < lits.size(); ++b )
                emit( { ~lits[ a ], ~lits[ b ] } );
        return;
    }

    // Sequential counter: s[k] holds iff one of lits[0..k] is true.
    const auto n = lits.size();
    std::vector< lit > s;
    for ( std::size_t k = 0; k + 1 < n; ++k )
        s.push_back( fresh( var_kind::at_most_one, step ) );
    emit( { ~lits[ 0 ], s[ 0 ] } );
    for ( std::size_t k = 1; k + 1 < n; ++k )
    {
        emit( { ~lits[ k ], s[ k ] } );
        emit( { ~s[ k - 1 ], s[ k ] } );
        emit( { ~lits[ k ], ~s[ k - 1 ] } );
    }
    emit( { ~lits[ n - 1 ], ~s[ n - 2 ] } );
}

lit encoding_session::make_and( lit a, lit b, int step )
{
    if ( a == false_lit() || b == false_lit() )
        return false_lit();
    if ( a == _true )
        return b;
    if ( b == _true || a == b )
        return a;
    const auto x = fresh( var_kind::auxiliary, step );
    emit( { ~x, a } );
    emit( { ~x, b } );
    emit( { x, ~a, ~b } );
    return x;
}

lit encoding_session::make_or( std::vector< lit > lits, int step )
{
    std::erase( lits, false_lit() );
    if ( std::find( lits.begin(), lits.end(), _true ) != lits.end() )
        return _true;
    if ( lits.empty() )
        return false_lit();
    if ( lits.size() == 1 )
        return lits[ 0 ];
    const auto x = fresh( var_kind::auxiliary, step );
    std::vector< lit > def{ ~x };
    for ( auto l : lits )
    {
        emit( { x, ~l } );
        def.push_back( l );
    }
    emit( def );
    return x;
}

lit encoding_session::occ( int step, route_index r, train_index t ) const
{
    return _steps.at( step ).occ[ r * _inst->train_count() + t ];
}

lit encoding_session::finished( int step, train_index t ) const
{
    return _steps.at( step ).finished[ t ];
}

std::optional< lit > encoding_session::action( int step, train_index t, route_index r ) const
{
    return _steps.at( step ).actions[ r * _inst->train_count() + t ];
}

std::vector< lit > encoding_session::goal_assumptions( int step ) const
{
    std::vector< lit > goal;
    for ( train_index t = 0; t < _inst->train_count(); ++t )
        goal.push_back( finished( step, t ) );
    return goal;
}

std::vector< lit > encoding_session::action_guard( int step, train_index t, route_index r ) const
{
    if ( auto a = action( step, t, r ) )
        return { ~*a };
    return { occ( step - 1, r, t ), ~occ( step, r, t ) };
}

lit encoding_session::freeable_formula( train_index t, route_index r, double length, int step )
{
    const auto& net = _inst->infra();
    const auto& route = net.route( r );
    if ( !route.exit || length <= length_epsilon )
        return _true;

    const auto key = std::make_tuple( step, t, r, std::llround( length / length_epsilon ) );
    if ( auto it = _freeable_memo.find( key ); it != _freeable_memo.end() )
        return it->second;

    std::vector< lit > options;
    for ( auto next : net.next_routes( r ) )
    {
        const auto here = occ( step, next, t );
        if ( here == false_lit() )
            continue;
        options.push_back( make_and( here, freeable_formula( t, next, length - route.length, step ), step ) );
    }
    const auto result = make_or( std::move( options ), step );
    _freeable_memo.emplace( key, result );
    return result;
}

int encoding_session::extend_step()
{
    const int i = static_cast< int >( _steps.size() );
    const auto& net = _inst->infra();
    const auto trains = _inst->train_count();

    step_vars vars;
    vars.occ.reserve( net.route_count() * trains );
    for ( route_index r = 0; r < net.route_count(); ++r )
        for ( train_index t = 0; t < trains; ++t )
            vars.occ.push_back( fresh( var_kind::occupancy, i, t, r ) );
    for ( train_index t = 0; t < trains; ++t )
        vars.finished.push_back( fresh( var_kind::finished, i, t ) );

    vars.actions.assign( net.route_count() * trains, std::nullopt );
    const auto& prev = _steps.back();
    if ( _opts.materialize_actions() )
    {
        for ( route_index r = 0; r < net.route_count(); ++r )
        {
            for ( train_index t = 0; t < trains; ++t )
            {
                const auto before = prev.occ[ r * trains + t ];
                const auto now = vars.occ[ r * trains + t ];
                auto& a = vars.actions[ r * trains + t ];
                if ( before == _true )
                    a = false_lit();
                else if ( before == false_lit() )
                    a = now;
                else
                {
                    a = fresh( var_kind::action, i, t, r );
                    emit( { ~*a, ~before } );
                    emit( { ~*a, now } );
                    emit( { *a, before, ~now } );
                }
            }
        }
    }

    _steps.push_back( std::move( vars ) );
    encode_transition( i );
    return i;
}

void encoding_session::encode_transition( int i )
{
    const auto& net = _inst->infra();
    const auto trains = _inst->train_count();

    // C1: per train, at most one route leaving any delimiter.
    for ( train_index t = 0; t < trains; ++t )
    {
        for ( delimiter_index d = 0; d < net.delimiter_count(); ++d )
        {
            std::vector< lit > lits;
            for ( auto r : net.successors( d ) )
                lits.push_back( occ( i, r, t ) );
            at_most_one( std::move( lits ), i );
        }
    }

    // C2: a newly allocated route extends a route held by the same train.
    for ( train_index t = 0; t < trains; ++t )
    {
        for ( route_index a = 0; a < net.route_count(); ++a )
        {
            auto clause = action_guard( i, t, a );
            for ( auto b : net.previous_routes( a ) )
                clause.push_back( occ( i, b, t ) );
            emit( std::move( clause ) );
        }
    }

    // C3: conflicting routes are never both occupied.
    for ( auto [ a, b ] : net.conflict_pairs() )
        for ( train_index t = 0; t < trains; ++t )
            for ( train_index u = 0; u < trains; ++u )
                emit( { ~occ( i, a, t ), ~occ( i, b, u ) } );

    // C4: elementary routes are allocated as a unit.
    for ( train_index t = 0; t < trains; ++t )
    {
        for ( const auto& e : net.eroutes() )
        {
            if ( e.parts.size() < 2 )
                continue;
            for ( auto r : e.parts )
            {
                for ( auto other : e.parts )
                {
                    if ( other == r )
                        continue;
                    auto clause = action_guard( i, t, r );
                    clause.push_back( occ( i, other, t ) );
                    emit( std::move( clause ) );

                    // A head stopped inside e cannot take the rest of it.
                    const auto held = occ( i - 1, other, t );
                    if ( held != false_lit() )
                    {
                        auto fresh_only = action_guard( i, t, r );
                        fresh_only.push_back( ~held );
                        emit( std::move( fresh_only ) );
                    }
                }
            }
        }
    }

    // C5: a held route is released exactly when it is freeable in the
    // previous state.
    for ( train_index t = 0; t < trains; ++t )
    {
        for ( route_index r = 0; r < net.route_count(); ++r )
        {
            const auto before = occ( i - 1, r, t );
            if ( before == false_lit() )
                continue;
            const auto now = occ( i, r, t );
            const auto release = freeable_formula( t, r, _inst->train( t ).length, i - 1 );
            emit( { ~before, now, release } );
            emit( { ~before, ~now, ~release } );
        }
    }

    // One train per route.
    for ( route_index r = 0; r < net.route_count(); ++r )
    {
        std::vector< lit > lits;
        for ( train_index t = 0; t < trains; ++t )
            lits.push_back( occ( i, r, t ) );
        at_most_one( std::move( lits ), i );
    }

    // C6: finishing requires a final route; finished is sticky.
    for ( train_index t = 0; t < trains; ++t )
    {
        const auto before = finished( i - 1, t );
        const auto now = finished( i, t );
        emit( { ~before, now } );
        if ( i == 1 && _inst->starts_finished( t ) )
            continue;
        std::vector< lit > clause{ before, ~now };
        for ( auto r : _inst->train( t ).final )
            clause.push_back( occ( i, r, t ) );
        emit( std::move( clause ) );
    }

    if ( _opts.with_progress )
    {
        std::vector< lit > clause;
        for ( route_index r = 0; r < net.route_count(); ++r )
            for ( train_index t = 0; t < trains; ++t )
                clause.push_back( *action( i, t, r ) );
        emit( std::move( clause ) );
    }

    if ( _opts.with_maximal_progress && i >= 2 )
    {
        for ( train_index t = 0; t < trains; ++t )
        {
            for ( route_index r = 0; r < net.route_count(); ++r )
            {
                const auto a = *action( i, t, r );
                if ( a == false_lit() )
                    continue;

                // Something that blocked the elementary route in state i-1:
                // a conflicting route held by any train, or one of its own
                // parts held by another train.
                std::vector< lit > blocked;
                for ( auto y : net.eroute( net.route( r ).elementary ).parts )
                {
                    for ( auto z : net.conflicts_of( y ) )
                        for ( train_index u = 0; u < trains; ++u )
                            blocked.push_back( occ( i - 1, z, u ) );
                    for ( train_index u = 0; u < trains; ++u )
                        if ( u != t )
                            blocked.push_back( occ( i - 1, y, u ) );
                }

                for ( auto x : net.previous_routes( r ) )
                {
                    std::vector< lit > clause{ ~a, ~occ( i - 1, x, t ) };
                    clause.insert( clause.end(), blocked.begin(), blocked.end() );
                    emit( std::move( clause ) );
                }
            }
        }
    }
}

namespace
{

const char* kind_name( var_kind k )
{
    switch ( k )
    {
    case var_kind::constant: return "const";
    case var_kind::occupancy: return "occ";
    case var_kind::finished: return "finished";
    case var_kind::action: return "action";
    case var_kind::auxiliary: return "aux";
    case var_kind::at_most_one: return "amo";
    }
    return "?";
}

} // namespace

std::string to_dimacs( const sat::cnf_formula& cnf, const encoding_session& session )
{
    std::ostringstream out;
    const auto& inst = session.instance();
    for ( int v = 1; v <= session.var_count(); ++v )
    {
        const auto& info = session.info( v );
        out << "c " << v << " step=" << info.step << " kind=" << kind_name( info.kind );
        if ( info.train )
            out << " train=" << inst.train( *info.train ).id;
        if ( info.route )
            out << " route=" << inst.infra().route( *info.route ).id;
        out << '\n';
    }
    out << "p cnf " << cnf.var_count() << ' ' << cnf.clauses().size() << '\n';
    for ( const auto& c : cnf.clauses() )
    {
        for ( auto l : c )
            out << l.dimacs() << ' ';
        out << "0\n";
    }
    return out.str();
}

} // namespace railock
