#include "railock/sat.hpp"

#include <cadical.hpp>

#include <algorithm>
#include <stdexcept>

namespace railock::sat
{

const char* to_string( solve_result r )
{
    switch ( r )
    {
    case solve_result::sat: return "sat";
    case solve_result::unsat: return "unsat";
    case solve_result::timed_out: return "timed_out";
    }
    return "?";
}

std::optional< backend > backend_from_string( const std::string& name )
{
    if ( name == "cadical" )
        return backend::cadical;
    if ( name == "dpll" )
        return backend::dpll;
    return std::nullopt;
}

backend backend_from_env()
{
    if ( const char* env = std::getenv( "RAILOCK_SAT_BACKEND" ); env && *env )
    {
        if ( auto b = backend_from_string( env ) )
            return *b;
        throw std::invalid_argument( std::string( "unknown RAILOCK_SAT_BACKEND '" ) + env + "'" );
    }
    return backend::cadical;
}

namespace
{

class deadline_terminator : public CaDiCaL::Terminator
{
public:
    explicit deadline_terminator( clock::time_point deadline ) : _deadline{ deadline } {}
    bool terminate() override { return clock::now() >= _deadline; }

private:
    clock::time_point _deadline;
};

class cadical_solver final : public solver
{
public:
    int new_var() override { return ++_vars; }

    void add_clause( std::span< const lit > clause ) override
    {
        for ( auto l : clause )
            _solver.add( l.dimacs() );
        _solver.add( 0 );
    }

    int var_count() const override { return _vars; }

    solve_result solve( std::span< const lit > assumptions,
                        std::optional< clock::time_point > deadline ) override
    {
        if ( _vars > 0 )
            _solver.reserve( _vars );
        for ( auto l : assumptions )
            _solver.assume( l.dimacs() );

        std::optional< deadline_terminator > terminator;
        if ( deadline )
        {
            if ( clock::now() >= *deadline )
            {
                _solver.reset_assumptions();
                return solve_result::timed_out;
            }
            terminator.emplace( *deadline );
            _solver.connect_terminator( &*terminator );
        }

        const int status = _solver.solve();
        if ( terminator )
            _solver.disconnect_terminator();

        switch ( status )
        {
        case 10: return solve_result::sat;
        case 20: return solve_result::unsat;
        default: return solve_result::timed_out;
        }
    }

    bool value( lit l ) const override
    {
        return const_cast< CaDiCaL::Solver& >( _solver ).val( l.dimacs() ) > 0;
    }

    std::string name() const override { return "cadical"; }

private:
    CaDiCaL::Solver _solver;
    int _vars = 0;
};

// Chronological-backtracking DPLL with two watched literals. Small and
// dependency free; adequate for unit tests and tiny instances.
class dpll_solver final : public solver
{
public:
    int new_var() override
    {
        ++_vars;
        _assign.push_back( 0 );
        _watches.emplace_back();
        _watches.emplace_back();
        return _vars;
    }

    void add_clause( std::span< const lit > clause ) override
    {
        std::vector< int > c;
        for ( auto l : clause )
        {
            while ( l.var() > _vars )
                new_var();
            c.push_back( l.dimacs() );
        }
        std::sort( c.begin(), c.end() );
        c.erase( std::unique( c.begin(), c.end() ), c.end() );
        for ( std::size_t k = 0; k + 1 < c.size(); ++k )
            for ( std::size_t j = k + 1; j < c.size(); ++j )
                if ( c[ k ] == -c[ j ] )
                    return; // tautology

        if ( c.empty() )
            _trivially_unsat = true;
        else if ( c.size() == 1 )
            _units.push_back( c[ 0 ] );
        else
        {
            const auto index = _clauses.size();
            _clauses.push_back( std::move( c ) );
            watch( _clauses[ index ][ 0 ], index );
            watch( _clauses[ index ][ 1 ], index );
        }
    }

    int var_count() const override { return _vars; }

    solve_result solve( std::span< const lit > assumptions,
                        std::optional< clock::time_point > deadline ) override
    {
        for ( auto l : assumptions )
            while ( l.var() > _vars )
                new_var();

        std::fill( _assign.begin(), _assign.end(), 0 );
        _trail.clear();
        _decisions.clear();
        _head = 0;

        if ( _trivially_unsat )
            return solve_result::unsat;
        for ( auto u : _units )
            if ( !enqueue( u ) )
                return solve_result::unsat;
        if ( !propagate() )
            return solve_result::unsat;

        const std::size_t assumption_levels = assumptions.size();
        for ( auto l : assumptions )
        {
            _decisions.push_back( { l.dimacs(), true, _trail.size() } );
            if ( value_of( l.dimacs() ) < 0 )
                return solve_result::unsat;
            if ( value_of( l.dimacs() ) == 0 && ( !enqueue( l.dimacs() ) || !propagate() ) )
                return solve_result::unsat;
        }

        std::size_t steps = 0;
        int next_var = 1;
        for ( ;; )
        {
            if ( deadline && ( ++steps & 1023 ) == 0 && clock::now() >= *deadline )
                return solve_result::timed_out;

            while ( next_var <= _vars && _assign[ next_var - 1 ] != 0 )
                ++next_var;
            if ( next_var > _vars )
                return solve_result::sat;

            _decisions.push_back( { -next_var, false, _trail.size() } );
            bool ok = enqueue( -next_var ) && propagate();
            while ( !ok )
            {
                // Undo to the most recent unflipped decision and flip it.
                while ( !_decisions.empty() && _decisions.back().flipped )
                {
                    if ( _decisions.size() <= assumption_levels )
                        return solve_result::unsat;
                    undo_to( _decisions.back().trail_size );
                    _decisions.pop_back();
                }
                if ( _decisions.size() <= assumption_levels )
                    return solve_result::unsat;
                auto& d = _decisions.back();
                undo_to( d.trail_size );
                d.flipped = true;
                d.literal = -d.literal;
                ok = enqueue( d.literal ) && propagate();
            }
            next_var = 1;
        }
    }

    bool value( lit l ) const override { return value_of( l.dimacs() ) > 0; }

    std::string name() const override { return "dpll"; }

private:
    struct decision
    {
        int literal;
        bool flipped;
        std::size_t trail_size;
    };

    static std::size_t code( int l ) { return 2 * static_cast< std::size_t >( std::abs( l ) - 1 ) + ( l < 0 ); }

    void watch( int l, std::size_t clause ) { _watches[ code( l ) ].push_back( clause ); }

    int value_of( int l ) const
    {
        const int v = _assign[ std::abs( l ) - 1 ];
        return l > 0 ? v : -v;
    }

    bool enqueue( int l )
    {
        const int v = value_of( l );
        if ( v != 0 )
            return v > 0;
        _assign[ std::abs( l ) - 1 ] = l > 0 ? 1 : -1;
        _trail.push_back( l );
        return true;
    }

    void undo_to( std::size_t size )
    {
        while ( _trail.size() > size )
        {
            _assign[ std::abs( _trail.back() ) - 1 ] = 0;
            _trail.pop_back();
        }
        _head = std::min( _head, size );
    }

    bool propagate()
    {
        while ( _head < _trail.size() )
        {
            const int false_lit = -_trail[ _head++ ];
            auto& ws = _watches[ code( false_lit ) ];
            std::size_t keep = 0;
            bool conflict = false;
            for ( std::size_t k = 0; k < ws.size(); ++k )
            {
                const auto ci = ws[ k ];
                if ( conflict )
                {
                    ws[ keep++ ] = ci;
                    continue;
                }
                auto& c = _clauses[ ci ];
                if ( c[ 0 ] == false_lit )
                    std::swap( c[ 0 ], c[ 1 ] );
                if ( value_of( c[ 0 ] ) > 0 )
                {
                    ws[ keep++ ] = ci;
                    continue;
                }
                bool moved = false;
                for ( std::size_t j = 2; j < c.size(); ++j )
                {
                    if ( value_of( c[ j ] ) >= 0 )
                    {
                        std::swap( c[ 1 ], c[ j ] );
                        watch( c[ 1 ], ci );
                        moved = true;
                        break;
                    }
                }
                if ( moved )
                    continue;
                ws[ keep++ ] = ci;
                if ( value_of( c[ 0 ] ) < 0 )
                    conflict = true;
                else
                    enqueue( c[ 0 ] );
            }
            ws.resize( keep );
            if ( conflict )
                return false;
        }
        return true;
    }

    int _vars = 0;
    bool _trivially_unsat = false;
    std::vector< int > _units;
    std::vector< std::vector< int > > _clauses;
    std::vector< std::vector< std::size_t > > _watches;
    std::vector< int > _assign;
    std::vector< int > _trail;
    std::vector< decision > _decisions;
    std::size_t _head = 0;
};

} // namespace

std::unique_ptr< solver > make_solver( backend which )
{
    switch ( which )
    {
    case backend::cadical: return std::make_unique< cadical_solver >();
    case backend::dpll: return std::make_unique< dpll_solver >();
    }
    throw std::invalid_argument( "unknown SAT backend" );
}

} // namespace railock::sat
