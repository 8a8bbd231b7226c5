#pragma once

#include "railock/model.hpp"
#include "railock/sat.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace railock
{

struct encoder_options
{
    // Global progress: at least one allocation per transition.
    bool with_progress = false;
    // Maximal progress: an allocation that extends a path already held in the
    // previous state must have been blocked by a conflict in that state.
    bool with_maximal_progress = false;

    // Action literals exist as variables iff one of the progress constraints
    // needs them; otherwise action-conditional clauses are rewritten in terms
    // of the two occupancy literals.
    bool materialize_actions() const { return with_progress || with_maximal_progress; }
};

enum class var_kind
{
    constant,
    occupancy,
    finished,
    action,
    auxiliary,
    at_most_one,
};

struct var_info
{
    var_kind kind = var_kind::auxiliary;
    int step = 0;
    std::optional< train_index > train;
    std::optional< route_index > route;
};

// Incremental unrolling of the route allocation transition system. Step 0
// is the initial state and is represented by constants; every call to
// `extend_step` adds the state variables and constraints of one more
// transition to the clause sink.
class encoding_session
{
public:
    encoding_session( const problem_instance& inst, sat::clause_sink& sink, encoder_options opts );

    encoding_session( const encoding_session& ) = delete;
    encoding_session& operator=( const encoding_session& ) = delete;

    // Returns the index of the new step.
    int extend_step();

    // Number of transitions encoded so far.
    int steps() const { return static_cast< int >( _steps.size() ) - 1; }

    const problem_instance& instance() const { return *_inst; }
    const encoder_options& options() const { return _opts; }

    sat::lit true_lit() const { return _true; }
    sat::lit false_lit() const { return ~_true; }
    bool is_constant( sat::lit l ) const { return l.var() == _true.var(); }

    // "route r is occupied by train t in state `step`"
    sat::lit occ( int step, route_index r, train_index t ) const;
    sat::lit finished( int step, train_index t ) const;
    // Materialized action literal; nullopt in the rewritten mode.
    std::optional< sat::lit > action( int step, train_index t, route_index r ) const;

    // finished(step, t) for every train; meant as solver assumptions.
    std::vector< sat::lit > goal_assumptions( int step ) const;

    // Literal equivalent to the freeable condition for train t on route r
    // with `length` still to be accommodated, over occupancy at `step`.
    // Constant-folded and memoized per (step, train, route, residual length).
    sat::lit freeable_formula( train_index t, route_index r, double length, int step );

    std::size_t clause_count() const { return _clauses; }
    int var_count() const { return _vars; }
    const var_info& info( int var ) const { return _var_info[ var ]; }

private:
    struct step_vars
    {
        std::vector< sat::lit > occ;                      // r * trains + t
        std::vector< sat::lit > finished;                 // t
        std::vector< std::optional< sat::lit > > actions; // r * trains + t
    };

    sat::lit fresh( var_kind kind, int step, std::optional< train_index > t = std::nullopt,
                    std::optional< route_index > r = std::nullopt );
    void emit( std::vector< sat::lit > clause );
    void at_most_one( std::vector< sat::lit > lits, int step );

    sat::lit make_and( sat::lit a, sat::lit b, int step );
    sat::lit make_or( std::vector< sat::lit > lits, int step );

    // Literals L such that (action => C) is the clause L v C.
    std::vector< sat::lit > action_guard( int step, train_index t, route_index r ) const;

    void encode_transition( int i );

    const problem_instance* _inst;
    sat::clause_sink* _sink;
    encoder_options _opts;
    sat::lit _true;
    int _vars = 0;
    std::size_t _clauses = 0;
    std::vector< var_info > _var_info;
    std::vector< step_vars > _steps;
    std::map< std::tuple< int, train_index, route_index, std::int64_t >, sat::lit > _freeable_memo;
};

// DIMACS text with a comment map from variable index to (step, kind, train, route).
std::string to_dimacs( const sat::cnf_formula& cnf, const encoding_session& session );

} // namespace railock
