#pragma once

#include <chrono>
#include <cstdlib>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace railock::sat
{

// A literal in DIMACS convention: variable index >= 1, negative for negation.
class lit
{
public:
    constexpr lit() = default;
    constexpr explicit lit( int dimacs ) : _value{ dimacs } {}
    constexpr lit( int var, bool positive ) : _value{ positive ? var : -var } {}

    constexpr int var() const { return _value < 0 ? -_value : _value; }
    constexpr bool positive() const { return _value > 0; }
    constexpr int dimacs() const { return _value; }
    constexpr lit operator~() const { return lit{ -_value }; }

    friend constexpr bool operator==( lit, lit ) = default;
    friend constexpr auto operator<=>( lit, lit ) = default;

private:
    int _value = 0;
};

using clock = std::chrono::steady_clock;

enum class solve_result
{
    sat,
    unsat,
    timed_out,
};

const char* to_string( solve_result r );

// Anything that accepts fresh variables and clauses.
class clause_sink
{
public:
    virtual ~clause_sink() = default;

    virtual int new_var() = 0;
    virtual void add_clause( std::span< const lit > clause ) = 0;
};

// Incremental solving session. Clauses persist for the lifetime of the
// solver, assumptions only for one `solve` call.
class solver : public clause_sink
{
public:
    virtual int var_count() const = 0;

    virtual solve_result solve( std::span< const lit > assumptions,
                                std::optional< clock::time_point > deadline = std::nullopt ) = 0;

    // Only meaningful after `solve` returned `sat`.
    virtual bool value( lit l ) const = 0;

    virtual std::string name() const = 0;
};

enum class backend
{
    cadical,
    dpll,
};

std::optional< backend > backend_from_string( const std::string& name );
// RAILOCK_SAT_BACKEND, defaulting to CaDiCaL.
backend backend_from_env();

std::unique_ptr< solver > make_solver( backend which );

// CNF kept in memory, used for DIMACS dumps and tests.
class cnf_formula : public clause_sink
{
public:
    int new_var() override { return ++_vars; }
    void add_clause( std::span< const lit > clause ) override
    {
        _clauses.emplace_back( clause.begin(), clause.end() );
    }

    int var_count() const { return _vars; }
    const std::vector< std::vector< lit > >& clauses() const { return _clauses; }

private:
    int _vars = 0;
    std::vector< std::vector< lit > > _clauses;
};

} // namespace railock::sat
