#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace railock
{

using delimiter_index = std::size_t;
using route_index = std::size_t;
using eroute_index = std::size_t;
using train_index = std::size_t;

// Residual lengths at or below this are treated as zero by every freeable
// computation (encoder and simulator alike).
inline constexpr double length_epsilon = 1e-9;

enum class instance_error_kind
{
    malformed_syntax,
    unknown_reference,
    cyclic_route_graph,
    noncontiguous_initial_position,
    conflicting_initial_positions,
    invalid_value,
};

const char* to_string( instance_error_kind kind );

class instance_error : public std::runtime_error
{
public:
    instance_error( instance_error_kind kind, const std::string& what )
        : std::runtime_error( what ), _kind{ kind }
    {}

    instance_error_kind kind() const { return _kind; }

private:
    instance_error_kind _kind;
};

struct partial_route
{
    std::string id;
    double length = 0.0;
    std::optional< delimiter_index > entry;
    std::optional< delimiter_index > exit;
    eroute_index elementary = 0;

    friend bool operator==( const partial_route&, const partial_route& ) = default;
};

struct elementary_route
{
    std::string id;
    std::vector< route_index > parts;

    friend bool operator==( const elementary_route&, const elementary_route& ) = default;
};

struct train_spec
{
    std::string id;
    double length = 0.0;
    std::vector< route_index > initial; // chain order, tail first
    std::vector< route_index > final;

    friend bool operator==( const train_spec&, const train_spec& ) = default;
};

// Plain description of an infrastructure by ids. Turned into an
// `infrastructure` (indices, lookup tables) by `infrastructure::build`.
struct infrastructure_description
{
    struct route
    {
        std::string id;
        double length = 0.0;
        std::optional< std::string > entry;
        std::optional< std::string > exit;
    };

    struct eroute
    {
        std::string id;
        std::vector< std::string > parts;
    };

    std::vector< std::string > delimiters;
    std::vector< route > partial_routes;
    std::vector< eroute > elementary_routes;
    std::vector< std::pair< std::string, std::string > > conflicts;
};

class infrastructure
{
public:
    // Validates every structural invariant (references, chaining, disjoint
    // elementary routes, irreflexive conflicts, acyclicity).
    static infrastructure build( const infrastructure_description& desc );

    std::size_t delimiter_count() const { return _delimiters.size(); }
    std::size_t route_count() const { return _routes.size(); }
    std::size_t eroute_count() const { return _eroutes.size(); }

    const std::string& delimiter( delimiter_index d ) const { return _delimiters[ d ]; }
    const partial_route& route( route_index r ) const { return _routes[ r ]; }
    const elementary_route& eroute( eroute_index e ) const { return _eroutes[ e ]; }
    const std::vector< partial_route >& routes() const { return _routes; }
    const std::vector< elementary_route >& eroutes() const { return _eroutes; }
    const std::vector< std::string >& delimiters() const { return _delimiters; }

    std::optional< route_index > find_route( const std::string& id ) const;
    std::optional< eroute_index > find_eroute( const std::string& id ) const;
    std::optional< delimiter_index > find_delimiter( const std::string& id ) const;

    // Routes r with entry(r) = d.
    const std::vector< route_index >& successors( delimiter_index d ) const { return _out[ d ]; }
    // Routes r with exit(r) = d.
    const std::vector< route_index >& predecessors( delimiter_index d ) const { return _in[ d ]; }

    // Routes following r in the route graph (entry = exit(r)); empty at a boundary.
    const std::vector< route_index >& next_routes( route_index r ) const;
    const std::vector< route_index >& previous_routes( route_index r ) const;

    bool conflicts( route_index a, route_index b ) const;
    const std::vector< route_index >& conflicts_of( route_index r ) const { return _conflicts[ r ]; }
    // Each unordered pair once, a < b.
    std::vector< std::pair< route_index, route_index > > conflict_pairs() const;

    // Position of each route in a fixed topological order of the route graph.
    std::size_t topo_rank( route_index r ) const { return _topo_rank[ r ]; }

    infrastructure_description describe() const;

    friend bool operator==( const infrastructure& a, const infrastructure& b )
    {
        return a._delimiters == b._delimiters && a._routes == b._routes
            && a._eroutes == b._eroutes && a._conflicts == b._conflicts;
    }

private:
    std::vector< std::string > _delimiters;
    std::vector< partial_route > _routes;
    std::vector< elementary_route > _eroutes;
    std::vector< std::vector< route_index > > _conflicts; // sorted
    std::vector< std::vector< route_index > > _out;
    std::vector< std::vector< route_index > > _in;
    std::vector< std::size_t > _topo_rank;
    std::unordered_map< std::string, route_index > _route_ids;
    std::unordered_map< std::string, eroute_index > _eroute_ids;
    std::unordered_map< std::string, delimiter_index > _delimiter_ids;

    static const std::vector< route_index > _none;
};

struct train_description
{
    std::string id;
    double length = 0.0;
    std::vector< std::string > initial;
    std::vector< std::string > final;
};

class problem_instance
{
public:
    // Validates trains against the infrastructure; initial routes may be
    // given in any order and are stored in chain order.
    static problem_instance build( infrastructure infra,
                                   const std::vector< train_description >& trains );

    const infrastructure& infra() const { return _infra; }
    const std::vector< train_spec >& trains() const { return _trains; }
    std::size_t train_count() const { return _trains.size(); }
    const train_spec& train( train_index t ) const { return _trains[ t ]; }
    std::optional< train_index > find_train( const std::string& id ) const;

    bool is_final( train_index t, route_index r ) const;
    bool starts_finished( train_index t ) const;

    // Non-fatal findings, e.g. a final alternative not reachable from the
    // train's initial position.
    const std::vector< std::string >& warnings() const { return _warnings; }

    std::vector< train_description > describe_trains() const;

    friend bool operator==( const problem_instance& a, const problem_instance& b )
    {
        return a._infra == b._infra && a._trains == b._trains;
    }

private:
    infrastructure _infra;
    std::vector< train_spec > _trains;
    std::vector< std::string > _warnings;
};

// Routes occupied in chain order, tail first. Throws if `routes` do not form
// a single path.
std::vector< route_index > order_chain( const infrastructure& infra,
                                        const std::vector< route_index >& routes );

// Partial routes r with entry(r) = d, by ids.
std::vector< std::string > successors( const problem_instance& inst, const std::string& delimiter );

} // namespace railock
