#include "railock/model.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

namespace railock
{

const std::vector< route_index > infrastructure::_none{};

const char* to_string( instance_error_kind kind )
{
    switch ( kind )
    {
    case instance_error_kind::malformed_syntax: return "MalformedSyntax";
    case instance_error_kind::unknown_reference: return "UnknownReference";
    case instance_error_kind::cyclic_route_graph: return "CyclicRouteGraph";
    case instance_error_kind::noncontiguous_initial_position: return "NoncontiguousInitialPosition";
    case instance_error_kind::conflicting_initial_positions: return "ConflictingInitialPositions";
    case instance_error_kind::invalid_value: return "InvalidValue";
    }
    return "?";
}

namespace
{

[[noreturn]] void fail( instance_error_kind kind, const std::string& msg )
{
    throw instance_error( kind, msg );
}

} // namespace

infrastructure infrastructure::build( const infrastructure_description& desc )
{
    infrastructure infra;

    for ( const auto& d : desc.delimiters )
    {
        if ( !infra._delimiter_ids.emplace( d, infra._delimiters.size() ).second )
            fail( instance_error_kind::invalid_value, "duplicate delimiter id '" + d + "'" );
        infra._delimiters.push_back( d );
    }

    auto delimiter_ref = [ & ]( const std::optional< std::string >& id,
                                const std::string& route ) -> std::optional< delimiter_index >
    {
        if ( !id )
            return std::nullopt;
        auto it = infra._delimiter_ids.find( *id );
        if ( it == infra._delimiter_ids.end() )
            fail( instance_error_kind::unknown_reference,
                  "route '" + route + "' references undefined delimiter '" + *id + "'" );
        return it->second;
    };

    for ( const auto& r : desc.partial_routes )
    {
        if ( !std::isfinite( r.length ) || r.length < 0 )
            fail( instance_error_kind::invalid_value, "route '" + r.id + "' has a negative length" );
        if ( !r.entry && !r.exit )
            fail( instance_error_kind::invalid_value,
                  "route '" + r.id + "' has neither entry nor exit delimiter" );

        partial_route route;
        route.id = r.id;
        route.length = r.length;
        route.entry = delimiter_ref( r.entry, r.id );
        route.exit = delimiter_ref( r.exit, r.id );
        if ( route.entry && route.entry == route.exit )
            fail( instance_error_kind::cyclic_route_graph,
                  "route '" + r.id + "' enters and exits at the same delimiter" );

        if ( !infra._route_ids.emplace( r.id, infra._routes.size() ).second )
            fail( instance_error_kind::invalid_value, "duplicate route id '" + r.id + "'" );
        infra._routes.push_back( std::move( route ) );
    }

    const auto route_ref = [ & ]( const std::string& id, const std::string& context ) -> route_index
    {
        auto it = infra._route_ids.find( id );
        if ( it == infra._route_ids.end() )
            fail( instance_error_kind::unknown_reference,
                  context + " references undefined route '" + id + "'" );
        return it->second;
    };

    std::vector< bool > grouped( infra._routes.size(), false );
    for ( const auto& e : desc.elementary_routes )
    {
        if ( e.parts.empty() )
            fail( instance_error_kind::invalid_value, "elementary route '" + e.id + "' has no parts" );

        elementary_route er;
        er.id = e.id;
        for ( const auto& p : e.parts )
        {
            const auto r = route_ref( p, "elementary route '" + e.id + "'" );
            if ( grouped[ r ] )
                fail( instance_error_kind::invalid_value,
                      "route '" + p + "' belongs to more than one elementary route" );
            grouped[ r ] = true;
            infra._routes[ r ].elementary = infra._eroutes.size();
            er.parts.push_back( r );
        }

        for ( std::size_t k = 0; k + 1 < er.parts.size(); ++k )
        {
            const auto& a = infra._routes[ er.parts[ k ] ];
            const auto& b = infra._routes[ er.parts[ k + 1 ] ];
            if ( !a.exit || a.exit != b.entry )
                fail( instance_error_kind::invalid_value,
                      "parts of elementary route '" + e.id + "' do not chain at '" + b.id + "'" );
        }

        if ( !infra._eroute_ids.emplace( e.id, infra._eroutes.size() ).second )
            fail( instance_error_kind::invalid_value, "duplicate elementary route id '" + e.id + "'" );
        infra._eroutes.push_back( std::move( er ) );
    }

    for ( route_index r = 0; r < infra._routes.size(); ++r )
        if ( !grouped[ r ] )
            fail( instance_error_kind::invalid_value,
                  "route '" + infra._routes[ r ].id + "' belongs to no elementary route" );

    infra._conflicts.assign( infra._routes.size(), {} );
    for ( const auto& [ a_id, b_id ] : desc.conflicts )
    {
        const auto a = route_ref( a_id, "conflict" );
        const auto b = route_ref( b_id, "conflict" );
        if ( a == b )
            fail( instance_error_kind::invalid_value, "route '" + a_id + "' conflicts with itself" );
        infra._conflicts[ a ].push_back( b );
        infra._conflicts[ b ].push_back( a );
    }
    for ( auto& c : infra._conflicts )
    {
        std::sort( c.begin(), c.end() );
        c.erase( std::unique( c.begin(), c.end() ), c.end() );
    }

    infra._out.assign( infra._delimiters.size(), {} );
    infra._in.assign( infra._delimiters.size(), {} );
    for ( route_index r = 0; r < infra._routes.size(); ++r )
    {
        if ( const auto& e = infra._routes[ r ].entry )
            infra._out[ *e ].push_back( r );
        if ( const auto& x = infra._routes[ r ].exit )
            infra._in[ *x ].push_back( r );
    }

    // Kahn's algorithm over the route graph (a -> b iff exit(a) = entry(b)).
    std::vector< std::size_t > indegree( infra._routes.size(), 0 );
    for ( route_index r = 0; r < infra._routes.size(); ++r )
        if ( const auto& e = infra._routes[ r ].entry )
            indegree[ r ] = infra._in[ *e ].size();

    std::queue< route_index > ready;
    for ( route_index r = 0; r < infra._routes.size(); ++r )
        if ( indegree[ r ] == 0 )
            ready.push( r );

    infra._topo_rank.assign( infra._routes.size(), 0 );
    std::size_t rank = 0;
    while ( !ready.empty() )
    {
        const auto r = ready.front();
        ready.pop();
        infra._topo_rank[ r ] = rank++;
        for ( auto next : infra.next_routes( r ) )
            if ( --indegree[ next ] == 0 )
                ready.push( next );
    }
    if ( rank != infra._routes.size() )
        fail( instance_error_kind::cyclic_route_graph, "the route graph contains a cycle" );

    return infra;
}

std::optional< route_index > infrastructure::find_route( const std::string& id ) const
{
    auto it = _route_ids.find( id );
    if ( it == _route_ids.end() )
        return std::nullopt;
    return it->second;
}

std::optional< eroute_index > infrastructure::find_eroute( const std::string& id ) const
{
    auto it = _eroute_ids.find( id );
    if ( it == _eroute_ids.end() )
        return std::nullopt;
    return it->second;
}

std::optional< delimiter_index > infrastructure::find_delimiter( const std::string& id ) const
{
    auto it = _delimiter_ids.find( id );
    if ( it == _delimiter_ids.end() )
        return std::nullopt;
    return it->second;
}

const std::vector< route_index >& infrastructure::next_routes( route_index r ) const
{
    const auto& x = _routes[ r ].exit;
    return x ? _out[ *x ] : _none;
}

const std::vector< route_index >& infrastructure::previous_routes( route_index r ) const
{
    const auto& e = _routes[ r ].entry;
    return e ? _in[ *e ] : _none;
}

bool infrastructure::conflicts( route_index a, route_index b ) const
{
    const auto& c = _conflicts[ a ];
    return std::binary_search( c.begin(), c.end(), b );
}

std::vector< std::pair< route_index, route_index > > infrastructure::conflict_pairs() const
{
    std::vector< std::pair< route_index, route_index > > pairs;
    for ( route_index a = 0; a < _conflicts.size(); ++a )
        for ( auto b : _conflicts[ a ] )
            if ( a < b )
                pairs.emplace_back( a, b );
    return pairs;
}

infrastructure_description infrastructure::describe() const
{
    infrastructure_description desc;
    desc.delimiters = _delimiters;
    for ( const auto& r : _routes )
    {
        infrastructure_description::route out{ r.id, r.length, std::nullopt, std::nullopt };
        if ( r.entry )
            out.entry = _delimiters[ *r.entry ];
        if ( r.exit )
            out.exit = _delimiters[ *r.exit ];
        desc.partial_routes.push_back( std::move( out ) );
    }
    for ( const auto& e : _eroutes )
    {
        infrastructure_description::eroute out{ e.id, {} };
        for ( auto p : e.parts )
            out.parts.push_back( _routes[ p ].id );
        desc.elementary_routes.push_back( std::move( out ) );
    }
    for ( auto [ a, b ] : conflict_pairs() )
        desc.conflicts.emplace_back( _routes[ a ].id, _routes[ b ].id );
    return desc;
}

std::vector< route_index > order_chain( const infrastructure& infra,
                                        const std::vector< route_index >& routes )
{
    if ( routes.empty() )
        return {};

    std::vector< route_index > sorted = routes;
    std::sort( sorted.begin(), sorted.end(), [ & ]( route_index a, route_index b )
    {
        return infra.topo_rank( a ) < infra.topo_rank( b );
    } );
    if ( std::adjacent_find( sorted.begin(), sorted.end() ) != sorted.end() )
        throw instance_error( instance_error_kind::noncontiguous_initial_position,
                              "route '" + infra.route( sorted.front() ).id + "' listed twice" );

    for ( std::size_t k = 0; k + 1 < sorted.size(); ++k )
    {
        const auto& a = infra.route( sorted[ k ] );
        const auto& b = infra.route( sorted[ k + 1 ] );
        if ( !a.exit || a.exit != b.entry )
            throw instance_error( instance_error_kind::noncontiguous_initial_position,
                                  "routes '" + a.id + "' and '" + b.id + "' are not consecutive" );
    }
    return sorted;
}

problem_instance problem_instance::build( infrastructure infra,
                                          const std::vector< train_description >& trains )
{
    problem_instance inst;
    inst._infra = std::move( infra );
    const auto& net = inst._infra;

    std::set< std::string > ids;
    for ( const auto& td : trains )
    {
        if ( !ids.insert( td.id ).second )
            fail( instance_error_kind::invalid_value, "duplicate train id '" + td.id + "'" );
        if ( !std::isfinite( td.length ) || td.length <= 0 )
            fail( instance_error_kind::invalid_value, "train '" + td.id + "' needs a positive length" );
        if ( td.initial.empty() )
            fail( instance_error_kind::noncontiguous_initial_position,
                  "train '" + td.id + "' has no initial routes" );
        if ( td.final.empty() )
            fail( instance_error_kind::invalid_value, "train '" + td.id + "' has no final routes" );

        auto resolve = [ & ]( const std::vector< std::string >& names )
        {
            std::vector< route_index > out;
            for ( const auto& n : names )
            {
                const auto r = net.find_route( n );
                if ( !r )
                    fail( instance_error_kind::unknown_reference,
                          "train '" + td.id + "' references undefined route '" + n + "'" );
                out.push_back( *r );
            }
            return out;
        };

        train_spec spec;
        spec.id = td.id;
        spec.length = td.length;
        try
        {
            spec.initial = order_chain( net, resolve( td.initial ) );
        }
        catch ( const instance_error& e )
        {
            if ( e.kind() != instance_error_kind::noncontiguous_initial_position )
                throw;
            fail( e.kind(), "train '" + td.id + "': " + e.what() );
        }
        spec.final = resolve( td.final );
        std::sort( spec.final.begin(), spec.final.end() );
        spec.final.erase( std::unique( spec.final.begin(), spec.final.end() ), spec.final.end() );
        inst._trains.push_back( std::move( spec ) );
    }

    for ( std::size_t a = 0; a < inst._trains.size(); ++a )
        for ( std::size_t b = a + 1; b < inst._trains.size(); ++b )
            for ( auto ra : inst._trains[ a ].initial )
                for ( auto rb : inst._trains[ b ].initial )
                    if ( ra == rb || net.conflicts( ra, rb ) )
                        fail( instance_error_kind::conflicting_initial_positions,
                              "trains '" + inst._trains[ a ].id + "' and '" + inst._trains[ b ].id
                                  + "' start on clashing routes '" + net.route( ra ).id + "' and '"
                                  + net.route( rb ).id + "'" );

    for ( const auto& t : inst._trains )
    {
        const auto head = t.initial.back();
        const auto& e = net.eroute( net.route( head ).elementary );
        if ( e.parts.back() != head )
            inst._warnings.push_back( "train '" + t.id + "' has its head inside elementary route '"
                                      + e.id + "' and cannot extend its path" );

        std::vector< bool > seen( net.route_count(), false );
        for ( auto r : t.initial )
            seen[ r ] = true;
        std::vector< route_index > stack = net.next_routes( head );
        while ( !stack.empty() )
        {
            const auto r = stack.back();
            stack.pop_back();
            if ( seen[ r ] )
                continue;
            seen[ r ] = true;
            for ( auto n : net.next_routes( r ) )
                stack.push_back( n );
        }
        for ( auto f : t.final )
            if ( !seen[ f ] )
                inst._warnings.push_back( "final route '" + net.route( f ).id + "' of train '" + t.id
                                          + "' is unreachable from its initial position" );
    }

    return inst;
}

std::optional< train_index > problem_instance::find_train( const std::string& id ) const
{
    for ( train_index t = 0; t < _trains.size(); ++t )
        if ( _trains[ t ].id == id )
            return t;
    return std::nullopt;
}

bool problem_instance::is_final( train_index t, route_index r ) const
{
    const auto& f = _trains[ t ].final;
    return std::binary_search( f.begin(), f.end(), r );
}

bool problem_instance::starts_finished( train_index t ) const
{
    for ( auto r : _trains[ t ].initial )
        if ( is_final( t, r ) )
            return true;
    return false;
}

std::vector< train_description > problem_instance::describe_trains() const
{
    std::vector< train_description > out;
    for ( const auto& t : _trains )
    {
        train_description td{ t.id, t.length, {}, {} };
        for ( auto r : t.initial )
            td.initial.push_back( _infra.route( r ).id );
        for ( auto r : t.final )
            td.final.push_back( _infra.route( r ).id );
        out.push_back( std::move( td ) );
    }
    return out;
}

std::vector< std::string > successors( const problem_instance& inst, const std::string& delimiter )
{
    const auto d = inst.infra().find_delimiter( delimiter );
    if ( !d )
        throw instance_error( instance_error_kind::unknown_reference,
                              "undefined delimiter '" + delimiter + "'" );
    std::vector< std::string > out;
    for ( auto r : inst.infra().successors( *d ) )
        out.push_back( inst.infra().route( r ).id );
    return out;
}

} // namespace railock
