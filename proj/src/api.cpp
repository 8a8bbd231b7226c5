#include "railock/api.hpp"

#include "railock/instance_io.hpp"

#include <httplib.h>

#include <random>

namespace railock::api
{

using nlohmann::json;

namespace
{

response error( int status, const std::string& message )
{
    return { status, { { "error", message } } };
}

} // namespace

service::service( service_options opts ) : _opts{ std::move( opts ) } {}

std::string service::next_id()
{
    static thread_local std::mt19937_64 rng{ std::random_device{}() };
    char buf[ 40 ];
    std::snprintf( buf, sizeof buf, "%016llx%04llx", static_cast< unsigned long long >( rng() ),
                   static_cast< unsigned long long >( ++_counter & 0xffff ) );
    return buf;
}

void service::expire_idle()
{
    const auto now = std::chrono::steady_clock::now();
    for ( auto it = _sessions.begin(); it != _sessions.end(); )
    {
        if ( now - it->second->touched > _opts.idle_expiry )
            it = _sessions.erase( it );
        else
            ++it;
    }
}

std::shared_ptr< service::session > service::find( const std::string& id )
{
    std::lock_guard guard( _lock );
    expire_idle();
    auto it = _sessions.find( id );
    if ( it == _sessions.end() )
        return nullptr;
    it->second->touched = std::chrono::steady_clock::now();
    return it->second;
}

std::size_t service::session_count()
{
    std::lock_guard guard( _lock );
    return _sessions.size();
}

json service::evaluate( const problem_instance& inst, const sim_state& s ) const
{
    // A train that left the model without finishing can never finish.
    for ( train_index t = 0; t < inst.train_count(); ++t )
        if ( !s.present[ t ] && !s.finished[ t ] )
            return { { "status", "dead" }, { "steps", 0 }, { "time_s", 0.0 }, { "algorithm", 3 } };

    const auto current = instance_from_state( inst, s );
    detect_options opts;
    opts.algorithm = 3;
    opts.timeout = _opts.verdict_timeout;
    opts.backend = _opts.backend;
    return verdict_to_json( current, detect( current, opts ), false );
}

json service::view( const session& s, bool full ) const
{
    json out = {
        { "id", s.id },
        { "state", state_to_json( s.instance, s.state ) },
        { "legal_actions", actions_to_json( s.instance, legal_actions( s.instance, s.state ) ) },
        { "verdict", s.verdict },
        { "history", actions_to_json( s.instance, s.history ) },
    };
    if ( full )
        out[ "instance" ] = s.instance_doc;
    return out;
}

response service::create_session( const std::string& body )
{
    auto s = std::make_shared< session >();
    try
    {
        s->instance = parse_instance( body );
    }
    catch ( const instance_error& e )
    {
        return { 400, { { "error", e.what() }, { "kind", to_string( e.kind() ) } } };
    }
    s->instance_doc = instance_to_json( s->instance );
    s->state = initial_state( s->instance );
    s->verdict = evaluate( s->instance, s->state );
    s->touched = std::chrono::steady_clock::now();

    std::lock_guard guard( _lock );
    expire_idle();
    s->id = next_id();
    _sessions.emplace( s->id, s );
    return { 201, view( *s, true ) };
}

response service::apply_action( const std::string& id, const std::string& body )
{
    auto s = find( id );
    if ( !s )
        return error( 404, "unknown session" );

    json doc;
    try
    {
        doc = json::parse( body );
    }
    catch ( const json::parse_error& e )
    {
        return error( 400, e.what() );
    }
    if ( !doc.is_object() || !doc.contains( "train" ) || !doc.contains( "elementary_route" )
         || !doc[ "train" ].is_string() || !doc[ "elementary_route" ].is_string() )
        return error( 400, "expected {\"train\": ..., \"elementary_route\": ...}" );

    std::lock_guard guard( s->lock );
    const auto t = s->instance.find_train( doc[ "train" ].get< std::string >() );
    const auto e = s->instance.infra().find_eroute( doc[ "elementary_route" ].get< std::string >() );
    if ( !t || !e )
        return error( 400, "unknown train or elementary route" );

    sim_state next;
    try
    {
        next = railock::apply_action( s->instance, s->state, { *t, *e } );
    }
    catch ( const illegal_action& ex )
    {
        return error( 409, ex.what() );
    }

    s->undo_stack.push_back( { s->state, s->verdict } );
    s->history.push_back( { *t, *e } );
    s->state = std::move( next );
    s->verdict = evaluate( s->instance, s->state );
    return { 200, view( *s, false ) };
}

response service::get_session( const std::string& id )
{
    auto s = find( id );
    if ( !s )
        return error( 404, "unknown session" );
    std::lock_guard guard( s->lock );
    return { 200, view( *s, true ) };
}

response service::undo( const std::string& id )
{
    auto s = find( id );
    if ( !s )
        return error( 404, "unknown session" );
    std::lock_guard guard( s->lock );
    if ( s->history.empty() )
        return error( 409, "nothing to undo" );
    s->state = std::move( s->undo_stack.back().state );
    s->verdict = std::move( s->undo_stack.back().verdict );
    s->undo_stack.pop_back();
    s->history.pop_back();
    return { 200, view( *s, false ) };
}

void install_routes( httplib::Server& server, service& svc )
{
    const auto origin = svc.options().cors_origin;
    server.set_default_headers( {
        { "Access-Control-Allow-Origin", origin },
        { "Access-Control-Allow-Methods", "GET, POST, OPTIONS" },
        { "Access-Control-Allow-Headers", "Content-Type" },
    } );

    const auto send = []( httplib::Response& res, const response& r ) {
        res.status = r.status;
        res.set_content( r.body.dump(), "application/json" );
    };

    server.Options( R"(/.*)", []( const httplib::Request&, httplib::Response& res ) { res.status = 204; } );

    server.Post( "/sessions", [ &svc, send ]( const httplib::Request& req, httplib::Response& res ) {
        send( res, svc.create_session( req.body ) );
    } );
    server.Get( R"(/sessions/([^/]+))", [ &svc, send ]( const httplib::Request& req, httplib::Response& res ) {
        send( res, svc.get_session( req.matches[ 1 ] ) );
    } );
    server.Post( R"(/sessions/([^/]+)/actions)",
                 [ &svc, send ]( const httplib::Request& req, httplib::Response& res ) {
                     send( res, svc.apply_action( req.matches[ 1 ], req.body ) );
                 } );
    server.Post( R"(/sessions/([^/]+)/undo)", [ &svc, send ]( const httplib::Request& req, httplib::Response& res ) {
        send( res, svc.undo( req.matches[ 1 ] ) );
    } );

    server.set_exception_handler( []( const httplib::Request&, httplib::Response& res, std::exception_ptr ep ) {
        std::string what = "internal error";
        try
        {
            if ( ep )
                std::rethrow_exception( ep );
        }
        catch ( const std::exception& e )
        {
            what = e.what();
        }
        res.status = 500;
        res.set_content( json{ { "error", what } }.dump(), "application/json" );
    } );
}

} // namespace railock::api
