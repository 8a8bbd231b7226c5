#include "railock/api.hpp"
#include "railock/generator.hpp"
#include "railock/instance_io.hpp"
#include "railock/oracle.hpp"

#include <doctest.h>
#include <httplib.h>

#include <algorithm>
#include <set>
#include <thread>

using namespace railock;
using namespace railock::api;
using nlohmann::json;

namespace
{

std::string action_body( const std::string& train, const std::string& route )
{
    return json{ { "train", train }, { "elementary_route", route } }.dump();
}

std::string create( service& svc, const problem_instance& inst )
{
    const auto r = svc.create_session( serialize_instance( inst ) );
    REQUIRE( r.status == 201 );
    return r.body[ "id" ].get< std::string >();
}

// Oracle view of a session state, for cross-checking verdicts.
std::string oracle_view( const problem_instance& inst, const json& state )
{
    sim_state s = initial_state( inst );
    s.occ.assign( inst.infra().route_count(), std::nullopt );
    for ( auto& [ route, train ] : state[ "occ" ].items() )
        s.occ[ *inst.infra().find_route( route ) ] = *inst.find_train( train.get< std::string >() );
    for ( train_index t = 0; t < inst.train_count(); ++t )
    {
        const auto& id = inst.train( t ).id;
        s.finished[ t ] = std::find( state[ "finished" ].begin(), state[ "finished" ].end(), id ) != state[ "finished" ].end();
        s.present[ t ] = std::find( state[ "present" ].begin(), state[ "present" ].end(), id ) != state[ "present" ].end();
    }
    return to_string( oracle_decide( instance_from_state( inst, s ) ).status );
}

} // namespace

TEST_CASE( "creating a junction session" )
{
    service svc;
    const auto r = svc.create_session( serialize_instance( gen_junction() ) );
    REQUIRE( r.status == 201 );
    CHECK( r.body[ "verdict" ][ "status" ] == "live" );
    CHECK( r.body[ "history" ].empty() );
    CHECK( r.body.contains( "instance" ) );

    std::set< std::string > movers;
    for ( const auto& a : r.body[ "legal_actions" ] )
        movers.insert( a[ "train" ].get< std::string >() );
    CHECK( movers == std::set< std::string >{ "t1", "t2" } );
    CHECK( svc.session_count() == 1 );
}

TEST_CASE( "four-station session is dead on creation" )
{
    service svc;
    const auto r = svc.create_session( serialize_instance( gen_four_station() ) );
    REQUIRE( r.status == 201 );
    CHECK( r.body[ "verdict" ][ "status" ] == "dead" );
}

TEST_CASE( "bad instance bodies" )
{
    service svc;
    auto r = svc.create_session( "{not json" );
    CHECK( r.status == 400 );
    CHECK( r.body[ "kind" ] == "MalformedSyntax" );

    auto doc = instance_to_json( gen_junction() );
    doc[ "trains" ][ 0 ][ "initial" ] = json::array( { "nowhere" } );
    r = svc.create_session( doc.dump() );
    CHECK( r.status == 400 );
    CHECK( r.body[ "kind" ] == "UnknownReference" );
    CHECK( svc.session_count() == 0 );
}

TEST_CASE( "sending t1 into the branch flips the verdict" )
{
    const auto inst = gen_junction();
    service svc;
    const auto id = create( svc, inst );

    auto r = svc.apply_action( id, action_body( "t2", "r6w" ) );
    REQUIRE( r.status == 200 );
    CHECK( r.body[ "verdict" ][ "status" ] == "live" );
    CHECK( oracle_view( inst, r.body[ "state" ] ) == "live" );

    r = svc.apply_action( id, action_body( "t1", "r2e" ) );
    REQUIRE( r.status == 200 );
    CHECK( r.body[ "verdict" ][ "status" ] == "live" );

    r = svc.apply_action( id, action_body( "t1", "r3be" ) );
    REQUIRE( r.status == 200 );
    CHECK( r.body[ "verdict" ][ "status" ] == "dead" );
    CHECK( oracle_view( inst, r.body[ "state" ] ) == "dead" );

    r = svc.undo( id );
    REQUIRE( r.status == 200 );
    CHECK( r.body[ "verdict" ][ "status" ] == "live" );
    CHECK( r.body[ "history" ].size() == 2 );
}

TEST_CASE( "benign move on a ladder with long station tracks" )
{
    const auto inst = gen_ladder( 3, 1.5, 2.0 );
    service svc;
    const auto id = create( svc, inst );
    const auto r = svc.apply_action( id, action_body( "t1", "aR1" ) );
    REQUIRE( r.status == 200 );
    CHECK( r.body[ "verdict" ][ "status" ] == "live" );
    CHECK( oracle_view( inst, r.body[ "state" ] ) == "live" );
}

TEST_CASE( "action errors" )
{
    service svc;
    const auto id = create( svc, gen_junction() );
    CHECK( svc.apply_action( "missing", action_body( "t1", "r2e" ) ).status == 404 );
    CHECK( svc.apply_action( id, "[]" ).status == 400 );
    CHECK( svc.apply_action( id, "{" ).status == 400 );
    CHECK( svc.apply_action( id, action_body( "t9", "r2e" ) ).status == 400 );
    CHECK( svc.apply_action( id, action_body( "t1", "r4e" ) ).status == 409 );

    REQUIRE( svc.apply_action( id, action_body( "t1", "r2e" ) ).status == 200 );
    REQUIRE( svc.apply_action( id, action_body( "t1", "r3e" ) ).status == 200 );
    CHECK( svc.apply_action( id, action_body( "t2", "r6w" ) ).status == 200 );
    CHECK( svc.apply_action( id, action_body( "t2", "r3bw" ) ).status == 409 );
}

TEST_CASE( "history, undo and lookup" )
{
    service svc;
    const auto id = create( svc, gen_junction() );
    const auto before = svc.get_session( id ).body[ "state" ];

    CHECK( svc.undo( id ).status == 409 );
    CHECK( svc.get_session( "missing" ).status == 404 );
    CHECK( svc.undo( "missing" ).status == 404 );

    REQUIRE( svc.apply_action( id, action_body( "t1", "r2e" ) ).status == 200 );
    const auto middle = svc.get_session( id ).body[ "state" ];
    REQUIRE( svc.apply_action( id, action_body( "t2", "r6w" ) ).status == 200 );
    CHECK( svc.get_session( id ).body[ "history" ].size() == 2 );

    CHECK( svc.undo( id ).body[ "state" ] == middle );
    CHECK( svc.undo( id ).body[ "state" ] == before );
    CHECK( svc.get_session( id ).body[ "history" ].empty() );
}

TEST_CASE( "idle sessions expire" )
{
    service svc( { .idle_expiry = std::chrono::seconds( 0 ) } );
    const auto id = create( svc, gen_junction() );
    std::this_thread::sleep_for( std::chrono::milliseconds( 20 ) );
    CHECK( svc.get_session( id ).status == 404 );
}

TEST_CASE( "sessions used from several threads" )
{
    service svc;
    std::vector< std::string > ids;
    for ( int k = 0; k < 4; ++k )
        ids.push_back( create( svc, gen_junction() ) );
    std::vector< int > codes( ids.size() );
    std::vector< std::thread > workers;
    for ( std::size_t k = 0; k < ids.size(); ++k )
        workers.emplace_back( [ & ]( std::size_t i ) { codes[ i ] = svc.apply_action( ids[ i ], action_body( "t1", "r2e" ) ).status; }, k );
    for ( auto& w : workers )
        w.join();
    for ( int c : codes )
        CHECK( c == 200 );
}

TEST_CASE( "HTTP surface" )
{
    service svc( { .cors_origin = "http://localhost:5173" } );
    httplib::Server server;
    install_routes( server, svc );
    const int port = server.bind_to_any_port( "127.0.0.1" );
    REQUIRE( port > 0 );
    std::thread loop( [ & ] { server.listen_after_bind(); } );
    server.wait_until_ready();

    httplib::Client client( "127.0.0.1", port );
    auto res = client.Post( "/sessions", serialize_instance( gen_junction() ), "application/json" );
    REQUIRE( res );
    CHECK( res->status == 201 );
    CHECK( res->get_header_value( "Access-Control-Allow-Origin" ) == "http://localhost:5173" );
    const auto id = json::parse( res->body )[ "id" ].get< std::string >();

    res = client.Post( "/sessions/" + id + "/actions", action_body( "t1", "r2e" ), "application/json" );
    REQUIRE( res );
    CHECK( res->status == 200 );
    CHECK( json::parse( res->body )[ "history" ].size() == 1 );

    res = client.Get( "/sessions/" + id );
    REQUIRE( res );
    CHECK( res->status == 200 );
    CHECK( json::parse( res->body ).contains( "instance" ) );

    res = client.Post( "/sessions/" + id + "/undo", "", "application/json" );
    REQUIRE( res );
    CHECK( res->status == 200 );

    res = client.Get( "/sessions/unknown" );
    REQUIRE( res );
    CHECK( res->status == 404 );

    res = client.Post( "/sessions", "nonsense", "application/json" );
    REQUIRE( res );
    CHECK( res->status == 400 );

    httplib::Request preflight;
    preflight.method = "OPTIONS";
    preflight.path = "/sessions";
    res = client.send( preflight );
    REQUIRE( res );
    CHECK( res->status == 204 );
    CHECK( res->get_header_value( "Access-Control-Allow-Methods" ).find( "POST" ) != std::string::npos );

    server.stop();
    loop.join();
}
