#include "fixtures.hpp"

#include "railock/instance_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace railock;

namespace
{

struct run_result
{
    int code = -1;
    std::string out;
};

run_result railock_cli( const std::string& args )
{
    const std::string cmd = std::string( RAILOCK_BIN ) + " " + args + " 2>/dev/null";
    run_result r;
    FILE* pipe = popen( cmd.c_str(), "r" );
    REQUIRE( pipe );
    std::array< char, 4096 > buf{};
    while ( auto n = std::fread( buf.data(), 1, buf.size(), pipe ) )
        r.out.append( buf.data(), n );
    const int status = pclose( pipe );
    r.code = WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
    return r;
}

struct scratch_dir
{
    fs::path path;
    scratch_dir()
    {
        path = fs::temp_directory_path() / ( "railock_cli_" + std::to_string( ::getpid() ) );
        fs::remove_all( path );
        fs::create_directories( path );
    }
    ~scratch_dir() { fs::remove_all( path ); }
    std::string operator/( const std::string& name ) const { return ( path / name ).string(); }
};

json read_json( const std::string& path )
{
    std::ifstream in( path );
    return json::parse( in );
}

} // namespace

TEST_CASE( "check a two-station ladder" )
{
    scratch_dir dir;
    REQUIRE( railock_cli( "gen ladder --stations 2 -o " + ( dir / "ladder2.json" ) ).code == 0 );
    const auto r = railock_cli( "check " + ( dir / "ladder2.json" ) + " --algorithm 3" );
    CHECK( r.code == 1 );
    CHECK( r.out.starts_with( "DEAD steps=3 time=" ) );
}

TEST_CASE( "check the junction and write its plan" )
{
    scratch_dir dir;
    REQUIRE( railock_cli( "gen junction -o " + ( dir / "junction.json" ) ).code == 0 );
    const auto r = railock_cli( "check " + ( dir / "junction.json" ) + " --plan-out " + ( dir / "plan.json" ) );
    CHECK( r.code == 0 );
    CHECK( r.out.starts_with( "LIVE steps=2 " ) );
    const auto plan = read_json( dir / "plan.json" );
    CHECK( plan.size() == 8 );
    CHECK( plan[ 0 ].contains( "elementary_route" ) );
}

TEST_CASE( "structured output" )
{
    scratch_dir dir;
    REQUIRE( railock_cli( "gen corridor --routes 9 --train-len 2.25 -o " + ( dir / "c.json" ) ).code == 0 );
    const auto r = railock_cli( "check " + ( dir / "c.json" ) + " --algorithm 2 --json" );
    CHECK( r.code == 1 );
    auto doc = json::parse( r.out );
    CHECK( doc[ "time_s" ].is_number() );
    doc.erase( "time_s" );
    CHECK( doc == json::parse( R"({"status":"dead","steps":2,"algorithm":2})" ) );
}

TEST_CASE( "check failures" )
{
    scratch_dir dir;
    CHECK( railock_cli( "check " + ( dir / "missing.json" ) ).code == 65 );
    {
        std::ofstream( dir / "broken.json" ) << "{ nope";
    }
    CHECK( railock_cli( "check " + ( dir / "broken.json" ) ).code == 65 );
    CHECK( railock_cli( "check" ).code == 64 );
    CHECK( railock_cli( "check x.json --algorithm 7" ).code == 64 );
    CHECK( railock_cli( "frobnicate" ).code == 64 );
    CHECK( railock_cli( "--help" ).code == 0 );
}

TEST_CASE( "step cap and timeout give exit code 2" )
{
    scratch_dir dir;
    REQUIRE( railock_cli( "gen ladder --stations 2 -o " + ( dir / "l.json" ) ).code == 0 );
    const auto r = railock_cli( "check " + ( dir / "l.json" ) + " --algorithm 2 --max-steps 2" );
    CHECK( r.code == 2 );
    CHECK( r.out.starts_with( "UNKNOWN steps=2 " ) );
}

TEST_CASE( "DIMACS output" )
{
    scratch_dir dir;
    REQUIRE( railock_cli( "gen ladder --stations 2 -o " + ( dir / "l.json" ) ).code == 0 );
    REQUIRE( railock_cli( "check " + ( dir / "l.json" ) + " --cnf-out " + ( dir / "l.cnf" ) ).code == 1 );
    std::ifstream in( dir / "l.cnf" );
    std::stringstream text;
    text << in.rdbuf();
    CHECK( text.str().find( "\np cnf " ) != std::string::npos );
}

TEST_CASE( "generated files" )
{
    scratch_dir dir;
    REQUIRE( railock_cli( "gen ladder --stations 10 -o " + ( dir / "l10.json" ) ).code == 0 );
    CHECK( read_json( dir / "l10.json" )[ "infrastructure" ][ "partial_routes" ].size() == 80 );

    REQUIRE( railock_cli( "gen corridor --routes 9 --train-len 2.25 -o " + ( dir / "c.json" ) ).code == 0 );
    CHECK( load_instance( dir / "c.json" ) == testing::corridor_long_trains() );

    const auto printed = railock_cli( "gen junction" );
    CHECK( printed.code == 0 );
    CHECK( parse_instance( printed.out ).train_count() == 2 );

    CHECK( railock_cli( "gen ladder --stations 0" ).code == 64 );
    CHECK( railock_cli( "gen corridor --routes 1" ).code == 64 );
    CHECK( railock_cli( "gen roundabout" ).code == 64 );
}

TEST_CASE( "bench" )
{
    scratch_dir dir;
    fs::create_directories( dir / "empty" );
    auto r = railock_cli( "bench " + ( dir / "empty" ) );
    CHECK( r.code == 0 );
    CHECK( r.out.find( "instance" ) != std::string::npos );
    CHECK( std::count( r.out.begin(), r.out.end(), '\n' ) == 1 );

    fs::create_directories( dir / "set" );
    REQUIRE( railock_cli( "gen ladder --stations 2 -o " + ( dir / "set/ladder2.json" ) ).code == 0 );
    REQUIRE( railock_cli( "gen junction -o " + ( dir / "set/junction.json" ) ).code == 0 );
    r = railock_cli( "bench " + ( dir / "set" ) + " --json --jobs 2" );
    CHECK( r.code == 0 );
    const auto rows = json::parse( r.out );
    REQUIRE( rows.size() == 2 );
    CHECK( rows[ 0 ][ "instance" ] == "junction" );
    CHECK( rows[ 0 ][ "result" ] == "LIVE" );
    CHECK( rows[ 1 ][ "result" ] == "DEAD" );
    CHECK( rows[ 1 ][ "algorithms" ][ "1" ][ "steps" ] == 10 );
    CHECK( rows[ 1 ][ "algorithms" ][ "2" ][ "steps" ] == 7 );
    CHECK( rows[ 1 ][ "algorithms" ][ "3" ][ "steps" ] == 3 );

    fs::create_directories( dir / "big" );
    REQUIRE( railock_cli( "gen ladder --stations 100 -o " + ( dir / "big/ladder100.json" ) ).code == 0 );
    r = railock_cli( "bench " + ( dir / "big" ) + " --algorithms 1 --timeout-s 0.001" );
    CHECK( r.code == 0 );
    CHECK( r.out.find( "UNKNOWN" ) != std::string::npos );
    CHECK( r.out.find( ">limit" ) != std::string::npos );

    CHECK( railock_cli( "bench " + ( dir / "nowhere" ) ).code == 64 );
}
