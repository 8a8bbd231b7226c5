#include "fixtures.hpp"

#include "railock/generator.hpp"
#include "railock/instance_io.hpp"

#include <doctest.h>

#include <filesystem>

using namespace railock;
using namespace railock::testing;
using nlohmann::json;

namespace
{

instance_error_kind parse_error( const std::string& text )
{
    try
    {
        parse_instance( text );
    }
    catch ( const instance_error& e )
    {
        return e.kind();
    }
    FAIL( "expected an instance_error" );
    return instance_error_kind::invalid_value;
}

const char* small_doc = R"({
  "infrastructure": {
    "delimiters": ["a", "b"],
    "partial_routes": [
      {"id": "r1", "length": 50.0, "entry": null, "exit": "a"},
      {"id": "r2", "length": 30.0, "entry": "a", "exit": "b"},
      {"id": "r3", "length": 20.0, "entry": "b", "exit": null}
    ],
    "elementary_routes": [ {"id": "AB", "parts": ["r2", "r3"]}, {"id": "r1", "parts": ["r1"]} ],
    "conflicts": [ ["r3", "r1"] ]
  },
  "trains": [ {"id": "t1", "length": 40.0, "initial": ["r1"], "final": ["r3"]} ]
})";

} // namespace

TEST_CASE( "parse a small instance" )
{
    const auto inst = parse_instance( small_doc );
    CHECK( inst.infra().route_count() == 3 );
    CHECK( inst.infra().eroute_count() == 2 );
    CHECK( inst.infra().eroute( *inst.infra().find_eroute( "AB" ) ).parts.size() == 2 );
    CHECK( inst.infra().conflicts( route_id( inst, "r1" ), route_id( inst, "r3" ) ) );
    CHECK( inst.train( 0 ).length == doctest::Approx( 40.0 ) );
}

TEST_CASE( "round trip of the long-train corridor" )
{
    const auto inst = corridor_long_trains();
    CHECK( parse_instance( serialize_instance( inst ) ) == inst );
}

TEST_CASE( "round trip of a generated ladder" )
{
    const auto inst = gen_ladder( 2 );
    CHECK( parse_instance( serialize_instance( inst ) ) == inst );
}

TEST_CASE( "conflicts are written once per pair" )
{
    auto doc = json::parse( small_doc );
    doc[ "infrastructure" ][ "conflicts" ] = json::array( { { "r3", "r1" }, { "r1", "r3" } } );
    const auto inst = instance_from_json( doc );
    const auto out = instance_to_json( inst );
    CHECK( out[ "infrastructure" ][ "conflicts" ].size() == 1 );
    CHECK( instance_from_json( out ) == inst );
}

TEST_CASE( "malformed documents" )
{
    CHECK( parse_error( "{" ) == instance_error_kind::malformed_syntax );
    CHECK( parse_error( "[]" ) == instance_error_kind::malformed_syntax );
    CHECK( parse_error( R"({"infrastructure": {}})" ) == instance_error_kind::malformed_syntax );

    auto doc = json::parse( small_doc );
    doc[ "trains" ][ 0 ][ "length" ] = "long";
    CHECK( parse_error( doc.dump() ) == instance_error_kind::malformed_syntax );

    doc = json::parse( small_doc );
    doc[ "infrastructure" ][ "conflicts" ] = json::array( { json::array( { "r1" } ) } );
    CHECK( parse_error( doc.dump() ) == instance_error_kind::malformed_syntax );
}

TEST_CASE( "semantic errors keep their kind through the parser" )
{
    auto doc = json::parse( small_doc );
    doc[ "infrastructure" ][ "partial_routes" ][ 1 ][ "entry" ] = "nowhere";
    CHECK( parse_error( doc.dump() ) == instance_error_kind::unknown_reference );
}

TEST_CASE( "save and load through a file" )
{
    const auto path = std::filesystem::temp_directory_path() / "railock_io_test.json";
    const auto inst = gen_junction();
    save_instance( inst, path );
    CHECK( load_instance( path ) == inst );
    std::filesystem::remove( path );
}

TEST_CASE( "missing file" )
{
    CHECK_THROWS( load_instance( "/nonexistent/railock/instance.json" ) );
}
