#include "railock/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace railock
{

using nlohmann::json;

namespace
{

[[noreturn]] void malformed( const std::string& msg )
{
    throw instance_error( instance_error_kind::malformed_syntax, msg );
}

const json& member( const json& obj, const char* key, const char* context )
{
    if ( !obj.is_object() )
        malformed( std::string( context ) + " must be an object" );
    auto it = obj.find( key );
    if ( it == obj.end() )
        malformed( std::string( context ) + " is missing '" + key + "'" );
    return *it;
}

std::string string_of( const json& v, const char* context )
{
    if ( !v.is_string() )
        malformed( std::string( context ) + " must be a string" );
    return v.get< std::string >();
}

double number_of( const json& v, const char* context )
{
    if ( !v.is_number() )
        malformed( std::string( context ) + " must be a number" );
    return v.get< double >();
}

const json& array_of( const json& v, const char* context )
{
    if ( !v.is_array() )
        malformed( std::string( context ) + " must be an array" );
    return v;
}

std::vector< std::string > strings_of( const json& v, const char* context )
{
    std::vector< std::string > out;
    for ( const auto& s : array_of( v, context ) )
        out.push_back( string_of( s, context ) );
    return out;
}

std::optional< std::string > optional_string( const json& obj, const char* key, const char* context )
{
    auto it = obj.find( key );
    if ( it == obj.end() || it->is_null() )
        return std::nullopt;
    return string_of( *it, context );
}

} // namespace

problem_instance instance_from_json( const json& doc )
{
    const auto& infra_doc = member( doc, "infrastructure", "instance" );

    infrastructure_description desc;
    desc.delimiters = strings_of( member( infra_doc, "delimiters", "infrastructure" ), "delimiters" );

    for ( const auto& r : array_of( member( infra_doc, "partial_routes", "infrastructure" ),
                                    "partial_routes" ) )
    {
        desc.partial_routes.push_back( {
            string_of( member( r, "id", "partial route" ), "partial route id" ),
            number_of( member( r, "length", "partial route" ), "partial route length" ),
            optional_string( r, "entry", "partial route entry" ),
            optional_string( r, "exit", "partial route exit" ),
        } );
    }

    for ( const auto& e : array_of( member( infra_doc, "elementary_routes", "infrastructure" ),
                                    "elementary_routes" ) )
    {
        desc.elementary_routes.push_back( {
            string_of( member( e, "id", "elementary route" ), "elementary route id" ),
            strings_of( member( e, "parts", "elementary route" ), "elementary route parts" ),
        } );
    }

    if ( auto it = infra_doc.find( "conflicts" ); it != infra_doc.end() )
    {
        for ( const auto& pair : array_of( *it, "conflicts" ) )
        {
            const auto ids = strings_of( pair, "conflict" );
            if ( ids.size() != 2 )
                malformed( "each conflict must list exactly two routes" );
            desc.conflicts.emplace_back( ids[ 0 ], ids[ 1 ] );
        }
    }

    std::vector< train_description > trains;
    for ( const auto& t : array_of( member( doc, "trains", "instance" ), "trains" ) )
    {
        trains.push_back( {
            string_of( member( t, "id", "train" ), "train id" ),
            number_of( member( t, "length", "train" ), "train length" ),
            strings_of( member( t, "initial", "train" ), "train initial" ),
            strings_of( member( t, "final", "train" ), "train final" ),
        } );
    }

    return problem_instance::build( infrastructure::build( desc ), trains );
}

problem_instance parse_instance( std::string_view text )
{
    json doc;
    try
    {
        doc = json::parse( text );
    }
    catch ( const json::parse_error& e )
    {
        malformed( e.what() );
    }
    return instance_from_json( doc );
}

problem_instance load_instance( const std::filesystem::path& path )
{
    std::ifstream in( path );
    if ( !in )
        throw std::runtime_error( "cannot open '" + path.string() + "'" );
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance( buffer.str() );
}

json instance_to_json( const problem_instance& inst )
{
    const auto desc = inst.infra().describe();

    json routes = json::array();
    for ( const auto& r : desc.partial_routes )
    {
        routes.push_back( {
            { "id", r.id },
            { "length", r.length },
            { "entry", r.entry ? json( *r.entry ) : json( nullptr ) },
            { "exit", r.exit ? json( *r.exit ) : json( nullptr ) },
        } );
    }

    json eroutes = json::array();
    for ( const auto& e : desc.elementary_routes )
        eroutes.push_back( { { "id", e.id }, { "parts", e.parts } } );

    json conflicts = json::array();
    for ( const auto& [ a, b ] : desc.conflicts )
        conflicts.push_back( { a, b } );

    json trains = json::array();
    for ( const auto& t : inst.describe_trains() )
    {
        trains.push_back( {
            { "id", t.id },
            { "length", t.length },
            { "initial", t.initial },
            { "final", t.final },
        } );
    }

    return {
        { "infrastructure",
          {
              { "delimiters", desc.delimiters },
              { "partial_routes", routes },
              { "elementary_routes", eroutes },
              { "conflicts", conflicts },
          } },
        { "trains", trains },
    };
}

std::string serialize_instance( const problem_instance& inst )
{
    return instance_to_json( inst ).dump( 2 ) + "\n";
}

void save_instance( const problem_instance& inst, const std::filesystem::path& path )
{
    std::ofstream out( path );
    if ( !out )
        throw std::runtime_error( "cannot write '" + path.string() + "'" );
    out << serialize_instance( inst );
}

} // namespace railock
