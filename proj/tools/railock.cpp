#include "railock/api.hpp"
#include "railock/detector.hpp"
#include "railock/generator.hpp"
#include "railock/instance_io.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace railock;

namespace
{

constexpr int exit_live = 0;
constexpr int exit_dead = 1;
constexpr int exit_unknown = 2;
constexpr int exit_usage = 64;
constexpr int exit_bad_instance = 65;
constexpr int exit_software = 70;

int exit_code_of( verdict_status s )
{
    switch ( s )
    {
    case verdict_status::live: return exit_live;
    case verdict_status::dead: return exit_dead;
    case verdict_status::unknown: return exit_unknown;
    }
    return exit_unknown;
}

std::string upper( std::string s )
{
    std::transform( s.begin(), s.end(), s.begin(), []( unsigned char c ) { return std::toupper( c ); } );
    return s;
}

sat::backend backend_or_exit()
{
    try
    {
        return sat::backend_from_env();
    }
    catch ( const std::invalid_argument& e )
    {
        std::cerr << "railock: " << e.what() << "\n";
        std::exit( exit_usage );
    }
}

struct check_args
{
    std::string path;
    int algorithm = 3;
    double timeout_s = 60.0;
    std::optional< int > max_steps;
    std::string plan_out;
    std::string cnf_out;
    bool json_output = false;
};

int run_check( const check_args& args )
{
    problem_instance inst;
    try
    {
        inst = load_instance( args.path );
    }
    catch ( const std::exception& e )
    {
        std::cerr << "railock: " << args.path << ": " << e.what() << "\n";
        return exit_bad_instance;
    }
    for ( const auto& w : inst.warnings() )
        std::cerr << "railock: warning: " << w << "\n";

    detect_options opts;
    opts.algorithm = args.algorithm;
    opts.timeout = std::chrono::duration< double >( args.timeout_s );
    opts.step_cap = args.max_steps;
    opts.backend = backend_or_exit();

    verdict v;
    try
    {
        v = detect( inst, opts );
    }
    catch ( const std::exception& e )
    {
        std::cerr << "railock: " << e.what() << "\n";
        return exit_software;
    }

    if ( args.json_output )
        std::cout << verdict_to_json( inst, v, false ).dump() << "\n";
    else
        std::printf( "%s steps=%d time=%.3fs\n", upper( to_string( v.status ) ).c_str(), v.steps_used, v.elapsed_s );

    if ( !args.plan_out.empty() && v.found_plan )
    {
        std::ofstream out( args.plan_out );
        out << plan_to_json( inst, *v.found_plan ).dump( 2 ) << "\n";
        if ( !out )
        {
            std::cerr << "railock: cannot write " << args.plan_out << "\n";
            return exit_software;
        }
    }

    if ( !args.cnf_out.empty() )
    {
        sat::cnf_formula cnf;
        encoding_session session( inst, cnf,
                                  { .with_progress = args.algorithm >= 2, .with_maximal_progress = args.algorithm >= 3 } );
        for ( int i = 0; i < std::max( v.steps_used, 1 ); ++i )
            session.extend_step();
        std::ofstream out( args.cnf_out );
        out << to_dimacs( cnf, session );
    }

    return exit_code_of( v.status );
}

struct gen_args
{
    std::string family;
    int stations = 2;
    int routes = 9;
    double train_len = -1.0;
    double right_train_len = -1.0;
    double track_len = 1.0;
    std::optional< int > offset;
    std::string out;
};

int run_gen( const gen_args& args )
{
    problem_instance inst;
    try
    {
        if ( args.family == "ladder" )
            inst = gen_ladder( args.stations, args.train_len > 0 ? args.train_len : 1.5, args.track_len );
        else if ( args.family == "corridor" )
        {
            const double left = args.train_len > 0 ? args.train_len : 2.25;
            inst = gen_corridor( args.routes, left, args.right_train_len >= 0 ? args.right_train_len : left, args.offset );
        }
        else if ( args.family == "junction" )
            inst = gen_junction();
        else
            inst = gen_four_station();
    }
    catch ( const invalid_parameter& e )
    {
        std::cerr << "railock: " << e.what() << "\n";
        return exit_usage;
    }

    if ( args.out.empty() )
    {
        std::cout << serialize_instance( inst );
        return 0;
    }
    try
    {
        save_instance( inst, args.out );
    }
    catch ( const std::exception& e )
    {
        std::cerr << "railock: " << e.what() << "\n";
        return exit_software;
    }
    return 0;
}

struct bench_args
{
    std::string dir;
    std::vector< int > algorithms{ 1, 2, 3 };
    double timeout_s = 60.0;
    unsigned jobs = 1;
    bool json_output = false;
};

struct bench_row
{
    std::string name;
    std::string error;
    std::size_t routes = 0;
    std::size_t trains = 0;
    std::vector< verdict > verdicts;
};

std::string row_result( const bench_row& row )
{
    if ( !row.error.empty() )
        return "ERROR";
    for ( const auto& v : row.verdicts )
        if ( v.status != verdict_status::unknown )
            return upper( to_string( v.status ) );
    return "UNKNOWN";
}

int run_bench( const bench_args& args )
{
    std::error_code ec;
    if ( !fs::is_directory( args.dir, ec ) )
    {
        std::cerr << "railock: " << args.dir << " is not a directory\n";
        return exit_usage;
    }
    std::vector< fs::path > files;
    for ( const auto& entry : fs::directory_iterator( args.dir ) )
        if ( entry.is_regular_file() && entry.path().extension() == ".json" )
            files.push_back( entry.path() );
    std::sort( files.begin(), files.end() );

    const auto backend = backend_or_exit();
    std::vector< bench_row > rows( files.size() );
    std::atomic< std::size_t > next{ 0 };
    const auto worker = [ & ] {
        for ( std::size_t k = next++; k < files.size(); k = next++ )
        {
            auto& row = rows[ k ];
            row.name = files[ k ].stem().string();
            try
            {
                const auto inst = load_instance( files[ k ] );
                row.routes = inst.infra().route_count();
                row.trains = inst.train_count();
                for ( int alg : args.algorithms )
                {
                    detect_options opts;
                    opts.algorithm = alg;
                    opts.timeout = std::chrono::duration< double >( args.timeout_s );
                    opts.backend = backend;
                    row.verdicts.push_back( detect( inst, opts ) );
                }
            }
            catch ( const std::exception& e )
            {
                row.error = e.what();
            }
        }
    };
    std::vector< std::thread > pool;
    for ( unsigned j = 0; j < std::max( 1u, args.jobs ); ++j )
        pool.emplace_back( worker );
    for ( auto& th : pool )
        th.join();

    bool any_error = false;
    if ( args.json_output )
    {
        json out = json::array();
        for ( const auto& row : rows )
        {
            json r = { { "instance", row.name },
                       { "result", row_result( row ) },
                       { "n_routes", row.routes },
                       { "n_trains", row.trains } };
            if ( !row.error.empty() )
                r[ "error" ] = row.error;
            json algs = json::object();
            for ( std::size_t a = 0; a < row.verdicts.size(); ++a )
                algs[ std::to_string( args.algorithms[ a ] ) ]
                    = { { "status", to_string( row.verdicts[ a ].status ) },
                        { "steps", row.verdicts[ a ].steps_used },
                        { "time_s", row.verdicts[ a ].elapsed_s } };
            r[ "algorithms" ] = algs;
            out.push_back( r );
            any_error = any_error || !row.error.empty();
        }
        std::cout << out.dump( 2 ) << "\n";
        return any_error ? 1 : 0;
    }

    std::printf( "%-24s %-8s %8s %8s", "instance", "result", "routes", "trains" );
    for ( int alg : args.algorithms )
        std::printf( "  A%d steps %8s", alg, "time" );
    std::printf( "\n" );
    for ( const auto& row : rows )
    {
        std::printf( "%-24s %-8s %8zu %8zu", row.name.c_str(), row_result( row ).c_str(), row.routes, row.trains );
        for ( const auto& v : row.verdicts )
        {
            if ( v.status == verdict_status::unknown )
                std::printf( "  %8d %8s", v.steps_used, ">limit" );
            else
                std::printf( "  %8d %8.2f", v.steps_used, v.elapsed_s );
        }
        if ( !row.error.empty() )
        {
            std::printf( "  error: %s", row.error.c_str() );
            any_error = true;
        }
        std::printf( "\n" );
    }
    return any_error ? 1 : 0;
}

struct serve_args
{
    std::string host = "127.0.0.1";
    int port = 8080;
    double timeout_s = 10.0;
    std::string cors_origin = "*";
};

int run_serve( const serve_args& args )
{
    api::service_options opts;
    opts.verdict_timeout = std::chrono::duration< double >( args.timeout_s );
    opts.cors_origin = args.cors_origin;
    opts.backend = backend_or_exit();
    api::service svc( opts );
    httplib::Server server;
    api::install_routes( server, svc );
    std::cerr << "railock: listening on " << args.host << ":" << args.port << "\n";
    if ( !server.listen( args.host, args.port ) )
    {
        std::cerr << "railock: cannot listen on " << args.host << ":" << args.port << "\n";
        return exit_software;
    }
    return 0;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Railway deadlock detection" };
    app.require_subcommand( 1 );

    check_args check;
    auto* check_cmd = app.add_subcommand( "check", "Decide whether an instance is live or bound for deadlock" );
    check_cmd->add_option( "instance", check.path, "Instance file" )->required();
    check_cmd->add_option( "--algorithm", check.algorithm, "1, 2 or 3" )->check( CLI::Range( 1, 3 ) );
    check_cmd->add_option( "--timeout-s", check.timeout_s, "Wall clock limit in seconds" )->check( CLI::NonNegativeNumber );
    check_cmd->add_option( "--max-steps", check.max_steps, "Step cap" )->check( CLI::PositiveNumber );
    check_cmd->add_option( "--plan-out", check.plan_out, "Write the plan of a LIVE verdict here" );
    check_cmd->add_option( "--cnf-out", check.cnf_out, "Write the final formula in DIMACS format" );
    check_cmd->add_flag( "--json", check.json_output, "Structured output" );

    gen_args gen;
    auto* gen_cmd = app.add_subcommand( "gen", "Generate an instance" );
    gen_cmd->add_option( "family", gen.family, "ladder, corridor, junction or four-station" )
        ->required()
        ->check( CLI::IsMember( { "ladder", "corridor", "junction", "four-station" } ) );
    gen_cmd->add_option( "--stations", gen.stations, "Ladder stations" );
    gen_cmd->add_option( "--routes", gen.routes, "Corridor routes" );
    gen_cmd->add_option( "--train-len", gen.train_len, "Train length (corridor: left train)" );
    gen_cmd->add_option( "--right-train-len", gen.right_train_len, "Corridor right train length, 0 for none" );
    gen_cmd->add_option( "--track-len", gen.track_len, "Ladder route length" );
    gen_cmd->add_option( "--offset", gen.offset, "Corridor distance of the trains from the boundary" );
    gen_cmd->add_option( "-o,--output", gen.out, "Output file (default stdout)" );

    bench_args bench;
    auto* bench_cmd = app.add_subcommand( "bench", "Run the algorithms over a directory of instances" );
    bench_cmd->add_option( "dir", bench.dir, "Directory of .json instances" )->required();
    bench_cmd->add_option( "--algorithms", bench.algorithms, "Comma separated" )
        ->delimiter( ',' )
        ->check( CLI::Range( 1, 3 ) );
    bench_cmd->add_option( "--timeout-s", bench.timeout_s, "Per run limit in seconds" )->check( CLI::NonNegativeNumber );
    bench_cmd->add_option( "--jobs", bench.jobs, "Parallel instances" );
    bench_cmd->add_flag( "--json", bench.json_output, "Machine readable rows" );

    serve_args serve;
    auto* serve_cmd = app.add_subcommand( "serve", "Run the dispatch sandbox HTTP service" );
    serve_cmd->add_option( "--host", serve.host );
    serve_cmd->add_option( "--port", serve.port );
    serve_cmd->add_option( "--timeout-s", serve.timeout_s, "Verdict deadline per request" );
    serve_cmd->add_option( "--cors-origin", serve.cors_origin );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        const int code = app.exit( e );
        return code == 0 ? 0 : exit_usage;
    }

    if ( *check_cmd )
        return run_check( check );
    if ( *gen_cmd )
        return run_gen( gen );
    if ( *bench_cmd )
        return run_bench( bench );
    return run_serve( serve );
}
