#pragma once

#include "railock/detector.hpp"
#include "railock/dynamics.hpp"
#include "railock/model.hpp"

#include <json.hpp>

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace httplib
{
class Server;
}

namespace railock::api
{

struct service_options
{
    std::chrono::duration< double > verdict_timeout{ 10.0 };
    std::chrono::seconds idle_expiry{ 3600 };
    std::string cors_origin = "*";
    sat::backend backend = sat::backend::cadical;
};

struct response
{
    int status = 200;
    nlohmann::json body;
};

// Dispatch sandbox sessions. Every method is safe to call concurrently;
// requests on one session are serialized.
class service
{
public:
    explicit service( service_options opts = {} );

    response create_session( const std::string& body );
    response apply_action( const std::string& id, const std::string& body );
    response get_session( const std::string& id );
    response undo( const std::string& id );

    std::size_t session_count();
    const service_options& options() const { return _opts; }

private:
    struct snapshot
    {
        sim_state state;
        nlohmann::json verdict;
    };

    struct session
    {
        std::mutex lock;
        std::string id;
        problem_instance instance;
        nlohmann::json instance_doc;
        sim_state state;
        nlohmann::json verdict;
        std::vector< train_action > history;
        std::vector< snapshot > undo_stack;
        std::chrono::steady_clock::time_point touched;
    };

    std::shared_ptr< session > find( const std::string& id );
    void expire_idle();
    nlohmann::json evaluate( const problem_instance& inst, const sim_state& s ) const;
    nlohmann::json view( const session& s, bool full ) const;
    std::string next_id();

    service_options _opts;
    std::mutex _lock;
    std::map< std::string, std::shared_ptr< session > > _sessions;
    std::uint64_t _counter = 0;
};

// Routes, CORS headers and preflight handling for `svc` on `server`.
void install_routes( httplib::Server& server, service& svc );

} // namespace railock::api
