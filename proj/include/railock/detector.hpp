#pragma once

#include "railock/dynamics.hpp"
#include "railock/encoder.hpp"
#include "railock/model.hpp"
#include "railock/sat.hpp"

#include <json.hpp>

#include <chrono>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace railock
{

class internal_inconsistency : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

enum class verdict_status
{
    live,
    dead,
    unknown,
};

const char* to_string( verdict_status s );

struct plan_action
{
    int step = 0;
    train_action action;

    friend bool operator==( const plan_action&, const plan_action& ) = default;
};

struct plan
{
    std::vector< plan_action > actions;

    int step_count() const { return actions.empty() ? 0 : actions.back().step; }
    // Actions of one step, in plan order.
    std::vector< train_action > at_step( int step ) const;

    friend bool operator==( const plan&, const plan& ) = default;
};

struct verdict
{
    verdict_status status = verdict_status::unknown;
    int steps_used = 0;
    std::optional< plan > found_plan;
    double elapsed_s = 0.0;
    int algorithm = 3;
};

struct detect_options
{
    int algorithm = 3;
    std::optional< std::chrono::duration< double > > timeout;
    // Bound k for algorithm 1 (default U); for algorithms 2 and 3 reaching
    // the cap without a decision gives UNKNOWN.
    std::optional< int > step_cap;
    sat::backend backend = sat::backend::cadical;
};

// Sum over trains of the longest path, counted in elementary routes, from
// the train's head to one of its final routes.
int compute_upper_bound( const problem_instance& inst );

// Sum over trains of the longest path in elementary routes from the head to
// any route. Bounds the number of transitions that can each contain an
// allocation.
int compute_progress_bound( const problem_instance& inst );

verdict detect( const problem_instance& inst, const detect_options& opts = {} );

// Decodes steps 1..steps of a satisfying assignment. Within a step, trains
// come in id order and each train's routes in route graph order.
plan extract_plan( const encoding_session& session, const sat::solver& solver, int steps );

// Occupancy of every step 0..steps of a satisfying assignment.
std::vector< sim_state > decode_states( const encoding_session& session, const sat::solver& solver, int steps );

// Replays the plan step by step from the initial positions. Returns an
// empty string if it runs unblocked and ends with every train finished,
// otherwise a description of the problem.
std::string validate_plan( const problem_instance& inst, const plan& p );

// Nodes are (train id, elementary route id); the trains' initial elementary
// routes are included as the first node of each train's chain. Edges are
// the transitive reduction of the order generated by each train's path and
// by conflicting (or shared) routes used by different trains.
struct partial_order
{
    using node = std::pair< std::string, std::string >;

    std::set< node > nodes;
    std::set< std::pair< node, node > > edges;

    friend bool operator==( const partial_order&, const partial_order& ) = default;
};

partial_order plan_partial_order( const problem_instance& inst, const plan& p );

nlohmann::json plan_to_json( const problem_instance& inst, const plan& p );
plan plan_from_json( const problem_instance& inst, const nlohmann::json& doc );
nlohmann::json verdict_to_json( const problem_instance& inst, const verdict& v, bool with_plan = true );

} // namespace railock
