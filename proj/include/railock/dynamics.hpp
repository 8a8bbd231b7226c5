#pragma once

#include "railock/model.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace railock
{

struct sim_state
{
    std::vector< std::optional< train_index > > occ; // per partial route
    std::vector< bool > finished;                    // per train
    std::vector< bool > present;                     // per train

    friend bool operator==( const sim_state&, const sim_state& ) = default;
};

struct train_action
{
    train_index train = 0;
    eroute_index route = 0;

    friend bool operator==( const train_action&, const train_action& ) = default;
    friend auto operator<=>( const train_action&, const train_action& ) = default;
};

class illegal_action : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Initial positions exactly as given, before any release.
sim_state raw_initial_state( const problem_instance& inst );
// Initial positions after the forced releases have been applied.
sim_state initial_state( const problem_instance& inst );

// Occupied routes of train t in chain order, tail first. Empty if absent.
std::vector< route_index > train_chain( const problem_instance& inst, const sim_state& s, train_index t );
std::optional< route_index > train_head( const problem_instance& inst, const sim_state& s, train_index t );

// Same arithmetic as the encoder: true if exit(r) is null or length is used
// up, otherwise some occupied successor of r (held by t) is itself freeable
// with length - length(r).
bool freeable( const problem_instance& inst, const sim_state& s, train_index t, route_index r, double length );

// Releases, in one simultaneous pass, every route whose holder makes it
// freeable. A train left without routes leaves the model.
void release_freeable( const problem_instance& inst, sim_state& s );

std::vector< train_action > legal_actions( const problem_instance& inst, const sim_state& s );
bool is_legal( const problem_instance& inst, const sim_state& s, train_action a );

// Allocates e to t (throws illegal_action), marks finished trains, then
// applies the forced releases.
sim_state apply_action( const problem_instance& inst, const sim_state& s, train_action a );

// One transition of the step semantics: release what is freeable in `s`,
// then allocate `actions` in order. Used to replay parallel plans.
sim_state execute_step( const problem_instance& inst, const sim_state& s,
                        const std::vector< train_action >& actions );

bool all_finished( const sim_state& s );

// Turns a live state back into a problem instance: chains become initial
// routes, trains that left the model are dropped.
problem_instance instance_from_state( const problem_instance& inst, const sim_state& s );

nlohmann::json state_to_json( const problem_instance& inst, const sim_state& s );
nlohmann::json action_to_json( const problem_instance& inst, train_action a );
std::vector< nlohmann::json > actions_to_json( const problem_instance& inst,
                                               const std::vector< train_action >& actions );

} // namespace railock
