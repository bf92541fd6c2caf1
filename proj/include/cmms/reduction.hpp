#ifndef CMMS_REDUCTION_HPP
#define CMMS_REDUCTION_HPP

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "cmms/instance.hpp"
#include "cmms/oracle.hpp"

// Turns a solver for connected graphs with bounded agents into an allocator
// for arbitrary agents: peel heavy vertices, then hand each component of
// what remains to the agents with the most witness bundles inside it.

namespace cmms::reduction {

using Targets = std::map<AgentId, Value>;

struct HeavyAssignment {
    VertexIndex vertex = 0;
    AgentId agent = 0;
};

struct ReductionState {
    std::vector<HeavyAssignment> heavy;   // X in peel order
    std::vector<AgentId> residual_agents; // agents with a positive target left after peeling
    std::vector<AgentId> zero_target_agents;
    std::vector<VertexList> components;   // of G - X, parent indices
    // f(i, j): witness bundles of agent i lying inside component j.
    std::map<std::pair<AgentId, int>, int> f;
};

/// Greedy maximal heavy set. Repeatedly the smallest-id unmatched agent that
/// values some free vertex at >= alpha * target takes her most valuable such
/// vertex (ties: smallest index). Agents with target 0 never peel.
/// `packings`, when given, fill in f for the resulting components.
ReductionState peel_heavy_vertices(const Instance& inst, const Value& alpha, const Targets& targets,
                                   const std::map<AgentId, Packing>* packings = nullptr);

/// Largest p (1-based) with sorted_f[p] >= p; 0 if none. Input nonincreasing.
int compute_kj(const std::vector<int>& sorted_f);

/// Called once per component with the induced sub-instance (ids preserved,
/// indices local) restricted to the chosen agents, and their targets. Must
/// give each agent a connected bundle worth >= alpha * target.
using ConnectedSolver = std::function<Allocation(const Instance& sub, const Targets& targets)>;

struct ComponentStep {
    int component = 0;
    int kj = 0;
    std::vector<AgentId> agents; // I_j
};

struct ReductionTrace {
    ReductionState state;
    std::vector<ComponentStep> steps;
    int kj_sum() const;
};

struct ReductionResult {
    Allocation allocation;
    ReductionTrace trace;
};

/// `packings[i]` must hold disjoint connected bundles of G, at least n of
/// them for agents with a positive target, each worth >= targets[i] to i.
/// Per-agent ratios in the result are taken against `targets`.
/// Throws InternalGuaranteeViolation if an agent is left unserved or the
/// solver under-delivers.
ReductionResult allocate_reduction(const Instance& inst, const Value& alpha, const Targets& targets,
                                   const std::map<AgentId, Packing>& packings, const ConnectedSolver& solver);

/// Targets and packings from the oracle's pmms for every agent.
ReductionResult allocate_reduction(const Instance& inst, const Value& alpha, const ConnectedSolver& solver,
                                   const oracle::OracleConfig& config = {});

/// Oracle pmms records turned into reduction inputs.
std::pair<Targets, std::map<AgentId, Packing>> targets_from_records(const std::vector<oracle::MmsRecord>& records);

} // namespace cmms::reduction

#endif // CMMS_REDUCTION_HPP
