#include "cmms/carve.hpp"

#include <algorithm>
#include <set>

#include "cmms/errors.hpp"

namespace cmms {

CarveResult greedy_prefix_carve(const std::vector<VertexIndex>& order, const std::vector<AgentId>& pool,
                                const std::map<AgentId, Value>& thresholds, const std::vector<Agent>& agents,
                                bool reserve_last) {
    std::map<AgentId, const Agent*> by_id;
    for (const auto& a : agents) by_id[a.id] = &a;
    std::set<AgentId> active;
    for (AgentId id : pool) {
        if (!by_id.count(id)) throw InvalidInput("no utilities for agent " + std::to_string(id));
        if (!thresholds.count(id)) throw InvalidInput("no threshold for agent " + std::to_string(id));
        active.insert(id);
    }

    CarveResult out;
    const std::size_t limit = reserve_last && !order.empty() ? order.size() - 1 : order.size();
    std::map<AgentId, Value> acc;
    std::size_t start = 0, pos = 0;
    for (; pos < limit && !active.empty(); ++pos) {
        AgentId winner = 0;
        for (AgentId id : active) {
            acc[id] += (*by_id[id])(order[pos]);
            if (!winner && acc[id] >= thresholds.at(id)) winner = id;
        }
        if (!winner) continue;
        out.assignments.push_back({winner, {order.begin() + start, order.begin() + pos + 1}});
        out.served.push_back(winner);
        active.erase(winner);
        acc.clear();
        start = pos + 1;
    }
    out.leftover.assign(order.begin() + start, order.end());
    return out;
}

} // namespace cmms
