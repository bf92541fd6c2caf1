#include "cmms/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cmms/errors.hpp"
#include "cmms/graphs.hpp"

namespace cmms::verify {

Certificate check_allocation(const Instance& inst, const Allocation& alloc, const Value& alpha,
                             const std::vector<oracle::MmsRecord>& mms_records) {
    Certificate cert;
    cert.alpha_target = alpha;
    const GoodsGraph& g = inst.graph;
    auto fail = [&](std::string note) {
        cert.structural_ok = false;
        cert.notes.push_back(std::move(note));
    };

    std::map<AgentId, Value> mms;
    for (const auto& r : mms_records) mms[r.agent] = r.value;

    std::map<AgentId, int> owners;
    std::vector<int> owner_of(g.size(), 0);
    for (const auto& b : alloc.packing.bundles) {
        if (b.agent == 0) continue;
        if (owners[b.agent]++ > 0) fail("agent " + std::to_string(b.agent) + " holds more than one bundle");
        bool in_range = true;
        for (std::size_t i = 0; i < b.vertices.size(); ++i) {
            const VertexIndex v = b.vertices[i];
            if (v < 0 || v >= g.size() || (i > 0 && b.vertices[i - 1] >= v)) {
                fail("bundle of agent " + std::to_string(b.agent) + " is not a sorted vertex set of the graph");
                in_range = false;
                break;
            }
            if (owner_of[v] != 0)
                fail("vertex '" + g.id(v) + "' is in the bundles of agents " + std::to_string(owner_of[v]) + " and " +
                     std::to_string(b.agent));
            owner_of[v] = b.agent;
        }
        if (in_range && !graphs::is_connected_subset(g, b.vertices))
            fail("bundle of agent " + std::to_string(b.agent) + " is not connected");
    }

    bool first = true;
    for (const auto& a : inst.agents) {
        AgentLine line;
        line.agent = a.id;
        if (!owners.count(a.id)) fail("agent " + std::to_string(a.id) + " is missing from the allocation");
        line.bundle = alloc.packing.bundle_of(a.id);
        auto m = mms.find(a.id);
        if (m == mms.end()) throw InvalidInput("no mms record for agent " + std::to_string(a.id));
        line.mms = m->second;
        bool valid = true;
        for (VertexIndex v : line.bundle) valid = valid && v >= 0 && v < g.size();
        line.value = valid ? utility_of_set(a, line.bundle) : Value(0);
        line.ratio = ratio_or_one(line.value, line.mms);
        cert.min_ratio = first ? line.ratio : min(cert.min_ratio, line.ratio);
        first = false;
        if (line.ratio < alpha)
            cert.notes.push_back("agent " + std::to_string(a.id) + " has ratio " + line.ratio.str() + " < " + alpha.str());
        cert.per_agent.push_back(std::move(line));
    }
    for (const auto& [id, count] : owners) {
        (void)count;
        if (std::none_of(inst.agents.begin(), inst.agents.end(), [&](const Agent& a) { return a.id == id; }))
            fail("bundle for unknown agent " + std::to_string(id));
    }
    return cert;
}

Value empirical_alpha(const Instance& inst, const Allocation& alloc, const std::vector<oracle::MmsRecord>& mms_records) {
    auto cert = check_allocation(inst, alloc, 0, mms_records);
    if (!cert.structural_ok) throw InvalidInput("allocation is not structurally valid: " + cert.notes.front());
    return cert.min_ratio;
}

} // namespace cmms::verify
