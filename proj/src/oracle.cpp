#include "cmms/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>

#include "cmms/errors.hpp"
#include "cmms/graphs.hpp"

namespace cmms::oracle {

namespace {

using Mask = std::uint64_t;
using Wide = __int128;
using boost::multiprecision::cpp_int;

constexpr Mask bit(int v) { return Mask{1} << v; }

struct BitGraph {
    explicit BitGraph(const GoodsGraph& g) : n(g.size()), adj(g.size(), 0) {
        all = n == 64 ? ~Mask{0} : bit(n) - 1;
        for (VertexIndex v = 0; v < n; ++v)
            for (VertexIndex w : g.neighbors(v)) adj[v] |= bit(w);
    }
    int n;
    std::vector<Mask> adj;
    Mask all = 0;
};

void check_size(const GoodsGraph& g, const OracleConfig& config) {
    if (g.size() > config.max_vertices || g.size() > 63)
        throw SizeLimitError("graph has " + std::to_string(g.size()) + " vertices; exhaustive search cap is " +
                             std::to_string(std::min(config.max_vertices, 63)));
}

int component_count(const BitGraph& bg, Mask m) {
    int count = 0;
    while (m) {
        Mask comp = m & (~m + 1);
        Mask frontier = comp;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1) next |= bg.adj[std::countr_zero(f)];
            next &= m & ~comp;
            comp |= next;
            frontier = next;
        }
        m &= ~comp;
        ++count;
    }
    return count;
}

// Enumerates every connected superset of `s` inside `allowed` that avoids
// `banned`, each exactly once. `cand` must be N(s) & allowed minus s and banned.
template <class F>
bool grow(const BitGraph& bg, Mask allowed, Mask s, Mask cand, Mask banned, F& f) {
    if (!f(s)) return false;
    Mask rem = cand;
    while (rem) {
        Mask wbit = rem & (~rem + 1);
        rem ^= wbit;
        const int w = std::countr_zero(wbit);
        const Mask nbanned = banned | (cand & ~rem);
        const Mask ns = s | wbit;
        const Mask ncand = (rem | (bg.adj[w] & allowed)) & ~ns & ~nbanned;
        if (!grow(bg, allowed, ns, ncand, nbanned, f)) return false;
    }
    return true;
}

// Connected sets containing `root` inside `allowed`. `f` returns false to stop.
template <class F>
bool for_each_connected_set(const BitGraph& bg, int root, Mask allowed, F&& f) {
    const Mask s = bit(root);
    return grow(bg, allowed, s, bg.adj[root] & allowed & ~s, Mask{0}, f);
}

VertexList to_list(Mask m) {
    VertexList out;
    for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

// Utilities scaled by the lcm of their denominators, so the search runs on
// machine integers without losing exactness.
struct Scaled {
    std::vector<std::int64_t> w;
    cpp_int scale = 1;

    std::int64_t weight(Mask m) const {
        std::int64_t total = 0;
        for (; m; m &= m - 1) total += w[std::countr_zero(m)];
        return total;
    }
    Value value_of(std::int64_t x) const { return Value(Value::Rep(cpp_int(x), scale)); }
};

constexpr std::int64_t kWeightLimit = std::int64_t{1} << 60;

Scaled scale_utilities(const std::vector<Value>& u) {
    Scaled out;
    for (const auto& x : u) {
        if (x.is_negative()) throw InvalidInput("negative utility " + x.str());
        out.scale = boost::multiprecision::lcm(out.scale, x.denominator());
    }
    cpp_int total = 0;
    for (const auto& x : u) {
        cpp_int scaled = x.numerator() * (out.scale / x.denominator());
        total += scaled;
        if (total >= kWeightLimit) throw SizeLimitError("utilities too large for exact search");
        out.w.push_back(scaled.convert_to<std::int64_t>());
    }
    if (out.scale >= kWeightLimit) throw SizeLimitError("utility denominators too large for exact search");
    return out;
}

Packing witness_from(const std::vector<Mask>& parts, int n) {
    Packing p;
    for (Mask m : parts) p.bundles.push_back({0, to_list(m)});
    while (static_cast<int>(p.bundles.size()) < n) p.bundles.push_back({0, {}});
    return p;
}

void check_n(int n) {
    if (n < 1) throw InvalidInput("bundle count must be positive");
}

} // namespace

void for_each_connected_partition(const GoodsGraph& g, int n,
                                  const std::function<bool(const std::vector<VertexList>&)>& visit,
                                  const OracleConfig& config) {
    check_n(n);
    check_size(g, config);
    const BitGraph bg(g);
    std::vector<Mask> parts;
    bool stopped = false;

    std::function<void(Mask)> rec = [&](Mask unassigned) {
        if (stopped) return;
        if (!unassigned) {
            std::vector<VertexList> out;
            for (Mask m : parts) out.push_back(to_list(m));
            out.resize(n);
            if (!visit(out)) stopped = true;
            return;
        }
        const int left = n - static_cast<int>(parts.size());
        if (left == 0 || component_count(bg, unassigned) > left) return;
        const int root = std::countr_zero(unassigned);
        for_each_connected_set(bg, root, unassigned, [&](Mask s) {
            parts.push_back(s);
            rec(unassigned & ~s);
            parts.pop_back();
            return !stopped;
        });
    };
    rec(bg.all);
}

std::vector<std::vector<VertexList>> enumerate_connected_partitions(const GoodsGraph& g, int n,
                                                                   const OracleConfig& config) {
    std::vector<std::vector<VertexList>> out;
    for_each_connected_partition(g, n, [&](const std::vector<VertexList>& p) {
        out.push_back(p);
        return true;
    }, config);
    return out;
}

MmsRecord mms(const GoodsGraph& g, const Agent& agent, int n, const OracleConfig& config) {
    check_n(n);
    check_size(g, config);
    const BitGraph bg(g);
    if (component_count(bg, bg.all) > n)
        throw UndefinedMms("graph has more than " + std::to_string(n) + " components; no partition exists");
    const Scaled su = scale_utilities(agent.utility);

    std::int64_t best = -1;
    std::vector<Mask> best_parts, parts;

    std::function<void(Mask, std::int64_t)> rec = [&](Mask unassigned, std::int64_t cur_min) {
        const int left = n - static_cast<int>(parts.size());
        if (!unassigned) {
            const std::int64_t value = left > 0 ? 0 : cur_min;
            if (value > best) {
                best = value;
                best_parts = parts;
            }
            return;
        }
        if (left == 0) return;
        if (best >= 0) {
            // An improvement needs `left` more nonempty bundles, each worth more than best.
            if (std::popcount(unassigned) < left) return;
            if (su.weight(unassigned) < static_cast<std::int64_t>(left) * (best + 1)) return;
        }
        if (component_count(bg, unassigned) > left) return;
        const int root = std::countr_zero(unassigned);
        for_each_connected_set(bg, root, unassigned, [&](Mask s) {
            const std::int64_t ws = su.weight(s);
            if (best >= 0 && ws <= best) return true;
            parts.push_back(s);
            rec(unassigned & ~s, std::min(cur_min, ws));
            parts.pop_back();
            return true;
        });
    };
    rec(bg.all, std::numeric_limits<std::int64_t>::max());

    MmsRecord r;
    r.agent = agent.id;
    r.n = n;
    r.kind = ShareKind::mms;
    r.value = su.value_of(std::max<std::int64_t>(best, 0));
    r.witness = witness_from(best_parts, n);
    return r;
}

MmsRecord pmms(const GoodsGraph& g, const Agent& agent, int n, const OracleConfig& config) {
    check_n(n);
    check_size(g, config);
    const BitGraph bg(g);
    const Scaled su = scale_utilities(agent.utility);

    std::int64_t best = -1;
    std::vector<Mask> best_parts, parts;

    // Least undecided vertex either opens the next bundle or is discarded;
    // bundles are therefore generated in order of their least member.
    std::function<void(Mask, std::int64_t)> rec = [&](Mask undecided, std::int64_t cur_min) {
        const int left = n - static_cast<int>(parts.size());
        if (left == 0 || !undecided) {
            const std::int64_t value = left > 0 ? 0 : cur_min;
            if (value > best) {
                best = value;
                best_parts = parts;
            }
            return;
        }
        if (best >= 0) {
            if (std::popcount(undecided) < left) return;
            if (su.weight(undecided) < static_cast<std::int64_t>(left) * (best + 1)) return;
        }
        const int root = std::countr_zero(undecided);
        for_each_connected_set(bg, root, undecided, [&](Mask s) {
            const std::int64_t ws = su.weight(s);
            if (best >= 0 && ws <= best) return true;
            parts.push_back(s);
            rec(undecided & ~s, std::min(cur_min, ws));
            parts.pop_back();
            return true;
        });
        rec(undecided & ~bit(root), cur_min);
    };
    rec(bg.all, std::numeric_limits<std::int64_t>::max());

    MmsRecord r;
    r.agent = agent.id;
    r.n = n;
    r.kind = ShareKind::pmms;
    r.value = su.value_of(std::max<std::int64_t>(best, 0));
    r.witness = witness_from(best_parts, n);
    return r;
}

namespace {

// Non-negative fraction num/den with den > 0; den == 0 encodes +infinity.
struct Ratio {
    Wide num = 0;
    Wide den = 1;

    bool infinite() const { return den == 0; }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        if (a.infinite()) return false;
        if (b.infinite()) return true;
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
};

constexpr Ratio kInfinite{1, 0};

} // namespace

Allocation max_min_ratio_allocation(const GoodsGraph& g, const std::vector<Agent>& agents,
                                    const std::map<AgentId, Value>& targets, const OracleConfig& config) {
    check_size(g, config);
    const int n = static_cast<int>(agents.size());
    if (n == 0) return {};
    if (n > 63) throw SizeLimitError("too many agents for exact search");
    const BitGraph bg(g);

    // ratio_i(S) = w_i(S) * q_i / (scale_i * p_i) for target p_i/q_i.
    std::vector<Scaled> su;
    std::vector<Wide> mul(n, 0), div(n, 0);
    std::vector<bool> constrained(n, false);
    for (int k = 0; k < n; ++k) {
        su.push_back(scale_utilities(agents[k].utility));
        auto it = targets.find(agents[k].id);
        if (it == targets.end()) throw InvalidInput("no target for agent " + std::to_string(agents[k].id));
        if (it->second.is_negative()) throw InvalidInput("negative target");
        if (it->second.is_zero()) continue;
        constrained[k] = true;
        const cpp_int q = it->second.denominator();
        const cpp_int d = su[k].scale * it->second.numerator();
        // Keep both sides of a cross-multiplication below 2^62.
        const cpp_int top = cpp_int(su[k].weight(bg.all)) * q;
        if (top >= kWeightLimit || d >= kWeightLimit) throw SizeLimitError("target too large for exact search");
        mul[k] = static_cast<Wide>(q.convert_to<std::int64_t>());
        div[k] = static_cast<Wide>(d.convert_to<std::int64_t>());
    }
    auto ratio = [&](int k, Mask s) {
        if (!constrained[k]) return kInfinite;
        return Ratio{static_cast<Wide>(su[k].weight(s)) * mul[k], div[k]};
    };

    bool has_best = false;
    Ratio best;
    std::vector<Mask> owned(n, 0), best_owned;

    std::function<void(Mask, Mask, Ratio)> rec = [&](Mask unassigned, Mask served, Ratio cur_min) {
        const int unserved = n - std::popcount(served);
        if (!unassigned) {
            Ratio value = cur_min;
            for (int k = 0; k < n; ++k)
                if (!(served & bit(k)) && constrained[k]) value = Ratio{0, 1};
            if (!has_best || best < value) {
                has_best = true;
                best = value;
                best_owned = owned;
            }
            return;
        }
        if (unserved == 0 || component_count(bg, unassigned) > unserved) return;
        if (has_best)
            for (int k = 0; k < n; ++k)
                if (!(served & bit(k)) && ratio(k, unassigned) <= best) return;
        const int root = std::countr_zero(unassigned);
        for_each_connected_set(bg, root, unassigned, [&](Mask s) {
            for (int k = 0; k < n; ++k) {
                if (served & bit(k)) continue;
                const Ratio r = ratio(k, s);
                if (has_best && r <= best) continue;
                owned[k] = s;
                rec(unassigned & ~s, served | bit(k), r < cur_min ? r : cur_min);
                owned[k] = 0;
            }
            return true;
        });
    };
    rec(bg.all, 0, kInfinite);
    if (!has_best) throw StructuralError("graph cannot be split into " + std::to_string(n) + " connected bundles");

    Allocation out;
    for (int k = 0; k < n; ++k) {
        Bundle b{agents[k].id, to_list(best_owned[k])};
        const Value value = utility_of_set(agents[k], b.vertices);
        out.per_agent_ratio[agents[k].id] = ratio_or_one(value, targets.at(agents[k].id));
        out.packing.bundles.push_back(std::move(b));
    }
    return out;
}

namespace {

template <class F>
std::vector<MmsRecord> per_type(const Instance& inst, F&& search) {
    std::vector<MmsRecord> out;
    std::map<int, MmsRecord> by_type;
    for (const auto& a : inst.agents) {
        auto it = by_type.find(a.type_id);
        if (it == by_type.end()) it = by_type.emplace(a.type_id, search(a)).first;
        MmsRecord r = it->second;
        r.agent = a.id;
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

std::vector<MmsRecord> mms_all(const Instance& inst, const OracleConfig& config) {
    return per_type(inst, [&](const Agent& a) { return mms(inst.graph, a, inst.agent_count(), config); });
}

std::vector<MmsRecord> pmms_all(const Instance& inst, const OracleConfig& config) {
    return per_type(inst, [&](const Agent& a) { return pmms(inst.graph, a, inst.agent_count(), config); });
}

} // namespace cmms::oracle
