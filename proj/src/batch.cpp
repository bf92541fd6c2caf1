#include "cmms/batch.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <thread>

#include <json.hpp>

#include "cmms/cli.hpp"
#include "cmms/errors.hpp"

namespace cmms::batch {

namespace {

using json = nlohmann::json;

Range range_of(const json& j, const std::string& where) {
    if (j.is_number_integer()) return {j.get<int>(), j.get<int>()};
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        Range r{j[0].get<int>(), j[1].get<int>()};
        if (r.lo > r.hi) throw InvalidInput(where + ": empty range");
        return r;
    }
    throw InvalidInput(where + ": expected an integer or [lo, hi]");
}

int draw(std::mt19937_64& rng, const Range& r) {
    return r.lo == r.hi ? r.lo : std::uniform_int_distribution<int>(r.lo, r.hi)(rng);
}

struct Job {
    std::size_t entry;
    int index;
};

Row run_one(const TrialSpec& spec, std::size_t entry, int index) {
    const gen::GenSpec g = expand(spec, index);
    Row row;
    row.instance_id = "e" + std::to_string(entry) + "-" + gen::to_string(g.family) + "-s" + std::to_string(g.seed);
    row.family = g.family;
    row.n_agents = g.agents;
    row.n_vertices = g.vertices;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Instance inst = gen::generate(g);
        row.n_types = inst.type_count();
        row.alpha_target = cli::class_alpha(g.family, inst);
        const auto outcome = cli::solve(inst, g.family);
        row.min_ratio = outcome.certificate.min_ratio;
        row.pass = outcome.certificate.passed();
        if (!row.pass && !outcome.certificate.notes.empty()) row.error = outcome.certificate.notes.front();
    } catch (const std::exception& e) {
        row.pass = false;
        row.error = e.what();
    }
    row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                         .count();
    return row;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

} // namespace

Config parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("batch config: ") + e.what());
    }
    Config out;
    if (!doc.is_object()) throw InvalidInput("batch config: expected an object");
    if (!doc.contains("trials")) return out;
    const json& trials = doc["trials"];
    if (!trials.is_array()) throw InvalidInput("batch config: \"trials\" must be an array");
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const std::string where = "trials[" + std::to_string(i) + "]";
        const json& t = trials[i];
        if (!t.is_object() || !t.contains("class")) throw InvalidInput(where + ": missing \"class\"");
        TrialSpec s;
        s.family = gen::parse_family(t["class"].get<std::string>());
        if (t.contains("count")) s.count = t["count"].get<int>();
        if (t.contains("seed")) s.seed = t["seed"].get<std::uint64_t>();
        if (t.contains("vertices")) s.vertices = range_of(t["vertices"], where + ".vertices");
        if (t.contains("agents")) s.agents = range_of(t["agents"], where + ".agents");
        if (t.contains("max_utility")) s.max_utility = t["max_utility"].get<int>();
        if (t.contains("types")) s.types = range_of(t["types"], where + ".types");
        if (s.count < 0) throw InvalidInput(where + ": negative count");
        out.trials.push_back(s);
    }
    return out;
}

gen::GenSpec expand(const TrialSpec& spec, int index) {
    gen::GenSpec g;
    g.family = spec.family;
    g.seed = spec.seed + static_cast<std::uint64_t>(index);
    std::mt19937_64 rng(g.seed);
    g.vertices = draw(rng, spec.vertices);
    g.agents = draw(rng, spec.agents);
    g.types = draw(rng, spec.types);
    g.max_utility = spec.max_utility;
    return g;
}

std::vector<Row> run(const Config& config, int jobs) {
    std::vector<Job> work;
    for (std::size_t e = 0; e < config.trials.size(); ++e)
        for (int i = 0; i < config.trials[e].count; ++i) work.push_back({e, i});
    std::vector<Row> rows(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t w; (w = next++) < work.size();)
            rows[w] = run_one(config.trials[work[w].entry], work[w].entry, work[w].index);
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

std::string csv_header() {
    return "instance_id,class,n_agents,n_vertices,n_types,alpha_target,min_ratio,pass,runtime_ms\n";
}

std::string csv_row(const Row& row) {
    return csv_escape(row.instance_id) + "," + gen::to_string(row.family) + "," + std::to_string(row.n_agents) + "," +
           std::to_string(row.n_vertices) + "," + std::to_string(row.n_types) + "," + row.alpha_target.str() + "," +
           (row.min_ratio ? row.min_ratio->str() : std::string()) + "," + (row.pass ? "true" : "false") + "," +
           std::to_string(row.runtime_ms) + "\n";
}

} // namespace cmms::batch
