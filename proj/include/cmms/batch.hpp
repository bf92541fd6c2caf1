#ifndef CMMS_BATCH_HPP
#define CMMS_BATCH_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmms/generators.hpp"
#include "cmms/instance.hpp"

// Seeded experiment runs: generate, allocate, audit, one CSV row each.
//
// Config: {"trials": [{"class": "split", "count": 20, "seed": 1,
//                      "vertices": [4, 12], "agents": [1, 4],
//                      "max_utility": 20, "types": [1, 4]}]}
// vertices, agents and types take an integer or an inclusive [lo, hi] range;
// trial i of an entry uses seed + i for both the range draws and the
// generator.

namespace cmms::batch {

struct Range {
    int lo = 0;
    int hi = 0;
};

struct TrialSpec {
    gen::Family family = gen::Family::block_cactus;
    int count = 1;
    std::uint64_t seed = 1;
    Range vertices{8, 8};
    Range agents{2, 2};
    int max_utility = 20;
    Range types{0, 0};
};

struct Config {
    std::vector<TrialSpec> trials;
};

/// Throws InvalidInput.
Config parse_config(std::string_view text);

/// Concrete generator parameters of trial `index` of `spec`.
gen::GenSpec expand(const TrialSpec& spec, int index);

struct Row {
    std::string instance_id;
    gen::Family family;
    int n_agents = 0;
    int n_vertices = 0;
    int n_types = 0;
    Value alpha_target;
    std::optional<Value> min_ratio; // empty when the run threw
    bool pass = false;
    long runtime_ms = 0;
    std::string error;
};

/// Rows in config order whatever the number of worker threads.
std::vector<Row> run(const Config& config, int jobs = 1);

std::string csv_header();
std::string csv_row(const Row& row);

} // namespace cmms::batch

#endif // CMMS_BATCH_HPP
