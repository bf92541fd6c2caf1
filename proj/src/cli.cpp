#include "cmms/cli.hpp"

#include <algorithm>
#include <sstream>

#include <CLI11.hpp>

#include "cmms/batch.hpp"
#include "cmms/block_cactus.hpp"
#include "cmms/errors.hpp"
#include "cmms/graphs.hpp"
#include "cmms/io.hpp"
#include "cmms/multipartite.hpp"
#include "cmms/split.hpp"

namespace cmms::cli {

namespace {

std::string braces(const GoodsGraph& g, const VertexList& vs) {
    std::string s = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + g.id(vs[i]);
    return s + "}";
}

void print_certificate(std::ostream& os, const Instance& inst, const verify::Certificate& cert) {
    for (const auto& line : cert.per_agent)
        os << "agent " << line.agent << ": " << braces(inst.graph, line.bundle) << " value=" << line.value
           << " mms=" << line.mms << " ratio=" << line.ratio << "\n";
    for (const auto& note : cert.notes) os << "note: " << note << "\n";
}

int cmd_recognize(const std::string& path, std::ostream& out) {
    const auto file = io::parse_instance(io::read_file(path));
    const GoodsGraph& g = file.instance.graph;
    const auto w = graphs::recognize(g);
    out << "flags:";
    for (auto c : w.flags) out << " " << graphs::to_string(c);
    out << "\n";
    out << "connected=" << (w.has(graphs::GraphClass::connected) ? "true" : "false") << "\n";
    if (w.parts) {
        out << "parts=[";
        for (std::size_t i = 0; i < w.parts->size(); ++i) out << (i ? "," : "") << (*w.parts)[i].size();
        out << "]";
        for (const auto& p : *w.parts) out << " " << braces(g, p);
        out << "\n";
    }
    if (w.split_pair) out << "split K=" << braces(g, w.split_pair->clique) << " I=" << braces(g, w.split_pair->independent) << "\n";
    if (w.has(graphs::GraphClass::connected) && g.size() > 0) {
        const auto tree = graphs::block_cut_tree(g);
        out << "blocks=" << tree.blocks.size() << " cut_vertices=" << braces(g, tree.cut_vertices) << "\n";
    } else {
        out << "blocks=" << graphs::biconnected_blocks(g).size() << "\n";
    }
    return ok;
}

int cmd_mms(const std::string& path, std::optional<int> agent, std::ostream& out) {
    const auto file = io::parse_instance(io::read_file(path));
    const Instance& inst = file.instance;
    if (agent) inst.agent(*agent); // throws on an unknown id
    const int n = inst.agent_count();
    for (const auto& a : inst.agents) {
        if (agent && a.id != *agent) continue;
        out << "agent " << a.id << " type=" << file.type_names.at(a.type_id) << " n=" << n;
        try {
            const auto rec = oracle::mms(inst.graph, a, n);
            out << " mms=" << rec.value;
        } catch (const UndefinedMms&) {
            out << " mms=undefined";
        }
        const auto p = oracle::pmms(inst.graph, a, n);
        out << " pmms=" << p.value << " witness=";
        for (std::size_t i = 0; i < p.witness.bundles.size(); ++i)
            out << (i ? " " : "") << braces(inst.graph, p.witness.bundles[i].vertices);
        out << "\n";
    }
    return ok;
}

int cmd_allocate(const std::string& path, const std::string& cls, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    const auto file = io::parse_instance(io::read_file(path));
    const Instance& inst = file.instance;
    std::optional<gen::Family> family;
    if (cls != "auto") family = gen::parse_family(cls);
    const auto outcome = solve(inst, family);
    const std::string json = io::write_allocation(io::allocation_file(inst, outcome.certificate));
    std::ostream& summary = out_path.empty() ? err : out;
    summary << "class=" << gen::to_string(outcome.family) << " alpha_target=" << outcome.alpha
            << " min_ratio=" << outcome.certificate.min_ratio
            << " pass=" << (outcome.certificate.passed() ? "true" : "false") << "\n";
    print_certificate(summary, inst, outcome.certificate);
    if (out_path.empty())
        out << json;
    else
        io::write_file(out_path, json);
    return outcome.certificate.passed() ? ok : certificate_failed;
}

int cmd_verify(const std::string& inst_path, const std::string& alloc_path, const std::string& alpha_text,
               std::ostream& out) {
    const auto file = io::parse_instance(io::read_file(inst_path));
    const Instance& inst = file.instance;
    const auto alloc_file = io::parse_allocation(io::read_file(alloc_path));
    const Value alpha = alpha_text.empty() ? alloc_file.alpha_target : Value::parse(alpha_text);
    const auto alloc = io::to_allocation(alloc_file, inst.graph);
    const auto cert = verify::check_allocation(inst, alloc, alpha, oracle::mms_all(inst));
    out << "alpha_target=" << alpha << " min_ratio=" << cert.min_ratio
        << " structural_ok=" << (cert.structural_ok ? "true" : "false")
        << " pass=" << (cert.passed() ? "true" : "false") << "\n";
    print_certificate(out, inst, cert);
    return cert.passed() ? ok : certificate_failed;
}

int cmd_gen(const gen::GenSpec& spec, const std::string& out_path, std::ostream& out) {
    Instance inst;
    try {
        inst = gen::generate(spec);
    } catch (const InvalidInput& e) {
        throw ClassMismatch(std::string("infeasible generator parameters: ") + e.what());
    }
    const std::string text = io::write_instance(inst);
    if (out_path.empty())
        out << text;
    else
        io::write_file(out_path, text);
    return ok;
}

int cmd_batch(const std::string& config_path, const std::string& out_path, int jobs, std::ostream& out,
              std::ostream& err) {
    const auto config = batch::parse_config(io::read_file(config_path));
    const auto rows = batch::run(config, jobs);
    std::string csv = batch::csv_header();
    int failed = 0;
    for (const auto& r : rows) {
        csv += batch::csv_row(r);
        if (!r.pass) {
            ++failed;
            err << r.instance_id << ": " << (r.error.empty() ? "certificate failed" : r.error) << "\n";
        }
    }
    if (out_path.empty())
        out << csv;
    else
        io::write_file(out_path, csv);
    err << "rows=" << rows.size() << " failed=" << failed << "\n";
    return failed ? certificate_failed : ok;
}

} // namespace

gen::Family detect_class(const GoodsGraph& g) {
    const auto w = graphs::recognize(g);
    const bool connected = w.has(graphs::GraphClass::connected);
    if (connected && w.has(graphs::GraphClass::split)) return gen::Family::split;
    if (w.has(graphs::GraphClass::complete_multipartite) && w.parts && w.parts->size() >= 2)
        return gen::Family::multipartite;
    if (connected && w.has(graphs::GraphClass::block_cactus)) return gen::Family::block_cactus;
    throw ClassMismatch("graph is not in a supported class (split, complete multipartite, block-cactus)");
}

Value class_alpha(gen::Family family, const Instance& inst) {
    switch (family) {
    case gen::Family::block_cactus: return Value(1, 2);
    case gen::Family::multipartite: return Value(1, 4);
    case gen::Family::split: return split::alpha_for_level(split::level_for_types(inst.type_count()));
    }
    return Value(0);
}

Outcome solve(const Instance& inst, std::optional<gen::Family> family, const oracle::OracleConfig& config) {
    const auto problems = validate_instance(inst);
    if (!problems.empty()) throw InvalidInput(problems.front());
    Outcome out;
    out.family = family ? *family : detect_class(inst.graph);
    out.alpha = class_alpha(out.family, inst);
    switch (out.family) {
    case gen::Family::block_cactus: {
        blockcactus::Options opt;
        opt.oracle = config;
        out.allocation = blockcactus::allocate_block_cactus(inst, opt);
        break;
    }
    case gen::Family::multipartite: out.allocation = multipartite::allocate_multipartite(inst, config); break;
    case gen::Family::split: {
        split::Options opt;
        opt.oracle = config;
        out.allocation = split::allocate_split(inst, opt);
        break;
    }
    }
    out.certificate = verify::check_allocation(inst, out.allocation, out.alpha, oracle::mms_all(inst, config));
    return out;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InvalidInput*>(&e)) return parse_error;
    if (dynamic_cast<const SizeLimitError*>(&e)) return size_cap;
    if (dynamic_cast<const ClassMismatch*>(&e) || dynamic_cast<const UnsupportedBlock*>(&e) ||
        dynamic_cast<const StructuralError*>(&e) || dynamic_cast<const UndefinedMms*>(&e))
        return unsupported;
    return certificate_failed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Approximate maximin-share allocations of goods on graphs", "cmms"};
    app.require_subcommand(1);

    std::string path, path2, cls = "auto", out_path, alpha_text, config_path, family_name;
    std::optional<int> agent;
    gen::GenSpec spec;
    int jobs = 1;

    auto* recognize = app.add_subcommand("recognize", "Report graph classes and their witnesses");
    recognize->add_option("file", path, "Instance file")->required();

    auto* mms = app.add_subcommand("mms", "Exact maximin shares");
    mms->add_option("file", path, "Instance file")->required();
    mms->add_option("--agent", agent, "Only this agent");

    auto* allocate = app.add_subcommand("allocate", "Allocate and certify");
    allocate->add_option("file", path, "Instance file")->required();
    allocate->add_option("--class", cls, "auto|block-cactus|multipartite|split")
        ->check(CLI::IsMember({"auto", "block-cactus", "multipartite", "split"}));
    allocate->add_option("--out", out_path, "Allocation file (stdout when omitted)");

    auto* verify_cmd = app.add_subcommand("verify", "Check an allocation file against the oracle");
    verify_cmd->add_option("instance", path, "Instance file")->required();
    verify_cmd->add_option("allocation", path2, "Allocation file")->required();
    verify_cmd->add_option("--alpha", alpha_text, "Target ratio p/q (default: the file's alpha_target)");

    auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
    gen_cmd->add_option("--class", family_name, "block-cactus|multipartite|split")
        ->required()
        ->check(CLI::IsMember({"block-cactus", "multipartite", "split"}));
    gen_cmd->add_option("--seed", spec.seed, "Seed")->required();
    gen_cmd->add_option("--vertices", spec.vertices, "Vertex count")->required();
    gen_cmd->add_option("--agents", spec.agents, "Agent count")->required();
    gen_cmd->add_option("--max-utility", spec.max_utility, "Largest utility");
    gen_cmd->add_option("--types", spec.types, "Distinct utility profiles (0: one per agent)");
    gen_cmd->add_option("--out", out_path, "Output file (stdout when omitted)");

    auto* batch_cmd = app.add_subcommand("batch", "Run a seeded experiment config to CSV");
    batch_cmd->add_option("--config", config_path, "Config file")->required();
    batch_cmd->add_option("--out", out_path, "CSV file (stdout when omitted)");
    batch_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : parse_error;
    }

    try {
        if (*recognize) return cmd_recognize(path, out);
        if (*mms) return cmd_mms(path, agent, out);
        if (*allocate) return cmd_allocate(path, cls, out_path, out, err);
        if (*verify_cmd) return cmd_verify(path, path2, alpha_text, out);
        if (*gen_cmd) {
            spec.family = gen::parse_family(family_name);
            return cmd_gen(spec, out_path, out);
        }
        if (*batch_cmd) return cmd_batch(config_path, out_path, jobs, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return parse_error;
}

} // namespace cmms::cli
