#ifndef CMMS_IO_HPP
#define CMMS_IO_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cmms/instance.hpp"
#include "cmms/verify.hpp"

// JSON instance and allocation files. Values are written as "p" or "p/q"
// strings; plain JSON integers are accepted on input.

namespace cmms::io {

struct InstanceFile {
    Instance instance;
    std::map<int, std::string> type_names; // type_id -> name in the file
};

/// Type ids are assigned in order of first appearance over agents sorted by
/// id. An agent without "type" gets a type named after its id. Missing
/// utilities are 0. Throws InvalidInput, with line and column for syntax
/// errors and a JSON path for everything else.
InstanceFile parse_instance(std::string_view text);

/// Canonical form: sorted keys, sorted vertices, edges and agents, every
/// utility listed, two-space indent, trailing LF.
std::string write_instance(const InstanceFile& file);
/// Types named "t<type_id>".
std::string write_instance(const Instance& inst);

struct BundleLine {
    AgentId agent = 0;
    std::vector<std::string> vertices;
    Value value;
    Value mms;
    Value ratio;
};

struct AllocationFile {
    Value alpha_target;
    Value min_ratio;
    std::vector<BundleLine> bundles;
    std::vector<std::string> unassigned;
};

AllocationFile allocation_file(const Instance& inst, const verify::Certificate& cert);
std::string write_allocation(const AllocationFile& file);
AllocationFile parse_allocation(std::string_view text);

/// Bundles resolved against the graph. Throws InvalidInput on unknown ids.
Allocation to_allocation(const AllocationFile& file, const GoodsGraph& g);

/// Throws InvalidInput when the file cannot be read or written.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace cmms::io

#endif // CMMS_IO_HPP
