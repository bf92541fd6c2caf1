#ifndef CMMS_CLI_HPP
#define CMMS_CLI_HPP

#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cmms/generators.hpp"
#include "cmms/instance.hpp"
#include "cmms/oracle.hpp"
#include "cmms/verify.hpp"

namespace cmms::cli {

enum ExitCode { ok = 0, certificate_failed = 1, parse_error = 2, unsupported = 3, size_cap = 4 };

/// First supported class in the order split, multipartite, block-cactus.
/// Throws ClassMismatch when none applies.
gen::Family detect_class(const GoodsGraph& g);

/// 1/2, 1/4 or 3/(7*2^k-3) with k from the instance's type count.
Value class_alpha(gen::Family family, const Instance& inst);

struct Outcome {
    gen::Family family;
    Value alpha;
    Allocation allocation;
    verify::Certificate certificate;
};

/// Allocates with the class's algorithm and audits the result against the
/// oracle. A failed audit is reported in the certificate, not thrown.
Outcome solve(const Instance& inst, std::optional<gen::Family> family = std::nullopt,
              const oracle::OracleConfig& config = {});

/// Maps library exceptions onto exit codes.
int exit_code_for(const std::exception& e);

/// Entry point behind the `cmms` binary; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cmms::cli

#endif // CMMS_CLI_HPP
