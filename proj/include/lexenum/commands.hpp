#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lexenum/search.hpp"
#include "lexenum/symmetry.hpp"

namespace lexenum {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;      // run completed (zero solutions included)
inline constexpr int kExitAborted = 1; // budget or cap stopped the run
inline constexpr int kExitInput = 2;   // unreadable, ill-formed, or invalid input

struct CommandOptions {
    std::string instance_path;
    std::optional<std::vector<int>> order; // 1-based override of the file order
    std::string metrics_path;              // empty: no metrics file
    std::string oracle = "exact";          // "exact" or "alldiff"
    SearchLimits limits;
    std::uint64_t oracle_node_budget = 1'000'000;
    MscCaps msc_caps;
    BruteCaps brute_caps;
};

// gap_index,nodes,values_rejected,propagations,oracle_calls,wall_ns — one row
// per gap record, so always solutions + 1 rows under the header.
void write_metrics_csv(std::ostream& out, const DelayMetrics& metrics);

int cmd_enumerate(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_enumerate_sym(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_reduce(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_orbits(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_bench(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_check(const CommandOptions& opt, std::ostream& out, std::ostream& err);

} // namespace lexenum
