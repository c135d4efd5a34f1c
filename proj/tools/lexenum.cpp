#include <iostream>

#include "CLI11.hpp"
#include "lexenum/commands.hpp"

namespace {

void attach_instance(CLI::App* cmd, lexenum::CommandOptions& opt,
                     std::vector<int>& order_flag) {
    cmd->add_option("file", opt.instance_path, "instance file")->required();
    cmd->add_option("--order", order_flag,
                    "search order as 1-based variable indices (overrides the "
                    "instance's order line)");
}

void attach_metrics(CLI::App* cmd, lexenum::CommandOptions& opt) {
    cmd->add_option("--metrics-out", opt.metrics_path,
                    "write per-gap delay metrics as CSV to this file");
    cmd->add_option("--node-budget", opt.limits.node_budget,
                    "abort after this many search nodes")
        ->capture_default_str();
}

void attach_oracle(CLI::App* cmd, lexenum::CommandOptions& opt) {
    cmd->add_option("--oracle", opt.oracle, "extension oracle")
        ->check(CLI::IsMember({"exact", "alldiff"}))
        ->capture_default_str();
    cmd->add_option("--oracle-budget", opt.limits.oracle_call_budget,
                    "abort after this many oracle calls")
        ->capture_default_str();
    cmd->add_option("--oracle-node-budget", opt.oracle_node_budget,
                    "node cap per exact-oracle query")
        ->capture_default_str();
}

void attach_msc_caps(CLI::App* cmd, lexenum::CommandOptions& opt) {
    cmd->add_option("--msc-node-cap", opt.msc_caps.max_nodes,
                    "skip symmetry verification past this many literals")
        ->capture_default_str();
    cmd->add_option("--msc-edge-cap", opt.msc_caps.max_edges,
                    "skip symmetry verification past this many edges")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    CLI::App app{"solution enumeration for finite-domain CSPs with lexleader "
                 "symmetry breaking"};
    app.require_subcommand(1);

    lexenum::CommandOptions opt;
    std::vector<int> order_flag;
    int rc = lexenum::kExitOk;
    const auto run = [&](int (*cmd)(const lexenum::CommandOptions&,
                                    std::ostream&, std::ostream&)) {
        return [&, cmd] {
            if (!order_flag.empty())
                opt.order = order_flag;
            rc = cmd(opt, std::cout, std::cerr);
        };
    };

    CLI::App* c_enum = app.add_subcommand(
        "enumerate", "list every solution, one line per solution");
    attach_instance(c_enum, opt, order_flag);
    attach_metrics(c_enum, opt);
    c_enum->callback(run(lexenum::cmd_enumerate));

    CLI::App* c_sym = app.add_subcommand(
        "enumerate-sym",
        "list solutions pruned by lexleaders built from the sym lines");
    attach_instance(c_sym, opt, order_flag);
    attach_metrics(c_sym, opt);
    attach_oracle(c_sym, opt);
    attach_msc_caps(c_sym, opt);
    c_sym->callback(run(lexenum::cmd_enumerate_sym));

    CLI::App* c_reduce = app.add_subcommand(
        "reduce", "print the reduced lexleader of every sym line");
    attach_instance(c_reduce, opt, order_flag);
    c_reduce->callback(run(lexenum::cmd_reduce));

    CLI::App* c_orbits = app.add_subcommand(
        "orbits", "partition the solution set into symmetry orbits");
    attach_instance(c_orbits, opt, order_flag);
    c_orbits
        ->add_option("--node-budget", opt.limits.node_budget,
                     "abort after this many search nodes")
        ->capture_default_str();
    c_orbits->callback(run(lexenum::cmd_orbits));

    CLI::App* c_bench = app.add_subcommand(
        "bench", "compare pruned search against generate-and-test");
    attach_instance(c_bench, opt, order_flag);
    attach_oracle(c_bench, opt);
    c_bench
        ->add_option("--node-budget", opt.limits.node_budget,
                     "abort after this many search nodes")
        ->capture_default_str();
    c_bench
        ->add_option("--max-assignments", opt.brute_caps.max_assignments,
                     "assignment-space cap for generate-and-test")
        ->capture_default_str();
    c_bench->callback(run(lexenum::cmd_bench));

    CLI::App* c_check = app.add_subcommand(
        "check", "report class membership and symmetry verification results");
    attach_instance(c_check, opt, order_flag);
    attach_msc_caps(c_check, opt);
    c_check->callback(run(lexenum::cmd_check));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? lexenum::kExitOk : lexenum::kExitInput;
    }
    return rc;
}
