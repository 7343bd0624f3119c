#include <iostream>

#include <CLI11.hpp>

#include "qpeqite/experiments.hpp"

namespace {

using qpeqite::RunConfig;

void add_output_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("-o,--out", cfg.out_path, "output file (default: stdout)");
    cmd->add_option("--format", cfg.format, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-j,--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 256));
}

void add_size(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("-n,--size", cfg.n, "problem size N")->check(CLI::Range(2, 63));
}

void add_register_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--nr", cfg.n_register, "register qubit count N_R")
        ->check(CLI::Range(1, 20));
    cmd->add_option("-l,--scale", cfg.scale, "energy-to-bin scale l");
}

void add_alpha_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--alpha", cfg.alpha,
                    "energy offset, or 'auto' to use the brute-forced ground energy");
    cmd->add_option("--archive", cfg.archive, "optimal-energy archive for --alpha auto");
}

void add_tau_grid(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--tau-start", cfg.tau_start, "first tau grid point");
    cmd->add_option("--tau-stop", cfg.tau_stop, "last tau grid point");
    cmd->add_option("--tau-steps", cfg.tau_steps, "tau grid size")->check(CLI::Range(1, 100000));
    cmd->add_flag_callback(
        "--raw-tau", [&cfg] { cfg.tau_normalized = false; },
        "grid values are raw tau (default: normalized by 2^N - 1)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QPE + imaginary-time post-selection toolkit for diagonal Hamiltonians"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* energy = app.add_subcommand("energy", "sidelobe energy of one sequence");
    energy->add_option("-s,--sequence", cfg.sequence, "sequence over 0/1 or +/-")->required();
    add_output_flags(energy, cfg);

    CLI::App* spectrum = app.add_subcommand("spectrum", "full energy table for size N");
    add_size(spectrum, cfg);
    add_output_flags(spectrum, cfg);

    CLI::App* qpe = app.add_subcommand("qpe", "register read-out distribution");
    add_size(qpe, cfg);
    add_register_flags(qpe, cfg);
    add_alpha_flags(qpe, cfg);
    add_output_flags(qpe, cfg);

    CLI::App* sweep = app.add_subcommand("qite-sweep", "ground overlap and success vs tau");
    add_size(sweep, cfg);
    add_register_flags(sweep, cfg);
    add_alpha_flags(sweep, cfg);
    add_tau_grid(sweep, cfg);
    add_output_flags(sweep, cfg);

    CLI::App* mintau = app.add_subcommand("min-tau", "smallest tau reaching an overlap target");
    add_size(mintau, cfg);
    add_register_flags(mintau, cfg);
    add_alpha_flags(mintau, cfg);
    add_tau_grid(mintau, cfg);
    mintau->add_option("--threshold", cfg.threshold, "target ground overlap in (0, 1]");
    add_output_flags(mintau, cfg);

    CLI::App* scaling = app.add_subcommand("nr-scaling", "minimal register size vs N");
    scaling->add_option("--n-min", cfg.n_min, "first N");
    scaling->add_option("--n-max", cfg.n_max, "last N");
    scaling->add_option("-l,--scale", cfg.scale, "energy-to-bin scale l");
    add_output_flags(scaling, cfg);

    CLI::App* synth = app.add_subcommand("synth", "Clifford+T word for one rotation");
    synth->add_option("-t,--target", cfg.target, "rotation target, rz:<angle> or ry:<angle>");
    synth->add_option("--depth", cfg.depth, "recursion depth")->check(CLI::Range(0, 8));
    synth->add_option("--net-length", cfg.net_length, "base net word length")
        ->check(CLI::Range(1, 16));
    add_output_flags(synth, cfg);

    CLI::App* resources = app.add_subcommand("resources", "per-stage T-count estimate");
    add_size(resources, cfg);
    add_register_flags(resources, cfg);
    add_alpha_flags(resources, cfg);
    resources->add_option("--tau", cfg.tau, "imaginary time (raw units)");
    resources->add_option("--eps", cfg.eps, "per-rotation synthesis accuracy");
    resources->add_option("--depth", cfg.depth, "max recursion depth")->check(CLI::Range(0, 8));
    resources->add_option("--net-length", cfg.net_length, "base net word length")
        ->check(CLI::Range(1, 16));
    resources->add_option("--uar", cfg.uar, "ancilla rotation mode: exact | taylor0 | taylor1");
    add_output_flags(resources, cfg);

    CLI::App* validate = app.add_subcommand("validate", "circuit vs closed form cross-check");
    add_size(validate, cfg);
    add_register_flags(validate, cfg);
    add_alpha_flags(validate, cfg);
    validate->add_option("--tau", cfg.tau, "imaginary time (raw units)");
    add_output_flags(validate, cfg);

    CLI11_PARSE(app, argc, argv);

    for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
    return qpeqite::dispatch(cfg, std::cerr);
}
