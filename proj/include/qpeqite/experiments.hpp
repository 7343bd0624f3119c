#pragma once

#include <ostream>
#include <string>

#include "qpeqite/hamiltonian.hpp"

namespace qpeqite {

// One run of the experiment driver. Field meanings are shared across
// subcommands; each command reads the subset it needs and validates it
// against the module preconditions before doing any work.
struct RunConfig {
    std::string command;
    int n = 3;                  // problem size N
    int n_register = 4;         // N_R
    double scale = 1.0;         // l
    std::string alpha = "0";    // numeric offset, or "auto" = brute-force E_0
    std::string sequence;       // energy: explicit sequence ("0110" or "+--+")
    double tau = 0.0;           // single-tau commands (validate, resources)
    double tau_start = 0.0;     // sweep grid
    double tau_stop = 1.0;
    int tau_steps = 101;
    bool tau_normalized = true; // grid values are tau / (2^N - 1)
    double threshold = 0.999;   // min-tau target overlap
    double eps = 1e-2;          // synthesis accuracy target
    int depth = 3;              // Solovay-Kitaev recursion depth
    int net_length = 10;        // epsilon-net word length
    std::string target = "rz:0.1";  // synth: rz:<angle> | ry:<angle>
    std::string uar = "exact";  // resources: exact | taylor0 | taylor1
    int n_min = 4;              // nr-scaling range
    int n_max = 16;
    std::string archive;        // optional optima archive path
    std::string out_path;       // empty = stdout
    std::string format = "csv"; // csv | json
    int jobs = 1;
};

// Ground-state offset for size-N problems: parses a numeric alpha directly;
// "auto" brute-forces the minimum of the Z-polynomial (N within the
// enumeration cap) or, when an archive is given, converts the archived
// optimal sidelobe energy by subtracting the constant N(N-1)/2.
double resolve_alpha(const RunConfig& cfg);

// Each command writes its data to `out` (CSV or JSON per cfg.format) and
// diagnostics to `err`, returning a process exit code. Identical configs
// produce byte-identical output.
int cmd_energy(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_qpe(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_qite_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_min_tau(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_nr_scaling(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_resources(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Routes cfg.command to the matching cmd_* with out_path handling ("" or "-"
// = stdout). Unknown commands and I/O failures return nonzero with a
// one-line diagnostic on err.
int dispatch(const RunConfig& cfg, std::ostream& err);

}
