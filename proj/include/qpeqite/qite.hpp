#pragma once

#include <cstdint>
#include <vector>

#include "qpeqite/qpe.hpp"

namespace qpeqite {

// Result of weighting a QPE outcome by the register-controlled ancilla
// rotation and post-selecting the ancilla on |1>. The weight of register bin
// p is the exact sin^2(e^{-p tau}) — no small-angle approximation — so at
// tau = 0 the success probability is sin^2(1), not 1.
struct QiteOutcome {
    double tau = 0.0;
    double success_probability = 0.0;
    double ground_overlap = 0.0;
    std::vector<double> post_register;           // post-selected register marginal
    // Post-selected joint table in the same (level, p) layout as QpeResult.
    // Left empty (table_stored = false) when levels * 2^{N_R} would be huge.
    bool table_stored = false;
    std::vector<std::vector<double>> postselected;
};

QiteOutcome apply_qite(const QpeResult& qpe, const std::vector<std::uint64_t>& ground_set,
                       double tau);

// Probability of drawing a ground-set state with no ancilla filtering at all;
// for a uniform initial state this is exactly |ground_set| / 2^N.
double overlap_without_qite(const QpeResult& qpe, const std::vector<std::uint64_t>& ground_set);

struct MinTauResult {
    bool found = false;
    double tau = 0.0;            // smallest tau reaching the threshold, or the grid argmax
    double tau_normalized = 0.0; // tau / (2^N - 1)
    double max_overlap = 0.0;    // best overlap seen on the grid
    QiteOutcome outcome;         // outcome at `tau`
};

// Scans the ascending tau grid for the first point whose ground overlap
// reaches `threshold`, then bisects against the previous grid point down to
// relative width 1e-6. Threshold 1.0 is allowed and normally yields a
// not-found result (excited weight never vanishes at finite tau).
MinTauResult min_tau(const DiagonalHamiltonian& h, const InitialState& b,
                     const RegisterConfig& cfg, const std::vector<std::uint64_t>& ground_set,
                     double threshold, const std::vector<double>& grid);

}
