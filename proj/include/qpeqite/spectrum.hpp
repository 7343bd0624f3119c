#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qpeqite/hamiltonian.hpp"

namespace qpeqite {

inline constexpr int kEnumerationCap = 24;

struct Spectrum {
    std::vector<double> energies;          // indexed by basis state
    double ground_energy = 0.0;
    std::vector<std::uint64_t> ground_set; // ascending basis states attaining the minimum
    double max_energy = 0.0;
    // Gap between distinct levels: smallest energy strictly above ground,
    // minus ground. has_gap stays false when only one level exists.
    bool has_gap = false;
    double gap = 0.0;
};

Spectrum enumerate_spectrum(const DiagonalHamiltonian& h, int jobs = 1,
                            int qubit_cap = kEnumerationCap);

struct ArchiveEntry {
    int n = 0;
    double optimal_energy = 0.0;
};

// Plain-text archive of optimal sidelobe energies, one "N E_opt" pair per
// line; '#' starts a comment. Entries come back sorted by N; duplicate N or
// malformed lines raise std::runtime_error naming the line.
std::vector<ArchiveEntry> load_archive(const std::string& path);

struct FitResult {
    double exponent = 0.0;   // slope of the fit
    double prefactor = 0.0;  // exp(intercept) for power-law fits, intercept otherwise
    double residual = 0.0;   // rms residual in the fitted space
};

// Ordinary least squares of log(dE) against log(N) for (N, dE) points.
FitResult fit_gap_exponent(const std::vector<std::pair<double, double>>& points);

// Ordinary least squares of y against log(x); prefactor holds the intercept.
FitResult fit_log_linear(const std::vector<std::pair<double, double>>& points);

}
