#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qpeqite/hamiltonian.hpp"

namespace qpeqite {

struct RegisterConfig {
    int n_register = 1;  // N_R, number of register qubits, in [1, 20]
    double scale = 1.0;  // l, energy-to-bin scale, finite and > 0

    std::uint64_t dim() const { return std::uint64_t{1} << n_register; }
};

void validate(const RegisterConfig& cfg);

// Initial state on the problem register. The uniform flag stands in for the
// |+>^N amplitudes without storing 2^N numbers; explicit amplitude lists are
// validated to unit norm within 1e-12.
struct InitialState {
    int n_qubits = 0;
    bool uniform = true;
    std::vector<std::complex<double>> amplitudes;  // empty when uniform

    static InitialState uniform_state(int n);
    static InitialState from_amplitudes(std::vector<std::complex<double>> amps);
};

// States sharing one evaluated energy (alpha already subtracted). For a
// uniform initial state only weight and count are kept; explicit amplitudes
// additionally record the member states and their |b|^2.
struct EnergyLevel {
    double energy = 0.0;
    double weight = 0.0;       // sum of |b_i|^2 over members
    std::uint64_t count = 0;
    std::vector<std::uint64_t> states;
    std::vector<double> state_weights;
};

// Register amplitude of the phase-estimation read-out:
//   a(E, p) = sum_{y=0}^{M-1} exp(2 pi i (l E - p) y / M),  M = 2^{N_R}.
// Closed form: exp(i pi phi (M-1)/M) * sin(pi phi) / sin(pi phi / M) with
// phi = l E - p; the 0/0 at phi = 0 (mod M) resolves to M.
std::complex<double> register_amplitude(double energy, std::uint64_t p, const RegisterConfig& cfg);

// |a(E, p)|^2 computed from the real sine ratio with range-reduced arguments,
// which keeps integer phi exactly on the M^2 / 0 peaks (no complex round-off).
double register_amplitude_sq(double energy, std::uint64_t p, const RegisterConfig& cfg);

struct QpeResult {
    DiagonalHamiltonian h;
    RegisterConfig cfg;
    bool uniform_b = true;
    std::vector<EnergyLevel> levels;            // ascending energy
    std::vector<double> register_distribution;  // P(p), length 2^{N_R}, sums to 1
    double normalization = 1.0;                 // Z: raw joint mass before normalizing
    bool range_overflow = false;                // l * max shifted energy >= 2^{N_R}
    bool alpha_above_ground = false;            // some shifted energy is negative

    // Normalized joint weight of (level, register bin p).
    double joint_weight(std::size_t level, std::uint64_t p) const;
};

QpeResult run_qpe(const DiagonalHamiltonian& h, const InitialState& b, const RegisterConfig& cfg);

struct EnergyEstimate {
    std::uint64_t p = 0;
    double probability = 0.0;
    double energy = 0.0;  // p / l
};

// Register bins sorted by descending probability, ties broken by ascending p.
std::vector<EnergyEstimate> energy_estimates(const QpeResult& result);

}
