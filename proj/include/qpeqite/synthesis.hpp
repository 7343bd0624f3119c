#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qpeqite/hamiltonian.hpp"
#include "qpeqite/qpe.hpp"
#include "qpeqite/spectrum.hpp"
#include "qpeqite/statevector.hpp"

namespace qpeqite {

struct Unitary2 {
    std::complex<double> m00{1, 0}, m01{0, 0}, m10{0, 0}, m11{1, 0};

    Unitary2 operator*(const Unitary2& o) const;
    Unitary2 dagger() const;
    std::complex<double> trace() const { return m00 + m11; }

    static Unitary2 identity() { return {}; }
    static Unitary2 rx(double theta);
    static Unitary2 ry(double theta);
    static Unitary2 rz(double theta);
    // Rotation by `theta` about the Bloch axis (nx, ny, nz), in SU(2).
    static Unitary2 rotation(double theta, double nx, double ny, double nz);
};

// Projective operator-norm distance min over phase of ||U - e^{i phi} V||.
// For unitaries this collapses to sqrt(2 - |tr(V^dag U)|).
double projective_distance(const Unitary2& u, const Unitary2& v);

enum class CliffordTGen : std::uint8_t { H, S, Sdg, T, Tdg, X, Y, Z };

// A word multiplies left to right: unitary(word) = U(w[0]) * U(w[1]) * ...
using GateWord = std::vector<CliffordTGen>;

Unitary2 generator_unitary(CliffordTGen g);
Unitary2 word_unitary(const GateWord& w);
GateWord word_dagger(const GateWord& w);
int word_t_count(const GateWord& w);
std::string word_string(const GateWord& w);

// Applies the fixed local rewrite table (inverse pairs cancel; SS -> Z,
// TT -> S, ZS -> Sdg, T Sdg -> Tdg, ... ) to a fixpoint. Every rule is an
// exact matrix identity, so the product is unchanged — not just up to phase.
GateWord canonicalize(GateWord w);

struct NetEntry {
    GateWord word;
    Unitary2 u;
};

struct EpsilonNet {
    int max_length = 0;
    std::vector<NetEntry> entries;  // BFS order: shorter words first
};

// Breadth-first enumeration of canonical words up to max_length, deduplicated
// modulo global phase by a key quantized at 1e-6.
EpsilonNet build_epsilon_net(int max_length);

struct SynthesisResult {
    GateWord word;
    Unitary2 realized;  // product of the word, recomputed from scratch
    double error = 0.0; // projective distance to the target
    int t_count = 0;
};

std::string synthesis_text(const SynthesisResult& r);

// Solovay-Kitaev: depth 0 returns the nearest net element; depth d applies
// the balanced group-commutator refinement to the depth d-1 result. The best
// candidate across depths is returned, so error never increases with depth.
SynthesisResult sk_synthesize(const Unitary2& target, int depth, const EpsilonNet& net);

// Multiplexed Ry over k = log2(|angles|) controls via the Gray-code walk:
// 2^k Ry gates on the target interleaved with 2^k CNOTs. Gates act on
// controls 0..k-1 (control j is bit j of the angle index) and target k.
std::vector<Gate> decompose_multiplexed_ry(const std::vector<double>& angles);

// Taylor-truncated ancilla rotation. Order 0 is the fixed Ry(2); order 1
// appends one controlled Ry(-2 * 2^r * tau) per register qubit, each lowered
// to 2 CNOTs + 2 Ry, realizing the rotation angle 2(1 - p tau). Register
// qubits are 0..N_R-1, the ancilla is qubit N_R.
std::vector<Gate> uar_taylor_order(int order, const RegisterConfig& cfg, double tau);

struct ResourceStage {
    std::string name;
    long long rotations = 0;  // rotations requiring synthesis
    long long cnots = 0;
    long long t_count = 0;
    double eps_achieved = 0.0;  // worst realized synthesis error in the stage
};

struct ResourceReport {
    long long qpe_rotations = 0;  // N_R * |H| controlled phases
    long long qft_rotations = 0;  // N_R (N_R - 1) / 2 controlled phases
    long long uar_rotations = 0;
    long long cnot_total = 0;
    long long t_total = 0;
    bool eps_met = true;  // every rotation reached the requested eps
    std::vector<ResourceStage> stages;
};

enum class UarMode { Exact, Taylor0, Taylor1 };

// T-count estimate for the full pipeline at one (h, cfg, tau, eps). Each
// controlled phase is lowered to 2 CNOTs plus two Rz(+-theta/2) syntheses;
// plain rotations are one synthesis each. Synthesis depth is raised from 0
// until eps is met or `depth` is exhausted (then eps_met drops and the stage
// records the achieved error).
ResourceReport resource_report(const DiagonalHamiltonian& h, const RegisterConfig& cfg, double tau,
                               double eps, const EpsilonNet& net, int depth,
                               UarMode mode = UarMode::Exact);

std::string resource_csv(const ResourceReport& r);

// OLS of log(t_count) against log(log(1/eps)); needs >= 4 distinct eps in
// (0, 1) with t_count >= 1.
FitResult fit_sk_exponent(const std::vector<std::pair<double, double>>& eps_t_points);

}
