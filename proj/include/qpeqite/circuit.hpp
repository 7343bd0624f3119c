#pragma once

#include <string>
#include <vector>

#include "qpeqite/hamiltonian.hpp"
#include "qpeqite/qpe.hpp"
#include "qpeqite/statevector.hpp"

namespace qpeqite {

// Qubit layout for the assembled circuit: state qubits occupy [0, N), the
// phase register [N, N + N_R) with register bit r at N + r, and the single
// ancilla sits at N + N_R.
struct CircuitLayout {
    int n_state = 0;
    int n_register = 0;
    int state_qubit(int i) const { return i; }
    int register_qubit(int r) const { return n_state + r; }
    int ancilla_qubit() const { return n_state + n_register; }
    int total_qubits() const { return n_state + n_register + 1; }
};

// Register-only transform |y> -> M^{-1/2} sum_p exp(-2 pi i p y / M) |p>,
// with bit r of both y and p living on qubit base + r. Built as the usual
// ladder of Hadamards and controlled phases (negative angles for the sign
// convention above) followed by qubit-reversal swaps, each lowered to three
// CNOTs.
std::vector<Gate> qft_register_gates(int n_register, int base);

struct BuiltCircuit {
    CircuitLayout layout;
    std::vector<Gate> gates;
    double tau = 0.0;
};

// Full gate-level pipeline on N + N_R + 1 qubits: Hadamards everywhere
// except the ancilla, the controlled diagonal evolution
// |b>|y> -> exp(-2 pi i y l (E_b - alpha) / M) |b>|y> realized term by term
// with parity ladders, the register Fourier transform above, and the
// register-multiplexed ancilla rotation Ry(2 exp(-p tau)).
// Requires N + N_R + 1 <= cap (the dense simulator budget).
BuiltCircuit build_qpe_qite_circuit(const DiagonalHamiltonian& h, const RegisterConfig& cfg,
                                    double tau, int qubit_cap = 22);

std::string circuit_netlist(const BuiltCircuit& c);

}
