#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qpeqite {

enum class GateKind { H, X, Y, Z, S, Sdg, T, Tdg, CNOT, CZ, Ry, Rz, Phase, CPhase, MCPhase };

// One gate: a single-qubit kind acting on `target`, optionally conditioned on
// every qubit in `controls` being |1>. CNOT/CZ/CPhase are the controlled
// forms of X/Z/Phase; MCPhase takes any number of controls.
struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> controls;
    int target = 0;
    double angle = 0.0;

    static Gate h(int q) { return {GateKind::H, {}, q, 0.0}; }
    static Gate x(int q) { return {GateKind::X, {}, q, 0.0}; }
    static Gate y(int q) { return {GateKind::Y, {}, q, 0.0}; }
    static Gate z(int q) { return {GateKind::Z, {}, q, 0.0}; }
    static Gate s(int q) { return {GateKind::S, {}, q, 0.0}; }
    static Gate sdg(int q) { return {GateKind::Sdg, {}, q, 0.0}; }
    static Gate t(int q) { return {GateKind::T, {}, q, 0.0}; }
    static Gate tdg(int q) { return {GateKind::Tdg, {}, q, 0.0}; }
    static Gate cnot(int control, int q) { return {GateKind::CNOT, {control}, q, 0.0}; }
    static Gate cz(int control, int q) { return {GateKind::CZ, {control}, q, 0.0}; }
    static Gate ry(int q, double theta) { return {GateKind::Ry, {}, q, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::Rz, {}, q, theta}; }
    static Gate phase(int q, double theta) { return {GateKind::Phase, {}, q, theta}; }
    static Gate cphase(int control, int q, double theta) {
        return {GateKind::CPhase, {control}, q, theta};
    }
    static Gate mcphase(std::vector<int> controls, int q, double theta) {
        return {GateKind::MCPhase, std::move(controls), q, theta};
    }
};

// Dense amplitudes over n qubits; basis index bit q is the value of qubit q
// (qubit 0 is the least significant bit). Starts in |0...0>.
struct Statevector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amps;

    explicit Statevector(int n);
    double norm() const;
};

void apply_gate(Statevector& state, const Gate& g);
void apply_circuit(Statevector& state, const std::vector<Gate>& gates);

// Projects `qubit` onto `outcome` and renormalizes; returns the branch
// probability. A branch below 1e-300 is treated as empty and throws.
double project_qubit(Statevector& state, int qubit, int outcome);

// Exact marginal over the listed qubits; output index bit j is qubits[j].
std::vector<double> marginal_distribution(const Statevector& state, const std::vector<int>& qubits);

// One gate per line: KIND controls... target [angle].
std::string netlist(const std::vector<Gate>& gates);

}
