#include "qpeqite/statevector.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qpeqite/util.hpp"

namespace qpeqite {

Statevector::Statevector(int n) : n_qubits(n) {
    if (n < 1 || n > 26) throw std::invalid_argument("statevector size out of range");
    amps.assign(std::size_t{1} << n, 0.0);
    amps[0] = 1.0;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

namespace {

struct Mat2 {
    std::complex<double> m00, m01, m10, m11;
};

Mat2 gate_matrix(GateKind kind, double angle) {
    using std::complex;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const complex<double> i{0.0, 1.0};
    switch (kind) {
        case GateKind::H: return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case GateKind::X:
        case GateKind::CNOT: return {0, 1, 1, 0};
        case GateKind::Y: return {0, -i, i, 0};
        case GateKind::Z:
        case GateKind::CZ: return {1, 0, 0, -1};
        case GateKind::S: return {1, 0, 0, i};
        case GateKind::Sdg: return {1, 0, 0, -i};
        case GateKind::T: return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
        case GateKind::Tdg: return {1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)};
        case GateKind::Ry: {
            double c = std::cos(angle / 2), s = std::sin(angle / 2);
            return {c, -s, s, c};
        }
        case GateKind::Rz:
            return {std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2)};
        case GateKind::Phase:
        case GateKind::CPhase:
        case GateKind::MCPhase:
            return {1, 0, 0, std::polar(1.0, angle)};
    }
    throw std::logic_error("unknown gate kind");
}

}  // namespace

void apply_gate(Statevector& state, const Gate& g) {
    if (g.target < 0 || g.target >= state.n_qubits)
        throw std::invalid_argument("gate target out of range");
    std::uint64_t cmask = 0;
    for (int c : g.controls) {
        if (c < 0 || c >= state.n_qubits) throw std::invalid_argument("gate control out of range");
        if (c == g.target) throw std::invalid_argument("gate control collides with target");
        cmask |= std::uint64_t{1} << c;
    }
    Mat2 u = gate_matrix(g.kind, g.angle);
    std::uint64_t tmask = std::uint64_t{1} << g.target;
    std::uint64_t dim = state.amps.size();
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        if (idx & tmask) continue;
        if ((idx & cmask) != cmask) continue;
        std::uint64_t hi = idx | tmask;
        auto a0 = state.amps[idx];
        auto a1 = state.amps[hi];
        state.amps[idx] = u.m00 * a0 + u.m01 * a1;
        state.amps[hi] = u.m10 * a0 + u.m11 * a1;
    }
}

void apply_circuit(Statevector& state, const std::vector<Gate>& gates) {
    for (const auto& g : gates) apply_gate(state, g);
}

double project_qubit(Statevector& state, int qubit, int outcome) {
    if (qubit < 0 || qubit >= state.n_qubits) throw std::invalid_argument("qubit out of range");
    if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
    std::uint64_t qmask = std::uint64_t{1} << qubit;
    double prob = 0.0;
    for (std::uint64_t idx = 0; idx < state.amps.size(); ++idx)
        if (((idx & qmask) != 0) == (outcome == 1)) prob += std::norm(state.amps[idx]);
    if (prob < 1e-300) throw std::runtime_error("projection onto an empty branch");
    double inv = 1.0 / std::sqrt(prob);
    for (std::uint64_t idx = 0; idx < state.amps.size(); ++idx) {
        if (((idx & qmask) != 0) == (outcome == 1)) state.amps[idx] *= inv;
        else state.amps[idx] = 0.0;
    }
    return prob;
}

std::vector<double> marginal_distribution(const Statevector& state, const std::vector<int>& qubits) {
    for (int q : qubits)
        if (q < 0 || q >= state.n_qubits) throw std::invalid_argument("marginal qubit out of range");
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::uint64_t idx = 0; idx < state.amps.size(); ++idx) {
        std::uint64_t key = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j)
            if ((idx >> qubits[j]) & 1u) key |= std::uint64_t{1} << j;
        probs[key] += std::norm(state.amps[idx]);
    }
    return probs;
}

static const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "SDG";
        case GateKind::Tdg: return "TDG";
        case GateKind::T: return "T";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::Ry: return "RY";
        case GateKind::Rz: return "RZ";
        case GateKind::Phase: return "PHASE";
        case GateKind::CPhase: return "CPHASE";
        case GateKind::MCPhase: return "MCPHASE";
    }
    return "?";
}

std::string netlist(const std::vector<Gate>& gates) {
    std::ostringstream out;
    for (const auto& g : gates) {
        out << kind_name(g.kind);
        for (int c : g.controls) out << ' ' << c;
        out << ' ' << g.target;
        switch (g.kind) {
            case GateKind::Ry:
            case GateKind::Rz:
            case GateKind::Phase:
            case GateKind::CPhase:
            case GateKind::MCPhase: out << ' ' << format_real(g.angle); break;
            default: break;
        }
        out << '\n';
    }
    return out.str();
}

}
