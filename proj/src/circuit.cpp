#include "qpeqite/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qpeqite/synthesis.hpp"

namespace qpeqite {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<Gate> qft_register_gates(int n_register, int base) {
    if (n_register < 1) throw std::invalid_argument("qft_register_gates: need >= 1 qubit");
    if (base < 0) throw std::invalid_argument("qft_register_gates: negative base");
    std::vector<Gate> g;
    for (int j = n_register - 1; j >= 0; --j) {
        g.push_back(Gate::h(base + j));
        for (int m = j - 1; m >= 0; --m)
            g.push_back(Gate::cphase(base + m, base + j, -kPi / static_cast<double>(1ull << (j - m))));
    }
    for (int j = 0; 2 * j + 1 < n_register; ++j) {
        int a = base + j, b = base + n_register - 1 - j;
        g.push_back(Gate::cnot(a, b));
        g.push_back(Gate::cnot(b, a));
        g.push_back(Gate::cnot(a, b));
    }
    return g;
}

BuiltCircuit build_qpe_qite_circuit(const DiagonalHamiltonian& h, const RegisterConfig& cfg,
                                    double tau, int qubit_cap) {
    validate(cfg);
    if (h.n_qubits < 1) throw std::invalid_argument("build_qpe_qite_circuit: empty system");
    if (tau < 0.0) throw std::invalid_argument("build_qpe_qite_circuit: tau must be >= 0");
    BuiltCircuit c;
    c.layout = {h.n_qubits, cfg.n_register};
    c.tau = tau;
    if (c.layout.total_qubits() > qubit_cap)
        throw std::invalid_argument("build_qpe_qite_circuit: circuit needs " +
                                    std::to_string(c.layout.total_qubits()) +
                                    " qubits, cap is " + std::to_string(qubit_cap));
    const CircuitLayout& L = c.layout;
    std::vector<Gate>& g = c.gates;

    for (int i = 0; i < L.n_state; ++i) g.push_back(Gate::h(L.state_qubit(i)));
    for (int r = 0; r < L.n_register; ++r) g.push_back(Gate::h(L.register_qubit(r)));

    // Controlled evolution: conditioned on register bit r, each monomial
    // contributes exp(i phi z_T) with phi = 2 pi l 2^r c_T / M, realized as a
    // CNOT parity ladder onto the last involved site, a controlled phase of
    // -2 phi between the register bit and that site, and a bare phase of +phi
    // on the register bit (exp(i phi z) = exp(i phi) exp(-2 i phi parity)).
    double m = static_cast<double>(cfg.dim());
    for (int r = 0; r < L.n_register; ++r) {
        int rq = L.register_qubit(r);
        double pow2 = static_cast<double>(1ull << r);
        for (const ZMonomial& t : h.terms) {
            double phi = 2.0 * kPi * cfg.scale * pow2 * t.coefficient / m;
            std::vector<int> sites = t.indices();
            if (sites.empty()) {
                g.push_back(Gate::phase(rq, phi));
                continue;
            }
            int parity = L.state_qubit(sites.back());
            for (std::size_t j = 0; j + 1 < sites.size(); ++j)
                g.push_back(Gate::cnot(L.state_qubit(sites[j]), parity));
            g.push_back(Gate::cphase(rq, parity, -2.0 * phi));
            g.push_back(Gate::phase(rq, phi));
            for (std::size_t j = sites.size() - 1; j-- > 0;)
                g.push_back(Gate::cnot(L.state_qubit(sites[j]), parity));
        }
        if (h.alpha != 0.0)
            g.push_back(Gate::phase(rq, -2.0 * kPi * cfg.scale * pow2 * h.alpha / m));
    }

    std::vector<Gate> qft = qft_register_gates(L.n_register, L.register_qubit(0));
    g.insert(g.end(), qft.begin(), qft.end());

    // Register-multiplexed ancilla rotation Ry(2 exp(-p tau)).
    std::vector<double> angles(cfg.dim());
    for (std::uint64_t p = 0; p < cfg.dim(); ++p)
        angles[p] = 2.0 * std::exp(-static_cast<double>(p) * tau);
    for (Gate gate : decompose_multiplexed_ry(angles)) {
        auto remap = [&](int q) {
            return q == L.n_register ? L.ancilla_qubit() : L.register_qubit(q);
        };
        for (int& ctrl : gate.controls) ctrl = remap(ctrl);
        gate.target = remap(gate.target);
        g.push_back(gate);
    }
    return c;
}

std::string circuit_netlist(const BuiltCircuit& c) {
    std::ostringstream os;
    os << "# qubits " << c.layout.total_qubits() << " state " << c.layout.n_state << " register "
       << c.layout.n_register << " ancilla " << c.layout.ancilla_qubit() << "\n";
    os << netlist(c.gates);
    return os.str();
}

}
