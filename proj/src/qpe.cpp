#include "qpeqite/qpe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qpeqite/spectrum.hpp"

namespace qpeqite {

void validate(const RegisterConfig& cfg) {
    if (cfg.n_register < 1 || cfg.n_register > 20)
        throw std::invalid_argument("n_register must lie in [1, 20]");
    if (!(cfg.scale > 0.0) || !std::isfinite(cfg.scale))
        throw std::invalid_argument("scale must be finite and positive");
}

InitialState InitialState::uniform_state(int n) {
    if (n < 1) throw std::invalid_argument("initial state needs at least one qubit");
    InitialState b;
    b.n_qubits = n;
    b.uniform = true;
    return b;
}

InitialState InitialState::from_amplitudes(std::vector<std::complex<double>> amps) {
    if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0)
        throw std::invalid_argument("amplitude count must be a power of two");
    InitialState b;
    b.n_qubits = 0;
    while ((std::size_t{1} << b.n_qubits) < amps.size()) ++b.n_qubits;
    double norm = 0.0;
    for (auto& a : amps) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("initial state is not normalized");
    b.uniform = false;
    b.amplitudes = std::move(amps);
    return b;
}

// Signed sin(pi * x) with x reduced by its nearest integer, so integer x gives
// an exact 0 and the sign bookkeeping stays in exact integer arithmetic.
static double sin_pi(double x, long long* half_turns) {
    double r = std::nearbyint(x);
    double f = x - r;
    *half_turns = static_cast<long long>(r);
    return std::sin(std::numbers::pi * f);
}

double register_amplitude_sq(double energy, std::uint64_t p, const RegisterConfig& cfg) {
    validate(cfg);
    if (p >= cfg.dim()) throw std::invalid_argument("register value out of range");
    double M = static_cast<double>(cfg.dim());
    double phi = cfg.scale * energy - static_cast<double>(p);
    long long rn, rd;
    double num = sin_pi(phi, &rn);
    double den = sin_pi(phi / M, &rd);
    if (den == 0.0) return M * M;  // phi = 0 (mod M): every summand is 1
    double t = num / den;
    return t * t;
}

std::complex<double> register_amplitude(double energy, std::uint64_t p, const RegisterConfig& cfg) {
    validate(cfg);
    if (p >= cfg.dim()) throw std::invalid_argument("register value out of range");
    double M = static_cast<double>(cfg.dim());
    double phi = cfg.scale * energy - static_cast<double>(p);
    long long rn, rd;
    double num = sin_pi(phi, &rn);
    double den = sin_pi(phi / M, &rd);
    double ratio;
    if (den == 0.0) {
        ratio = M;
    } else {
        // Restore the signs dropped by range reduction: sin(pi x) flips once
        // per integer step of x.
        double sign = ((rn ^ rd) & 1) ? -1.0 : 1.0;
        ratio = sign * num / den;
    }
    double arg = std::numbers::pi * phi * (M - 1.0) / M;
    return std::polar(1.0, arg) * ratio;
}

QpeResult run_qpe(const DiagonalHamiltonian& h, const InitialState& b, const RegisterConfig& cfg) {
    validate(cfg);
    if (b.n_qubits != h.n_qubits)
        throw std::invalid_argument("initial state and Hamiltonian sizes differ");
    if (h.n_qubits > kEnumerationCap)
        throw std::invalid_argument("run_qpe: enumeration cap exceeded");

    QpeResult r;
    r.h = h;
    r.cfg = cfg;
    r.uniform_b = b.uniform;

    // Group basis states into energy levels. Equal energies come out as equal
    // doubles here because every state's energy is the same ordered sum over
    // terms, only with sign flips; for integer-valued Hamiltonians this is
    // exact.
    std::uint64_t dim = std::uint64_t{1} << h.n_qubits;
    std::map<double, std::size_t> level_of;
    double state_weight_uniform = 1.0 / static_cast<double>(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        double e = evaluate(h, x);
        double w = b.uniform ? state_weight_uniform : std::norm(b.amplitudes[x]);
        auto [it, fresh] = level_of.try_emplace(e, r.levels.size());
        if (fresh) r.levels.push_back({e, 0.0, 0, {}, {}});
        EnergyLevel& lev = r.levels[it->second];
        lev.weight += w;
        lev.count += 1;
        if (!b.uniform) {
            lev.states.push_back(x);
            lev.state_weights.push_back(w);
        }
    }
    std::sort(r.levels.begin(), r.levels.end(),
              [](const EnergyLevel& a, const EnergyLevel& c) { return a.energy < c.energy; });

    double min_e = r.levels.front().energy;
    double max_e = r.levels.back().energy;
    r.alpha_above_ground = min_e < 0.0;
    r.range_overflow = cfg.scale * max_e >= static_cast<double>(cfg.dim());

    std::uint64_t M = cfg.dim();
    double inv_m2 = 1.0 / (static_cast<double>(M) * static_cast<double>(M));
    r.register_distribution.assign(M, 0.0);
    double z = 0.0;
    for (const auto& lev : r.levels) {
        for (std::uint64_t p = 0; p < M; ++p) {
            double q = register_amplitude_sq(lev.energy, p, cfg) * inv_m2;
            r.register_distribution[p] += lev.weight * q;
            z += lev.weight * q;
        }
    }
    r.normalization = z;
    for (auto& v : r.register_distribution) v /= z;
    return r;
}

double QpeResult::joint_weight(std::size_t level, std::uint64_t p) const {
    const EnergyLevel& lev = levels.at(level);
    double m = static_cast<double>(cfg.dim());
    double q = register_amplitude_sq(lev.energy, p, cfg) / (m * m);
    return lev.weight * q / normalization;
}

std::vector<EnergyEstimate> energy_estimates(const QpeResult& result) {
    std::vector<EnergyEstimate> out;
    out.reserve(result.register_distribution.size());
    for (std::uint64_t p = 0; p < result.register_distribution.size(); ++p)
        out.push_back({p, result.register_distribution[p],
                       static_cast<double>(p) / result.cfg.scale});
    std::stable_sort(out.begin(), out.end(), [](const EnergyEstimate& a, const EnergyEstimate& b) {
        if (a.probability != b.probability) return a.probability > b.probability;
        return a.p < b.p;
    });
    return out;
}

}
