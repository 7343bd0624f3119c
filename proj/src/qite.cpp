#include "qpeqite/qite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qpeqite {

// Per-level ground-set weight: how much of each level's |b|^2 mass lies in
// the ground set. Levels are looked up by exact energy match — members were
// grouped by the very same evaluate() calls inside run_qpe.
static std::vector<double> ground_mass_by_level(const QpeResult& qpe,
                                                const std::vector<std::uint64_t>& ground_set) {
    if (ground_set.empty()) throw std::invalid_argument("ground set is empty");
    std::map<double, std::size_t> level_of;
    for (std::size_t i = 0; i < qpe.levels.size(); ++i)
        level_of.emplace(qpe.levels[i].energy, i);

    std::vector<double> mass(qpe.levels.size(), 0.0);
    double uniform_w = 1.0 / static_cast<double>(std::uint64_t{1} << qpe.h.n_qubits);
    for (std::uint64_t x : ground_set) {
        double e = evaluate(qpe.h, x);
        auto it = level_of.find(e);
        if (it == level_of.end())
            throw std::invalid_argument("ground-set state does not match any energy level");
        if (qpe.uniform_b) {
            mass[it->second] += uniform_w;
        } else {
            const EnergyLevel& lev = qpe.levels[it->second];
            for (std::size_t j = 0; j < lev.states.size(); ++j)
                if (lev.states[j] == x) {
                    mass[it->second] += lev.state_weights[j];
                    break;
                }
        }
    }
    return mass;
}

static double ancilla_weight(std::uint64_t p, double tau) {
    double s = std::sin(std::exp(-static_cast<double>(p) * tau));
    return s * s;
}

QiteOutcome apply_qite(const QpeResult& qpe, const std::vector<std::uint64_t>& ground_set,
                       double tau) {
    if (tau < 0.0 || !std::isfinite(tau)) throw std::invalid_argument("tau must be finite and >= 0");
    std::vector<double> gmass = ground_mass_by_level(qpe, ground_set);

    std::uint64_t M = qpe.cfg.dim();
    double m = static_cast<double>(M);
    double inv_m2 = 1.0 / (m * m);
    std::vector<double> s(M);
    for (std::uint64_t p = 0; p < M; ++p) s[p] = ancilla_weight(p, tau);

    QiteOutcome out;
    out.tau = tau;
    out.table_stored = qpe.levels.size() * M <= (std::uint64_t{1} << 22);
    if (out.table_stored) out.postselected.assign(qpe.levels.size(), std::vector<double>(M, 0.0));
    out.post_register.assign(M, 0.0);

    // A_L = sum_p q_L(p) s(p) with q_L the per-unit-weight bin profile.
    std::vector<double> damped(qpe.levels.size(), 0.0);
    for (std::size_t L = 0; L < qpe.levels.size(); ++L) {
        const EnergyLevel& lev = qpe.levels[L];
        double a = 0.0;
        for (std::uint64_t p = 0; p < M; ++p) {
            double qs = register_amplitude_sq(lev.energy, p, qpe.cfg) * inv_m2 * s[p];
            a += qs;
            out.post_register[p] += lev.weight * qs;
            if (out.table_stored) out.postselected[L][p] = lev.weight * qs;
        }
        damped[L] = a;
    }

    double selected = 0.0, ground = 0.0;
    for (std::size_t L = 0; L < qpe.levels.size(); ++L) {
        selected += qpe.levels[L].weight * damped[L];
        ground += gmass[L] * damped[L];
    }
    out.success_probability = selected / qpe.normalization;
    out.ground_overlap = selected > 0.0 ? ground / selected : 0.0;
    for (auto& v : out.post_register) v /= selected;
    if (out.table_stored)
        for (auto& row : out.postselected)
            for (auto& v : row) v /= selected;
    return out;
}

double overlap_without_qite(const QpeResult& qpe, const std::vector<std::uint64_t>& ground_set) {
    // Summing the joint table over p would reintroduce ~1e-15 Parseval noise;
    // the p-marginal of each level is exactly its weight, so use that.
    std::vector<double> gmass = ground_mass_by_level(qpe, ground_set);
    double ground = 0.0, total = 0.0;
    for (std::size_t L = 0; L < qpe.levels.size(); ++L) {
        ground += gmass[L];
        total += qpe.levels[L].weight;
    }
    return ground / total;
}

// Overlap only, skipping marginals and tables — min_tau calls this a lot.
static double overlap_at(const QpeResult& qpe, const std::vector<double>& gmass, double tau) {
    std::uint64_t M = qpe.cfg.dim();
    double selected = 0.0, ground = 0.0;
    for (std::size_t L = 0; L < qpe.levels.size(); ++L) {
        double a = 0.0;
        for (std::uint64_t p = 0; p < M; ++p)
            a += register_amplitude_sq(qpe.levels[L].energy, p, qpe.cfg) * ancilla_weight(p, tau);
        selected += qpe.levels[L].weight * a;
        ground += gmass[L] * a;
    }
    return selected > 0.0 ? ground / selected : 0.0;
}

MinTauResult min_tau(const DiagonalHamiltonian& h, const InitialState& b,
                     const RegisterConfig& cfg, const std::vector<std::uint64_t>& ground_set,
                     double threshold, const std::vector<double>& grid) {
    if (!(threshold > 0.0) || threshold > 1.0)
        throw std::invalid_argument("threshold must lie in (0, 1]");
    if (grid.empty()) throw std::invalid_argument("tau grid is empty");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1])) throw std::invalid_argument("tau grid must be ascending");
    if (grid.front() < 0.0) throw std::invalid_argument("tau must be >= 0");

    QpeResult qpe = run_qpe(h, b, cfg);
    std::vector<double> gmass = ground_mass_by_level(qpe, ground_set);
    double norm = static_cast<double>((std::uint64_t{1} << h.n_qubits) - 1);

    MinTauResult res;
    double best = -1.0, best_tau = grid.front();
    std::size_t hit = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double v = overlap_at(qpe, gmass, grid[i]);
        if (v > best) {
            best = v;
            best_tau = grid[i];
        }
        if (v >= threshold) {
            hit = i;
            break;
        }
    }
    res.max_overlap = best;

    if (hit == grid.size()) {
        res.found = false;
        res.tau = best_tau;
        res.tau_normalized = best_tau / norm;
        res.outcome = apply_qite(qpe, ground_set, best_tau);
        return res;
    }

    double tau_star = grid[hit];
    if (hit > 0) {
        double lo = grid[hit - 1], hi = grid[hit];
        while (hi - lo > 1e-6 * std::max(hi, 1e-9)) {
            double mid = 0.5 * (lo + hi);
            if (overlap_at(qpe, gmass, mid) >= threshold) hi = mid;
            else lo = mid;
        }
        tau_star = hi;
    }
    res.found = true;
    res.tau = tau_star;
    res.tau_normalized = tau_star / norm;
    res.outcome = apply_qite(qpe, ground_set, tau_star);
    res.max_overlap = std::max(best, res.outcome.ground_overlap);
    return res;
}

}
