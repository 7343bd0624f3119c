#pragma once

#include <cstdint>
#include <vector>

namespace qpeqite {

// A +/-1 spin configuration. Basis-state bits map to spins via
// sigma_j = 1 - 2*bit_j, so bit 0 (the LSB of a basis index) is site 0 and
// |0> carries spin +1, matching Z|0> = +|0>.
using SpinSequence = std::vector<int>;

SpinSequence spins_from_bits(std::uint64_t bits, int n);
std::uint64_t bits_from_spins(const SpinSequence& seq);

// Aperiodic autocorrelation A_k = sum_i sigma_i sigma_{i+k}, 1 <= k <= N-1.
long long autocorrelation(const SpinSequence& seq, int k);

// Sidelobe energy: sum over k of A_k^2. Defined for N >= 2.
long long sidelobe_energy(const SpinSequence& seq);

// Product of Z factors over the sites in `mask` (empty mask = constant term).
struct ZMonomial {
    double coefficient = 0.0;
    std::uint64_t mask = 0;

    std::vector<int> indices() const;
};

ZMonomial make_monomial(const std::vector<int>& indices, double coefficient, int n_qubits);

// Sum of Z monomials minus a constant offset alpha. Terms hold distinct masks;
// add_term merges duplicates by summing coefficients.
struct DiagonalHamiltonian {
    int n_qubits = 0;
    std::vector<ZMonomial> terms;
    double alpha = 0.0;

    std::size_t term_count() const { return terms.size(); }
};

void add_term(DiagonalHamiltonian& h, const std::vector<int>& indices, double coefficient);

// The LABS cost function as a Z polynomial: four-body terms
// Z_i Z_{i+t} Z_{i+k} Z_{i+t+k} (coefficient 4, summed over 1 <= t < k with
// i+t+k <= N) plus two-body terms Z_i Z_{i+2k} (coefficient 2, i+2k <= N),
// with alpha = 0. Evaluating it on any bitstring gives the sidelobe energy of
// the corresponding spin sequence minus the constant sum_{k=1}^{N-1} (N-k);
// that constant offset is deliberately not folded in (callers control alpha).
DiagonalHamiltonian labs_hamiltonian(int n);

DiagonalHamiltonian with_offset(DiagonalHamiltonian h, double alpha);

// sum_terms coeff * prod_{j in mask} sigma_j - alpha, bits indexed as above.
double evaluate(const DiagonalHamiltonian& h, std::uint64_t bits);

}
