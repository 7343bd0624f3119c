#include "qpeqite/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace qpeqite {

static void check_sequence(const SpinSequence& seq) {
    if (seq.size() < 2) throw std::invalid_argument("spin sequence needs at least 2 sites");
    for (int s : seq)
        if (s != 1 && s != -1) throw std::invalid_argument("spin values must be +1 or -1");
}

SpinSequence spins_from_bits(std::uint64_t bits, int n) {
    SpinSequence seq(n);
    for (int j = 0; j < n; ++j) seq[j] = ((bits >> j) & 1u) ? -1 : 1;
    return seq;
}

std::uint64_t bits_from_spins(const SpinSequence& seq) {
    check_sequence(seq);
    std::uint64_t bits = 0;
    for (std::size_t j = 0; j < seq.size(); ++j)
        if (seq[j] == -1) bits |= std::uint64_t{1} << j;
    return bits;
}

long long autocorrelation(const SpinSequence& seq, int k) {
    check_sequence(seq);
    int n = static_cast<int>(seq.size());
    if (k < 1 || k > n - 1) throw std::invalid_argument("autocorrelation lag out of range");
    long long a = 0;
    for (int i = 0; i + k < n; ++i) a += seq[i] * seq[i + k];
    return a;
}

long long sidelobe_energy(const SpinSequence& seq) {
    check_sequence(seq);
    int n = static_cast<int>(seq.size());
    long long e = 0;
    for (int k = 1; k < n; ++k) {
        long long a = autocorrelation(seq, k);
        e += a * a;
    }
    return e;
}

std::vector<int> ZMonomial::indices() const {
    std::vector<int> idx;
    for (int j = 0; j < 64; ++j)
        if ((mask >> j) & 1u) idx.push_back(j);
    return idx;
}

ZMonomial make_monomial(const std::vector<int>& indices, double coefficient, int n_qubits) {
    ZMonomial m;
    m.coefficient = coefficient;
    int prev = -1;
    for (int j : indices) {
        if (j <= prev) throw std::invalid_argument("monomial indices must be strictly increasing");
        if (j < 0 || j >= n_qubits) throw std::invalid_argument("monomial index out of range");
        m.mask |= std::uint64_t{1} << j;
        prev = j;
    }
    return m;
}

void add_term(DiagonalHamiltonian& h, const std::vector<int>& indices, double coefficient) {
    ZMonomial m = make_monomial(indices, coefficient, h.n_qubits);
    for (auto& t : h.terms) {
        if (t.mask == m.mask) {
            t.coefficient += coefficient;
            return;
        }
    }
    h.terms.push_back(m);
}

DiagonalHamiltonian labs_hamiltonian(int n) {
    if (n < 2) throw std::invalid_argument("labs_hamiltonian needs n >= 2");
    DiagonalHamiltonian h;
    h.n_qubits = n;
    // Sites below are 1-based to mirror the sum bounds; the floored upper
    // bound on t is exactly the constraint i + t + (t+1) <= n.
    for (int i = 1; i <= n; ++i) {
        for (int t = 1; t <= (n - i - 1) / 2; ++t)
            for (int k = t + 1; k <= n - i - t; ++k)
                add_term(h, {i - 1, i + t - 1, i + k - 1, i + t + k - 1}, 4.0);
        for (int k = 1; k <= (n - i) / 2; ++k)
            add_term(h, {i - 1, i + 2 * k - 1}, 2.0);
    }
    return h;
}

DiagonalHamiltonian with_offset(DiagonalHamiltonian h, double alpha) {
    h.alpha = alpha;
    return h;
}

double evaluate(const DiagonalHamiltonian& h, std::uint64_t bits) {
    if (h.n_qubits < 64 && (bits >> h.n_qubits) != 0)
        throw std::invalid_argument("bitstring does not fit the Hamiltonian's qubit count");
    double acc = 0.0;
    for (const auto& t : h.terms) {
        int parity = std::popcount(bits & t.mask) & 1;
        acc += parity ? -t.coefficient : t.coefficient;
    }
    return acc - h.alpha;
}

}
