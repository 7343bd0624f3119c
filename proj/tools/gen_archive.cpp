// Regenerates the optimal-sidelobe-energy archive by exhaustive enumeration.
// Usage: gen_archive [out_path] [n_max]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "qpeqite/hamiltonian.hpp"
#include "qpeqite/spectrum.hpp"

int main(int argc, char** argv) {
    std::string out_path = argc > 1 ? argv[1] : "data/labs_optima.txt";
    int n_max = argc > 2 ? std::atoi(argv[2]) : 21;
    if (n_max < 2 || n_max > qpeqite::kEnumerationCap) {
        std::cerr << "n_max must be in [2, " << qpeqite::kEnumerationCap << "]\n";
        return 2;
    }
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot open " << out_path << "\n";
        return 2;
    }
    out << "# optimal sidelobe energies, exhaustive search\n";
    out << "# N E_opt\n";
    for (int n = 2; n <= n_max; ++n) {
        qpeqite::Spectrum s = qpeqite::enumerate_spectrum(qpeqite::labs_hamiltonian(n), jobs);
        long long c = static_cast<long long>(n) * (n - 1) / 2;
        long long opt = static_cast<long long>(s.ground_energy) + c;
        out << n << " " << opt << "\n";
        std::cerr << "N=" << n << " E_opt=" << opt << " (" << s.ground_set.size()
                  << " optimal states)\n";
    }
    return 0;
}
