#include "qpeqite/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qpeqite/util.hpp"

namespace qpeqite {

Spectrum enumerate_spectrum(const DiagonalHamiltonian& h, int jobs, int qubit_cap) {
    if (h.n_qubits < 1) throw std::invalid_argument("enumerate_spectrum: empty system");
    if (h.n_qubits > qubit_cap) throw std::invalid_argument("enumerate_spectrum: qubit cap exceeded");
    std::uint64_t dim = std::uint64_t{1} << h.n_qubits;

    Spectrum s;
    s.energies.resize(dim);
    parallel_for(dim, jobs, [&](std::size_t x) { s.energies[x] = evaluate(h, x); });

    s.ground_energy = s.energies[0];
    s.max_energy = s.energies[0];
    for (std::uint64_t x = 1; x < dim; ++x) {
        if (s.energies[x] < s.ground_energy) s.ground_energy = s.energies[x];
        if (s.energies[x] > s.max_energy) s.max_energy = s.energies[x];
    }
    double second = std::numeric_limits<double>::infinity();
    for (std::uint64_t x = 0; x < dim; ++x) {
        double e = s.energies[x];
        if (e == s.ground_energy) s.ground_set.push_back(x);
        else if (e < second) second = e;
    }
    if (std::isfinite(second)) {
        s.has_gap = true;
        s.gap = second - s.ground_energy;
    }
    return s;
}

std::vector<ArchiveEntry> load_archive(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("archive not readable: " + path);
    std::vector<ArchiveEntry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int n;
        double e;
        if (!(ls >> n)) {
            std::string rest;
            std::istringstream probe(line);
            if (probe >> rest)  // non-numeric junk, not just whitespace
                throw std::runtime_error("archive parse error at line " + std::to_string(lineno));
            continue;  // blank or comment-only line
        }
        if (!(ls >> e))
            throw std::runtime_error("archive parse error at line " + std::to_string(lineno));
        std::string extra;
        if (ls >> extra)
            throw std::runtime_error("archive parse error at line " + std::to_string(lineno) +
                                     ": trailing content");
        if (n < 2 || e < 0.0)
            throw std::runtime_error("archive entry out of range at line " + std::to_string(lineno));
        entries.push_back({n, e});
    }
    std::sort(entries.begin(), entries.end(),
              [](const ArchiveEntry& a, const ArchiveEntry& b) { return a.n < b.n; });
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i].n == entries[i - 1].n)
            throw std::runtime_error("archive holds duplicate entries for N=" +
                                     std::to_string(entries[i].n));
    return entries;
}

static FitResult least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::size_t m = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double det = m * sxx - sx * sx;
    if (det == 0.0) throw std::invalid_argument("fit is degenerate: all abscissae equal");
    FitResult f;
    f.exponent = (m * sxy - sx * sy) / det;
    double intercept = (sy * sxx - sx * sxy) / det;
    f.prefactor = intercept;
    double ss = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double r = ys[i] - (intercept + f.exponent * xs[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / m);
    return f;
}

FitResult fit_gap_exponent(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_gap_exponent needs at least 3 points");
    std::vector<double> xs, ys;
    for (auto& [n, de] : points) {
        if (n <= 0.0 || de <= 0.0)
            throw std::invalid_argument("fit_gap_exponent needs positive points");
        xs.push_back(std::log(n));
        ys.push_back(std::log(de));
    }
    FitResult f = least_squares(xs, ys);
    f.prefactor = std::exp(f.prefactor);
    return f;
}

FitResult fit_log_linear(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_log_linear needs at least 3 points");
    std::vector<double> xs, ys;
    for (auto& [x, y] : points) {
        if (x <= 0.0) throw std::invalid_argument("fit_log_linear needs positive abscissae");
        xs.push_back(std::log(x));
        ys.push_back(y);
    }
    return least_squares(xs, ys);
}

}
