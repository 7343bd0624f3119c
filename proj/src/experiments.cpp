#include "qpeqite/experiments.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qpeqite/circuit.hpp"
#include "qpeqite/qite.hpp"
#include "qpeqite/qpe.hpp"
#include "qpeqite/spectrum.hpp"
#include "qpeqite/statevector.hpp"
#include "qpeqite/synthesis.hpp"
#include "qpeqite/util.hpp"

namespace qpeqite {

namespace {

using nlohmann::ordered_json;

constexpr double kValidateTol = 1e-10;

long long pair_constant(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

std::string bit_string(std::uint64_t bits, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int j = 0; j < n; ++j)
        if ((bits >> j) & 1) s[j] = '1';
    return s;
}

std::string render_cell(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_real(v.get<double>());
    return v.dump();
}

void write_table(std::ostream& out, const std::string& format,
                 const std::vector<std::string>& columns, const std::vector<ordered_json>& rows,
                 const std::vector<std::string>& comments_before = {},
                 const std::vector<std::string>& comments_after = {},
                 ordered_json wrapper = nullptr) {
    if (format == "json") {
        ordered_json doc;
        if (wrapper.is_object()) {
            doc = std::move(wrapper);
            doc["rows"] = rows;
        } else {
            doc = rows;
        }
        out << doc.dump(2) << "\n";
        return;
    }
    for (const std::string& c : comments_before) out << "# " << c << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const ordered_json& row : rows) {
        bool first = true;
        for (const std::string& c : columns) {
            if (!first) out << ',';
            first = false;
            out << render_cell(row.at(c));
        }
        out << "\n";
    }
    for (const std::string& c : comments_after) out << "# " << c << "\n";
}

void check_format(const RunConfig& cfg) {
    if (cfg.format != "csv" && cfg.format != "json")
        throw std::invalid_argument("format must be csv or json");
}

std::vector<double> tau_grid(const RunConfig& cfg) {
    if (cfg.tau_steps < 1) throw std::invalid_argument("tau grid needs at least one step");
    if (cfg.tau_stop < cfg.tau_start) throw std::invalid_argument("tau grid must ascend");
    double norm = cfg.tau_normalized ? static_cast<double>((std::uint64_t{1} << cfg.n) - 1) : 1.0;
    std::vector<double> grid(static_cast<std::size_t>(cfg.tau_steps));
    if (cfg.tau_steps == 1) {
        grid[0] = cfg.tau_start * norm;
        return grid;
    }
    for (int i = 0; i < cfg.tau_steps; ++i)
        grid[static_cast<std::size_t>(i)] =
            (cfg.tau_start + (cfg.tau_stop - cfg.tau_start) * i / (cfg.tau_steps - 1)) * norm;
    return grid;
}

SpinSequence parse_sequence(const std::string& s) {
    SpinSequence seq;
    seq.reserve(s.size());
    for (char c : s) {
        if (c == '0' || c == '+')
            seq.push_back(1);
        else if (c == '1' || c == '-')
            seq.push_back(-1);
        else
            throw std::invalid_argument(std::string("bad sequence character '") + c + "'");
    }
    return seq;
}

Unitary2 parse_synth_target(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("target must look like rz:<angle> or ry:<angle>");
    std::string axis = spec.substr(0, colon);
    double angle = std::stod(spec.substr(colon + 1));
    if (axis == "rz") return Unitary2::rz(angle);
    if (axis == "ry") return Unitary2::ry(angle);
    throw std::invalid_argument("target axis must be rz or ry");
}

UarMode parse_uar(const std::string& s) {
    if (s == "exact") return UarMode::Exact;
    if (s == "taylor0") return UarMode::Taylor0;
    if (s == "taylor1") return UarMode::Taylor1;
    throw std::invalid_argument("uar must be exact, taylor0 or taylor1");
}

}  // namespace

double resolve_alpha(const RunConfig& cfg) {
    if (cfg.alpha != "auto") {
        std::size_t used = 0;
        double v = std::stod(cfg.alpha, &used);
        if (used != cfg.alpha.size()) throw std::invalid_argument("alpha: not a number");
        return v;
    }
    if (!cfg.archive.empty()) {
        for (const ArchiveEntry& e : load_archive(cfg.archive))
            if (e.n == cfg.n) return e.optimal_energy - static_cast<double>(pair_constant(cfg.n));
        throw std::invalid_argument("alpha auto: archive has no entry for N=" +
                                    std::to_string(cfg.n));
    }
    if (cfg.n > kEnumerationCap)
        throw std::invalid_argument(
            "alpha auto: N exceeds the enumeration cap; pass --archive or a numeric alpha");
    return enumerate_spectrum(labs_hamiltonian(cfg.n), cfg.jobs).ground_energy;
}

int cmd_energy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_format(cfg);
    if (cfg.sequence.empty()) {
        err << "energy: --sequence is required\n";
        return 2;
    }
    SpinSequence seq = parse_sequence(cfg.sequence);
    int n = static_cast<int>(seq.size());
    long long e = sidelobe_energy(seq);
    double hval = evaluate(labs_hamiltonian(n), bits_from_spins(seq));
    ordered_json row;
    row["bitstring"] = bit_string(bits_from_spins(seq), n);
    row["sidelobe_energy"] = e;
    row["hamiltonian_value"] = hval;
    write_table(out, cfg.format, {"bitstring", "sidelobe_energy", "hamiltonian_value"}, {row});
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    check_format(cfg);
    DiagonalHamiltonian h = labs_hamiltonian(cfg.n);
    Spectrum spec = enumerate_spectrum(h, cfg.jobs);
    double c = static_cast<double>(pair_constant(cfg.n));
    std::vector<ordered_json> rows;
    rows.reserve(spec.energies.size());
    for (std::uint64_t b = 0; b < spec.energies.size(); ++b) {
        ordered_json row;
        row["bitstring"] = bit_string(b, cfg.n);
        row["energy"] = spec.energies[b] + c;  // sidelobe scale, matches the archive
        rows.push_back(std::move(row));
    }
    write_table(out, cfg.format, {"bitstring", "energy"}, rows);
    return 0;
}

int cmd_qpe(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_format(cfg);
    DiagonalHamiltonian h = with_offset(labs_hamiltonian(cfg.n), resolve_alpha(cfg));
    RegisterConfig rc{cfg.n_register, cfg.scale};
    QpeResult res = run_qpe(h, InitialState::uniform_state(cfg.n), rc);
    if (res.range_overflow)
        err << "warning: scaled energy range exceeds the register capacity (aliasing)\n";
    if (res.alpha_above_ground)
        err << "warning: alpha lies above the ground energy (negative shifted energies)\n";
    std::vector<ordered_json> rows;
    rows.reserve(res.register_distribution.size());
    for (std::uint64_t p = 0; p < res.register_distribution.size(); ++p) {
        ordered_json row;
        row["p"] = p;
        row["probability"] = res.register_distribution[p];
        rows.push_back(std::move(row));
    }
    write_table(out, cfg.format, {"p", "probability"}, rows);
    return 0;
}

int cmd_qite_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    check_format(cfg);
    DiagonalHamiltonian h = with_offset(labs_hamiltonian(cfg.n), resolve_alpha(cfg));
    Spectrum spec = enumerate_spectrum(h, cfg.jobs);
    RegisterConfig rc{cfg.n_register, cfg.scale};
    QpeResult res = run_qpe(h, InitialState::uniform_state(cfg.n), rc);
    double no_filter = overlap_without_qite(res, spec.ground_set);
    std::vector<double> grid = tau_grid(cfg);
    double norm = static_cast<double>((std::uint64_t{1} << cfg.n) - 1);
    std::vector<ordered_json> rows(grid.size());
    parallel_for(grid.size(), cfg.jobs, [&](std::size_t i) {
        QiteOutcome o = apply_qite(res, spec.ground_set, grid[i]);
        ordered_json row;
        row["tau"] = grid[i];
        row["tau_normalized"] = grid[i] / norm;
        row["ground_overlap"] = o.ground_overlap;
        row["success_probability"] = o.success_probability;
        row["overlap_no_qite"] = no_filter;
        rows[i] = std::move(row);
    });
    write_table(out, cfg.format,
                {"tau", "tau_normalized", "ground_overlap", "success_probability",
                 "overlap_no_qite"},
                rows);
    return 0;
}

int cmd_min_tau(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    check_format(cfg);
    DiagonalHamiltonian h = with_offset(labs_hamiltonian(cfg.n), resolve_alpha(cfg));
    Spectrum spec = enumerate_spectrum(h, cfg.jobs);
    RegisterConfig rc{cfg.n_register, cfg.scale};
    MinTauResult r = min_tau(h, InitialState::uniform_state(cfg.n), rc, spec.ground_set,
                             cfg.threshold, tau_grid(cfg));
    ordered_json row;
    row["found"] = r.found;
    row["tau"] = r.tau;
    row["tau_normalized"] = r.tau_normalized;
    row["ground_overlap"] = r.outcome.ground_overlap;
    row["success_probability"] = r.outcome.success_probability;
    row["max_overlap"] = r.max_overlap;
    write_table(out, cfg.format,
                {"found", "tau", "tau_normalized", "ground_overlap", "success_probability",
                 "max_overlap"},
                {row});
    return 0;
}

int cmd_nr_scaling(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    check_format(cfg);
    if (cfg.n_min < 2 || cfg.n_max < cfg.n_min || cfg.n_max > kEnumerationCap)
        throw std::invalid_argument("nr-scaling: need 2 <= n_min <= n_max <= enumeration cap");
    const std::string criterion =
        "minimal N_R with 2^N_R > max_energy - E_0 and l*gap >= 1";
    std::vector<ordered_json> rows;
    std::vector<std::pair<double, double>> fit_points;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        Spectrum spec = enumerate_spectrum(labs_hamiltonian(n), cfg.jobs);
        double c = static_cast<double>(pair_constant(n));
        double range = spec.max_energy - spec.ground_energy;
        int nr = 0;
        while (std::ldexp(1.0, nr) <= range) ++nr;
        nr = std::max(nr, 1);
        bool resolved = spec.has_gap && cfg.scale * spec.gap >= 1.0;
        ordered_json row;
        row["n"] = n;
        row["ground_energy"] = spec.ground_energy + c;
        row["max_energy"] = spec.max_energy + c;
        row["gap"] = spec.has_gap ? spec.gap : 0.0;
        row["n_register"] = nr;
        row["gap_resolved"] = resolved;
        rows.push_back(std::move(row));
        fit_points.emplace_back(static_cast<double>(n), static_cast<double>(nr));
    }
    FitResult fit = fit_log_linear(fit_points);
    std::ostringstream fit_line;
    fit_line << "fit n_register = a + b*log(n): a=" << format_real(fit.prefactor)
             << " b=" << format_real(fit.exponent) << " residual=" << format_real(fit.residual);
    ordered_json wrapper = ordered_json::object();
    wrapper["criterion"] = criterion;
    wrapper["fit"] = {{"intercept", fit.prefactor},
                      {"slope", fit.exponent},
                      {"residual", fit.residual}};
    write_table(out, cfg.format,
                {"n", "ground_energy", "max_energy", "gap", "n_register", "gap_resolved"}, rows,
                {"minimal N_R criterion: " + criterion}, {fit_line.str()}, std::move(wrapper));
    return 0;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    check_format(cfg);
    Unitary2 target = parse_synth_target(cfg.target);
    EpsilonNet net = build_epsilon_net(cfg.net_length);
    SynthesisResult r = sk_synthesize(target, cfg.depth, net);
    if (cfg.format == "json") {
        ordered_json doc;
        doc["target"] = cfg.target;
        doc["word"] = word_string(r.word);
        doc["length"] = r.word.size();
        doc["t_count"] = r.t_count;
        doc["error"] = r.error;
        out << doc.dump(2) << "\n";
    } else {
        out << synthesis_text(r);
    }
    return 0;
}

int cmd_resources(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    check_format(cfg);
    DiagonalHamiltonian h = with_offset(labs_hamiltonian(cfg.n), resolve_alpha(cfg));
    RegisterConfig rc{cfg.n_register, cfg.scale};
    EpsilonNet net = build_epsilon_net(cfg.net_length);
    ResourceReport rep =
        resource_report(h, rc, cfg.tau, cfg.eps, net, cfg.depth, parse_uar(cfg.uar));
    if (cfg.format == "json") {
        ordered_json doc;
        doc["eps_met"] = rep.eps_met;
        doc["qpe_rotations"] = rep.qpe_rotations;
        doc["qft_rotations"] = rep.qft_rotations;
        doc["uar_rotations"] = rep.uar_rotations;
        doc["cnot_total"] = rep.cnot_total;
        doc["t_total"] = rep.t_total;
        std::vector<ordered_json> rows;
        for (const ResourceStage& s : rep.stages) {
            ordered_json row;
            row["stage"] = s.name;
            row["rotations"] = s.rotations;
            row["cnots"] = s.cnots;
            row["t_count"] = s.t_count;
            row["eps_used"] = s.eps_achieved;
            rows.push_back(std::move(row));
        }
        doc["rows"] = rows;
        out << doc.dump(2) << "\n";
    } else {
        out << resource_csv(rep);
    }
    return 0;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_format(cfg);
    DiagonalHamiltonian h = with_offset(labs_hamiltonian(cfg.n), resolve_alpha(cfg));
    Spectrum spec = enumerate_spectrum(h, cfg.jobs);
    RegisterConfig rc{cfg.n_register, cfg.scale};

    QpeResult res = run_qpe(h, InitialState::uniform_state(cfg.n), rc);
    QiteOutcome closed = apply_qite(res, spec.ground_set, cfg.tau);

    BuiltCircuit circuit = build_qpe_qite_circuit(h, rc, cfg.tau);
    Statevector state(circuit.layout.total_qubits());
    apply_circuit(state, circuit.gates);
    double success = project_qubit(state, circuit.layout.ancilla_qubit(), 1);
    std::vector<int> reg_qubits(static_cast<std::size_t>(rc.n_register));
    for (int r = 0; r < rc.n_register; ++r)
        reg_qubits[static_cast<std::size_t>(r)] = circuit.layout.register_qubit(r);
    std::vector<double> marginal = marginal_distribution(state, reg_qubits);

    double tv = 0.0;
    for (std::size_t p = 0; p < marginal.size(); ++p)
        tv += std::abs(marginal[p] - closed.post_register[p]);
    tv *= 0.5;
    double dsucc = std::abs(success - closed.success_probability);

    ordered_json row;
    row["tv_distance"] = tv;
    row["success_delta"] = dsucc;
    write_table(out, cfg.format, {"tv_distance", "success_delta"}, {row});
    bool ok = tv <= kValidateTol && dsucc <= kValidateTol;
    if (!ok)
        err << "validate: circuit and closed form disagree (tv=" << format_real(tv)
            << " success_delta=" << format_real(dsucc) << ")\n";
    return ok ? 0 : 1;
}

int dispatch(const RunConfig& cfg, std::ostream& err) {
    int (*fn)(const RunConfig&, std::ostream&, std::ostream&) = nullptr;
    if (cfg.command == "energy") fn = cmd_energy;
    else if (cfg.command == "spectrum") fn = cmd_spectrum;
    else if (cfg.command == "qpe") fn = cmd_qpe;
    else if (cfg.command == "qite-sweep") fn = cmd_qite_sweep;
    else if (cfg.command == "min-tau") fn = cmd_min_tau;
    else if (cfg.command == "nr-scaling") fn = cmd_nr_scaling;
    else if (cfg.command == "synth") fn = cmd_synth;
    else if (cfg.command == "resources") fn = cmd_resources;
    else if (cfg.command == "validate") fn = cmd_validate;
    if (!fn) {
        err << "error: unknown command '" << cfg.command << "'\n";
        return 2;
    }
    try {
        if (cfg.out_path.empty() || cfg.out_path == "-") return fn(cfg, std::cout, err);
        std::ofstream out(cfg.out_path);
        if (!out) {
            err << "error: cannot open '" << cfg.out_path << "' for writing\n";
            return 2;
        }
        int rc = fn(cfg, out, err);
        out.flush();
        if (!out) {
            err << "error: write to '" << cfg.out_path << "' failed\n";
            return 2;
        }
        return rc;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}
