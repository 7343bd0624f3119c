#include "qpeqite/synthesis.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qpeqite {

namespace {
constexpr double kPi = std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};
}

Unitary2 Unitary2::operator*(const Unitary2& o) const {
    Unitary2 r;
    r.m00 = m00 * o.m00 + m01 * o.m10;
    r.m01 = m00 * o.m01 + m01 * o.m11;
    r.m10 = m10 * o.m00 + m11 * o.m10;
    r.m11 = m10 * o.m01 + m11 * o.m11;
    return r;
}

Unitary2 Unitary2::dagger() const {
    Unitary2 r;
    r.m00 = std::conj(m00);
    r.m01 = std::conj(m10);
    r.m10 = std::conj(m01);
    r.m11 = std::conj(m11);
    return r;
}

Unitary2 Unitary2::rotation(double theta, double nx, double ny, double nz) {
    double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (nn < 1e-300) throw std::invalid_argument("rotation: zero axis");
    nx /= nn;
    ny /= nn;
    nz /= nn;
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    Unitary2 u;
    u.m00 = {c, -s * nz};
    u.m01 = {-s * ny, -s * nx};
    u.m10 = {s * ny, -s * nx};
    u.m11 = {c, s * nz};
    return u;
}

Unitary2 Unitary2::rx(double theta) { return rotation(theta, 1, 0, 0); }
Unitary2 Unitary2::ry(double theta) { return rotation(theta, 0, 1, 0); }
Unitary2 Unitary2::rz(double theta) { return rotation(theta, 0, 0, 1); }

double projective_distance(const Unitary2& u, const Unitary2& v) {
    std::complex<double> t = std::conj(v.m00) * u.m00 + std::conj(v.m10) * u.m10 +
                             std::conj(v.m01) * u.m01 + std::conj(v.m11) * u.m11;
    return std::sqrt(std::max(0.0, 2.0 - std::abs(t)));
}

Unitary2 generator_unitary(CliffordTGen g) {
    const double is2 = 1.0 / std::numbers::sqrt2;
    Unitary2 u;
    switch (g) {
        case CliffordTGen::H:
            u.m00 = is2, u.m01 = is2, u.m10 = is2, u.m11 = -is2;
            break;
        case CliffordTGen::S:
            u.m00 = 1, u.m11 = kI;
            break;
        case CliffordTGen::Sdg:
            u.m00 = 1, u.m11 = -kI;
            break;
        case CliffordTGen::T:
            u.m00 = 1, u.m11 = std::polar(1.0, kPi / 4);
            break;
        case CliffordTGen::Tdg:
            u.m00 = 1, u.m11 = std::polar(1.0, -kPi / 4);
            break;
        case CliffordTGen::X:
            u.m00 = 0, u.m01 = 1, u.m10 = 1, u.m11 = 0;
            break;
        case CliffordTGen::Y:
            u.m00 = 0, u.m01 = -kI, u.m10 = kI, u.m11 = 0;
            break;
        case CliffordTGen::Z:
            u.m00 = 1, u.m11 = -1;
            break;
    }
    return u;
}

Unitary2 word_unitary(const GateWord& w) {
    Unitary2 u;
    for (CliffordTGen g : w) u = u * generator_unitary(g);
    return u;
}

GateWord word_dagger(const GateWord& w) {
    GateWord r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        switch (*it) {
            case CliffordTGen::S: r.push_back(CliffordTGen::Sdg); break;
            case CliffordTGen::Sdg: r.push_back(CliffordTGen::S); break;
            case CliffordTGen::T: r.push_back(CliffordTGen::Tdg); break;
            case CliffordTGen::Tdg: r.push_back(CliffordTGen::T); break;
            default: r.push_back(*it); break;  // H, X, Y, Z are involutions
        }
    }
    return r;
}

int word_t_count(const GateWord& w) {
    int n = 0;
    for (CliffordTGen g : w)
        if (g == CliffordTGen::T || g == CliffordTGen::Tdg) ++n;
    return n;
}

std::string word_string(const GateWord& w) {
    static const char* names[] = {"H", "S", "Sdg", "T", "Tdg", "X", "Y", "Z"};
    if (w.empty()) return "I";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += names[static_cast<int>(w[i])];
    }
    return s;
}

namespace {

// Pair rewrite: 0 = erase both, 1 = replace with `out`, -1 = no rule.
int rewrite_pair(CliffordTGen a, CliffordTGen b, CliffordTGen* out) {
    using G = CliffordTGen;
    auto inv = [](G x, G y) {
        return (x == G::H && y == G::H) || (x == G::X && y == G::X) ||
               (x == G::Y && y == G::Y) || (x == G::Z && y == G::Z) ||
               (x == G::S && y == G::Sdg) || (x == G::Sdg && y == G::S) ||
               (x == G::T && y == G::Tdg) || (x == G::Tdg && y == G::T);
    };
    if (inv(a, b)) return 0;
    auto pair_is = [&](G x, G y) { return (a == x && b == y) || (a == y && b == x); };
    if (a == G::S && b == G::S) return *out = G::Z, 1;
    if (a == G::Sdg && b == G::Sdg) return *out = G::Z, 1;
    if (a == G::T && b == G::T) return *out = G::S, 1;
    if (a == G::Tdg && b == G::Tdg) return *out = G::Sdg, 1;
    if (pair_is(G::S, G::Z)) return *out = G::Sdg, 1;
    if (pair_is(G::Sdg, G::Z)) return *out = G::S, 1;
    if (pair_is(G::T, G::Sdg)) return *out = G::Tdg, 1;
    if (pair_is(G::Tdg, G::S)) return *out = G::T, 1;
    return -1;
}

}  // namespace

GateWord canonicalize(GateWord w) {
    // Diagonal generators commute, so the diagonal rules above stay exact in
    // either order. T*Z = -Tdg differs by a global phase from a single
    // generator, so that pair is left alone to keep every rewrite an exact
    // matrix identity.
    std::size_t i = 0;
    while (w.size() >= 2 && i + 1 < w.size()) {
        CliffordTGen out;
        int r = rewrite_pair(w[i], w[i + 1], &out);
        if (r == 0) {
            w.erase(w.begin() + i, w.begin() + i + 2);
            i = i ? i - 1 : 0;
        } else if (r == 1) {
            w[i] = out;
            w.erase(w.begin() + i + 1);
            i = i ? i - 1 : 0;
        } else {
            ++i;
        }
    }
    return w;
}

namespace {

using NetKey = std::array<std::int64_t, 8>;

struct NetKeyHash {
    std::size_t operator()(const NetKey& k) const {
        std::size_t h = 14695981039346656037ull;
        for (std::int64_t v : k) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Global-phase-invariant key: rotate the phase so the pivot entry (largest of
// m00, m01) is real positive, then quantize at 1e-6.
NetKey phase_key(const Unitary2& u) {
    std::complex<double> pivot = (std::abs(u.m00) >= 0.5) ? u.m00 : u.m01;
    std::complex<double> ph = std::conj(pivot) / std::abs(pivot);
    auto q = [&](std::complex<double> z) {
        z *= ph;
        return std::pair<std::int64_t, std::int64_t>(std::llround(z.real() * 1e6),
                                                     std::llround(z.imag() * 1e6));
    };
    auto [a, b] = q(u.m00);
    auto [c, d] = q(u.m01);
    auto [e, f] = q(u.m10);
    auto [g, h] = q(u.m11);
    return {a, b, c, d, e, f, g, h};
}

}  // namespace

EpsilonNet build_epsilon_net(int max_length) {
    if (max_length < 1 || max_length > 16)
        throw std::invalid_argument("build_epsilon_net: max_length must be in [1,16]");
    static const CliffordTGen kGens[] = {CliffordTGen::H, CliffordTGen::S, CliffordTGen::Sdg,
                                         CliffordTGen::T, CliffordTGen::Tdg, CliffordTGen::X,
                                         CliffordTGen::Y, CliffordTGen::Z};
    EpsilonNet net;
    net.max_length = max_length;
    std::unordered_map<NetKey, int, NetKeyHash> seen;
    net.entries.push_back({{}, Unitary2::identity()});
    seen.emplace(phase_key(net.entries[0].u), 0);
    std::vector<std::size_t> frontier{0};
    for (int len = 1; len <= max_length; ++len) {
        std::vector<std::size_t> next;
        for (std::size_t idx : frontier) {
            GateWord base = net.entries[idx].word;
            for (CliffordTGen g : kGens) {
                GateWord w = base;
                w.push_back(g);
                w = canonicalize(std::move(w));
                if (static_cast<int>(w.size()) != len) continue;  // reduced: shorter word covers it
                Unitary2 u = net.entries[idx].u * generator_unitary(g);
                NetKey key = phase_key(u);
                if (seen.count(key)) continue;
                seen.emplace(key, static_cast<int>(net.entries.size()));
                next.push_back(net.entries.size());
                net.entries.push_back({std::move(w), u});
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return net;
}

namespace {

SynthesisResult nearest_net_element(const Unitary2& target, const EpsilonNet& net) {
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < net.entries.size(); ++i) {
        const Unitary2& v = net.entries[i].u;
        std::complex<double> t = std::conj(v.m00) * target.m00 + std::conj(v.m10) * target.m10 +
                                 std::conj(v.m01) * target.m01 + std::conj(v.m11) * target.m11;
        double a = std::abs(t);
        if (a > best) {
            best = a;
            best_i = i;
        }
    }
    SynthesisResult r;
    r.word = net.entries[best_i].word;
    r.realized = net.entries[best_i].u;
    r.error = std::sqrt(std::max(0.0, 2.0 - best));
    r.t_count = word_t_count(r.word);
    return r;
}

// Axis a and rotation-angle sine of an SU(2) element. Returns false for a
// (near-)identity rotation, where the axis is undefined.
bool su2_axis(const Unitary2& u, std::array<double, 3>* axis, double* sin_half) {
    double sx = -0.5 * (u.m01.imag() + u.m10.imag());
    double sy = 0.5 * (u.m10.real() - u.m01.real());
    double sz = -0.5 * (u.m00.imag() - u.m11.imag());
    double s = std::sqrt(sx * sx + sy * sy + sz * sz);
    *sin_half = s;
    if (s < 1e-12) return false;
    *axis = {sx / s, sy / s, sz / s};
    return true;
}

// Normalize to SU(2) with non-negative real trace (fixes the sign freedom).
Unitary2 to_su2(const Unitary2& u) {
    std::complex<double> det = u.m00 * u.m11 - u.m01 * u.m10;
    std::complex<double> ph = std::sqrt(det);
    Unitary2 r = u;
    r.m00 /= ph, r.m01 /= ph, r.m10 /= ph, r.m11 /= ph;
    if ((r.m00 + r.m11).real() < 0.0) {
        r.m00 = -r.m00, r.m01 = -r.m01, r.m10 = -r.m10, r.m11 = -r.m11;
    }
    return r;
}

// SU(2) rotation carrying unit vector a onto unit vector b.
Unitary2 axis_to_axis(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    dot = std::clamp(dot, -1.0, 1.0);
    double cx = a[1] * b[2] - a[2] * b[1];
    double cy = a[2] * b[0] - a[0] * b[2];
    double cz = a[0] * b[1] - a[1] * b[0];
    double cn = std::sqrt(cx * cx + cy * cy + cz * cz);
    if (cn < 1e-12) {
        if (dot > 0.0) return Unitary2::identity();
        // Antiparallel: rotate by pi about any axis orthogonal to a.
        std::array<double, 3> p = (std::abs(a[0]) < 0.9) ? std::array<double, 3>{1, 0, 0}
                                                         : std::array<double, 3>{0, 1, 0};
        double px = a[1] * p[2] - a[2] * p[1];
        double py = a[2] * p[0] - a[0] * p[2];
        double pz = a[0] * p[1] - a[1] * p[0];
        return Unitary2::rotation(kPi, px, py, pz);
    }
    return Unitary2::rotation(std::acos(dot), cx, cy, cz);
}

// Balanced group-commutator factorization: V, W with V W V^dag W^dag = delta
// (delta given in SU(2) form). Both factors are rotations by the same angle
// phi, solved from sin(theta/2) = 2 sin^2(phi/2) sqrt(1 - sin^4(phi/2)).
void commutator_factors(const Unitary2& delta, Unitary2* v, Unitary2* w) {
    std::array<double, 3> axis{0, 0, 1};
    double s = 0.0;
    bool has_axis = su2_axis(delta, &axis, &s);
    s = std::min(s, 1.0);
    double u2 = (1.0 - std::sqrt(std::max(0.0, 1.0 - s * s))) / 2.0;
    double u = std::sqrt(u2);
    double phi = 2.0 * std::asin(std::min(1.0, std::sqrt(u)));
    Unitary2 vx = Unitary2::rx(phi);
    Unitary2 wy = Unitary2::ry(phi);
    if (!has_axis) {
        *v = vx;
        *w = wy;
        return;
    }
    Unitary2 comm = vx * wy * vx.dagger() * wy.dagger();
    std::array<double, 3> caxis{0, 0, 1};
    double cs = 0.0;
    if (!su2_axis(to_su2(comm), &caxis, &cs)) {
        *v = vx;
        *w = wy;
        return;
    }
    Unitary2 sim = axis_to_axis(caxis, axis);
    *v = sim * vx * sim.dagger();
    *w = sim * wy * sim.dagger();
}

SynthesisResult finish(GateWord word, const Unitary2& target) {
    SynthesisResult r;
    r.word = canonicalize(std::move(word));
    r.realized = word_unitary(r.word);
    r.error = projective_distance(r.realized, target);
    r.t_count = word_t_count(r.word);
    return r;
}

SynthesisResult sk_recurse(const Unitary2& target, int depth, const EpsilonNet& net) {
    if (depth == 0) return nearest_net_element(target, net);
    SynthesisResult prev = sk_recurse(target, depth - 1, net);
    Unitary2 delta = to_su2(target * prev.realized.dagger());
    Unitary2 v, w;
    commutator_factors(delta, &v, &w);
    SynthesisResult vr = sk_recurse(v, depth - 1, net);
    SynthesisResult wr = sk_recurse(w, depth - 1, net);
    GateWord word = vr.word;
    word.insert(word.end(), wr.word.begin(), wr.word.end());
    GateWord vd = word_dagger(vr.word), wd = word_dagger(wr.word);
    word.insert(word.end(), vd.begin(), vd.end());
    word.insert(word.end(), wd.begin(), wd.end());
    word.insert(word.end(), prev.word.begin(), prev.word.end());
    SynthesisResult refined = finish(std::move(word), target);
    // Keep whichever of {refined, previous level} is closer, so added depth
    // can only help.
    return refined.error < prev.error ? refined : prev;
}

}  // namespace

SynthesisResult sk_synthesize(const Unitary2& target, int depth, const EpsilonNet& net) {
    if (depth < 0 || depth > 8) throw std::invalid_argument("sk_synthesize: depth must be in [0,8]");
    if (net.entries.empty()) throw std::invalid_argument("sk_synthesize: empty net");
    return sk_recurse(target, depth, net);
}

std::string synthesis_text(const SynthesisResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", r.error);
    std::ostringstream os;
    os << word_string(r.word) << "\nerror=" << buf << ", t_count=" << r.t_count << "\n";
    return os.str();
}

std::vector<Gate> decompose_multiplexed_ry(const std::vector<double>& angles) {
    std::size_t m = angles.size();
    if (m == 0 || (m & (m - 1)) != 0)
        throw std::invalid_argument("decompose_multiplexed_ry: need a power-of-two angle count");
    int k = std::countr_zero(m);
    int target = k;
    std::vector<Gate> gates;
    if (k == 0) {
        gates.push_back(Gate::ry(target, angles[0]));
        return gates;
    }
    // Walsh-Hadamard-style transform along the Gray-code ordering: the angle
    // played at step j is (1/m) sum_p (-1)^{popcount(p & gray(j))} angles[p].
    std::vector<double> phi(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        std::uint64_t gray = j ^ (j >> 1);
        double acc = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            int sign = (std::popcount(p & gray) & 1) ? -1 : 1;
            acc += sign * angles[p];
        }
        phi[j] = acc / static_cast<double>(m);
    }
    for (std::size_t j = 0; j < m; ++j) {
        gates.push_back(Gate::ry(target, phi[j]));
        int ctrl = (j + 1 == m) ? k - 1 : std::countr_zero(j + 1);
        gates.push_back(Gate::cnot(ctrl, target));
    }
    return gates;
}

std::vector<Gate> uar_taylor_order(int order, const RegisterConfig& cfg, double tau) {
    if (order != 0 && order != 1)
        throw std::invalid_argument("uar_taylor_order: order must be 0 or 1");
    validate(cfg);
    if (tau < 0.0) throw std::invalid_argument("uar_taylor_order: tau must be >= 0");
    int anc = cfg.n_register;
    std::vector<Gate> gates;
    gates.push_back(Gate::ry(anc, 2.0));
    if (order == 0) return gates;
    for (int r = 0; r < cfg.n_register; ++r) {
        double theta = -2.0 * static_cast<double>(1ull << r) * tau;
        // Controlled Ry(theta) from register bit r, lowered to two CNOTs.
        gates.push_back(Gate::ry(anc, theta / 2));
        gates.push_back(Gate::cnot(r, anc));
        gates.push_back(Gate::ry(anc, -theta / 2));
        gates.push_back(Gate::cnot(r, anc));
    }
    return gates;
}

namespace {

// Synthesis with per-angle memoization and depth escalation (0..depth) until
// eps is reached. Key mixes axis and angle; angle doubles are bit-stable here
// because every caller derives them deterministically.
struct SynthCache {
    const EpsilonNet& net;
    int max_depth;
    double eps;
    std::map<std::pair<int, double>, SynthesisResult> cache;

    const SynthesisResult& get(int axis, double angle) {
        auto key = std::make_pair(axis, angle);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        Unitary2 target = axis == 0 ? Unitary2::rz(angle) : Unitary2::ry(angle);
        SynthesisResult best = sk_synthesize(target, 0, net);
        for (int d = 1; d <= max_depth && best.error > eps; ++d) {
            SynthesisResult r = sk_synthesize(target, d, net);
            if (r.error < best.error) best = r;
        }
        return cache.emplace(key, std::move(best)).first->second;
    }
};

struct StageAccum {
    ResourceStage stage;
    void rotation(const SynthesisResult& r) {
        stage.rotations += 1;
        stage.t_count += r.t_count;
        stage.eps_achieved = std::max(stage.eps_achieved, r.error);
    }
};

}  // namespace

ResourceReport resource_report(const DiagonalHamiltonian& h, const RegisterConfig& cfg, double tau,
                               double eps, const EpsilonNet& net, int depth, UarMode mode) {
    validate(cfg);
    if (!(eps > 0.0)) throw std::invalid_argument("resource_report: eps must be positive");
    if (tau < 0.0) throw std::invalid_argument("resource_report: tau must be >= 0");
    SynthCache synth{net, depth, eps, {}};
    ResourceReport rep;
    double m = static_cast<double>(cfg.dim());

    // Phase-estimation stage: one controlled phase per (register qubit, term),
    // each lowered to 2 CNOTs and two Rz(+-theta/2), plus the parity ladder.
    StageAccum qpe;
    qpe.stage.name = "qpe";
    for (int r = 0; r < cfg.n_register; ++r) {
        double pow2 = static_cast<double>(1ull << r);
        for (const ZMonomial& t : h.terms) {
            double phi = 2.0 * kPi * cfg.scale * pow2 * t.coefficient / m;
            double cp = -2.0 * phi;
            qpe.rotation(synth.get(0, cp / 2));
            qpe.rotation(synth.get(0, -cp / 2));
            qpe.stage.rotations -= 1;  // the pair realizes one controlled phase
            int weight = static_cast<int>(t.indices().size());
            qpe.stage.cnots += 2 + 2 * std::max(0, weight - 1);
        }
    }
    rep.qpe_rotations = static_cast<long long>(cfg.n_register) * h.term_count();
    qpe.stage.rotations = rep.qpe_rotations;
    rep.stages.push_back(qpe.stage);

    // Energy-offset stage: one plain phase per register qubit when alpha != 0.
    if (h.alpha != 0.0) {
        StageAccum off;
        off.stage.name = "offset";
        for (int r = 0; r < cfg.n_register; ++r) {
            double pow2 = static_cast<double>(1ull << r);
            double phi = -2.0 * kPi * cfg.scale * pow2 * h.alpha / m;
            off.rotation(synth.get(0, phi));
        }
        rep.stages.push_back(off.stage);
    }

    // Fourier-transform stage: N_R(N_R-1)/2 controlled phases plus the
    // qubit-reversal swaps (3 CNOTs each).
    StageAccum qft;
    qft.stage.name = "qft";
    for (int j = cfg.n_register - 1; j >= 0; --j) {
        for (int mm = j - 1; mm >= 0; --mm) {
            double cp = -kPi / static_cast<double>(1ull << (j - mm));
            qft.rotation(synth.get(0, cp / 2));
            qft.rotation(synth.get(0, -cp / 2));
            qft.stage.rotations -= 1;
            qft.stage.cnots += 2;
        }
    }
    qft.stage.cnots += 3 * (cfg.n_register / 2);
    rep.qft_rotations = static_cast<long long>(cfg.n_register) * (cfg.n_register - 1) / 2;
    qft.stage.rotations = rep.qft_rotations;
    rep.stages.push_back(qft.stage);

    // Ancilla-rotation stage.
    StageAccum uar;
    uar.stage.name = "uar";
    if (mode == UarMode::Exact) {
        std::vector<double> angles(cfg.dim());
        for (std::uint64_t p = 0; p < cfg.dim(); ++p)
            angles[p] = 2.0 * std::exp(-static_cast<double>(p) * tau);
        for (const Gate& g : decompose_multiplexed_ry(angles)) {
            if (g.kind == GateKind::Ry)
                uar.rotation(synth.get(1, g.angle));
            else
                uar.stage.cnots += 1;
        }
    } else {
        int order = mode == UarMode::Taylor0 ? 0 : 1;
        for (const Gate& g : uar_taylor_order(order, cfg, tau)) {
            if (g.kind == GateKind::Ry)
                uar.rotation(synth.get(1, g.angle));
            else
                uar.stage.cnots += 1;
        }
    }
    rep.uar_rotations = uar.stage.rotations;
    rep.stages.push_back(uar.stage);

    for (const ResourceStage& s : rep.stages) {
        rep.cnot_total += s.cnots;
        rep.t_total += s.t_count;
        if (s.eps_achieved > eps) rep.eps_met = false;
    }
    return rep;
}

std::string resource_csv(const ResourceReport& r) {
    std::ostringstream os;
    os << "stage,rotations,cnots,t_count,eps_used\n";
    char buf[64];
    for (const ResourceStage& s : r.stages) {
        std::snprintf(buf, sizeof(buf), "%.6e", s.eps_achieved);
        os << s.name << ',' << s.rotations << ',' << s.cnots << ',' << s.t_count << ',' << buf
           << "\n";
    }
    long long rot = r.qpe_rotations + r.qft_rotations + r.uar_rotations;
    for (const ResourceStage& s : r.stages)
        if (s.name == "offset") rot += s.rotations;
    double worst = 0.0;
    for (const ResourceStage& s : r.stages) worst = std::max(worst, s.eps_achieved);
    std::snprintf(buf, sizeof(buf), "%.6e", worst);
    os << "total," << rot << ',' << r.cnot_total << ',' << r.t_total << ',' << buf << "\n";
    return os.str();
}

FitResult fit_sk_exponent(const std::vector<std::pair<double, double>>& eps_t_points) {
    std::vector<double> xs, ys;
    for (const auto& [eps, t] : eps_t_points) {
        if (!(eps > 0.0 && eps < 1.0) || t < 1.0) continue;
        xs.push_back(std::log(std::log(1.0 / eps)));
        ys.push_back(std::log(t));
    }
    if (xs.size() < 4)
        throw std::invalid_argument("fit_sk_exponent: need at least 4 usable (eps, t) points");
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12)
        throw std::invalid_argument("fit_sk_exponent: eps values are degenerate");
    FitResult f;
    f.exponent = (n * sxy - sx * sy) / denom;
    double intercept = (sy - f.exponent * sx) / n;
    f.prefactor = std::exp(intercept);
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (f.exponent * xs[i] + intercept);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

}
