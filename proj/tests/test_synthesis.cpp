#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "qpeqite/synthesis.hpp"

using namespace qpeqite;
using cplx = std::complex<double>;

namespace {

double matrix_distance(const Unitary2& a, const Unitary2& b) {
    return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01), std::abs(a.m10 - b.m10),
                     std::abs(a.m11 - b.m11)});
}

GateWord random_word(std::mt19937_64& rng, int len) {
    GateWord w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<CliffordTGen>(rng() % 8));
    return w;
}

// Shared across test cases; building it once keeps the suite fast.
const EpsilonNet& default_net() {
    static EpsilonNet net = build_epsilon_net(10);
    return net;
}

}  // namespace

TEST_CASE("Unitary2 rotations are special unitary") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-6.0, 6.0);
    for (int i = 0; i < 40; ++i) {
        double t = ang(rng);
        for (const Unitary2& u : {Unitary2::rx(t), Unitary2::ry(t), Unitary2::rz(t),
                                  Unitary2::rotation(t, 0.6, -0.8, 0.0)}) {
            Unitary2 p = u.dagger() * u;
            CHECK(matrix_distance(p, Unitary2::identity()) < 1e-14);
            cplx det = u.m00 * u.m11 - u.m01 * u.m10;
            CHECK(std::abs(det - cplx{1.0}) < 1e-14);
        }
    }

    // rotation() about the coordinate axes reproduces rx/ry/rz.
    double t = 1.234;
    CHECK(matrix_distance(Unitary2::rotation(t, 1, 0, 0), Unitary2::rx(t)) < 1e-15);
    CHECK(matrix_distance(Unitary2::rotation(t, 0, 1, 0), Unitary2::ry(t)) < 1e-15);
    CHECK(matrix_distance(Unitary2::rotation(t, 0, 0, 1), Unitary2::rz(t)) < 1e-15);
    // Same-axis rotations compose additively.
    CHECK(matrix_distance(Unitary2::rz(0.3) * Unitary2::rz(0.9), Unitary2::rz(1.2)) < 1e-15);
}

TEST_CASE("projective distance") {
    Unitary2 u = Unitary2::rotation(0.83, 0.48, -0.6, 0.64);
    CHECK(projective_distance(u, u) == doctest::Approx(0.0).epsilon(1e-15));

    // Global phase is quotiented out.
    Unitary2 v = u;
    cplx phase = std::polar(1.0, 2.13);
    v.m00 *= phase;
    v.m01 *= phase;
    v.m10 *= phase;
    v.m11 *= phase;
    CHECK(projective_distance(u, v) < 1e-7);

    Unitary2 x{0, 1, 1, 0};
    CHECK(projective_distance(Unitary2::identity(), x) ==
          doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));

    // For diagonal rotations |tr| = 2|cos((a-b)/2)|, so the distance closes to
    // sqrt(2 - 2|cos((a-b)/2)|) — which is 2|sin((a-b)/4)| while |a-b| <= pi
    // but folds back for wider separations (Rz(a) ~ Rz(a + 2 pi) projectively).
    for (auto [a, b] : {std::pair{0.1, 0.7}, {2.0, -1.3}, {0.05, 0.05001}}) {
        double expect = std::sqrt(2.0 - 2.0 * std::abs(std::cos((a - b) / 2.0)));
        CHECK(projective_distance(Unitary2::rz(a), Unitary2::rz(b)) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("words: unitaries, inverses, t-count, printing") {
    GateWord w{CliffordTGen::H, CliffordTGen::T, CliffordTGen::Sdg, CliffordTGen::Tdg,
               CliffordTGen::Y};
    CHECK(word_string(w) == "H T Sdg Tdg Y");
    CHECK(word_string({}) == "I");
    CHECK(word_t_count(w) == 2);
    CHECK(word_t_count({}) == 0);

    Unitary2 u = word_unitary(w);
    Unitary2 inv = word_unitary(word_dagger(w));
    CHECK(matrix_distance(u * inv, Unitary2::identity()) < 1e-14);
    CHECK(matrix_distance(inv * u, Unitary2::identity()) < 1e-14);

    // Left-to-right order: word {H, T} must equal U(H) * U(T), not U(T) * U(H).
    Unitary2 ht = word_unitary({CliffordTGen::H, CliffordTGen::T});
    CHECK(matrix_distance(ht, generator_unitary(CliffordTGen::H) *
                                  generator_unitary(CliffordTGen::T)) < 1e-15);
}

TEST_CASE("canonicalize is an exact, shrinking, idempotent rewrite") {
    // Spot rewrites that are exact matrix identities.
    CHECK(canonicalize({CliffordTGen::S, CliffordTGen::S}) == GateWord{CliffordTGen::Z});
    CHECK(canonicalize({CliffordTGen::T, CliffordTGen::T}) == GateWord{CliffordTGen::S});
    CHECK(canonicalize({CliffordTGen::T, CliffordTGen::Sdg}) == GateWord{CliffordTGen::Tdg});
    CHECK(canonicalize({CliffordTGen::H, CliffordTGen::H}).empty());
    CHECK(canonicalize({CliffordTGen::S, CliffordTGen::Sdg}).empty());
    // Cancellation cascades through the middle of a word.
    CHECK(canonicalize({CliffordTGen::T, CliffordTGen::H, CliffordTGen::H, CliffordTGen::Tdg})
              .empty());

    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 400; ++trial) {
        GateWord w = random_word(rng, 1 + static_cast<int>(rng() % 12));
        GateWord c = canonicalize(w);
        CHECK(c.size() <= w.size());
        // The rewrite preserves the product exactly, not just projectively.
        CHECK(matrix_distance(word_unitary(w), word_unitary(c)) < 1e-13);
        CHECK(canonicalize(c) == c);
    }
}

TEST_CASE("epsilon net enumeration") {
    CHECK_THROWS_AS(build_epsilon_net(0), std::invalid_argument);
    CHECK_THROWS_AS(build_epsilon_net(17), std::invalid_argument);

    EpsilonNet net = build_epsilon_net(6);
    CHECK(net.max_length == 6);
    REQUIRE(!net.entries.empty());
    CHECK(net.entries[0].word.empty());
    CHECK(matrix_distance(net.entries[0].u, Unitary2::identity()) == 0.0);

    std::size_t prev = 0;
    int cliffords = 0;
    for (const NetEntry& e : net.entries) {
        CHECK(e.word.size() >= prev);  // breadth-first: lengths never decrease
        prev = e.word.size();
        CHECK(e.word.size() <= 6);
        CHECK(canonicalize(e.word) == e.word);
        CHECK(matrix_distance(e.u, word_unitary(e.word)) < 1e-13);
        if (word_t_count(e.word) == 0) ++cliffords;
    }
    // The t-free entries exhaust the single-qubit Clifford group mod phase.
    CHECK(cliffords == 24);

    // Dedup keeps the entries projectively distinct.
    EpsilonNet small = build_epsilon_net(4);
    CHECK(small.entries.size() == 104);
    for (std::size_t i = 0; i < small.entries.size(); ++i)
        for (std::size_t j = i + 1; j < small.entries.size(); ++j)
            CHECK(projective_distance(small.entries[i].u, small.entries[j].u) > 1e-8);

    // Longer nets strictly refine shorter ones.
    CHECK(build_epsilon_net(5).entries.size() > small.entries.size());
}

TEST_CASE("sk_synthesize basics and re-derivability") {
    const EpsilonNet& net = default_net();
    CHECK_THROWS_AS(sk_synthesize(Unitary2::rz(0.3), -1, net), std::invalid_argument);
    CHECK_THROWS_AS(sk_synthesize(Unitary2::rz(0.3), 9, net), std::invalid_argument);

    // Depth 0 for a small Rz: nothing in the net beats the identity, and the
    // reported error is the exact diagonal-distance formula.
    SynthesisResult r0 = sk_synthesize(Unitary2::rz(0.1), 0, net);
    CHECK(r0.word.empty());
    CHECK(r0.t_count == 0);
    CHECK(r0.error == doctest::Approx(2.0 * std::sin(0.025)).epsilon(1e-12));

    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> ang(-2.5, 2.5);
    for (int trial = 0; trial < 6; ++trial) {
        Unitary2 target = Unitary2::rotation(ang(rng), 0.0, 0.8, 0.6);
        SynthesisResult r = sk_synthesize(target, 2, net);
        // Everything in the result is re-derivable from the word alone.
        CHECK(matrix_distance(r.realized, word_unitary(r.word)) < 1e-12);
        CHECK(r.t_count == word_t_count(r.word));
        CHECK(std::abs(r.error - projective_distance(r.realized, target)) < 1e-12);
        CHECK(canonicalize(r.word) == r.word);
    }
}

TEST_CASE("sk_synthesize error never increases with depth and does converge") {
    const EpsilonNet& net = default_net();
    std::vector<Unitary2> targets{Unitary2::rz(0.1), Unitary2::rz(0.7),
                                  Unitary2::ry(2.0 * std::exp(-3.0))};
    for (const Unitary2& target : targets) {
        double prev = 1e300;
        for (int depth = 0; depth <= 4; ++depth) {
            SynthesisResult r = sk_synthesize(target, depth, net);
            CHECK(r.error <= prev + 1e-15);
            prev = r.error;
        }
        // By depth 4 the refinement has actually bitten.
        CHECK(prev < 5e-3);
    }

    // Strict improvement for a target the net alone can't match.
    double base = sk_synthesize(Unitary2::rz(0.7), 0, net).error;
    double deep = sk_synthesize(Unitary2::rz(0.7), 3, net).error;
    CHECK(deep < base / 5.0);
}

TEST_CASE("synthesis_text layout") {
    SynthesisResult r;
    r.word = {CliffordTGen::H, CliffordTGen::T};
    r.realized = word_unitary(r.word);
    r.error = 0.0625;
    r.t_count = 1;
    CHECK(synthesis_text(r) == "H T\nerror=0.0625, t_count=1\n");
}

TEST_CASE("multiplexed Ry hits every control pattern") {
    CHECK_THROWS_AS(decompose_multiplexed_ry({}), std::invalid_argument);
    CHECK_THROWS_AS(decompose_multiplexed_ry({0.1, 0.2, 0.3}), std::invalid_argument);

    SUBCASE("no controls is a bare rotation") {
        auto gates = decompose_multiplexed_ry({1.7});
        REQUIRE(gates.size() == 1);
        CHECK(gates[0].kind == GateKind::Ry);
        CHECK(gates[0].target == 0);
        CHECK(gates[0].angle == 1.7);
    }

    SUBCASE("gate census") {
        auto gates = decompose_multiplexed_ry(std::vector<double>(8, 0.3));
        int ry = 0, cnot = 0;
        for (const Gate& g : gates) {
            if (g.kind == GateKind::Ry) ++ry;
            if (g.kind == GateKind::CNOT) ++cnot;
            CHECK(g.target == 3);  // rotations and flips all land on the target line
        }
        CHECK(ry == 8);
        CHECK(cnot == 8);
    }

    SUBCASE("per-branch angles on basis states") {
        std::mt19937_64 rng(606);
        std::uniform_real_distribution<double> ang(-3.0, 3.0);
        for (int k = 1; k <= 3; ++k) {
            std::vector<double> angles(std::size_t{1} << k);
            for (double& a : angles) a = ang(rng);
            auto gates = decompose_multiplexed_ry(angles);
            for (std::uint64_t p = 0; p < angles.size(); ++p) {
                Statevector sv(k + 1);
                for (int b = 0; b < k; ++b)
                    if ((p >> b) & 1u) apply_gate(sv, Gate::x(b));
                apply_circuit(sv, gates);
                double expect = std::sin(angles[p] / 2) * std::sin(angles[p] / 2);
                CHECK(marginal_distribution(sv, {k})[1] == doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }

    SUBCASE("coherent superposition of controls") {
        std::vector<double> angles{0.4, -1.1, 2.2, 0.9};
        auto gates = decompose_multiplexed_ry(angles);
        Statevector sv(3);
        apply_gate(sv, Gate::h(0));
        apply_gate(sv, Gate::h(1));
        apply_circuit(sv, gates);
        for (std::uint64_t p = 0; p < 4; ++p) {
            cplx a0 = sv.amps[p];
            cplx a1 = sv.amps[p | 4u];
            CHECK(std::abs(a0 - 0.5 * std::cos(angles[p] / 2)) < 1e-13);
            CHECK(std::abs(a1 - 0.5 * std::sin(angles[p] / 2)) < 1e-13);
        }
    }
}

TEST_CASE("Taylor-truncated ancilla rotation") {
    RegisterConfig cfg{3, 1.0};
    CHECK_THROWS_AS(uar_taylor_order(2, cfg, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(uar_taylor_order(-1, cfg, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(uar_taylor_order(1, cfg, -0.5), std::invalid_argument);

    auto order0 = uar_taylor_order(0, cfg, 0.1);
    REQUIRE(order0.size() == 1);
    CHECK(order0[0].kind == GateKind::Ry);
    CHECK(order0[0].target == 3);
    CHECK(order0[0].angle == 2.0);

    double tau = 0.05;
    auto order1 = uar_taylor_order(1, cfg, tau);
    int ry = 0, cnot = 0;
    for (const Gate& g : order1) {
        if (g.kind == GateKind::Ry) ++ry;
        else if (g.kind == GateKind::CNOT) ++cnot;
        else FAIL("unexpected gate kind in the lowered rotation");
    }
    CHECK(cnot == 2 * cfg.n_register);
    CHECK(ry == 2 * cfg.n_register + 1);

    // On basis state |p> of the register the ancilla lands at sin^2(1 - p tau).
    for (std::uint64_t p = 0; p < cfg.dim(); ++p) {
        Statevector sv(cfg.n_register + 1);
        for (int b = 0; b < cfg.n_register; ++b)
            if ((p >> b) & 1u) apply_gate(sv, Gate::x(b));
        apply_circuit(sv, order1);
        double a = 1.0 - static_cast<double>(p) * tau;
        CHECK(marginal_distribution(sv, {cfg.n_register})[1] ==
              doctest::Approx(std::sin(a) * std::sin(a)).epsilon(1e-12));
    }
}

TEST_CASE("resource report counts match the closed-form formulas") {
    const EpsilonNet& net = default_net();
    DiagonalHamiltonian h = labs_hamiltonian(4);
    RegisterConfig cfg{4, 1.0};

    ResourceReport rep = resource_report(h, cfg, 1.0, 1e-2, net, 3, UarMode::Exact);
    CHECK(rep.qpe_rotations == cfg.n_register * static_cast<long long>(h.terms.size()));
    CHECK(rep.qft_rotations == cfg.n_register * (cfg.n_register - 1) / 2);
    CHECK(rep.uar_rotations == static_cast<long long>(cfg.dim()));
    CHECK(rep.eps_met);
    CHECK(rep.t_total > 0);
    REQUIRE(rep.stages.size() == 3);  // alpha == 0: no offset stage
    CHECK(rep.stages[0].name == "qpe");
    CHECK(rep.stages[1].name == "qft");
    CHECK(rep.stages[2].name == "uar");
    long long cnots = 0, ts = 0;
    for (const ResourceStage& s : rep.stages) {
        cnots += s.cnots;
        ts += s.t_count;
        CHECK(s.eps_achieved <= 1e-2);
    }
    CHECK(cnots == rep.cnot_total);
    CHECK(ts == rep.t_total);

    SUBCASE("offset stage appears with a shifted Hamiltonian") {
        DiagonalHamiltonian hs = with_offset(h, -4.0);
        ResourceReport rs = resource_report(hs, cfg, 1.0, 1e-2, net, 3, UarMode::Exact);
        REQUIRE(rs.stages.size() == 4);
        CHECK(rs.stages[1].name == "offset");
        CHECK(rs.stages[1].rotations == cfg.n_register);
        CHECK(rs.stages[1].cnots == 0);
    }

    SUBCASE("order-1 Taylor stage uses two CNOTs per register qubit") {
        ResourceReport rt = resource_report(h, cfg, 1.0, 1e-2, net, 3, UarMode::Taylor1);
        const ResourceStage& uar = rt.stages.back();
        CHECK(uar.cnots == 2 * cfg.n_register);
        CHECK(rt.uar_rotations == 2 * cfg.n_register + 1);
        ResourceReport r0 = resource_report(h, cfg, 1.0, 1e-2, net, 3, UarMode::Taylor0);
        CHECK(r0.uar_rotations == 1);
        CHECK(r0.stages.back().cnots == 0);
    }

    SUBCASE("unreachable eps is reported, not silently dropped") {
        ResourceReport tight = resource_report(h, cfg, 1.0, 1e-9, net, 0, UarMode::Taylor0);
        CHECK_FALSE(tight.eps_met);
        double worst = 0.0;
        for (const ResourceStage& s : tight.stages) worst = std::max(worst, s.eps_achieved);
        CHECK(worst > 1e-9);
    }

    SUBCASE("csv layout") {
        std::string csv = resource_csv(rep);
        CHECK(csv.rfind("stage,rotations,cnots,t_count,eps_used\n", 0) == 0);
        CHECK(csv.find("\nqft,") != std::string::npos);
        CHECK(csv.find("\ntotal,") != std::string::npos);
    }
}

TEST_CASE("t-count scaling exponent fit") {
    // Synthetic data drawn from t = 3 * log(1/eps)^3.5 must recover 3.5.
    std::vector<std::pair<double, double>> pts;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6})
        pts.push_back({eps, 3.0 * std::pow(std::log(1.0 / eps), 3.5)});
    FitResult fit = fit_sk_exponent(pts);
    CHECK(fit.exponent == doctest::Approx(3.5).epsilon(1e-9));
    CHECK(fit.prefactor == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.residual < 1e-10);

    CHECK_THROWS_AS(fit_sk_exponent({{1e-2, 10.0}, {1e-3, 20.0}, {1e-4, 40.0}}),
                    std::invalid_argument);
    // Points with t < 1 or eps outside (0,1) are unusable and don't count.
    CHECK_THROWS_AS(fit_sk_exponent({{1e-2, 0.5}, {1e-3, 0.2}, {1e-4, 0.1}, {1e-5, 0.9}}),
                    std::invalid_argument);
}
