#include <doctest.h>

#include <cmath>

#include "support/oracle.hpp"
#include "topopass/errors.hpp"
#include "topopass/model.hpp"

using namespace topopass;

namespace {

ChainParams chain_at(double theta, int cells = 4) {
    ChainParams p;
    p.cells = cells;
    p.theta = theta;
    return p;
}

CouplingScenario scenario(double g1 = 0.01, double g2 = 0.01, double delta = 0.0) {
    CouplingScenario s;
    s.g1 = g1;
    s.g2 = g2;
    s.detuning = delta;
    return s;
}

}  // namespace

TEST_CASE("hopping amplitudes") {
    auto h = hopping_amplitudes(chain_at(0.0));
    CHECK(h.intra == 2.0);
    CHECK(h.inter == 0.0);

    h = hopping_amplitudes(chain_at(kPi / 2));
    CHECK(h.intra == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h.inter == doctest::Approx(1.0).epsilon(1e-15));

    // cos(0.7 pi) = -0.58778525229247...
    h = hopping_amplitudes(chain_at(0.7 * kPi));
    CHECK(std::abs(h.intra - 0.412215) < 1e-6);
    CHECK(std::abs(h.inter - 1.587785) < 1e-6);

    for (double t = 0; t <= 2 * kPi; t += 0.01) {
        const auto x = hopping_amplitudes(chain_at(t));
        CHECK(x.intra >= 0.0);
        CHECK(x.inter >= 0.0);
        CHECK(x.intra + x.inter == doctest::Approx(2.0));
    }
}

TEST_CASE("phase classification") {
    CHECK(classify_phase(chain_at(0.4 * kPi)) == Phase::Trivial);
    CHECK(classify_phase(chain_at(0.7 * kPi)) == Phase::Topological);
    CHECK(classify_phase(chain_at(kPi / 2)) == Phase::Critical);
    CHECK(classify_phase(chain_at(kPi)) == Phase::Topological);
    CHECK(classify_phase(chain_at(1.7 * kPi)) == Phase::Trivial);
    CHECK(to_string(Phase::Critical) == "critical");
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(chain_at(-0.1).validate(), ConfigError);
    CHECK_THROWS_AS(chain_at(2 * kPi + 1e-9).validate(), ConfigError);
    CHECK_NOTHROW(chain_at(2 * kPi).validate());
    CHECK_THROWS_AS(chain_at(1.0, 0).validate(), ConfigError);

    auto s = scenario();
    s.cell_p = 5;
    CHECK_THROWS_AS(s.validate(4), ConfigError);
    try {
        s.validate(4);
    } catch (const ConfigError& e) {
        CHECK(e.field() == "coupling.cell_p");
    }
    s = scenario(-0.01);
    CHECK_THROWS_AS(s.validate(4), ConfigError);
    CHECK_THROWS_AS(build_hamiltonian(chain_at(3 * kPi), scenario()), ConfigError);
}

TEST_CASE("basis layout and labels") {
    Basis b(4);
    CHECK(b.dim() == 17);
    CHECK(b.a(1) == 0);
    CHECK(b.b(4) == 7);
    CHECK(b.c(1) == 8);
    CHECK(b.d(4) == 15);
    CHECK(b.atom() == 16);
    CHECK(b.label(7) == "B4");
    CHECK(b.label(8) == "C1");
    CHECK(b.label(16) == "atom");
    CHECK_THROWS(b.a(5));
    CHECK(total_bond_count(4) == 14);
}

TEST_CASE("single-cell Hamiltonian written by hand") {
    auto p = chain_at(0.7 * kPi, 1);
    const double j1 = 1.0 + std::cos(0.7 * kPi);
    const auto h = build_hamiltonian(p, scenario(0.01, 0.02, 0.05));
    // layout [A1, B1, C1, D1, atom]
    const double expected[5][5] = {{0, j1, 0, 0, 0.01},
                                   {j1, 0, 0, 0, 0},
                                   {0, 0, 0, j1, 0.02},
                                   {0, 0, j1, 0, 0},
                                   {0.01, 0, 0.02, 0, 0.05}};
    REQUIRE(h.rows() == 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(h(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-15));
}

TEST_CASE("Hamiltonian agrees with a bond-by-bond build") {
    for (int cells : {1, 2, 4, 7, 10}) {
        for (double theta : {0.0, 0.3, 0.5 * kPi, 0.72 * kPi, kPi, 1.6 * kPi}) {
            for (char s1 : {'A', 'B'}) {
                for (char s2 : {'C', 'D'}) {
                    auto l = oracle::lattice(cells, theta, 0.013, 0.021, -0.04);
                    l.site1 = s1;
                    l.site2 = s2;
                    l.p = 1 + (cells - 1) / 2;
                    l.q = cells;
                    CouplingScenario sc = scenario(0.013, 0.021, -0.04);
                    sc.chain1_site = s1 == 'A' ? Chain1Site::A : Chain1Site::B;
                    sc.chain2_site = s2 == 'C' ? Chain2Site::C : Chain2Site::D;
                    sc.cell_p = l.p;
                    sc.cell_q = l.q;
                    const auto h = build_hamiltonian(chain_at(theta, cells), sc);
                    const auto ref = oracle::hamiltonian(l);
                    double diff = 0.0;
                    for (int i = 0; i < h.rows(); ++i)
                        for (int j = 0; j < h.cols(); ++j) diff = std::max(diff, std::abs(h(i, j) - ref[i][j]));
                    CHECK(diff < 1e-15);
                }
            }
        }
    }
}

TEST_CASE("structural invariants") {
    for (int cells : {1, 3, 4, 10}) {
        for (double theta = 0.0; theta <= 2 * kPi; theta += 0.37) {
            const auto p = chain_at(theta, cells);
            const auto h = build_hamiltonian(p, scenario(0.01, 0.03, 0.1));
            CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);

            // 2(2N-1) chain bonds per chain plus the two atom bonds, when all hoppings are nonzero.
            const auto hop = hopping_amplitudes(p);
            if (hop.intra > 0 && hop.inter > 0) {
                int upper = 0;
                for (int i = 0; i < h.rows(); ++i)
                    for (int j = i + 1; j < h.cols(); ++j) upper += h(i, j) != 0.0;
                CHECK(upper == (2 * cells - 1) * 2 + 2);
            }
        }
    }
}

TEST_CASE("zero couplings decouple the atom") {
    const auto p = chain_at(0.7 * kPi);
    const auto h = build_hamiltonian(p, scenario(0.0, 0.0, 0.037));
    const Basis b(4);
    for (int i = 0; i < b.atom(); ++i) CHECK(h(b.atom(), i) == 0.0);
    for (int i = 0; i < 8; ++i)
        for (int j = 8; j < 16; ++j) CHECK(h(i, j) == 0.0);
    CHECK(h(b.atom(), b.atom()) == 0.037);
    const auto c = chain_hamiltonian(p);
    CHECK((h.block(0, 0, 8, 8) - c).cwiseAbs().maxCoeff() == 0.0);
    CHECK((h.block(8, 8, 8, 8) - c).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("disorder enters linearly and exactly") {
    const int cells = 4;
    DisorderRealization d;
    for (int i = 0; i < 4 * cells; ++i) d.onsite.push_back(1e-3 * std::sin(1.0 + i));
    for (int k = 0; k < total_bond_count(cells); ++k) d.bonds.push_back(1e-3 * std::cos(2.0 + k));
    const auto p = chain_at(0.65 * kPi, cells);
    const auto sc = scenario();
    const auto clean = build_hamiltonian(p, sc);
    const auto dirty = build_hamiltonian(p, sc, d);
    const auto pert = disorder_perturbation(cells, d);
    CHECK((clean + pert - dirty).cwiseAbs().maxCoeff() == 0.0);

    const Basis b(cells);
    // chain-2 bond 0 joins C1-D1, bond 1 joins D1-C2
    const int off = 2 * cells - 1;
    CHECK(pert(b.c(1), b.d(1)) == d.bonds[off]);
    CHECK(pert(b.d(1), b.c(2)) == d.bonds[off + 1]);
    CHECK(pert(b.a(1), b.a(1)) == d.onsite[0]);
    CHECK(pert(b.atom(), b.atom()) == 0.0);

    DisorderRealization bad;
    bad.onsite.assign(3, 0.0);
    CHECK_THROWS_AS(build_hamiltonian(p, sc, bad), ConfigError);
    CHECK(DisorderRealization::clean(cells).is_clean());
}

TEST_CASE("bipartite scenarios have a symmetric spectrum with a zero level") {
    for (double theta : {0.3, 0.6 * kPi, 0.8 * kPi}) {
        for (bool bd : {false, true}) {
            auto l = oracle::lattice(4, theta);
            auto sc = scenario();
            if (bd) {
                l.site1 = 'B';
                l.site2 = 'D';
                sc.chain1_site = Chain1Site::B;
                sc.chain2_site = Chain2Site::D;
            }
            const auto h = build_hamiltonian(chain_at(theta), sc);
            oracle::Dense dense = oracle::zeros(static_cast<int>(h.rows()));
            for (int i = 0; i < h.rows(); ++i)
                for (int j = 0; j < h.cols(); ++j) dense[i][j] = h(i, j);
            const auto ev = oracle::jacobi_eigen(dense);
            const int n = static_cast<int>(ev.size());
            for (int i = 0; i < n; ++i) CHECK(std::abs(ev[i] + ev[n - 1 - i]) < 1e-12);
            double min_abs = 1.0;
            for (double e : ev) min_abs = std::min(min_abs, std::abs(e));
            CHECK(min_abs < 1e-12);
        }
    }
}
