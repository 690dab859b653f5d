#include "topopass/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "topopass/errors.hpp"

namespace topopass {

EigenSystem eigendecompose(const RealMatrix& h) {
    if (h.rows() != h.cols()) throw InputError("eigendecompose: matrix is not square");
    if (!h.allFinite()) throw NumericError("eigendecompose: non-finite matrix entries");

    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw NumericError("eigendecompose: solver did not converge");

    EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < out.vectors.rows(); ++i)
            if (std::abs(out.vectors(i, k)) > std::abs(out.vectors(best, k))) best = i;
        if (out.vectors(best, k) < 0.0) out.vectors.col(k) *= -1.0;
    }
    return out;
}

namespace {

Hoppings topological_hoppings(const ChainParams& params, const char* what) {
    const Hoppings hop = hopping_amplitudes(params);
    if (classify_phase(hop, params.hopping) != Phase::Topological)
        throw DomainError(std::string(what) + " requires the topological phase (J1 < J2)");
    return hop;
}

// (-r)^k by repeated multiplication; exact zero for r = 0, k > 0.
double signed_power(double r, int k) {
    double value = 1.0;
    for (int i = 0; i < k; ++i) value *= -r;
    return value;
}

}  // namespace

double edge_normalization(const ChainParams& params) {
    const Hoppings hop = topological_hoppings(params, "edge_normalization");
    const double r = hop.intra / hop.inter;
    const double r2 = r * r;
    return std::sqrt((1.0 - r2) / (1.0 - std::pow(r2, params.cells)));
}

EdgeStatePair analytic_edge_states(const ChainParams& params) {
    const Hoppings hop = topological_hoppings(params, "analytic_edge_states");
    const int n = params.cells;
    EdgeStatePair pair;
    pair.localization = hop.intra / hop.inter;
    pair.norm_const = edge_normalization(params);
    pair.left = RealVector::Zero(2 * n);
    pair.right = RealVector::Zero(2 * n);
    for (int i = 1; i <= n; ++i) {
        pair.left(2 * (i - 1)) = pair.norm_const * signed_power(pair.localization, i - 1);
        pair.right(2 * (i - 1) + 1) = pair.norm_const * signed_power(pair.localization, n - i);
    }
    return pair;
}

double hybridization_energy(const ChainParams& params) {
    const Hoppings hop = topological_hoppings(params, "hybridization_energy");
    const double r = hop.intra / hop.inter;
    const double nl = edge_normalization(params);
    const double parity = (params.cells % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N+1)
    return parity * nl * nl * hop.intra * std::pow(r, params.cells - 1);
}

EffectiveCouplings effective_couplings(const ChainParams& params, const CouplingScenario& scenario) {
    scenario.validate(params.cells);
    const EdgeStatePair edges = analytic_edge_states(params);
    const double c1 = scenario.chain1_site == Chain1Site::A ? edges.left(2 * (scenario.cell_p - 1))
                                                            : edges.right(2 * (scenario.cell_p - 1) + 1);
    const double c2 = scenario.chain2_site == Chain2Site::C ? edges.left(2 * (scenario.cell_q - 1))
                                                            : edges.right(2 * (scenario.cell_q - 1) + 1);
    return {scenario.g1 * c1, scenario.g2 * c2};
}

std::string_view to_string(EdgeKet ket) {
    switch (ket) {
        case EdgeKet::AtomExcited: return "atom";
        case EdgeKet::Chain1Left: return "chain1_left";
        case EdgeKet::Chain1Right: return "chain1_right";
        case EdgeKet::Chain2Left: return "chain2_left";
        case EdgeKet::Chain2Right: return "chain2_right";
    }
    return "?";
}

Matrix5 five_state_matrix(double hybridization, double coupling1, double coupling2) {
    Matrix5 m = Matrix5::Zero();
    m(0, 1) = m(1, 0) = coupling1;
    m(0, 3) = m(3, 0) = coupling2;
    m(1, 2) = m(2, 1) = hybridization;
    m(3, 4) = m(4, 3) = hybridization;
    return m;
}

FiveStateModel five_state_model(const ChainParams& params, const CouplingScenario& scenario) {
    FiveStateModel model;
    model.hybridization = hybridization_energy(params);
    const EffectiveCouplings couplings = effective_couplings(params, scenario);
    model.coupling1 = couplings.chain1;
    model.coupling2 = couplings.chain2;
    const bool a_contact = scenario.chain1_site == Chain1Site::A;
    const bool c_contact = scenario.chain2_site == Chain2Site::C;
    model.basis = {EdgeKet::AtomExcited,
                   a_contact ? EdgeKet::Chain1Left : EdgeKet::Chain1Right,
                   a_contact ? EdgeKet::Chain1Right : EdgeKet::Chain1Left,
                   c_contact ? EdgeKet::Chain2Left : EdgeKet::Chain2Right,
                   c_contact ? EdgeKet::Chain2Right : EdgeKet::Chain2Left};
    model.matrix = five_state_matrix(model.hybridization, model.coupling1, model.coupling2);
    return model;
}

RealMatrix five_state_embedding(const ChainParams& params, const CouplingScenario& scenario) {
    scenario.validate(params.cells);
    const EdgeStatePair edges = analytic_edge_states(params);
    const Basis basis(params.cells);
    const int sites = 2 * params.cells;
    const bool a_contact = scenario.chain1_site == Chain1Site::A;
    const bool c_contact = scenario.chain2_site == Chain2Site::C;

    RealMatrix e = RealMatrix::Zero(basis.dim(), 5);
    e(basis.atom(), 0) = 1.0;
    e.block(0, 1, sites, 1) = a_contact ? edges.left : edges.right;
    e.block(0, 2, sites, 1) = a_contact ? edges.right : edges.left;
    e.block(sites, 3, sites, 1) = c_contact ? edges.left : edges.right;
    e.block(sites, 4, sites, 1) = c_contact ? edges.right : edges.left;
    return e;
}

MixingAngles mixing_angles(double hybridization, double coupling1, double coupling2) {
    const double s = std::hypot(coupling1, coupling2);
    if (hybridization == 0.0 && s == 0.0)
        throw DomainError("mixing_angles: G, G_1 and G_2 are all zero");
    const double sign = hybridization < 0.0 ? -1.0 : 1.0;
    // Adding +0.0 turns a -0.0 into +0.0 so that phi stays in (-pi, pi].
    return {std::atan2(s, std::abs(hybridization)),
            std::atan2(-sign * coupling2 + 0.0, -sign * coupling1 + 0.0)};
}

DarkState dark_state(double chi, double phi) {
    if (!std::isfinite(chi) || !std::isfinite(phi)) throw InputError("dark_state: non-finite angle");
    DarkState dark{chi, phi, Vector5::Zero()};
    dark.vector(0) = std::cos(chi);
    dark.vector(2) = std::sin(chi) * std::cos(phi);
    dark.vector(4) = std::sin(chi) * std::sin(phi);
    return dark;
}

DarkState dark_state(const FiveStateModel& model) {
    const MixingAngles angles = mixing_angles(model.hybridization, model.coupling1, model.coupling2);
    return dark_state(angles.chi, angles.phi);
}

RealVector embed_dark_state(const DarkState& dark, const ChainParams& params,
                            const CouplingScenario& scenario) {
    return five_state_embedding(params, scenario) * dark.vector;
}

TrackedState follow_by_overlap(const EigenSystem& spectrum, const RealVector& reference) {
    if (reference.size() != spectrum.vectors.rows())
        throw InputError("follow_by_overlap: reference has wrong dimension");
    const RealVector overlaps = spectrum.vectors.transpose() * reference;
    Eigen::Index best = 0;
    overlaps.cwiseAbs().maxCoeff(&best);
    TrackedState state{static_cast<int>(best), spectrum.values(best), spectrum.vectors.col(best)};
    if (overlaps(best) < 0.0) state.vector *= -1.0;
    return state;
}

TrackedState select_zero_mode(const EigenSystem& spectrum, const RealVector& reference, double tolerance) {
    if (reference.size() != spectrum.vectors.rows())
        throw InputError("select_zero_mode: reference has wrong dimension");
    const RealVector magnitudes = spectrum.values.cwiseAbs();
    const double smallest = magnitudes.minCoeff();

    std::vector<Eigen::Index> candidates;
    for (Eigen::Index k = 0; k < magnitudes.size(); ++k)
        if (magnitudes(k) <= smallest + tolerance) candidates.push_back(k);

    if (candidates.size() == 1) {
        const Eigen::Index k = candidates.front();
        TrackedState state{static_cast<int>(k), spectrum.values(k), spectrum.vectors.col(k)};
        if (state.vector.dot(reference) < 0.0) state.vector *= -1.0;
        return state;
    }

    RealVector projection = RealVector::Zero(reference.size());
    Eigen::Index best = candidates.front();
    double best_overlap = -1.0;
    double energy = 0.0;
    for (Eigen::Index k : candidates) {
        const double overlap = spectrum.vectors.col(k).dot(reference);
        projection += overlap * spectrum.vectors.col(k);
        energy += spectrum.values(k);
        if (std::abs(overlap) > best_overlap) {
            best_overlap = std::abs(overlap);
            best = k;
        }
    }
    TrackedState state{static_cast<int>(best), energy / static_cast<double>(candidates.size()), {}};
    const double norm = projection.norm();
    if (norm > 1e-8) {
        state.vector = projection / norm;
    } else {
        state.vector = spectrum.vectors.col(best);
        state.energy = spectrum.values(best);
    }
    return state;
}

std::array<int, 5> in_gap_quintet(const EigenSystem& spectrum) {
    const auto dim = static_cast<int>(spectrum.values.size());
    if (dim < 5) throw InputError("in_gap_quintet: fewer than five levels");
    std::vector<int> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return std::abs(spectrum.values(i)) < std::abs(spectrum.values(j));
    });
    std::array<int, 5> five{};
    std::copy_n(order.begin(), 5, five.begin());
    std::sort(five.begin(), five.end());
    return five;
}

double adiabaticity_parameter(const SystemSpec& system, double dtheta_dt, const DisorderRealization& disorder) {
    system.validate();
    if (classify_phase(system.chain) != Phase::Topological)
        throw DomainError("adiabaticity_parameter requires the topological phase");

    const Basis basis(system.chain.cells);
    const EigenSystem centre = eigendecompose(build_hamiltonian(system, disorder));
    const TrackedState zero = select_zero_mode(centre, basis.ket(basis.atom()));
    const int upper = zero.index + 1;
    if (upper >= basis.dim()) throw DomainError("adiabaticity_parameter: no level above the zero mode");

    const double gap = centre.values(upper) - zero.energy;
    if (std::abs(gap) < 1e-14 * system.chain.hopping)
        throw DegenerateError("adiabaticity_parameter: zero mode degenerate with the next level");
    if (dtheta_dt == 0.0) return 0.0;

    const double theta = system.chain.theta;
    const double step = 1e-6;
    const RealVector reference = centre.vectors.col(upper);
    auto gauge_fixed = [&](double angle) {
        const EigenSystem es = eigendecompose(build_hamiltonian(system.at_theta(angle), disorder));
        RealVector v = es.vectors.col(upper);
        if (v.dot(reference) < 0.0) v *= -1.0;
        return v;
    };
    const RealVector derivative = (gauge_fixed(theta + step) - gauge_fixed(theta - step)) / (2.0 * step);
    return std::abs(dtheta_dt * derivative.dot(zero.vector) / gap);
}

}  // namespace topopass
