#pragma once

// Reference implementations for tests. Deliberately plain: std::vector
// matrices, cyclic Jacobi for eigenvalues, RK4 for time evolution. Nothing
// here calls into topopass.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;
using CVec = std::vector<std::complex<double>>;

inline Dense zeros(int n) { return Dense(n, std::vector<double>(n, 0.0)); }

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// Optionally returns eigenvectors as columns of `vecs`.
inline std::vector<double> jacobi_eigen(Dense a, Dense* vecs = nullptr) {
    const int n = static_cast<int>(a.size());
    Dense v = zeros(n);
    for (int i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-40) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] < a[y][y]; });
    std::vector<double> values(n);
    Dense sorted = zeros(n);
    for (int j = 0; j < n; ++j) {
        values[j] = a[order[j]][order[j]];
        for (int k = 0; k < n; ++k) sorted[k][j] = v[k][order[j]];
    }
    if (vecs) *vecs = sorted;
    return values;
}

struct Lattice {
    int cells;
    double j1, j2;
    char site1;  // 'A' or 'B'
    int p;
    char site2;  // 'C' or 'D'
    int q;
    double g1, g2, delta;
};

inline Lattice lattice(int cells, double theta, double g1 = 0.01, double g2 = 0.01, double delta = 0.0) {
    return {cells, 1.0 + std::cos(theta), 1.0 - std::cos(theta), 'A', 1, 'C', 1, g1, g2, delta};
}

// Site index by name, layout [A1 B1 .. AN BN C1 D1 .. CN DN atom].
inline int site(const Lattice& l, char kind, int cell) {
    switch (kind) {
        case 'A': return 2 * (cell - 1);
        case 'B': return 2 * (cell - 1) + 1;
        case 'C': return 2 * l.cells + 2 * (cell - 1);
        case 'D': return 2 * l.cells + 2 * (cell - 1) + 1;
        default: return 4 * l.cells;
    }
}

// Hamiltonian written out bond by bond from the tight-binding picture.
inline Dense hamiltonian(const Lattice& l) {
    const int n = 4 * l.cells + 1;
    Dense h = zeros(n);
    auto bond = [&](int i, int j, double t) { h[i][j] = t; h[j][i] = t; };
    const char chains[2][2] = {{'A', 'B'}, {'C', 'D'}};
    for (const auto& ch : chains) {
        for (int c = 1; c <= l.cells; ++c) {
            bond(site(l, ch[0], c), site(l, ch[1], c), l.j1);
            if (c < l.cells) bond(site(l, ch[1], c), site(l, ch[0], c + 1), l.j2);
        }
    }
    const int atom = 4 * l.cells;
    h[atom][atom] = l.delta;
    bond(atom, site(l, l.site1, l.p), l.g1);
    bond(atom, site(l, l.site2, l.q), l.g2);
    return h;
}

// Isolated chain, 2N x 2N.
inline Dense chain(int cells, double theta) {
    const double j1 = 1.0 + std::cos(theta), j2 = 1.0 - std::cos(theta);
    Dense h = zeros(2 * cells);
    for (int c = 0; c < cells; ++c) {
        h[2 * c][2 * c + 1] = h[2 * c + 1][2 * c] = j1;
        if (c + 1 < cells) h[2 * c + 1][2 * c + 2] = h[2 * c + 2][2 * c + 1] = j2;
    }
    return h;
}

// Roots of lambda (lambda^2 - G^2) (lambda^2 - G^2 - G1^2 - G2^2), ascending.
inline std::vector<double> quintet(double g, double g1, double g2) {
    const double big = std::sqrt(g * g + g1 * g1 + g2 * g2);
    std::vector<double> v{0.0, g, -g, big, -big};
    std::sort(v.begin(), v.end());
    return v;
}

// Classical fourth-order Runge-Kutta for i dpsi/dt = H(t) psi.
inline CVec rk4(const std::function<Dense(double)>& h_of_t, CVec psi, double t0, double t1, double dt) {
    const int n = static_cast<int>(psi.size());
    const std::complex<double> mi(0.0, -1.0);
    auto deriv = [&](double t, const CVec& y) {
        const Dense h = h_of_t(t);
        CVec out(n);
        for (int i = 0; i < n; ++i) {
            std::complex<double> acc = 0.0;
            for (int j = 0; j < n; ++j) acc += h[i][j] * y[j];
            out[i] = mi * acc;
        }
        return out;
    };
    auto axpy = [&](const CVec& y, const CVec& k, double a) {
        CVec out(n);
        for (int i = 0; i < n; ++i) out[i] = y[i] + a * k[i];
        return out;
    };
    const int steps = static_cast<int>(std::ceil((t1 - t0) / dt - 1e-9));
    const double h = (t1 - t0) / steps;
    double t = t0;
    for (int s = 0; s < steps; ++s) {
        const CVec k1 = deriv(t, psi);
        const CVec k2 = deriv(t + h / 2, axpy(psi, k1, h / 2));
        const CVec k3 = deriv(t + h / 2, axpy(psi, k2, h / 2));
        const CVec k4 = deriv(t + h, axpy(psi, k3, h));
        for (int i = 0; i < n; ++i) psi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += h;
    }
    return psi;
}

}  // namespace oracle
