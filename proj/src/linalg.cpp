#include "linalg.hpp"

#include <algorithm>
#include <cmath>

#include "optocool/errors.hpp"

namespace optocool::linalg {

void solve_dense(std::vector<cplx>& a, std::vector<cplx>& b, int n) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a[col * n + col]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(a[r * n + col]);
            if (v > best) { best = v; pivot = r; }
        }
        if (best == 0.0)
            throw SingularMatrix("singular matrix in dense solve");
        if (pivot != col) {
            for (int k = col; k < n; ++k) std::swap(a[pivot * n + k], a[col * n + k]);
            std::swap(b[pivot], b[col]);
        }
        const cplx inv_diag = 1.0 / a[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            const cplx f = a[r * n + col] * inv_diag;
            if (f == cplx{}) continue;
            for (int k = col + 1; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        cplx s = b[r];
        for (int k = r + 1; k < n; ++k) s -= a[r * n + k] * b[k];
        b[r] = s / a[r * n + r];
    }
}

std::array<cplx, 4> solve4(const Mat4& a, const std::array<cplx, 4>& b) {
    std::vector<cplx> m(a.begin(), a.end());
    std::vector<cplx> rhs(b.begin(), b.end());
    solve_dense(m, rhs, 4);
    return {rhs[0], rhs[1], rhs[2], rhs[3]};
}

namespace {

Mat4 mul(const Mat4& x, const Mat4& y) {
    Mat4 z{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const cplx v = x[i * 4 + k];
            if (v == cplx{}) continue;
            for (int j = 0; j < 4; ++j) z[i * 4 + j] += v * y[k * 4 + j];
        }
    return z;
}

cplx trace(const Mat4& x) { return x[0] + x[5] + x[10] + x[15]; }

cplx horner(const std::array<cplx, 4>& c, cplx z) {
    return (((z + c[0]) * z + c[1]) * z + c[2]) * z + c[3];
}

cplx horner_deriv(const std::array<cplx, 4>& c, cplx z) {
    return ((4.0 * z + 3.0 * c[0]) * z + 2.0 * c[1]) * z + c[2];
}

} // namespace

std::array<cplx, 4> char_poly4(const Mat4& a) {
    std::array<cplx, 4> c{};
    Mat4 b = a;
    c[0] = -trace(b);
    for (int k = 1; k < 4; ++k) {
        Mat4 shifted = b;
        for (int i = 0; i < 4; ++i) shifted[i * 4 + i] += c[k - 1];
        b = mul(a, shifted);
        c[k] = -trace(b) / static_cast<double>(k + 1);
    }
    return c;
}

std::array<cplx, 4> eigenvalues4(const Mat4& a) {
    const std::array<cplx, 4> c = char_poly4(a);

    double bound = 0.0;
    for (const cplx& v : c) bound = std::max(bound, std::abs(v));
    const double radius = 1.0 + bound; // Cauchy bound on the root moduli

    std::array<cplx, 4> z;
    for (int k = 0; k < 4; ++k) {
        const double phi = 0.7 + 2.0 * M_PI * k / 4.0;
        z[k] = radius * cplx{std::cos(phi), std::sin(phi)};
    }

    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (int k = 0; k < 4; ++k) {
            cplx denom = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != k) denom *= z[k] - z[j];
            if (denom == cplx{}) denom = cplx{1e-300, 0.0};
            const cplx step = horner(c, z[k]) / denom;
            z[k] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (worst < 1e-15) break;
    }

    for (int k = 0; k < 4; ++k) { // Newton polish
        for (int it = 0; it < 3; ++it) {
            const cplx d = horner_deriv(c, z[k]);
            if (std::abs(d) < 1e-300) break;
            z[k] -= horner(c, z[k]) / d;
        }
    }
    return z;
}

Mat4 lyapunov4(const Mat4& a, const Mat4& q) {
    // Column-major vectorization: index m = i + 4j addresses C_{ij}; then
    // (I (x) A + A (x) I) vec(C) = -vec(Q).
    constexpr int n = 16;
    std::vector<cplx> k(n * n, cplx{});
    std::vector<cplx> rhs(n, cplx{});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const int row = i + 4 * j;
            rhs[row] = -q[i * 4 + j];
            for (int p = 0; p < 4; ++p) {
                k[row * n + (p + 4 * j)] += a[i * 4 + p]; // A C term
                k[row * n + (i + 4 * p)] += a[j * 4 + p]; // C A^T term
            }
        }
    solve_dense(k, rhs, n);
    Mat4 cmat;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) cmat[i * 4 + j] = rhs[i + 4 * j];
    return cmat;
}

} // namespace optocool::linalg
