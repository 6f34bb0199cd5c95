#pragma once

// Small dense complex kernels used by the linearized dynamics: nothing here
// is part of the public API.

#include <array>
#include <complex>
#include <vector>

namespace optocool::linalg {

using cplx = std::complex<double>;
using Mat4 = std::array<cplx, 16>; // row-major

/// In-place LU solve with partial pivoting for a dense n x n system.
/// a is row-major and destroyed; b becomes the solution.
/// Throws SingularMatrix on (numerically) singular input.
void solve_dense(std::vector<cplx>& a, std::vector<cplx>& b, int n);

/// Convenience wrapper for the 4x4 case.
std::array<cplx, 4> solve4(const Mat4& a, const std::array<cplx, 4>& b);

/// Monic characteristic polynomial coefficients of a 4x4 matrix via the
/// Faddeev-LeVerrier recursion: p(z) = z^4 + c[0] z^3 + c[1] z^2 + c[2] z + c[3].
std::array<cplx, 4> char_poly4(const Mat4& a);

/// All four eigenvalues, by Durand-Kerner iteration on the characteristic
/// polynomial followed by Newton polishing. Adequate for the well-scaled
/// drift matrices produced here (entries O(1) in units of omega_m).
std::array<cplx, 4> eigenvalues4(const Mat4& a);

/// Steady-state second moments C of dv = A v dt + noise with (co)variance
/// source q: solves A C + C A^T = -q via the 16x16 Kronecker system.
/// a and q are row-major 4x4; returns C row-major.
Mat4 lyapunov4(const Mat4& a, const Mat4& q);

} // namespace optocool::linalg
