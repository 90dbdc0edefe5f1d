#pragma once

// Real-field path: expansion of Z over products of Dirac matrices, the
// quadratic coefficient system for Z Z^+, its normalized form and solvers, and
// the scalar symmetric matrix Y.

#include "bispinor/clifford.hpp"
#include "bispinor/frames.hpp"
#include "bispinor/spectrum.hpp"

namespace bispinor {

/// Z = a E + A0 i gamma_0 + A_k gamma_k + B0 i gamma_5 gamma_0 + B_k gamma_5 gamma_k
///     + b i gamma_5 + C_k gamma_0 gamma_k + h_k i gamma_5 gamma_0 gamma_k.
/// Every basis element is Hermitian and squares to E.
struct RealExpansion {
    double a = 0.0, b = 0.0, A0 = 0.0, B0 = 0.0;
    Vec3 A = Vec3::Zero(), B = Vec3::Zero(), C = Vec3::Zero(), h = Vec3::Zero();

    /// Coefficients in basis order: a, A0, A1..3, B0, B1..3, b, C1..3, h1..3.
    Eigen::Matrix<double, 16, 1> packed() const;
    static RealExpansion unpack(const Eigen::Matrix<double, 16, 1>& c);
};

/// The 16 Hermitian basis matrices in packed() order.
std::array<Mat4, 16> expansion_basis(const DiracRep& rep);

/// Trace projection (coefficient = 1/4 Sp(G Z)). Throws NotHermitian if Z is
/// not Hermitian (|Z - Z^+| >= 1e-10 max(1, |Z|)).
RealExpansion expand_Z(const Mat4& Z, const DiracRep& rep);
Mat4 reconstruct_Z(const RealExpansion& c, const DiracRep& rep);

/// The quintuple of Z Z^+ written directly in the coefficients.
TensorQuintuple compose_ZZplus(const RealExpansion& c);

/// Normalized data of the real-field system (n = 1/4 j^0):
///   a_k = -1/2 H_0k / j^0,  b_k = 1/4 eps_kpq H_pq / j^0,  c_k = 1/2 j_k / j^0.
struct NormalizedSystem {
    Vec3 a_vec = Vec3::Zero();
    Vec3 b_vec = Vec3::Zero();
    Vec3 c_vec = Vec3::Zero();
    double norm = 0.0;  // 1/4 j^0; unknowns are the coefficients divided by sqrt(norm)
};

/// Unknowns of the normalized system:
///   a^2 + x^2 + y^2 + z^2 = 1,  a x + y cross z = a_vec,
///   a y + z cross x = b_vec,    a z + x cross y = c_vec.
struct NormalizedSolution {
    double a = 1.0;
    Vec3 x = Vec3::Zero(), y = Vec3::Zero(), z = Vec3::Zero();
};

/// Throws DegenerateNormalization if j^0 <= 1e-12.
NormalizedSystem normalize_system(const TensorQuintuple& q);

/// The quintuple (j^0 = 4 norm) whose normalized data is s.
TensorQuintuple denormalize(const NormalizedSystem& s);

/// Residuals of the four equations (scalar, then the three vector equations by max norm).
std::array<double, 4> normalized_residuals(const NormalizedSystem& s, const NormalizedSolution& x);
double max_residual(const NormalizedSystem& s, const NormalizedSolution& x);

/// Solution from the arithmetic root of M (U = E). Throws Infeasible.
NormalizedSolution solve_normalized(const NormalizedSystem& s, const Tolerances& tol = {});

/// Damped Newton (Levenberg-Marquardt) on the 10 unknowns, started from `start`.
/// Throws NoConvergence if the residual does not drop below 1e-12.
NormalizedSolution solve_normalized_newton(const NormalizedSystem& s, const NormalizedSolution& start = {},
                                           int max_iterations = 200);

/// Y = 1/4 j^k gamma_k D^-1 - 1/8 H^mn S_mn D^-1 (summed over all m, n). Symmetric;
/// majorana_real kind only (InputError otherwise).
Mat4 build_Y(const Vec4& j, const Antisymmetric4& H, const DiracRep& rep);

}  // namespace bispinor
