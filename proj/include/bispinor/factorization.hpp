#pragma once

// Factoring M = Z Z^+: arithmetic square root, Hermitian factor classes,
// bilinear extraction, polar expansion, spin matrices and the split of Z into
// four column bispinors.

#include "bispinor/clifford.hpp"
#include "bispinor/frames.hpp"
#include "bispinor/spectrum.hpp"

#include <optional>
#include <vector>

namespace bispinor {

struct BispinorMatrix {
    Mat4 Z;
    RepKind rep_kind;
    std::optional<Mat4> gauge;  // U applied on the right, when one was requested
};

/// Unique nonnegative Hermitian root. Eigenvalues in [-1e-8, 0) are clamped;
/// below that NotNonnegative is thrown.
Mat4 hermitian_sqrt(const Mat4& M, const Tolerances& tol = {});

struct HermitianFactor {
    Mat4 H;
    std::vector<int> signs;  // one +-1 per nonzero eigenvalue, in descending-eigenvalue order
    int class_index = 0;
};

struct HermitianFactorSet {
    int rank = 0;
    std::vector<HermitianFactor> factors;          // 2^rank entries, sign-vector order
    std::vector<std::vector<int>> sign_classes;    // one representative sign vector per class
    int nonequivalent_count = 0;
};

/// H_eps = V diag(eps_i sqrt(lambda_i)) V^+ for all sign vectors; factors are
/// grouped by eigenvalue multiset (unitary equivalence of Hermitian matrices).
HermitianFactorSet enumerate_hermitian_factors(const Mat4& M, const Tolerances& tol = {});

/// Hermitian a, b are unitarily equivalent iff their sorted spectra agree.
bool unitarily_equivalent(const Mat4& a, const Mat4& b, double tol = 1e-9);

/// Throws NotUnitary when |U U^+ - E| >= 1e-8.
void require_unitary(const Mat4& U);

/// Z = hermitian_sqrt(build_M(q)) U. Throws Infeasible or NotUnitary.
BispinorMatrix solve_Z(const TensorQuintuple& q, const DiracRep& rep, const std::optional<Mat4>& gauge = std::nullopt,
                       const Tolerances& tol = {});

/// m = i Sp(Z^+ D Z), j^a = Sp(Z^+ D gamma^a Z), s_a = i Sp(Z^+ D gamma_5 gamma_a Z),
/// H_ab = Sp(Z^+ D S_ab Z), n = i Sp(Z^+ D gamma_5 Z). Throws NotHermitian if an
/// imaginary part exceeds roundoff.
TensorQuintuple bilinears(const Mat4& Z, const DiracRep& rep);

/// M(bilinears(Z)) / (Z Z^+), measured on Z = E.
double forward_constant(const DiracRep& rep);

/// max |q - bilinears(solve_Z(q))|. Propagates Infeasible.
double roundtrip_residual(const TensorQuintuple& q, const DiracRep& rep, const Tolerances& tol = {});

/// Coefficients of the amplitude on the symmetric system {gamma_a D^-1, S_ab D^-1}:
///   H = -v0 gamma_0 D^-1 + v_b gamma_b D^-1 + w_ab S_ab D^-1 (summed over a != b, spatial)
///       - 2 w_0b S_0b D^-1.
struct AmplitudeCoefficients {
    double v0 = 0.0;
    Vec3 v = Vec3::Zero();
    Vec3 w_spatial = Vec3::Zero();  // w_12, w_13, w_23
    Vec3 w_time = Vec3::Zero();     // w_01, w_02, w_03
};

struct PolarFactors {
    Mat4 amplitude;  // nonnegative Hermitian (real symmetric for real Z)
    Mat4 phase;      // unitary (orthogonal for real Z); amplitude * phase = Z
    std::optional<AmplitudeCoefficients> coefficients;  // majorana_real only
};

/// For singular Z the phase on the null space is completed by pairing the
/// left and right null vectors; only the amplitude is unique.
PolarFactors polar_decompose(const Mat4& Z, const DiracRep& rep);

AmplitudeCoefficients amplitude_coefficients(const Mat4& amplitude, const DiracRep& rep);

/// Spin matrix L with L gamma_a L^-1 = gamma_b w^b_a, L^+ D L = D, L^T C L = C, det L = 1.
/// Determined up to sign; the sign with Re Sp(L) > 0 is returned.
Mat4 spin_matrix(const LorentzTransform& w, const DiracRep& rep);
/// Closed forms for LorentzTransform::rotation and LorentzTransform::boost.
Mat4 spin_rotation(const Vec3& axis_angle, const DiracRep& rep);
Mat4 spin_boost(const Vec3& rapidity_vector, const DiracRep& rep);

struct CovarianceResidual {
    double amplitude;  // |H' - L H L^+|
    double phase;      // |U'^-1 - L U^-1|
};

/// Polar factors of L Z compared with the rotation rule H' = L H L^+,
/// U'^-1 = L U^-1. Small for rotations, generally large for boosts.
CovarianceResidual rotation_covariance_check(const Mat4& Z, const Mat4& L, const DiracRep& rep);

struct BispinorSplit {
    std::array<Mat4, 4> projectors;  // P_{eta lambda}, eta/lambda = (+,+), (+,-), (-,+), (-,-)
    std::array<Mat4, 4> columns;     // Z P_{eta lambda}
    std::array<std::pair<int, int>, 4> labels;
};

/// P_{eta lambda} = 1/4 (E + eta A)(E + lambda B), A = gamma_1, B = gamma_0 gamma_2.
/// Throws ProjectorConstructionFailed if A, B do not commute or square to E.
BispinorSplit split_bispinors(const Mat4& Z, const DiracRep& rep);

}  // namespace bispinor
