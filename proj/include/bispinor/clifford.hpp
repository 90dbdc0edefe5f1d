#pragma once

// Concrete 4x4 Dirac matrix representations for signature (-,+,+,+), the
// intertwiners D and C, and the 16-element Hermitian basis used to build M.
//
// Frozen conventions (both kinds):
//   {gamma_m, gamma_n} = 2 g_mn E,  g = diag(-1, 1, 1, 1)
//   gamma_5  = gamma_0 gamma_1 gamma_2 gamma_3        (gamma_5^2 = -E)
//   S_mn     = kSigmaNormalization * [gamma_m, gamma_n]
//   D gamma_k D^-1 = -gamma_k^+,  D anti-Hermitian, |det D| = 1, Sp(gamma_0 D^-1) > 0
//   C gamma_k C^-1 = +gamma_k^T,  |det C| = 1
//
// majorana_real (eps = [[0,1],[-1,0]], sx, sz real Pauli matrices):
//   gamma_0 = eps (x) sz,  gamma_1 = sx (x) E,  gamma_2 = sz (x) E,  gamma_3 = eps (x) eps
// dirac_complex (standard Dirac matrices times i):
//   gamma_0 = i diag(1, 1, -1, -1),  gamma_k = i [[0, s_k], [-s_k, 0]]

#include "bispinor/errors.hpp"
#include "bispinor/types.hpp"

#include <optional>
#include <string>

namespace bispinor {

enum class RepKind { majorana_real, dirac_complex };

std::string_view to_string(RepKind kind);
/// Throws InputError on an unknown name.
RepKind parse_rep_kind(std::string_view name);

struct MinkowskiMetric {
    static constexpr std::array<int, 4> diagonal{-1, 1, 1, 1};
    static constexpr int g(int m, int n) { return m == n ? diagonal[m] : 0; }
    static RMat4 matrix() { return Eigen::Vector4d(-1, 1, 1, 1).asDiagonal(); }
};

/// S_mn = kSigmaNormalization * [gamma_m, gamma_n].
inline constexpr double kSigmaNormalization = 0.5;

using GammaSet = std::array<Mat4, 4>;

struct DiracRep {
    RepKind kind;
    GammaSet gamma;            // gamma_0 .. gamma_3 (lower index)
    Mat4 gamma5;               // gamma_0 gamma_1 gamma_2 gamma_3
    std::array<Mat4, 6> sigma; // S_mn for (m, n) in kPairs order
    Mat4 D;
    Mat4 D_inv;
    Mat4 C;
    Mat4 C_inv;

    /// S_mn for any m, n (zero on the diagonal, antisymmetric).
    Mat4 S(int m, int n) const;
    /// gamma^a = g^{ab} gamma_b.
    Mat4 gamma_upper(int a) const;
};

DiracRep build_rep(RepKind kind);

/// Solves X A_k = B_k X (k = 0..3) for a nonzero X. Returns nullopt unless the
/// solution space is exactly one-dimensional. The result has unit Frobenius norm.
std::optional<Mat4> solve_intertwining(const GammaSet& a, const GammaSet& b);

/// D with D gamma_k D^-1 = -gamma_k^+, normalized as described above.
Mat4 find_intertwiner(const GammaSet& gamma);
Mat4 find_intertwiner(const DiracRep& rep);

/// C with C gamma_k C^-1 = +gamma_k^T, |det C| = 1, largest entry real positive.
Mat4 find_transpose_intertwiner(const GammaSet& gamma);

/// T with T from_k T^-1 = to_k (Pauli theorem), |det T| = 1.
std::optional<Mat4> find_similarity(const GammaSet& from, const GammaSet& to);

/// Largest anticommutator residual |gamma_m gamma_n + gamma_n gamma_m - 2 g_mn E|.
double anticommutator_residual(const GammaSet& gamma);
/// Largest |D gamma_k D^-1 + gamma_k^+|.
double intertwiner_residual(const DiracRep& rep);

/// The 16 Hermitian matrices
///   { -i D^-1; gamma_a D^-1 (4); -i gamma_5 gamma_a D^-1 (4); -S_ab D^-1 (6); i gamma_5 D^-1 }
/// with their trace Gram matrix gram(i, j) = Sp(B_i B_j).
struct HermitianBasis16 {
    std::array<Mat4, 16> elements;
    Eigen::Matrix<double, 16, 16> gram;
    Eigen::Matrix<double, 16, 16> gram_inv;

    /// Coefficients c with X = sum c_i B_i (complex in general, real for Hermitian X).
    Eigen::Matrix<cplx, 16, 1> coefficients(const Mat4& x) const;
    Mat4 reconstruct(const Eigen::Matrix<cplx, 16, 1>& c) const;
};

HermitianBasis16 build_basis16(const DiracRep& rep);

/// Complete systems of 10 symmetric and 6 antisymmetric matrices
/// (symmetry exact for the majorana_real kind).
struct CompleteSystem {
    std::array<Mat4, 10> symmetric;
    std::array<Mat4, 6> antisymmetric;
};

/// System 1: symmetric {gamma_k D^-1, S_mn D^-1}; antisymmetric {D^-1, gamma_5 gamma_k D^-1, gamma_5 D^-1}.
CompleteSystem complete_system_1(const DiracRep& rep);
/// System 2: symmetric {gamma_5 gamma_k C^-1, S_mn C^-1}; antisymmetric {C^-1, gamma_k C^-1, gamma_5 C^-1}.
CompleteSystem complete_system_2(const DiracRep& rep);

}  // namespace bispinor
