#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string_view>
#include <utility>

namespace bispinor {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using RMat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Vec3 = Eigen::Vector3d;

inline const cplx kI{0.0, 1.0};

/// The six index pairs (m < n) of an antisymmetric 4-tensor, in storage order.
inline constexpr std::array<std::pair<int, int>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Storage slot of (m, n), m != n, together with the sign relative to the stored (m<n) entry.
constexpr std::pair<int, int> pair_slot(int m, int n) {
    const int sign = m < n ? 1 : -1;
    const int a = m < n ? m : n;
    const int b = m < n ? n : m;
    for (int k = 0; k < 6; ++k) {
        if (kPairs[k].first == a && kPairs[k].second == b) return {k, sign};
    }
    return {-1, 0};
}

/// Three-index Levi-Civita symbol on spatial indices 0..2 (epsilon_012 = +1).
constexpr int eps3(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

/// Numerical thresholds shared across modules. Overridable per job.
struct Tolerances {
    double feasibility = 1e-10;   // feasible <=> margin >= -feasibility
    double rank = 1e-9;           // eigenvalue counted when > rank * max(lambda_1, 1)
    double roundtrip = 1e-8;      // acceptable bilinear round-trip residual
    double null_current = 1e-12;  // j below this is treated as null
    double spacelike = 1e-12;     // g_mn j^m j^n above this is spacelike
    double nonnegative = 1e-8;    // eigenvalues below -nonnegative are rejected
    double real_sector = 1e-12;   // |m|, |s|, |n| below this count as zero
};

/// Largest absolute entry of a matrix or vector expression.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& x) {
    return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

inline bool is_exactly_real(const Mat4& m) { return m.imag().isZero(0.0); }

}  // namespace bispinor
