#include "bispinor/real_reduction.hpp"

#include "bispinor/factorization.hpp"

#include <algorithm>
#include <cmath>

namespace bispinor {

namespace {

Eigen::Matrix3d cross_matrix(const Vec3& v) {
    Eigen::Matrix3d m;
    m << 0, -v(2), v(1), v(2), 0, -v(0), -v(1), v(0), 0;
    return m;
}

Eigen::Matrix<double, 10, 1> pack(const NormalizedSolution& x) {
    Eigen::Matrix<double, 10, 1> out;
    out << x.a, x.x, x.y, x.z;
    return out;
}

NormalizedSolution unpack(const Eigen::Matrix<double, 10, 1>& v) {
    return {v(0), v.segment<3>(1), v.segment<3>(4), v.segment<3>(7)};
}

Eigen::Matrix<double, 10, 1> equations(const NormalizedSystem& s, const NormalizedSolution& x) {
    Eigen::Matrix<double, 10, 1> f;
    f(0) = x.a * x.a + x.x.squaredNorm() + x.y.squaredNorm() + x.z.squaredNorm() - 1.0;
    f.segment<3>(1) = x.a * x.x + x.y.cross(x.z) - s.a_vec;
    f.segment<3>(4) = x.a * x.y + x.z.cross(x.x) - s.b_vec;
    f.segment<3>(7) = x.a * x.z + x.x.cross(x.y) - s.c_vec;
    return f;
}

Eigen::Matrix<double, 10, 10> jacobian(const NormalizedSolution& x) {
    const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
    Eigen::Matrix<double, 10, 10> j = Eigen::Matrix<double, 10, 10>::Zero();
    j(0, 0) = 2 * x.a;
    j.block<1, 3>(0, 1) = 2 * x.x.transpose();
    j.block<1, 3>(0, 4) = 2 * x.y.transpose();
    j.block<1, 3>(0, 7) = 2 * x.z.transpose();

    j.block<3, 1>(1, 0) = x.x;
    j.block<3, 3>(1, 1) = x.a * id;
    j.block<3, 3>(1, 4) = -cross_matrix(x.z);
    j.block<3, 3>(1, 7) = cross_matrix(x.y);

    j.block<3, 1>(4, 0) = x.y;
    j.block<3, 3>(4, 1) = cross_matrix(x.z);
    j.block<3, 3>(4, 4) = x.a * id;
    j.block<3, 3>(4, 7) = -cross_matrix(x.x);

    j.block<3, 1>(7, 0) = x.z;
    j.block<3, 3>(7, 1) = -cross_matrix(x.y);
    j.block<3, 3>(7, 4) = cross_matrix(x.x);
    j.block<3, 3>(7, 7) = x.a * id;
    return j;
}

}  // namespace

Eigen::Matrix<double, 16, 1> RealExpansion::packed() const {
    Eigen::Matrix<double, 16, 1> c;
    c << a, A0, A, B0, B, b, C, h;
    return c;
}

RealExpansion RealExpansion::unpack(const Eigen::Matrix<double, 16, 1>& c) {
    RealExpansion e;
    e.a = c(0);
    e.A0 = c(1);
    e.A = c.segment<3>(2);
    e.B0 = c(5);
    e.B = c.segment<3>(6);
    e.b = c(9);
    e.C = c.segment<3>(10);
    e.h = c.segment<3>(13);
    return e;
}

std::array<Mat4, 16> expansion_basis(const DiracRep& rep) {
    const auto& g = rep.gamma;
    const Mat4& g5 = rep.gamma5;
    std::array<Mat4, 16> out;
    out[0] = Mat4::Identity();
    out[1] = kI * g[0];
    for (int k = 1; k <= 3; ++k) out[1 + k] = g[k];
    out[5] = kI * g5 * g[0];
    for (int k = 1; k <= 3; ++k) out[5 + k] = g5 * g[k];
    out[9] = kI * g5;
    for (int k = 1; k <= 3; ++k) out[9 + k] = g[0] * g[k];
    for (int k = 1; k <= 3; ++k) out[12 + k] = kI * g5 * g[0] * g[k];
    return out;
}

RealExpansion expand_Z(const Mat4& Z, const DiracRep& rep) {
    const double asym = max_abs(Mat4(Z - Z.adjoint()));
    if (!(asym < 1e-10 * std::max(1.0, max_abs(Z))))
        throw NotHermitian("expand_Z needs a Hermitian matrix (residual " + std::to_string(asym) + ")");
    const auto basis = expansion_basis(rep);
    Eigen::Matrix<double, 16, 1> c;
    for (int i = 0; i < 16; ++i) c(i) = 0.25 * (basis[i] * Z).trace().real();
    return RealExpansion::unpack(c);
}

Mat4 reconstruct_Z(const RealExpansion& c, const DiracRep& rep) {
    const auto basis = expansion_basis(rep);
    const auto packed = c.packed();
    Mat4 z = Mat4::Zero();
    for (int i = 0; i < 16; ++i) z += packed(i) * basis[i];
    return z;
}

TensorQuintuple compose_ZZplus(const RealExpansion& c) {
    const double a = c.a, b = c.b;
    TensorQuintuple q;
    q.frame = IndexFrame::local;
    q.j(0) = 4.0 * (a * a + c.A.squaredNorm() + c.B.squaredNorm() + c.C.squaredNorm() + b * b + c.A0 * c.A0 +
                    c.B0 * c.B0 + c.h.squaredNorm());
    q.j.tail<3>() = 8.0 * (a * c.C + c.A.cross(c.B) + b * c.h);

    const Vec3 h0 = -8.0 * (a * c.A + c.B.cross(c.C) + c.B0 * c.h);
    const Vec3 dual = 8.0 * (a * c.B - c.A.cross(c.C) - c.A0 * c.h);  // (H_23, H_31, H_12)
    q.H.set(0, 1, h0(0));
    q.H.set(0, 2, h0(1));
    q.H.set(0, 3, h0(2));
    q.H.set(2, 3, dual(0));
    q.H.set(3, 1, dual(1));
    q.H.set(1, 2, dual(2));

    q.m = 8.0 * (a * c.A0 - c.B.dot(c.h));
    q.n = -8.0 * (a * c.B0 + c.A.dot(c.h));
    q.s(0) = 8.0 * (a * b + c.C.dot(c.h));
    q.s.tail<3>() = -8.0 * (a * c.h + c.B0 * c.A - c.A0 * c.B + b * c.C);
    return q;
}

NormalizedSystem normalize_system(const TensorQuintuple& q) {
    const double j0 = q.j(0);
    if (!(j0 > 1e-12)) throw DegenerateNormalization("normalization needs j^0 > 0");
    NormalizedSystem s;
    s.norm = 0.25 * j0;
    for (int k = 0; k < 3; ++k) {
        s.a_vec(k) = -0.5 * q.H(0, k + 1) / j0;
        s.c_vec(k) = 0.5 * q.j(k + 1) / j0;
        double dual = 0.0;
        for (int p = 0; p < 3; ++p)
            for (int r = 0; r < 3; ++r) dual += eps3(k, p, r) * q.H(p + 1, r + 1);
        s.b_vec(k) = 0.25 * dual / j0;
    }
    return s;
}

TensorQuintuple denormalize(const NormalizedSystem& s) {
    const double n = s.norm;
    TensorQuintuple q;
    q.frame = IndexFrame::local;
    q.j(0) = 4.0 * n;
    q.j.tail<3>() = 8.0 * n * s.c_vec;
    for (int k = 0; k < 3; ++k) q.H.set(0, k + 1, -8.0 * n * s.a_vec(k));
    q.H.set(2, 3, 8.0 * n * s.b_vec(0));
    q.H.set(3, 1, 8.0 * n * s.b_vec(1));
    q.H.set(1, 2, 8.0 * n * s.b_vec(2));
    return q;
}

std::array<double, 4> normalized_residuals(const NormalizedSystem& s, const NormalizedSolution& x) {
    const auto f = equations(s, x);
    return {std::abs(f(0)), f.segment<3>(1).cwiseAbs().maxCoeff(), f.segment<3>(4).cwiseAbs().maxCoeff(),
            f.segment<3>(7).cwiseAbs().maxCoeff()};
}

double max_residual(const NormalizedSystem& s, const NormalizedSolution& x) {
    const auto r = normalized_residuals(s, x);
    return *std::max_element(r.begin(), r.end());
}

NormalizedSolution solve_normalized(const NormalizedSystem& s, const Tolerances& tol) {
    static const DiracRep rep = build_rep(RepKind::majorana_real);
    NormalizedSystem unit = s;
    unit.norm = 1.0;
    const BispinorMatrix z = solve_Z(denormalize(unit), rep, std::nullopt, tol);
    const RealExpansion c = expand_Z(z.Z, rep);
    return {c.a, c.A, c.B, c.C};
}

NormalizedSolution solve_normalized_newton(const NormalizedSystem& s, const NormalizedSolution& start,
                                           int max_iterations) {
    Eigen::Matrix<double, 10, 1> x = pack(start);
    Eigen::Matrix<double, 10, 1> f = equations(s, unpack(x));
    double cost = f.squaredNorm();
    double mu = 1e-3;
    for (int it = 0; it < max_iterations && f.cwiseAbs().maxCoeff() >= 1e-14; ++it) {
        const auto j = jacobian(unpack(x));
        const Eigen::Matrix<double, 10, 10> jtj = j.transpose() * j;
        const Eigen::Matrix<double, 10, 1> g = j.transpose() * f;
        bool improved = false;
        for (int tries = 0; tries < 30 && !improved; ++tries) {
            Eigen::Matrix<double, 10, 10> lhs = jtj;
            lhs.diagonal().array() += mu;
            const Eigen::Matrix<double, 10, 1> step = lhs.ldlt().solve(-g);
            const Eigen::Matrix<double, 10, 1> trial = x + step;
            const auto ft = equations(s, unpack(trial));
            if (ft.squaredNorm() < cost) {
                x = trial;
                f = ft;
                cost = ft.squaredNorm();
                mu = std::max(mu / 3.0, 1e-12);
                improved = true;
            } else {
                mu *= 4.0;
            }
        }
        if (!improved) break;
    }
    if (!(f.cwiseAbs().maxCoeff() < 1e-12))
        throw NoConvergence("damped Newton stalled at residual " + std::to_string(f.cwiseAbs().maxCoeff()));
    return unpack(x);
}

Mat4 build_Y(const Vec4& j, const Antisymmetric4& H, const DiracRep& rep) {
    if (rep.kind != RepKind::majorana_real) throw InputError("build_Y needs the majorana_real representation");
    Mat4 y = Mat4::Zero();
    for (int k = 0; k < 4; ++k) y += 0.25 * j(k) * rep.gamma[k] * rep.D_inv;
    for (int p = 0; p < 6; ++p) {
        const auto [m, n] = kPairs[p];
        const double h_up = MinkowskiMetric::g(m, m) * MinkowskiMetric::g(n, n) * H.c[p];
        // (m, n) and (n, m) contribute equally.
        y -= 0.25 * h_up * rep.sigma[p] * rep.D_inv;
    }
    return y.real().cast<cplx>();
}

}  // namespace bispinor
