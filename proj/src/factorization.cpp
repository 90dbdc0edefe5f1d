#include "bispinor/factorization.hpp"

#include <algorithm>
#include <cmath>

namespace bispinor {

namespace {

using DynMat = Eigen::MatrixXcd;

Mat4 keep_real_if(const Mat4& x, bool real) { return real ? Mat4(x.real().cast<cplx>()) : x; }

// Unitary factor of a square matrix via its SVD (identity for an empty block).
DynMat unitary_part(const DynMat& x) {
    if (x.size() == 0) return x;
    Eigen::JacobiSVD<DynMat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

Mat4 hermitian_sqrt(const Mat4& M, const Tolerances& tol) {
    const Mat4 sym = 0.5 * (M + M.adjoint());
    const Eigensystem es = hermitian_eigensystem(sym);
    if (es.values[3] < -tol.nonnegative)
        throw NotNonnegative("matrix has a negative eigenvalue " + std::to_string(es.values[3]), es.values[3]);
    Eigen::Vector4d roots;
    for (int k = 0; k < 4; ++k) roots(k) = std::sqrt(std::max(es.values[k], 0.0));
    Mat4 h = es.vectors * roots.cast<cplx>().asDiagonal() * es.vectors.adjoint();
    h = 0.5 * (h + h.adjoint()).eval();
    return keep_real_if(h, is_exactly_real(M));
}

bool unitarily_equivalent(const Mat4& a, const Mat4& b, double tol) {
    const Spectrum sa = numeric_spectrum(Mat4(0.5 * (a + a.adjoint())));
    const Spectrum sb = numeric_spectrum(Mat4(0.5 * (b + b.adjoint())));
    const double scale = std::max({1.0, max_abs(a), max_abs(b)});
    for (int k = 0; k < 4; ++k)
        if (std::abs(sa[k] - sb[k]) > tol * scale) return false;
    return true;
}

HermitianFactorSet enumerate_hermitian_factors(const Mat4& M, const Tolerances& tol) {
    const Mat4 sym = 0.5 * (M + M.adjoint());
    const Eigensystem es = hermitian_eigensystem(sym);
    if (es.values[3] < -tol.nonnegative)
        throw NotNonnegative("matrix has a negative eigenvalue " + std::to_string(es.values[3]), es.values[3]);
    const bool real = is_exactly_real(M);

    HermitianFactorSet out;
    out.rank = matrix_rank(es.values, tol);
    const int r = out.rank;
    std::vector<Mat4> representatives;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        HermitianFactor f;
        Eigen::Vector4d d = Eigen::Vector4d::Zero();
        for (int i = 0; i < r; ++i) {
            const int sign = (mask >> i) & 1u ? -1 : 1;
            f.signs.push_back(sign);
            d(i) = sign * std::sqrt(es.values[i]);
        }
        f.H = es.vectors * d.cast<cplx>().asDiagonal() * es.vectors.adjoint();
        f.H = keep_real_if(0.5 * (f.H + f.H.adjoint()), real);

        f.class_index = -1;
        for (std::size_t c = 0; c < representatives.size(); ++c)
            if (unitarily_equivalent(f.H, representatives[c], 1e-9)) {
                f.class_index = static_cast<int>(c);
                break;
            }
        if (f.class_index < 0) {
            f.class_index = static_cast<int>(representatives.size());
            representatives.push_back(f.H);
            out.sign_classes.push_back(f.signs);
        }
        out.factors.push_back(std::move(f));
    }
    out.nonequivalent_count = static_cast<int>(representatives.size());
    return out;
}

void require_unitary(const Mat4& U) {
    const double r = max_abs(Mat4(U * U.adjoint() - Mat4::Identity()));
    if (!(r < 1e-8)) throw NotUnitary("gauge matrix is not unitary (residual " + std::to_string(r) + ")");
}

BispinorMatrix solve_Z(const TensorQuintuple& q, const DiracRep& rep, const std::optional<Mat4>& gauge,
                       const Tolerances& tol) {
    const Feasibility f = feasibility(q, rep, tol);
    if (!f.feasible) throw Infeasible("quintuple is not solvable: " + f.reason, f.margin);
    if (gauge) require_unitary(*gauge);
    const Mat4 h = hermitian_sqrt(build_M(q, rep).M, tol);
    BispinorMatrix out{h, rep.kind, gauge};
    if (gauge) out.Z = h * *gauge;
    return out;
}

TensorQuintuple bilinears(const Mat4& Z, const DiracRep& rep) {
    // Sp(Z^+ X Z) = Sp(X Z Z^+).
    const Mat4 p = Z * Z.adjoint();
    const Mat4 dp = rep.D * p;
    double worst_imag = 0.0;
    auto real_of = [&](cplx x) {
        worst_imag = std::max(worst_imag, std::abs(x.imag()));
        return x.real();
    };

    TensorQuintuple q;
    q.frame = IndexFrame::local;
    q.m = real_of(kI * dp.trace());
    q.n = real_of(kI * (rep.D * rep.gamma5 * p).trace());
    for (int a = 0; a < 4; ++a) {
        q.j(a) = real_of((rep.D * rep.gamma_upper(a) * p).trace());
        q.s(a) = real_of(kI * (rep.D * rep.gamma5 * rep.gamma[a] * p).trace());
    }
    for (int k = 0; k < 6; ++k) q.H.c[k] = real_of((rep.D * rep.sigma[k] * p).trace());

    const double bound = 1e-10 * std::max(1.0, max_abs(p));
    if (worst_imag > bound)
        throw NotHermitian("bilinear has imaginary part " + std::to_string(worst_imag));
    return q;
}

double forward_constant(const DiracRep& rep) {
    const Mat4 e = Mat4::Identity();
    const Mat4 m = build_M(bilinears(e, rep), rep).M;
    return m.trace().real() / 4.0;
}

double roundtrip_residual(const TensorQuintuple& q, const DiracRep& rep, const Tolerances& tol) {
    return max_abs_diff(q, bilinears(solve_Z(q, rep, std::nullopt, tol).Z, rep));
}

AmplitudeCoefficients amplitude_coefficients(const Mat4& amplitude, const DiracRep& rep) {
    const CompleteSystem sys = complete_system_1(rep);
    Eigen::Matrix<double, 10, 10> gram;
    Eigen::Matrix<double, 10, 1> rhs;
    for (int i = 0; i < 10; ++i) {
        for (int k = 0; k < 10; ++k) gram(i, k) = (sys.symmetric[i].adjoint() * sys.symmetric[k]).trace().real();
        rhs(i) = (sys.symmetric[i].adjoint() * amplitude).trace().real();
    }
    const Eigen::Matrix<double, 10, 1> c = gram.ldlt().solve(rhs);

    AmplitudeCoefficients out;
    out.v0 = -c(0);
    out.v = c.segment<3>(1);
    for (int p = 0; p < 3; ++p) {
        out.w_time(p) = -0.5 * c(4 + p);       // pairs 01, 02, 03
        out.w_spatial(p) = 0.5 * c(4 + 3 + p);  // pairs 12, 13, 23
    }
    return out;
}

PolarFactors polar_decompose(const Mat4& Z, const DiracRep& rep) {
    const bool real = is_exactly_real(Z);
    Eigen::JacobiSVD<Mat4> svd(Z, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Mat4& u = svd.matrixU();
    const Mat4& v = svd.matrixV();
    const Eigen::Vector4d& s = svd.singularValues();

    PolarFactors out;
    out.amplitude = u * s.cast<cplx>().asDiagonal() * u.adjoint();
    out.amplitude = keep_real_if(0.5 * (out.amplitude + out.amplitude.adjoint()), real);

    int r = 0;
    while (r < 4 && s(r) > 1e-12 * std::max(s(0), 1e-300)) ++r;
    if (s(0) == 0.0) r = 0;
    Mat4 phase = u.leftCols(r) * v.leftCols(r).adjoint();
    if (r < 4) {
        const DynMat u0 = u.rightCols(4 - r);
        const DynMat v0 = v.rightCols(4 - r);
        phase += u0 * unitary_part(u0.adjoint() * v0) * v0.adjoint();
    }
    out.phase = keep_real_if(phase, real);
    if (rep.kind == RepKind::majorana_real && real) out.coefficients = amplitude_coefficients(out.amplitude, rep);
    return out;
}

Mat4 spin_rotation(const Vec3& axis_angle, const DiracRep& rep) {
    const double theta = axis_angle.norm();
    if (theta == 0.0) return Mat4::Identity();
    const Vec3 n = axis_angle / theta;
    // Generators of rotations about x, y, z: S_23, S_31, S_12.
    const Mat4 gen = n(0) * rep.S(2, 3) + n(1) * rep.S(3, 1) + n(2) * rep.S(1, 2);
    return std::cos(0.5 * theta) * Mat4::Identity() - std::sin(0.5 * theta) * gen;
}

Mat4 spin_boost(const Vec3& rapidity_vector, const DiracRep& rep) {
    const double phi = rapidity_vector.norm();
    if (phi == 0.0) return Mat4::Identity();
    const Vec3 n = rapidity_vector / phi;
    const Mat4 gen = n(0) * rep.S(0, 1) + n(1) * rep.S(0, 2) + n(2) * rep.S(0, 3);
    return std::cosh(0.5 * phi) * Mat4::Identity() - std::sinh(0.5 * phi) * gen;
}

Mat4 spin_matrix(const LorentzTransform& w, const DiracRep& rep) {
    const double r = w.residual();
    if (!(r < 1e-8)) throw NotLorentz("matrix is not a Lorentz transformation (residual " + std::to_string(r) + ")");
    if (!(w.w(0, 0) >= 1.0 - 1e-8) || !(w.w.determinant() > 0))
        throw NotLorentz("Lorentz transformation is not proper orthochronous");

    GammaSet target;
    for (int a = 0; a < 4; ++a) {
        target[a] = Mat4::Zero();
        for (int b = 0; b < 4; ++b) target[a] += w.w(b, a) * rep.gamma[b];
    }
    auto solution = solve_intertwining(rep.gamma, target);
    if (!solution) throw NoIntertwiner("no spin matrix for the given Lorentz transformation");
    Mat4 l = *solution;
    l /= std::pow(l.determinant(), 0.25);
    // det L = 1 leaves L up to a fourth root of unity. L^+ D L = D holds for all
    // four; L^T C L = C singles out +-L.
    if ((l.transpose() * rep.C * l * rep.C_inv).trace().real() < 0) l *= kI;

    const cplx tr = l.trace();
    bool flip = tr.real() < 0;
    if (std::abs(tr.real()) < 1e-9) {
        const double biggest = l.cwiseAbs().maxCoeff();
        for (int k = 0; k < 16; ++k) {
            const cplx x = l(k % 4, k / 4);
            if (std::abs(x) >= (1.0 - 1e-9) * biggest) {
                flip = x.real() < -1e-12 || (std::abs(x.real()) <= 1e-12 && x.imag() < 0);
                break;
            }
        }
    }
    if (flip) l = -l;
    bool real_gammas = true;
    for (const auto& g : rep.gamma) real_gammas = real_gammas && is_exactly_real(g);
    return keep_real_if(l, real_gammas);
}

CovarianceResidual rotation_covariance_check(const Mat4& Z, const Mat4& L, const DiracRep& rep) {
    const PolarFactors before = polar_decompose(Z, rep);
    const PolarFactors after = polar_decompose(Mat4(L * Z), rep);
    return {max_abs(Mat4(after.amplitude - L * before.amplitude * L.adjoint())),
            max_abs(Mat4(after.phase - L * before.phase))};
}

BispinorSplit split_bispinors(const Mat4& Z, const DiracRep& rep) {
    const Mat4 e = Mat4::Identity();
    const Mat4 a = rep.gamma[1];
    const Mat4 b = rep.gamma[0] * rep.gamma[2];
    const double bad = std::max({max_abs(Mat4(a * a - e)), max_abs(Mat4(b * b - e)), max_abs(Mat4(a * b - b * a))});
    if (bad > 1e-12) throw ProjectorConstructionFailed("projector involutions do not commute or square to E");

    BispinorSplit out;
    out.labels = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    for (int k = 0; k < 4; ++k) {
        const auto [eta, lambda] = out.labels[k];
        out.projectors[k] = 0.25 * (e + static_cast<double>(eta) * a) * (e + static_cast<double>(lambda) * b);
        out.columns[k] = Z * out.projectors[k];
    }
    return out;
}

}  // namespace bispinor
