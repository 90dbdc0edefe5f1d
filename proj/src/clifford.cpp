#include "bispinor/clifford.hpp"

#include <cmath>

namespace bispinor {

namespace {

Eigen::Matrix2cd pauli(int k) {
    Eigen::Matrix2cd s;
    switch (k) {
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -kI, kI, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

Mat4 kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

GammaSet majorana_gammas() {
    Eigen::Matrix2cd e2 = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd eps;
    eps << 0, 1, -1, 0;
    return {kron(eps, pauli(3)), kron(pauli(1), e2), kron(pauli(3), e2), kron(eps, eps)};
}

GammaSet dirac_gammas() {
    GammaSet g;
    g[0] = Mat4::Zero();
    g[0].diagonal() << kI, kI, -kI, -kI;
    for (int k = 1; k <= 3; ++k) {
        Mat4 m = Mat4::Zero();
        m.block<2, 2>(0, 2) = kI * pauli(k);
        m.block<2, 2>(2, 0) = -kI * pauli(k);
        g[k] = m;
    }
    return g;
}

bool all_real(const GammaSet& g) {
    for (const auto& m : g)
        if (!is_exactly_real(m)) return false;
    return true;
}

// Entries within 1e-12 of an integer are set to that integer.
Mat4 snap_integers(Mat4 m) {
    auto snap = [](double x) {
        const double r = std::round(x);
        return std::abs(x - r) < 1e-12 ? r + 0.0 : x;
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = cplx(snap(m(i, j).real()), snap(m(i, j).imag()));
    return m;
}

Mat4 normalize_det(const Mat4& x) {
    const double mag = std::abs(x.determinant());
    return x / std::pow(mag, 0.25);
}

// Rotates the phase so that the first entry of (nearly) maximal modulus is real positive.
Mat4 fix_phase_by_largest_entry(const Mat4& x) {
    const double biggest = x.cwiseAbs().maxCoeff();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(x(i, j)) >= (1.0 - 1e-9) * biggest) return x * (std::abs(x(i, j)) / x(i, j));
    return x;
}

}  // namespace

std::string_view to_string(RepKind kind) {
    return kind == RepKind::majorana_real ? "majorana_real" : "dirac_complex";
}

RepKind parse_rep_kind(std::string_view name) {
    if (name == "majorana_real") return RepKind::majorana_real;
    if (name == "dirac_complex") return RepKind::dirac_complex;
    throw InputError("unknown representation '" + std::string(name) +
                     "' (expected majorana_real or dirac_complex)");
}

Mat4 DiracRep::S(int m, int n) const {
    if (m == n) return Mat4::Zero();
    const auto [slot, sign] = pair_slot(m, n);
    return static_cast<double>(sign) * sigma[slot];
}

Mat4 DiracRep::gamma_upper(int a) const {
    return static_cast<double>(MinkowskiMetric::g(a, a)) * gamma[a];
}

std::optional<Mat4> solve_intertwining(const GammaSet& a, const GammaSet& b) {
    // vec(X A - B X) = (A^T (x) E - E (x) B) vec(X), column-major vec.
    Eigen::Matrix<cplx, 64, 16> system;
    const Mat4 e = Mat4::Identity();
    for (int k = 0; k < 4; ++k) {
        Eigen::Matrix<cplx, 16, 16> block;
        const Mat4 at = a[k].transpose();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Mat4 cell = at(i, j) * e;
                if (i == j) cell -= b[k];
                block.block<4, 4>(4 * i, 4 * j) = cell;
            }
        system.block<16, 16>(16 * k, 0) = block;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = 1e-10 * std::max(sv(0), 1.0);
    if (!(sv(15) <= tol && sv(14) > tol)) return std::nullopt;
    Eigen::Matrix<cplx, 16, 1> v = svd.matrixV().col(15);
    Mat4 x;
    for (int col = 0; col < 4; ++col)
        for (int row = 0; row < 4; ++row) x(row, col) = v(4 * col + row);
    return x;
}

Mat4 find_intertwiner(const GammaSet& gamma) {
    GammaSet target;
    for (int k = 0; k < 4; ++k) target[k] = -gamma[k].adjoint();
    auto solution = solve_intertwining(gamma, target);
    if (!solution) throw NoIntertwiner("D gamma_k + gamma_k^+ D = 0 has no one-dimensional solution space");
    Mat4 x = *solution;

    // The solution space is closed under adjoint: X^+ = c X with |c| = 1.
    Eigen::Index bi = 0, bj = 0;
    x.cwiseAbs().maxCoeff(&bi, &bj);
    const cplx c = std::conj(x(bj, bi)) / x(bi, bj);
    const cplx phase = std::exp(kI * (0.5 * std::arg(-c)));
    x = normalize_det(phase * x);
    x = 0.5 * (x - x.adjoint()).eval();

    if ((gamma[0] * x.inverse()).trace().real() < 0) x = -x;
    if (all_real(gamma)) x = x.real().cast<cplx>();
    return snap_integers(x);
}

Mat4 find_intertwiner(const DiracRep& rep) { return find_intertwiner(rep.gamma); }

Mat4 find_transpose_intertwiner(const GammaSet& gamma) {
    GammaSet target;
    for (int k = 0; k < 4; ++k) target[k] = gamma[k].transpose();
    auto solution = solve_intertwining(gamma, target);
    if (!solution) throw NoIntertwiner("C gamma_k - gamma_k^T C = 0 has no one-dimensional solution space");
    Mat4 x = fix_phase_by_largest_entry(normalize_det(*solution));
    if (all_real(gamma)) x = x.real().cast<cplx>();
    return snap_integers(x);
}

std::optional<Mat4> find_similarity(const GammaSet& from, const GammaSet& to) {
    auto solution = solve_intertwining(from, to);
    if (!solution) return std::nullopt;
    return fix_phase_by_largest_entry(normalize_det(*solution));
}

DiracRep build_rep(RepKind kind) {
    DiracRep rep;
    rep.kind = kind;
    rep.gamma = kind == RepKind::majorana_real ? majorana_gammas() : dirac_gammas();
    rep.gamma5 = rep.gamma[0] * rep.gamma[1] * rep.gamma[2] * rep.gamma[3];
    for (int p = 0; p < 6; ++p) {
        const auto [m, n] = kPairs[p];
        rep.sigma[p] = kSigmaNormalization * (rep.gamma[m] * rep.gamma[n] - rep.gamma[n] * rep.gamma[m]);
    }
    rep.D = find_intertwiner(rep.gamma);
    rep.D_inv = snap_integers(rep.D.inverse());
    rep.C = find_transpose_intertwiner(rep.gamma);
    rep.C_inv = snap_integers(rep.C.inverse());
    return rep;
}

double anticommutator_residual(const GammaSet& gamma) {
    double worst = 0.0;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            const Mat4 r = gamma[m] * gamma[n] + gamma[n] * gamma[m] -
                           2.0 * MinkowskiMetric::g(m, n) * Mat4::Identity();
            worst = std::max(worst, max_abs(r));
        }
    return worst;
}

double intertwiner_residual(const DiracRep& rep) {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k)
        worst = std::max(worst, max_abs(Mat4(rep.D * rep.gamma[k] * rep.D_inv + rep.gamma[k].adjoint())));
    return worst;
}

HermitianBasis16 build_basis16(const DiracRep& rep) {
    HermitianBasis16 basis;
    auto& el = basis.elements;
    el[0] = -kI * rep.D_inv;
    for (int a = 0; a < 4; ++a) {
        el[1 + a] = rep.gamma[a] * rep.D_inv;
        el[5 + a] = -kI * rep.gamma5 * rep.gamma[a] * rep.D_inv;
    }
    for (int p = 0; p < 6; ++p) el[9 + p] = -rep.sigma[p] * rep.D_inv;
    el[15] = kI * rep.gamma5 * rep.D_inv;

    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) basis.gram(i, j) = (el[i] * el[j]).trace().real();
    basis.gram_inv = basis.gram.inverse();
    return basis;
}

Eigen::Matrix<cplx, 16, 1> HermitianBasis16::coefficients(const Mat4& x) const {
    Eigen::Matrix<cplx, 16, 1> traces;
    for (int i = 0; i < 16; ++i) traces(i) = (elements[i] * x).trace();
    return gram_inv.cast<cplx>() * traces;
}

Mat4 HermitianBasis16::reconstruct(const Eigen::Matrix<cplx, 16, 1>& c) const {
    Mat4 out = Mat4::Zero();
    for (int i = 0; i < 16; ++i) out += c(i) * elements[i];
    return out;
}

CompleteSystem complete_system_1(const DiracRep& rep) {
    CompleteSystem sys;
    for (int k = 0; k < 4; ++k) sys.symmetric[k] = rep.gamma[k] * rep.D_inv;
    for (int p = 0; p < 6; ++p) sys.symmetric[4 + p] = rep.sigma[p] * rep.D_inv;
    sys.antisymmetric[0] = rep.D_inv;
    for (int k = 0; k < 4; ++k) sys.antisymmetric[1 + k] = rep.gamma5 * rep.gamma[k] * rep.D_inv;
    sys.antisymmetric[5] = rep.gamma5 * rep.D_inv;
    return sys;
}

CompleteSystem complete_system_2(const DiracRep& rep) {
    CompleteSystem sys;
    for (int k = 0; k < 4; ++k) sys.symmetric[k] = rep.gamma5 * rep.gamma[k] * rep.C_inv;
    for (int p = 0; p < 6; ++p) sys.symmetric[4 + p] = rep.sigma[p] * rep.C_inv;
    sys.antisymmetric[0] = rep.C_inv;
    for (int k = 0; k < 4; ++k) sys.antisymmetric[1 + k] = rep.gamma[k] * rep.C_inv;
    sys.antisymmetric[5] = rep.gamma5 * rep.C_inv;
    return sys;
}

}  // namespace bispinor
