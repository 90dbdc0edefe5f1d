#include "bispinor/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace bispinor {

namespace {

const RMat4& eta() {
    static const RMat4 m = MinkowskiMetric::matrix();
    return m;
}

const HermitianBasis16& basis_for(const DiracRep& rep) {
    static const HermitianBasis16 majorana = build_basis16(build_rep(RepKind::majorana_real));
    static const HermitianBasis16 dirac = build_basis16(build_rep(RepKind::dirac_complex));
    return rep.kind == RepKind::majorana_real ? majorana : dirac;
}

bool all_finite(const TensorQuintuple& q) {
    bool ok = std::isfinite(q.m) && std::isfinite(q.n) && q.j.allFinite() && q.s.allFinite();
    for (double h : q.H.c) ok = ok && std::isfinite(h);
    return ok;
}

template <typename Matrix>
Eigensystem solve_sorted(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw NoConvergence("Hermitian eigensolver did not converge");
    Eigensystem out;
    // Eigen sorts ascending.
    for (int k = 0; k < 4; ++k) {
        out.values[k] = es.eigenvalues()(3 - k);
        out.vectors.col(k) = es.eigenvectors().col(3 - k).template cast<cplx>();
    }
    return out;
}

}  // namespace

MMatrix build_M(const TensorQuintuple& q, const DiracRep& rep) {
    if (q.frame != IndexFrame::local) throw FrameMismatch("build_M expects a local-frame quintuple");
    const auto& el = basis_for(rep).elements;
    Mat4 m = q.m * el[0] + q.n * el[15];
    for (int a = 0; a < 4; ++a) {
        const double g = MinkowskiMetric::g(a, a);
        m += q.j(a) * el[1 + a] + (g * q.s(a)) * el[5 + a];
    }
    for (int p = 0; p < 6; ++p) {
        const auto [a, b] = kPairs[p];
        // Both (a,b) and (b,a) terms of 1/2 S_ab H^ab.
        m += (MinkowskiMetric::g(a, a) * MinkowskiMetric::g(b, b) * q.H.c[p]) * el[9 + p];
    }
    m *= 0.25;
    m = 0.5 * (m + m.adjoint()).eval();
    if (rep.kind == RepKind::majorana_real && q.m == 0.0 && q.n == 0.0 && q.s.isZero(0.0))
        m = m.real().cast<cplx>();
    return {m, rep.kind, q};
}

SpectralInvariants spectral_invariants(const TensorQuintuple& q, const Tolerances& tol) {
    const double jj = q.j.dot(eta() * q.j);
    if (jj > tol.spacelike) throw SpacelikeCurrent("current j is spacelike (g_ab j^a j^b = " + std::to_string(jj) + ")");
    SpectralInvariants inv;
    inv.j = std::sqrt(std::max(-jj, 0.0));
    if (inv.j < tol.null_current) throw NullCurrent("current j is null; the closed form is singular");
    inv.sigma = q.j(0) >= 0 ? 1 : -1;
    inv.e = q.j / inv.j;
    const Vec4 e_low = eta() * inv.e;

    const RMat4 h_low = q.H.matrix();
    const RMat4 h_up = eta() * h_low * eta();
    inv.u = h_low * inv.e;

    const LeviCivita eps = LeviCivita::local();
    for (int a = 0; a < 4; ++a) {
        double sum = 0.0;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu)
                for (int la = 0; la < 4; ++la) {
                    const double e = eps(a, mu, nu, la);
                    if (e != 0.0) sum += e * h_up(mu, nu) * inv.e(la);
                }
        inv.v(a) = 0.5 * sum;
    }

    const Vec4 x = h_low * (h_up * e_low);
    inv.w = x + e_low * inv.e.dot(x);

    inv.u2 = inv.u.dot(eta() * inv.u);
    inv.v2 = inv.v.dot(eta() * inv.v);
    inv.w_inv = std::sqrt(std::max(inv.w.dot(eta() * inv.w), 0.0));
    return inv;
}

Spectrum closed_form_eigenvalues(const SpectralInvariants& inv, double kappa) {
    const double base = inv.sigma * inv.j;
    const double r_plus = std::sqrt(std::max(inv.u2 + inv.v2 + 2.0 * inv.w_inv, 0.0));
    const double r_minus = std::sqrt(std::max(inv.u2 + inv.v2 - 2.0 * inv.w_inv, 0.0));
    return {kappa * (base + r_plus), kappa * (base + r_minus), kappa * (base - r_minus), kappa * (base - r_plus)};
}

ClosedFormSpectrum closed_form_spectrum(const TensorQuintuple& q, RepKind kind, const Tolerances& tol) {
    ClosedFormSpectrum out;
    out.invariants = spectral_invariants(q, tol);
    out.kappa = kappa(kind);
    out.lambda = closed_form_eigenvalues(out.invariants, out.kappa);
    return out;
}

Eigensystem hermitian_eigensystem(const Mat4& M) {
    if (!M.allFinite()) throw NoConvergence("matrix has non-finite entries");
    const Eigensystem out = is_exactly_real(M) ? solve_sorted<RMat4>(M.real()) : solve_sorted<Mat4>(M);
    const double bound = 1e-10 * std::max(1.0, max_abs(M));
    for (int k = 0; k < 4; ++k) {
        const double err = max_abs(Eigen::Vector4cd(M * out.vectors.col(k) - out.values[k] * out.vectors.col(k)));
        if (!(err < bound)) throw NoConvergence("eigenpair backward error " + std::to_string(err) + " too large");
    }
    return out;
}

Spectrum numeric_spectrum(const Mat4& M) { return hermitian_eigensystem(M).values; }

Spectrum comoving_spectrum(const TensorQuintuple& q, const DiracRep& rep, const Tolerances& tol) {
    const SpectralInvariants inv = spectral_invariants(q, tol);
    const Vec4 e_future = inv.sigma * inv.e;
    Mat4 n = Mat4::Zero();
    for (int a = 0; a < 4; ++a) n += e_future(a) * (rep.gamma[a] * rep.D_inv);
    n = 0.5 * (n + n.adjoint()).eval();
    if (is_exactly_real(rep.D_inv) && is_exactly_real(rep.gamma[0])) n = n.real().cast<cplx>();

    Eigen::LLT<Mat4> llt(n);
    if (llt.info() != Eigen::Success) throw NoConvergence("comoving metric matrix is not positive definite");
    const Mat4 l_inv = llt.matrixL().solve(Mat4::Identity());
    Mat4 a = l_inv * build_M(q, rep).M * l_inv.adjoint();
    a = 0.5 * (a + a.adjoint()).eval();
    return numeric_spectrum(a);
}

double calibrate_kappa(const DiracRep& rep) {
    TensorQuintuple q;
    q.j = Vec4(1, 0, 0, 0);
    const Spectrum numeric = numeric_spectrum(build_M(q, rep));
    const Spectrum closed = closed_form_eigenvalues(spectral_invariants(q), 1.0);
    double ratio = 0.0;
    for (int k = 0; k < 4; ++k) ratio += numeric[k] / closed[k];
    return ratio / 4.0;
}

double kappa(RepKind kind) {
    static const double majorana = calibrate_kappa(build_rep(RepKind::majorana_real));
    static const double dirac = calibrate_kappa(build_rep(RepKind::dirac_complex));
    return kind == RepKind::majorana_real ? majorana : dirac;
}

int matrix_rank(const Spectrum& lambda, const Tolerances& tol) {
    const double cut = tol.rank * std::max(lambda[0], 1.0);
    return static_cast<int>(std::count_if(lambda.begin(), lambda.end(), [&](double x) { return x > cut; }));
}

SpectrumReport spectrum_report(const TensorQuintuple& q, const DiracRep& rep, const Tolerances& tol) {
    SpectrumReport out;
    out.kappa = kappa(rep.kind);
    Feasibility& f = out.feasibility;
    if (!all_finite(q)) {
        out.lambda_matrix = {NAN, NAN, NAN, NAN};
        f = {false, NAN, 0, "non-finite input"};
        return out;
    }

    const MMatrix m = build_M(q, rep);
    out.lambda_matrix = numeric_spectrum(m);
    f.rank = matrix_rank(out.lambda_matrix, tol);
    const double min_eig = out.lambda_matrix[3];

    if (max_abs(m.M) == 0.0) {
        f.feasible = true;
        f.margin = 0.0;
        f.reason = "M = 0";
        return out;
    }

    const double jj = q.j.dot(eta() * q.j);
    if (jj > tol.spacelike) {
        f.margin = min_eig;
        f.feasible = false;
        f.reason = "spacelike current";
        return out;
    }
    if (std::sqrt(std::max(-jj, 0.0)) < tol.null_current) {
        f.margin = min_eig;
        f.feasible = f.margin >= -tol.feasibility;
        f.reason = "null current: margin is the smallest eigenvalue of M";
        return out;
    }

    out.invariants = spectral_invariants(q, tol);
    out.lambda_numeric = comoving_spectrum(q, rep, tol);
    if (q.real_sector(tol.real_sector)) {
        out.lambda_closed = closed_form_eigenvalues(*out.invariants, out.kappa);
        f.margin = (*out.lambda_closed)[3];
        f.reason = out.invariants->sigma > 0 ? "closed form" : "closed form: past-directed current";
    } else {
        f.margin = (*out.lambda_numeric)[3];
        f.reason = "comoving spectrum (m, s or n nonzero)";
    }
    f.feasible = f.margin >= -tol.feasibility;
    return out;
}

Feasibility feasibility(const TensorQuintuple& q, const DiracRep& rep, const Tolerances& tol) {
    return spectrum_report(q, rep, tol).feasibility;
}

}  // namespace bispinor
