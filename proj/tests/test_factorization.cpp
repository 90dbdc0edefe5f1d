#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace bispinor;
using testing::dirac;
using testing::majorana;

namespace {

// M with prescribed eigenvalues in a random orthonormal basis.
Mat4 with_spectrum(Rng& rng, const std::array<double, 4>& lambda, bool real) {
    const Mat4 V = random_unitary(rng, real);
    Mat4 d = Mat4::Zero();
    for (int k = 0; k < 4; ++k) d(k, k) = lambda[k];
    return V * d * V.adjoint();
}

}  // namespace

TEST_CASE("arithmetic square root squares back and is nonnegative") {
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat4 x = random_matrix(rng, trial % 2 == 0);
        const Mat4 M = x * x.adjoint();
        const Mat4 R = hermitian_sqrt(M);
        CHECK(max_abs(Mat4(R * R - M)) < 1e-10 * (1 + max_abs(M)));
        CHECK(max_abs(Mat4(R - R.adjoint())) < 1e-12 * (1 + max_abs(M)));
        CHECK(numeric_spectrum(R)[3] >= -1e-12);
    }
    Mat4 neg = Mat4::Identity();
    neg(3, 3) = -0.1;
    CHECK_THROWS_AS(hermitian_sqrt(neg), NotNonnegative);
    neg(3, 3) = -1e-10;
    CHECK_NOTHROW(hermitian_sqrt(neg));
}

TEST_CASE("Hermitian factors: 2^rank roots, classes counted by eigenvalue multiplicities") {
    Rng rng(6);
    struct Case {
        std::array<double, 4> lambda;
        int rank;
    };
    const std::vector<Case> cases{
        {{4, 3, 2, 1}, 4}, {{2, 2, 1, 0}, 3}, {{1, 1, 1, 1}, 4}, {{3, 0, 0, 0}, 1}, {{0, 0, 0, 0}, 0}, {{5, 5, 2, 2}, 4}};
    for (const auto& c : cases) {
        const Mat4 M = with_spectrum(rng, c.lambda, true);
        const HermitianFactorSet set = enumerate_hermitian_factors(M);
        CHECK(set.rank == c.rank);
        CHECK(set.factors.size() == (std::size_t{1} << c.rank));
        std::vector<double> nonzero;
        for (double l : c.lambda)
            if (l > 0) nonzero.push_back(l);
        CHECK(set.nonequivalent_count == testing::sign_multiset_count(nonzero));
        CHECK(set.sign_classes.size() == static_cast<std::size_t>(set.nonequivalent_count));
        for (const auto& f : set.factors) {
            CHECK(max_abs(Mat4(f.H * f.H - M)) < 1e-10);
            CHECK(max_abs(Mat4(f.H - f.H.adjoint())) < 1e-12);
        }
        // Factors in one class are unitarily equivalent, across classes they are not.
        for (const auto& f : set.factors)
            for (const auto& g : set.factors)
                CHECK(unitarily_equivalent(f.H, g.H) == (f.class_index == g.class_index));
    }
}

TEST_CASE("solve_Z reproduces M and rejects bad gauges and infeasible input") {
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const DiracRep& rep = trial % 2 ? dirac() : majorana();
        const TensorQuintuple q = testing::quintuple_of_random_Z(rng, rep);
        const Mat4 U = random_unitary(rng, rep.kind == RepKind::majorana_real);
        const BispinorMatrix z = solve_Z(q, rep, U);
        const Mat4 M = build_M(q, rep).M;
        CHECK(max_abs(Mat4(z.Z * z.Z.adjoint() - M)) < 1e-10 * (1 + max_abs(M)));
        CHECK(max_abs_diff(q, bilinears(z.Z, rep)) < 1e-8 * (1 + q.scale()));
    }
    CHECK_THROWS_AS(solve_Z(TensorQuintuple::zero(), majorana(), Mat4(2.0 * Mat4::Identity())), NotUnitary);
    TensorQuintuple bad;
    bad.j = Vec4(1, 0, 0, 0);
    bad.H.set(0, 1, 3.0);
    CHECK_THROWS_AS(solve_Z(bad, majorana()), Infeasible);
}

TEST_CASE("bilinears of a unitary matrix give the constant quintuple") {
    // Z Z^+ = E, so M = E and only j^0 survives: M = 1/4 gamma_0 D^-1 j^0 = j^0/4 E.
    Rng rng(12);
    for (const DiracRep* rep : {&majorana(), &dirac()}) {
        const TensorQuintuple q = bilinears(random_unitary(rng, rep->kind == RepKind::majorana_real), *rep);
        TensorQuintuple expected;
        expected.j = Vec4(4, 0, 0, 0);
        CHECK(max_abs_diff(q, expected) < 1e-12);
        CHECK(forward_constant(*rep) == doctest::Approx(1.0));
    }
}

TEST_CASE("bilinears are right-unitary invariant (gauge freedom)") {
    Rng rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        const DiracRep& rep = trial % 2 ? dirac() : majorana();
        const bool real = rep.kind == RepKind::majorana_real;
        const Mat4 Z = random_matrix(rng, real);
        const Mat4 U = random_unitary(rng, real);
        CHECK(max_abs_diff(bilinears(Z, rep), bilinears(Mat4(Z * U), rep)) < 1e-10 * (1 + max_abs(Z) * max_abs(Z)));
    }
}

TEST_CASE("polar decomposition") {
    Rng rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        const bool real = trial % 2 == 0;
        const DiracRep& rep = real ? majorana() : dirac();
        Mat4 Z = random_matrix(rng, real);
        if (trial % 5 == 0) Z.col(0) = Z.col(1);  // rank deficient
        const PolarFactors p = polar_decompose(Z, rep);
        CHECK(max_abs(Mat4(p.amplitude * p.phase - Z)) < 1e-10);
        CHECK(max_abs(Mat4(p.phase * p.phase.adjoint() - Mat4::Identity())) < 1e-10);
        CHECK(max_abs(Mat4(p.amplitude - p.amplitude.adjoint())) < 1e-10);
        CHECK(numeric_spectrum(p.amplitude)[3] > -1e-10);
        if (real) {
            CHECK(is_exactly_real(p.phase));
            REQUIRE(p.coefficients);
            const AmplitudeCoefficients& c = *p.coefficients;
            // Reassemble H from its coefficients.
            Mat4 h = -c.v0 * rep.gamma[0] * rep.D_inv;
            for (int b = 0; b < 3; ++b) h += c.v(b) * rep.gamma[b + 1] * rep.D_inv;
            const std::array<std::pair<int, int>, 3> spatial{{{1, 2}, {1, 3}, {2, 3}}};
            for (int k = 0; k < 3; ++k) {
                const auto [m, n] = spatial[k];
                h += 2.0 * c.w_spatial(k) * rep.S(m, n) * rep.D_inv;
                h -= 2.0 * c.w_time(k) * rep.S(0, k + 1) * rep.D_inv;
            }
            CHECK(max_abs(Mat4(h - p.amplitude)) < 1e-10);
        }
    }
}

TEST_CASE("spin matrices: closed forms, generic route, and the covering relation") {
    Rng rng(16);
    for (int trial = 0; trial < 30; ++trial) {
        const Vec3 axis = random_direction(rng) * rng.uniform(0, 3);
        const Vec3 rap = random_direction(rng) * rng.uniform(0, 1.5);
        for (const DiracRep* rep : {&majorana(), &dirac()}) {
            const Mat4 R = spin_rotation(axis, *rep);
            const Mat4 B = spin_boost(rap, *rep);
            CHECK(max_abs(Mat4(R - spin_matrix(LorentzTransform::rotation(axis), *rep))) < 1e-10);
            CHECK(max_abs(Mat4(B - spin_matrix(LorentzTransform::boost(rap), *rep))) < 1e-10);
            // L^-1 gamma^k L = w^k_p gamma^p.
            for (const auto& [L, w] : {std::pair{R, LorentzTransform::rotation(axis)},
                                       std::pair{B, LorentzTransform::boost(rap)}}) {
                for (int k = 0; k < 4; ++k) {
                    Mat4 rhs = Mat4::Zero();
                    for (int p = 0; p < 4; ++p) rhs += w.w(k, p) * rep->gamma_upper(p);
                    CHECK(max_abs(Mat4(L.inverse() * rep->gamma_upper(k) * L - rhs)) < 1e-10);
                }
                CHECK(std::abs(L.determinant() - 1.0) < 1e-10);
            }
            CHECK(max_abs(Mat4(R * R.adjoint() - Mat4::Identity())) < 1e-10);
        }
    }
    RMat4 parity = testing::eta() * -1.0;
    parity(0, 0) = 1;
    CHECK_THROWS_AS(spin_matrix(LorentzTransform::from_matrix(parity), majorana()), NotLorentz);
}

TEST_CASE("bilinears of L Z are the Lorentz image of the bilinears of Z") {
    Rng rng(18);
    for (int trial = 0; trial < 30; ++trial) {
        const auto w = random_lorentz(rng, 1.0, true);
        for (const DiracRep* rep : {&majorana(), &dirac()}) {
            const Mat4 Z = random_matrix(rng, rep->kind == RepKind::majorana_real);
            const Mat4 L = spin_matrix(w, *rep);
            const TensorQuintuple lhs = bilinears(Mat4(L * Z), *rep);
            const TensorQuintuple rhs = apply_lorentz(bilinears(Z, *rep), w);
            CHECK(max_abs_diff(lhs, rhs) < 1e-9 * (1 + rhs.scale()));
        }
    }
}

TEST_CASE("rotations act covariantly on polar factors, boosts do not") {
    Rng rng(19);
    const Mat4 Z = random_matrix(rng, true);
    const Mat4 R = spin_rotation(Vec3(0.3, -1.1, 0.4), majorana());
    const CovarianceResidual r = rotation_covariance_check(Z, R, majorana());
    CHECK(r.amplitude < 1e-10);
    CHECK(r.phase < 1e-10);
    const Mat4 B = spin_boost(Vec3(0.9, 0, 0), majorana());
    CHECK(rotation_covariance_check(Z, B, majorana()).amplitude > 1e-3);
}

TEST_CASE("bispinor projectors are orthogonal and complete") {
    Rng rng(20);
    for (const DiracRep* rep : {&majorana(), &dirac()}) {
        const Mat4 Z = random_matrix(rng, rep->kind == RepKind::majorana_real);
        const BispinorSplit split = split_bispinors(Z, *rep);
        Mat4 sum = Mat4::Zero(), zsum = Mat4::Zero();
        for (int a = 0; a < 4; ++a) {
            const Mat4& P = split.projectors[a];
            CHECK(max_abs(Mat4(P * P - P)) < 1e-12);
            CHECK(std::abs(P.trace() - 1.0) < 1e-12);
            for (int b = 0; b < 4; ++b)
                if (a != b) CHECK(max_abs(Mat4(P * split.projectors[b])) < 1e-12);
            sum += P;
            zsum += split.columns[a];
        }
        CHECK(max_abs(Mat4(sum - Mat4::Identity())) < 1e-12);
        CHECK(max_abs(Mat4(zsum - Z)) < 1e-12);
    }
}
