// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace bispinor;
using testing::dirac;
using testing::majorana;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

const std::array<const DiracRep*, 2> kReps{&majorana(), &dirac()};

double rel_scale(const Spectrum& s) { return 1.0 + std::abs(s[0]) + std::abs(s[3]); }

// A quintuple whose H is scaled by a random factor, so both sides of the
// feasibility boundary are visited.
TensorQuintuple mixed_quintuple(Rng& rng, Sector sector) {
    TensorQuintuple q = random_quintuple(rng, sector);
    const double f = rng.uniform(0.0, 1.5);
    for (auto& h : q.H.c) h *= f;
    if (sector == Sector::full) {
        q.m *= f;
        q.n *= f;
        q.s *= f;
    }
    return q;
}

Outcome representations() {
    double anti = 0, inter = 0;
    for (const DiracRep* rep : kReps) {
        anti = std::max(anti, anticommutator_residual(rep->gamma));
        inter = std::max(inter, intertwiner_residual(*rep));
    }
    return {anti < 1e-12 && inter < 1e-12, "anticommutator " + fmt(anti) + ", intertwiner " + fmt(inter)};
}

Outcome closed_form() {
    Rng rng(1001);
    double worst = 0, rest_worst = 0, kappa_spread = 0;
    for (int i = 0; i < 10000; ++i) {
        const DiracRep& rep = *kReps[i % 2];
        const TensorQuintuple q = random_quintuple(rng);
        const ClosedFormSpectrum cf = closed_form_spectrum(q, rep.kind);
        const Spectrum numeric = comoving_spectrum(q, rep);
        worst = std::max(worst, testing::max_diff(cf.lambda, numeric) / rel_scale(numeric));
        // Sum of eigenvalues is 4 kappa sigma j, so each input yields its own kappa.
        const double k_i = (numeric[0] + numeric[1] + numeric[2] + numeric[3]) / (4.0 * cf.invariants.sigma * cf.invariants.j);
        kappa_spread = std::max(kappa_spread, std::abs(k_i - cf.kappa));
        if (i % 10 == 0) {
            const TensorQuintuple rest = apply_lorentz(q, LorentzTransform::to_rest_frame(q.j));
            const Spectrum raw = numeric_spectrum(build_M(rest, rep));
            rest_worst = std::max(rest_worst, testing::max_diff(cf.lambda, raw) / rel_scale(raw));
        }
    }
    return {worst < 1e-8 && rest_worst < 1e-8 && kappa_spread < 1e-8,
            "comoving " + fmt(worst) + ", rest-frame raw " + fmt(rest_worst) + ", kappa spread " + fmt(kappa_spread)};
}

Outcome solvability() {
    Rng rng(1002);
    int feasible = 0, infeasible = 0, disagree_outside = 0, disagree_band = 0;
    for (int i = 0; i < 10000; ++i) {
        const bool full = i % 5 == 4;
        const DiracRep& rep = full ? dirac() : *kReps[i % 2];
        const TensorQuintuple q = mixed_quintuple(rng, full ? Sector::full : Sector::real);
        const Feasibility f = feasibility(q, rep);
        const bool oracle = numeric_spectrum(build_M(q, rep))[3] >= -1e-9;
        (f.feasible ? feasible : infeasible)++;
        if (f.feasible != oracle) (std::abs(f.margin) < 1e-7 ? disagree_band : disagree_outside)++;
    }
    return {disagree_outside == 0 && feasible > 0 && infeasible > 0,
            std::to_string(feasible) + " feasible, " + std::to_string(infeasible) + " infeasible, " +
                std::to_string(disagree_outside) + " disagreements outside band, " + std::to_string(disagree_band) +
                " inside"};
}

Outcome round_trip() {
    Rng rng(1003);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        if (i % 2 == 0) {
            const TensorQuintuple q = testing::feasible_quintuple(rng, majorana(), 1e-6);
            worst = std::max(worst, roundtrip_residual(q, majorana()));
        } else {
            TensorQuintuple q;
            do q = testing::quintuple_of_random_Z(rng, dirac());
            while (feasibility(q, dirac()).margin <= 1e-6);
            worst = std::max(worst, roundtrip_residual(q, dirac()));
        }
    }
    return {worst < 1e-8, "max residual " + fmt(worst)};
}

Outcome gauge() {
    Rng rng(1004);
    double bil = 0, prod = 0;
    for (int i = 0; i < 1000; ++i) {
        const DiracRep& rep = *kReps[i % 2];
        const bool real = rep.kind == RepKind::majorana_real;
        const Mat4 Z = random_matrix(rng, real);
        const Mat4 U = random_unitary(rng, real);
        const Mat4 ZU = Z * U;
        bil = std::max(bil, max_abs_diff(bilinears(ZU, rep), bilinears(Z, rep)));
        prod = std::max(prod, max_abs(Mat4(ZU * ZU.adjoint() - Z * Z.adjoint())));
    }
    return {bil < 1e-12 && prod < 1e-12, "bilinears " + fmt(bil) + ", Z Z^+ " + fmt(prod)};
}

Outcome factor_enumeration() {
    Rng rng(1005);
    int checked = 0, bad = 0;
    auto check = [&](const std::array<double, 4>& lambda) {
        const Mat4 V = random_unitary(rng, checked % 2 == 0);
        Mat4 d = Mat4::Zero();
        for (int k = 0; k < 4; ++k) d(k, k) = lambda[k];
        const HermitianFactorSet set = enumerate_hermitian_factors(V * d * V.adjoint());
        std::vector<double> nonzero;
        for (double l : lambda)
            if (l > 0) nonzero.push_back(l);
        const int r = static_cast<int>(nonzero.size());
        const int oracle = testing::sign_multiset_count(nonzero);
        bool distinct = true;
        for (int a = 0; a < r; ++a)
            for (int b = a + 1; b < r; ++b) distinct = distinct && std::abs(nonzero[a] - nonzero[b]) > 1e-6;
        const bool ok = set.rank == r && set.nonequivalent_count <= (1 << r) &&
                        (!distinct || set.nonequivalent_count == (1 << r)) && set.nonequivalent_count == oracle;
        ++checked;
        bad += !ok;
    };
    check({1, 1, 0, 0});
    const bool literal = bad == 0;
    // Every rank with every multiplicity pattern, from a small pool of values.
    const std::array<double, 3> pool{0.5, 1.0, 2.0};
    for (int r = 0; r <= 4; ++r) {
        int patterns = 1;
        for (int k = 0; k < r; ++k) patterns *= 3;
        for (int p = 0; p < patterns; ++p) {
            std::array<double, 4> lambda{0, 0, 0, 0};
            int code = p;
            for (int k = 0; k < r; ++k, code /= 3) lambda[k] = pool[code % 3];
            check(lambda);
        }
    }
    for (int i = 0; i < 100; ++i) check({rng.uniform(0.1, 3), rng.uniform(0.1, 3), rng.uniform(0.1, 3), 0});
    return {bad == 0 && literal, std::to_string(checked) + " spectra, " + std::to_string(bad) + " mismatches"};
}

Outcome composition() {
    Rng rng(1006);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        Eigen::Matrix<double, 16, 1> c;
        for (int k = 0; k < 16; ++k) c(k) = rng.normal();
        const Mat4 Z = reconstruct_Z(RealExpansion::unpack(c), majorana());
        worst = std::max(worst, max_abs_diff(compose_ZZplus(expand_Z(Z, majorana())), bilinears(Z, majorana())));
    }
    return {worst < 1e-10, "max difference " + fmt(worst)};
}

Outcome normalized() {
    Rng rng(1007);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        Eigen::Matrix<double, 10, 1> v;
        for (int k = 0; k < 10; ++k) v(k) = rng.normal();
        v.normalize();
        const double a = v(0);
        const Vec3 x = v.segment<3>(1), y = v.segment<3>(4), z = v.segment<3>(7);
        NormalizedSystem s;
        s.a_vec = a * x + y.cross(z);
        s.b_vec = a * y + z.cross(x);
        s.c_vec = a * z + x.cross(y);
        s.norm = 1.0;
        const auto r = normalized_residuals(s, solve_normalized(s));
        for (double e : r) worst = std::max(worst, e);
    }
    // Rejections must match the feasibility verdict.
    int inconsistent = 0, rejected = 0;
    for (int i = 0; i < 1000; ++i) {
        const TensorQuintuple q = mixed_quintuple(rng, Sector::real);
        const Feasibility f = feasibility(q, majorana());
        if (std::abs(f.margin) < 1e-7) continue;
        bool solved = true;
        try {
            solve_normalized(normalize_system(q));
        } catch (const Infeasible&) {
            solved = false;
            ++rejected;
        }
        inconsistent += solved != f.feasible;
    }
    return {worst < 1e-9 && inconsistent == 0 && rejected > 0,
            "max residual " + fmt(worst) + ", " + std::to_string(rejected) + " rejected, " +
                std::to_string(inconsistent) + " inconsistent"};
}

Outcome covariance() {
    Rng rng(1008);
    double spectra_diff = 0, margin = 0, residual = 0;
    bool verdicts = true;
    for (int i = 0; i < 100; ++i) {
        const LorentzTransform w = random_lorentz(rng, 1.5, true);
        const DiracRep& rep = *kReps[i % 2];
        const TensorQuintuple q = i % 2 ? testing::quintuple_of_random_Z(rng, rep) : mixed_quintuple(rng, Sector::real);
        const TensorQuintuple p = apply_lorentz(q, w);
        const Spectrum a = comoving_spectrum(q, rep), b = comoving_spectrum(p, rep);
        spectra_diff = std::max(spectra_diff, testing::max_diff(a, b) / rel_scale(a));
        const Feasibility fa = feasibility(q, rep), fb = feasibility(p, rep);
        margin = std::max(margin, std::abs(fa.margin - fb.margin) / rel_scale(a));
        verdicts = verdicts && (std::abs(fa.margin) < 1e-7 || fa.feasible == fb.feasible);
        if (fa.feasible && fa.margin > 1e-6) residual = std::max(residual, roundtrip_residual(p, rep));

        // Same quintuple seen through a random tetrad and brought back with the canonical one.
        const RMat4 h = testing::random_tetrad(rng, 0.3);
        const TensorQuintuple world = testing::local_to_world(q, h);
        const TensorQuintuple back = world_to_local(world, tetrad_from_metric(WorldMetric(h * testing::eta() * h.transpose())));
        spectra_diff = std::max(spectra_diff, testing::max_diff(a, comoving_spectrum(back, rep)) / rel_scale(a));
        margin = std::max(margin, std::abs(fa.margin - feasibility(back, rep).margin) / rel_scale(a));
        if (fa.feasible && fa.margin > 1e-6) residual = std::max(residual, roundtrip_residual(back, rep));
    }
    double polar = 0;
    for (int i = 0; i < 100; ++i) {
        const DiracRep& rep = *kReps[i % 2];
        const Mat4 Z = random_matrix(rng, rep.kind == RepKind::majorana_real);
        const Vec3 axis = random_direction(rng) * rng.uniform(0, 3.1);
        const CovarianceResidual r = rotation_covariance_check(Z, spin_rotation(axis, rep), rep);
        polar = std::max({polar, r.amplitude, r.phase});
    }
    Rng boost_rng(1009);
    const CovarianceResidual counter =
        rotation_covariance_check(random_matrix(boost_rng, true), spin_boost(Vec3(0.8, 0.0, 0.0), majorana()), majorana());
    const double counter_size = std::max(counter.amplitude, counter.phase);
    return {spectra_diff < 1e-8 && margin < 1e-8 && residual < 1e-8 && verdicts && polar < 1e-9 && counter_size > 1e-3,
            "spectra " + fmt(spectra_diff) + ", margins " + fmt(margin) + ", round trip " + fmt(residual) + ", rotation polar " +
                fmt(polar) + ", boost counterexample " + fmt(counter_size)};
}

Outcome orthogonality() {
    Rng rng(1010);
    const RMat4 eta = testing::eta();
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        const SpectralInvariants inv = spectral_invariants(random_quintuple(rng, i % 2 ? Sector::full : Sector::real));
        const Vec4 j_up = inv.j * inv.e;
        const double uj = inv.u.dot(j_up), vj = inv.v.dot(j_up);
        const double wu = inv.w.dot(eta * inv.u), wv = inv.w.dot(eta * inv.v);
        worst = std::max({worst, std::abs(uj), std::abs(vj), std::abs(wu), std::abs(wv)});
    }
    return {worst < 1e-9, "max contraction " + fmt(worst)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
        double limit_s;  // 0 means no runtime bound
    };
    const std::vector<Criterion> criteria{
        {1, "representation validity", representations, 1.0},
        {2, "closed-form spectrum", closed_form, 30.0},
        {3, "solvability equivalence", solvability, 30.0},
        {4, "round trip", round_trip, 10.0},
        {5, "gauge invariance", gauge, 0},
        {6, "factor enumeration", factor_enumeration, 0},
        {7, "coefficient composition", composition, 0},
        {8, "normalized system", normalized, 0},
        {9, "frame covariance", covariance, 0},
        {10, "orthogonality", orthogonality, 0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0 && seconds > c.limit_s) {
            o.pass = false;
            o.detail += ", over the " + fmt(c.limit_s) + " s limit";
        }
        std::printf("criterion %2d %s  %-26s %s (%.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    seconds);
        failures += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures ? 1 : 0;
}
