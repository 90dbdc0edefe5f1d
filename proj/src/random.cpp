#include "bispinor/random.hpp"

#include <cmath>
#include <numbers>

namespace bispinor {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::string_view to_string(Sector sector) { return sector == Sector::real ? "real" : "full"; }

Sector parse_sector(std::string_view name) {
    if (name == "real") return Sector::real;
    if (name == "full") return Sector::full;
    throw InputError("unknown sector '" + std::string(name) + "' (expected real or full)");
}

TensorQuintuple random_quintuple(Rng& rng, Sector sector) {
    TensorQuintuple q;
    q.frame = IndexFrame::local;
    for (int k = 1; k < 4; ++k) q.j(k) = rng.uniform(-1.0, 1.0);
    q.j(0) = q.j.tail<3>().norm() + 0.1 + std::abs(rng.uniform(-1.0, 1.0));
    for (auto& h : q.H.c) h = rng.uniform(-1.0, 1.0);
    if (sector == Sector::full) {
        q.m = rng.uniform(-1.0, 1.0);
        for (int k = 0; k < 4; ++k) q.s(k) = rng.uniform(-1.0, 1.0);
        q.n = rng.uniform(-1.0, 1.0);
    }
    return q;
}

Mat4 random_matrix(Rng& rng, bool real) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double re = rng.normal();
            m(i, j) = real ? cplx(re, 0.0) : cplx(re, rng.normal());
        }
    return m;
}

Mat4 random_unitary(Rng& rng, bool real) {
    const Mat4 g = random_matrix(rng, real);
    Eigen::HouseholderQR<Mat4> qr(g);
    Mat4 q = qr.householderQ();
    const Mat4 r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Rescale columns by the phases of diag(R) to obtain the Haar measure.
    for (int k = 0; k < 4; ++k) {
        const cplx d = r(k, k);
        const double mag = std::abs(d);
        if (mag > 0) q.col(k) *= d / mag;
    }
    if (real) q = q.real().cast<cplx>();
    return q;
}

Mat4 random_hermitian(Rng& rng, bool real) {
    const Mat4 a = random_matrix(rng, real);
    return 0.5 * (a + a.adjoint());
}

Vec3 random_direction(Rng& rng) {
    Vec3 v;
    do {
        v = Vec3(rng.normal(), rng.normal(), rng.normal());
    } while (v.norm() < 1e-8);
    return v.normalized();
}

}  // namespace bispinor
