#include "bispinor/frames.hpp"

#include "bispinor/clifford.hpp"
#include "bispinor/random.hpp"

#include <cmath>
#include <numbers>

namespace bispinor {

namespace {

const RMat4& eta() {
    static const RMat4 m = MinkowskiMetric::matrix();
    return m;
}

int permutation_sign(std::array<int, 4> p) {
    int sign = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (p[i] == p[j]) return 0;
            if (p[i] > p[j]) sign = -sign;
        }
    return sign;
}

// Gram-Schmidt with respect to g. `seed` becomes the timelike leg; the
// remaining legs are taken from the coordinate basis, largest remainder first.
RMat4 orthonormal_frame(const RMat4& g, const Vec4& seed, bool keep_coordinate_order) {
    RMat4 f = RMat4::Zero();
    f.col(0) = seed / std::sqrt(-seed.dot(g * seed));

    std::array<bool, 4> used{};
    if (keep_coordinate_order) used[0] = true;
    for (int k = 1; k < 4; ++k) {
        Vec4 best = Vec4::Zero();
        double best_norm = -1.0;
        int best_index = -1;
        for (int c = 0; c < 4; ++c) {
            if (used[c]) continue;
            Vec4 v = Vec4::Unit(c);
            for (int p = 0; p < k; ++p) v -= (v.dot(g * f.col(p)) / MinkowskiMetric::g(p, p)) * f.col(p);
            const double norm2 = v.dot(g * v);
            if (norm2 > best_norm) {
                best_norm = norm2;
                best = v;
                best_index = c;
            }
            if (keep_coordinate_order) break;
        }
        used[best_index] = true;
        f.col(k) = best / std::sqrt(best_norm);
    }
    return f;
}

}  // namespace

std::string_view to_string(IndexFrame frame) { return frame == IndexFrame::world ? "world" : "local"; }

double Antisymmetric4::operator()(int m, int n) const {
    if (m == n) return 0.0;
    const auto [slot, sign] = pair_slot(m, n);
    return sign * c[slot];
}

void Antisymmetric4::set(int m, int n, double value) {
    const auto [slot, sign] = pair_slot(m, n);
    c[slot] = sign * value;
}

RMat4 Antisymmetric4::matrix() const {
    RMat4 out = RMat4::Zero();
    for (int p = 0; p < 6; ++p) {
        const auto [m, n] = kPairs[p];
        out(m, n) = c[p];
        out(n, m) = -c[p];
    }
    return out;
}

Antisymmetric4 Antisymmetric4::from_matrix(const RMat4& m) {
    Antisymmetric4 h;
    for (int p = 0; p < 6; ++p) {
        const auto [a, b] = kPairs[p];
        h.c[p] = 0.5 * (m(a, b) - m(b, a));
    }
    return h;
}

TensorQuintuple TensorQuintuple::zero(IndexFrame frame) {
    TensorQuintuple q;
    q.frame = frame;
    return q;
}

bool TensorQuintuple::real_sector(double tol) const {
    return std::abs(m) <= tol && std::abs(n) <= tol && s.cwiseAbs().maxCoeff() <= tol;
}

double TensorQuintuple::scale() const {
    double out = std::max(std::abs(m), std::abs(n));
    out = std::max({out, j.cwiseAbs().maxCoeff(), s.cwiseAbs().maxCoeff()});
    for (double h : H.c) out = std::max(out, std::abs(h));
    return out;
}

double max_abs_diff(const TensorQuintuple& a, const TensorQuintuple& b) {
    double out = std::max(std::abs(a.m - b.m), std::abs(a.n - b.n));
    out = std::max({out, max_abs(a.j - b.j), max_abs(a.s - b.s)});
    for (int p = 0; p < 6; ++p) out = std::max(out, std::abs(a.H.c[p] - b.H.c[p]));
    return out;
}

WorldMetric::WorldMetric(const RMat4& g) : g_(g) {
    if (!g.allFinite()) throw BadSignature("metric has non-finite entries");
    const double scale = std::max(1.0, max_abs(g));
    if (max_abs(RMat4(g - g.transpose())) > 1e-12 * scale) throw BadSignature("metric is not symmetric");
    g_ = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<RMat4> es(g_, Eigen::EigenvaluesOnly);
    const Vec4& ev = es.eigenvalues();
    const double tol = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    if (ev.cwiseAbs().minCoeff() <= tol) throw BadSignature("metric is degenerate (det g = 0)");
    if (!(ev(0) < 0 && ev(1) > 0)) throw BadSignature("metric signature is not (-,+,+,+)");
    g_inv_ = g_.inverse();
    volume_ = std::sqrt(-g_.determinant());
}

WorldMetric WorldMetric::minkowski() { return WorldMetric(MinkowskiMetric::matrix()); }

double Tetrad::residual(const WorldMetric& g) const {
    return max_abs(RMat4(frame * eta() * frame.transpose() - g.g()));
}

LorentzTransform LorentzTransform::from_matrix(const RMat4& w) {
    LorentzTransform out{w};
    const double r = out.residual();
    if (!(r < 1e-8)) throw NotLorentz("matrix is not a Lorentz transformation (residual " + std::to_string(r) + ")");
    return out;
}

LorentzTransform LorentzTransform::boost(const Vec3& rapidity_vector) {
    LorentzTransform out;
    const double r = rapidity_vector.norm();
    if (r == 0.0) return out;
    const Vec3 n = rapidity_vector / r;
    const double ch = std::cosh(r);
    const double sh = std::sinh(r);
    out.w(0, 0) = ch;
    for (int i = 0; i < 3; ++i) {
        out.w(0, i + 1) = -sh * n(i);
        out.w(i + 1, 0) = -sh * n(i);
        for (int k = 0; k < 3; ++k) out.w(i + 1, k + 1) = (i == k ? 1.0 : 0.0) + (ch - 1.0) * n(i) * n(k);
    }
    return out;
}

LorentzTransform LorentzTransform::rotation(const Vec3& axis_angle) {
    LorentzTransform out;
    const double theta = axis_angle.norm();
    if (theta == 0.0) return out;
    out.w.block<3, 3>(1, 1) = Eigen::AngleAxisd(theta, axis_angle / theta).toRotationMatrix();
    return out;
}

LorentzTransform LorentzTransform::to_rest_frame(const Vec4& j) {
    const double spatial = j.tail<3>().norm();
    if (!(j(0) > spatial)) throw SpacelikeCurrent("rest frame needs a future timelike vector");
    if (spatial == 0.0) return {};
    return boost(std::atanh(spatial / j(0)) * j.tail<3>() / spatial);
}

double LorentzTransform::residual() const {
    return max_abs(RMat4(w.transpose() * eta() * w - eta()));
}

LorentzTransform LorentzTransform::inverse() const { return {eta() * w.transpose() * eta()}; }

bool LorentzTransform::is_rotation(double tol) const {
    return std::abs(w(0, 0) - 1.0) <= tol && w.row(0).tail<3>().cwiseAbs().maxCoeff() <= tol &&
           w.col(0).tail<3>().cwiseAbs().maxCoeff() <= tol;
}

double LeviCivita::operator()(int a, int b, int c, int d) const {
    return volume * permutation_sign({a, b, c, d});
}

Tetrad tetrad_from_metric(const WorldMetric& metric) {
    const RMat4& g = metric.g();
    RMat4 f;
    if (g(0, 0) < -1e-12 * std::max(1.0, max_abs(g))) {
        f = orthonormal_frame(g, Vec4::Unit(0), true);
    } else {
        Eigen::SelfAdjointEigenSolver<RMat4> es(g);
        Vec4 t = es.eigenvectors().col(0);
        Eigen::Index lead = 0;
        t.cwiseAbs().maxCoeff(&lead);
        if (t(lead) < 0) t = -t;
        f = orthonormal_frame(g, t, false);
        if (f.determinant() < 0) f.col(3) = -f.col(3);
    }
    Tetrad out;
    out.frame = f.inverse().transpose();
    out.inverse = f.transpose();
    return out;
}

TensorQuintuple world_to_local(const TensorQuintuple& q, const Tetrad& t) {
    if (q.frame != IndexFrame::world) throw FrameMismatch("world_to_local expects a world-frame quintuple");
    TensorQuintuple out = q;
    out.j = t.frame.transpose() * q.j;
    out.s = t.inverse * q.s;
    out.H = Antisymmetric4::from_matrix(t.inverse * q.H.matrix() * t.inverse.transpose());
    out.frame = IndexFrame::local;
    return out;
}

TensorQuintuple apply_lorentz(const TensorQuintuple& q, const LorentzTransform& w) {
    if (q.frame != IndexFrame::local) throw FrameMismatch("apply_lorentz expects a local-frame quintuple");
    const double r = w.residual();
    if (!(r < 1e-8)) throw NotLorentz("matrix is not a Lorentz transformation (residual " + std::to_string(r) + ")");
    if (w.w == RMat4::Identity()) return q;
    const RMat4 inv_t = w.inverse().w.transpose();
    TensorQuintuple out = q;
    out.j = w.w * q.j;
    out.s = inv_t * q.s;
    out.H = Antisymmetric4::from_matrix(inv_t * q.H.matrix() * inv_t.transpose());
    return out;
}

LorentzTransform random_lorentz(Rng& rng, double rapidity_bound, bool include_rotation) {
    LorentzTransform rot;
    if (include_rotation) {
        // Uniform unit quaternion (Shoemake).
        const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
        const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
        const double t1 = 2.0 * std::numbers::pi * u2, t2 = 2.0 * std::numbers::pi * u3;
        const Eigen::Quaterniond quat(b * std::cos(t2), a * std::sin(t1), a * std::cos(t1), b * std::sin(t2));
        rot.w.block<3, 3>(1, 1) = quat.normalized().toRotationMatrix();
    }
    LorentzTransform boost;
    if (rapidity_bound > 0.0) {
        const Vec3 dir = random_direction(rng);
        boost = LorentzTransform::boost(rapidity_bound * rng.uniform() * dir);
    }
    return boost * rot;
}

LorentzTransform random_lorentz(std::uint64_t seed, double rapidity_bound, bool include_rotation) {
    Rng rng(seed);
    return random_lorentz(rng, rapidity_bound, include_rotation);
}

Contractions contractions(const TensorQuintuple& q, const RMat4& g, const LeviCivita& eps) {
    const RMat4 g_inv = g.inverse();
    const RMat4 h_low = q.H.matrix();
    const RMat4 h_up = g_inv * h_low * g_inv;
    Contractions c{};
    c.jj = q.j.dot(g * q.j);
    c.ss = q.s.dot(g_inv * q.s);
    c.HH = h_low.cwiseProduct(h_up).sum();
    c.js = q.j.dot(q.s);
    double dual = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n) {
                    const double e = eps(a, b, m, n);
                    if (e != 0.0) dual += e * h_up(a, b) * h_up(m, n);
                }
    c.dual = 0.5 * dual;
    return c;
}

}  // namespace bispinor
