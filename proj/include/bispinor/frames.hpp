#pragma once

// Tensor quintuples at a single spacetime point, tetrads linking world and
// local (Galilean tangent) indices, and Lorentz transformations of the local
// frame.
//
// Index conventions used throughout the library:
//   j  contravariant (j^a),   s  covariant (s_a),   H  covariant (H_ab).
// A tetrad stores H_a^k with the world index a as the row and the local index
// k as the column, so g = H * eta * H^T.

#include "bispinor/errors.hpp"
#include "bispinor/types.hpp"

#include <cstdint>

namespace bispinor {

class Rng;

enum class IndexFrame { world, local };

std::string_view to_string(IndexFrame frame);

/// Antisymmetric 4x4 tensor stored as its six (m<n) components in kPairs order.
struct Antisymmetric4 {
    std::array<double, 6> c{};

    double operator()(int m, int n) const;
    void set(int m, int n, double value);
    RMat4 matrix() const;
    /// Takes the antisymmetric part of `m`.
    static Antisymmetric4 from_matrix(const RMat4& m);
};

struct TensorQuintuple {
    double m = 0.0;
    Vec4 j = Vec4::Zero();
    Vec4 s = Vec4::Zero();
    Antisymmetric4 H;
    double n = 0.0;
    IndexFrame frame = IndexFrame::local;

    static TensorQuintuple zero(IndexFrame frame = IndexFrame::local);

    /// m, s and n all vanish: the only components produced by real Z.
    bool real_sector(double tol = 1e-12) const;
    /// Largest absolute component.
    double scale() const;
};

/// Largest componentwise difference of two quintuples (frames not compared).
double max_abs_diff(const TensorQuintuple& a, const TensorQuintuple& b);

/// A symmetric metric g_ab with signature (-,+,+,+). Construction validates.
class WorldMetric {
public:
    /// Throws BadSignature for non-symmetric, degenerate or non-Lorentzian input.
    explicit WorldMetric(const RMat4& g);

    static WorldMetric minkowski();

    const RMat4& g() const noexcept { return g_; }
    const RMat4& inverse() const noexcept { return g_inv_; }
    /// sqrt(-det g).
    double volume() const noexcept { return volume_; }

private:
    RMat4 g_;
    RMat4 g_inv_;
    double volume_;
};

struct Tetrad {
    RMat4 frame;    // H_a^k
    RMat4 inverse;  // H_k^a, frame * inverse = E

    /// max |H eta H^T - g|.
    double residual(const WorldMetric& g) const;
};

/// Local Lorentz transformation w^k_p acting on contravariant local components.
struct LorentzTransform {
    RMat4 w = RMat4::Identity();

    static LorentzTransform identity() { return {}; }
    /// Throws NotLorentz when max |w^T eta w - eta| >= 1e-8.
    static LorentzTransform from_matrix(const RMat4& w);
    /// Pure boost; rapidity_vector = rapidity * unit direction.
    /// Maps (1, 0, 0, 0) to (cosh r, -sinh r n).
    static LorentzTransform boost(const Vec3& rapidity_vector);
    /// Active spatial rotation by |axis_angle| about its direction.
    static LorentzTransform rotation(const Vec3& axis_angle);
    /// Boost taking a future timelike vector j to (|j|, 0, 0, 0).
    static LorentzTransform to_rest_frame(const Vec4& j);

    double residual() const;
    LorentzTransform inverse() const;
    LorentzTransform operator*(const LorentzTransform& rhs) const { return {w * rhs.w}; }
    bool is_rotation(double tol = 1e-12) const;
};

/// Fully antisymmetric symbol E_abcd with E_0123 = +volume (covariant indices).
struct LeviCivita {
    double volume = 1.0;

    static LeviCivita local() { return {1.0}; }
    static LeviCivita for_metric(const WorldMetric& g) { return {g.volume()}; }
    double operator()(int a, int b, int c, int d) const;
};

/// Canonical tetrad: triangular factor g = L eta L^T when g_00 < 0, otherwise
/// a g-orthonormalization seeded by the timelike eigenvector of g.
Tetrad tetrad_from_metric(const WorldMetric& g);

/// Requires q.frame == world (FrameMismatch otherwise).
TensorQuintuple world_to_local(const TensorQuintuple& q, const Tetrad& t);

/// Requires q.frame == local. Throws NotLorentz if w is not a Lorentz matrix.
TensorQuintuple apply_lorentz(const TensorQuintuple& q, const LorentzTransform& w);

/// w = Boost * Rotation, proper orthochronous, deterministic in `seed`.
LorentzTransform random_lorentz(std::uint64_t seed, double rapidity_bound, bool include_rotation);
LorentzTransform random_lorentz(Rng& rng, double rapidity_bound, bool include_rotation);

/// Full contractions of a quintuple, all frame scalars.
struct Contractions {
    double jj;    // g_ab j^a j^b
    double ss;    // g^ab s_a s_b
    double HH;    // H_ab H^ab
    double js;    // j^a s_a
    double dual;  // 1/2 E_abmn H^ab H^mn
};

Contractions contractions(const TensorQuintuple& q, const RMat4& g, const LeviCivita& eps);

}  // namespace bispinor
