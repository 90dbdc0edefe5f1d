#pragma once

// Seeded sampling helpers. Only the engine (std::mt19937_64) comes from the
// standard library; the value mappings are fixed here so that output is
// identical across standard library implementations.

#include "bispinor/clifford.hpp"
#include "bispinor/frames.hpp"

#include <cstdint>
#include <random>

namespace bispinor {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal (Box-Muller).
    double normal();
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

enum class Sector { real, full };

std::string_view to_string(Sector sector);
Sector parse_sector(std::string_view name);

/// Components uniform in [-1, 1]; j^0 = |j_vec| + 0.1 + |u|, u ~ U[-1, 1]
/// (future timelike). The real sector keeps m = s = n = 0.
TensorQuintuple random_quintuple(Rng& rng, Sector sector = Sector::real);

/// Haar-distributed unitary (orthogonal and exactly real when `real` is set).
Mat4 random_unitary(Rng& rng, bool real);

/// Entries with independent standard normal real (and imaginary) parts.
Mat4 random_matrix(Rng& rng, bool real);

/// Random Hermitian (real symmetric when `real`) matrix.
Mat4 random_hermitian(Rng& rng, bool real);

/// Random 3-vector uniformly distributed on the unit sphere.
Vec3 random_direction(Rng& rng);

}  // namespace bispinor
