#pragma once

// The Hermitian matrix M built from a quintuple, its eigenvalues (numeric and
// closed form) and the solvability test M >= 0.
//
// The closed form is a function of Lorentz scalars only, so it is the spectrum
// of M in the rest frame of j. In an arbitrary local frame it coincides with
// the generalized eigenvalues det(M - lambda N) = 0, N = gamma_a D^-1 e^a with
// e the future unit vector along j ("comoving spectrum"). The ordinary
// eigenvalues of M are frame dependent, but their signs (and so feasibility
// and rank) are not: N is positive definite and M, N^-1/2 M N^-1/2 share
// inertia.

#include "bispinor/clifford.hpp"
#include "bispinor/frames.hpp"

#include <array>
#include <optional>
#include <string>

namespace bispinor {

using Spectrum = std::array<double, 4>;  // always sorted descending

struct MMatrix {
    Mat4 M;
    RepKind rep_kind;
    TensorQuintuple source;

    double hermitian_residual() const { return max_abs(Mat4(M - M.adjoint())); }
};

/// M = 1/4 (-i D^-1 m + gamma_a D^-1 j^a - i gamma_5 gamma_a D^-1 s^a
///          - 1/2 S_ab D^-1 H^ab + i gamma_5 D^-1 n).
/// Exactly real for the majorana_real kind in the real sector (m = s = n = 0).
/// Throws FrameMismatch for world input.
MMatrix build_M(const TensorQuintuple& q, const DiracRep& rep);

/// The scalars entering the closed form. Vectors carry lower indices.
struct SpectralInvariants {
    double j = 0.0;       // sqrt(-j.j)
    int sigma = 1;        // sign of j^0
    Vec4 e = Vec4::Zero();  // j^a / j (upper index)
    Vec4 u = Vec4::Zero();
    Vec4 v = Vec4::Zero();
    Vec4 w = Vec4::Zero();
    double u2 = 0.0;
    double v2 = 0.0;
    double w_inv = 0.0;   // sqrt(w.w)
};

/// Throws SpacelikeCurrent when g_ab j^a j^b > spacelike_tol and NullCurrent
/// when j < null_tol (the unit vector e is undefined).
SpectralInvariants spectral_invariants(const TensorQuintuple& q, const Tolerances& tol = {});

/// kappa (sigma j +- sqrt(u^2 + v^2 +- 2w)), descending.
Spectrum closed_form_eigenvalues(const SpectralInvariants& inv, double kappa);

struct ClosedFormSpectrum {
    SpectralInvariants invariants;
    Spectrum lambda;
    double kappa;
};

/// Uses the calibrated kappa for the representation. The formula only holds in
/// the real sector (m = s = n = 0); callers check that.
ClosedFormSpectrum closed_form_spectrum(const TensorQuintuple& q, RepKind kind, const Tolerances& tol = {});

struct Eigensystem {
    Spectrum values;  // descending
    Mat4 vectors;     // column k belongs to values[k]; real when M is real
};

/// Hermitian eigensolver. Throws NoConvergence when the solver fails or a
/// pair has backward error |Mx - lambda x| >= 1e-10 max(1, |M|).
Eigensystem hermitian_eigensystem(const Mat4& M);
Spectrum numeric_spectrum(const Mat4& M);
inline Spectrum numeric_spectrum(const MMatrix& M) { return numeric_spectrum(M.M); }

/// Generalized eigenvalues of (M, N) with N = gamma_a D^-1 e^a, e the future
/// unit vector along j. Throws like spectral_invariants.
Spectrum comoving_spectrum(const TensorQuintuple& q, const DiracRep& rep, const Tolerances& tol = {});

/// Ratio of numeric to closed-form eigenvalues on q = (0, (1,0,0,0), 0, 0, 0).
double calibrate_kappa(const DiracRep& rep);
/// calibrate_kappa, computed once per kind.
double kappa(RepKind kind);

struct Feasibility {
    bool feasible = false;
    double margin = 0.0;  // smallest comoving eigenvalue; kappa (j - sqrt(u^2 + v^2 + 2w)) in the real sector
    int rank = 0;
    std::string reason;
};

/// Never throws for finite input; pathological cases are folded into `reason`.
Feasibility feasibility(const TensorQuintuple& q, const DiracRep& rep, const Tolerances& tol = {});

/// Number of eigenvalues above tol.rank * max(lambda_1, 1).
int matrix_rank(const Spectrum& lambda, const Tolerances& tol = {});

struct SpectrumReport {
    std::optional<Spectrum> lambda_closed;   // real sector with non-null j only
    std::optional<Spectrum> lambda_numeric;  // comoving spectrum, when j is timelike
    Spectrum lambda_matrix;                  // eigenvalues of M itself
    std::optional<SpectralInvariants> invariants;
    double kappa = 0.25;
    Feasibility feasibility;
};

SpectrumReport spectrum_report(const TensorQuintuple& q, const DiracRep& rep, const Tolerances& tol = {});

}  // namespace bispinor
