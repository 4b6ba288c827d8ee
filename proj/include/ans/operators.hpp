#pragma once

#include "ans/field.hpp"

namespace ans {

/// Helmholtz-Leray projection: per mode j != 0 removes the component of the
/// coefficient along k(j); the zero mode is cleared. Idempotent; output is
/// divergence-free.
SpectralField leray_project(const SpectralField& u);

/// A^s on the divergence-free subspace: per-mode multiplication by |k|^{2s}.
/// Negative s leaves the (empty) zero mode at zero.
SpectralField apply_stokes_power(const SpectralField& u, double s);

/// Anisotropic Stokes operator: -P(d_yy u1, d_xx u2), i.e. multipliers ky^2
/// and kx^2 on the two components followed by projection. On a
/// divergence-free mode this is multiplication by mu(k) = (kx^4+ky^4)/|k|^2.
SpectralField apply_A1(const SpectralField& u);

/// H^s norm: ( L^2 sum_j |k|^{2s} (|u1|^2 + |u2|^2) )^{1/2}. s = 0 is the L2
/// norm on [0,L]^2 (Parseval).
double sobolev_norm(const SpectralField& u, double s);

/// L2 inner product <u, v> on [0,L]^2.
double inner_product(const SpectralField& u, const SpectralField& v);

/// ||d_y u1||^2 + ||d_x u2||^2 — the dissipation the anisotropic operator
/// actually pays: equal to L^2 sum mu(k) |u(k)|^2 on divergence-free fields.
double aniso_dissipation(const SpectralField& u);

/// B(u) = P((u·grad)u), evaluated pseudo-spectrally with 2/3-rule
/// dealiasing: 6 syntheses (u and grad u), pointwise products, 2 analyses,
/// mask, projection.
SpectralField nonlinear_term(const SpectralField& u);

/// Sup over the torus of the Frobenius norm of grad h, sampled on a grid
/// refined `factor` times per axis by zero padding (default 4).
double grad_sup_norm(const SpectralField& h, int factor = 4);

struct AssumptionReport {
    bool pass;
    double ratio;     // grad_sup / bound
    double bound;     // sqrt(pi*delta) * nu * lambda1 / 2
    double grad_sup;  // ||grad h||_Linf
    double h3;        // H^3 norm of h
    double h4;        // H^4 norm of h
};

/// Noise-intensity admissibility: passes when ||grad h||_Linf is below
/// sqrt(pi*delta)*nu*lambda1/2; the H^3/H^4 norms are reported alongside for
/// the stricter regularity regime.
AssumptionReport check_assumption(const SpectralField& h, double nu, double delta);

struct EnstrophyReport {
    double lhs;      // integral d_yy v1 lap v1 + d_xx v2 lap v2
    double rhs;      // sum of the four second-derivative norms
    double rel_err;  // |lhs - rhs| / max(rhs, tiny)
    double half_a2;  // 0.5 ||A v||^2, for the coercivity comparison
};

EnstrophyReport enstrophy_quantities(const SpectralField& v);

/// max over modes of |k · u(k)|.
double divergence_max(const SpectralField& u);

/// Sup of |u| on the collocation grid (physical space).
double max_velocity(const SpectralField& u);

}  // namespace ans
