#include "ans/operators.hpp"

#include <cmath>
#include <vector>

#include "ans/transform.hpp"

namespace ans {

namespace {

std::vector<double> mul_tables(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

}  // namespace

SpectralField leray_project(const SpectralField& u) {
    SpectralField out = u;
    const Grid& g = *out.grid;
    kernels::leray(out.comp(0), out.comp(1), g.kx.data(), g.ky.data(), g.k2.data(), g.size);
    return out;
}

SpectralField apply_stokes_power(const SpectralField& u, double s) {
    SpectralField out = u;
    const Grid& g = *out.grid;
    kernels::pow_mul(out.comp(0), g.k2.data(), g.size, s);
    kernels::pow_mul(out.comp(1), g.k2.data(), g.size, s);
    return out;
}

SpectralField apply_A1(const SpectralField& u) {
    SpectralField out(u.grid);
    const Grid& g = *u.grid;
    kernels::mul_real_out(out.comp(0), u.comp(0), g.ky2.data(), g.size);
    kernels::mul_real_out(out.comp(1), u.comp(1), g.kx2.data(), g.size);
    kernels::leray(out.comp(0), out.comp(1), g.kx.data(), g.ky.data(), g.k2.data(), g.size);
    return out;
}

double sobolev_norm(const SpectralField& u, double s) {
    const Grid& g = *u.grid;
    double sum = kernels::sum_pow_mag2(u.comp(0), u.comp(1), g.k2.data(), g.size, s);
    return g.L * std::sqrt(sum);
}

double inner_product(const SpectralField& u, const SpectralField& v) {
    const Grid& g = *u.grid;
    return g.L * g.L * kernels::dot_re(u.data.data(), v.data.data(), 2 * g.size);
}

double aniso_dissipation(const SpectralField& u) {
    const Grid& g = *u.grid;
    double s1 = kernels::sum_weighted_mag2(u.comp(0), u.comp(0), g.ky2.data(), g.size);
    double s2 = kernels::sum_weighted_mag2(u.comp(1), u.comp(1), g.kx2.data(), g.size);
    return g.L * g.L * 0.5 * (s1 + s2);
}

SpectralField nonlinear_term(const SpectralField& u) {
    const Grid& g = *u.grid;
    const Transform& tr = get_transform(g.N);
    const std::size_t n = g.size;

    std::vector<cplx> spec(n), phys(n);
    std::vector<double> u1(n), u2(n), g1x(n), g1y(n), g2x(n), g2y(n), n1(n), n2(n);

    tr.backward(u.comp(0), phys.data());
    kernels::take_real(u1.data(), phys.data(), n);
    tr.backward(u.comp(1), phys.data());
    kernels::take_real(u2.data(), phys.data(), n);

    auto grad_comp = [&](const cplx* c, const double* k, double* out) {
        kernels::deriv(spec.data(), c, k, n);
        tr.backward(spec.data(), phys.data());
        kernels::take_real(out, phys.data(), n);
    };
    grad_comp(u.comp(0), g.kx.data(), g1x.data());
    grad_comp(u.comp(0), g.ky.data(), g1y.data());
    grad_comp(u.comp(1), g.kx.data(), g2x.data());
    grad_comp(u.comp(1), g.ky.data(), g2y.data());

    kernels::advect(n1.data(), n2.data(), u1.data(), u2.data(), g1x.data(), g1y.data(),
                    g2x.data(), g2y.data(), n);

    SpectralField out(u.grid);
    kernels::fill_complex(phys.data(), n1.data(), n);
    tr.forward(phys.data(), out.comp(0));
    kernels::fill_complex(phys.data(), n2.data(), n);
    tr.forward(phys.data(), out.comp(1));

    kernels::mask(out.comp(0), g.dealias.data(), n);
    kernels::mask(out.comp(1), g.dealias.data(), n);
    kernels::leray(out.comp(0), out.comp(1), g.kx.data(), g.ky.data(), g.k2.data(), n);
    return out;
}

double grad_sup_norm(const SpectralField& h, int factor) {
    const Grid& g = *h.grid;
    const std::size_t n = g.size;
    const int M = factor * g.N;
    const std::size_t m = static_cast<std::size_t>(M) * M;

    std::vector<cplx> spec(n), phys;
    std::vector<double> g11(m), g12(m), g21(m), g22(m);
    auto grad_comp = [&](const cplx* c, const double* k, double* out) {
        kernels::deriv(spec.data(), c, k, n);
        padded_synthesis(g, spec.data(), M, phys);
        kernels::take_real(out, phys.data(), m);
    };
    grad_comp(h.comp(0), g.kx.data(), g11.data());
    grad_comp(h.comp(0), g.ky.data(), g12.data());
    grad_comp(h.comp(1), g.kx.data(), g21.data());
    grad_comp(h.comp(1), g.ky.data(), g22.data());
    return std::sqrt(kernels::max_frob2(g11.data(), g12.data(), g21.data(), g22.data(), m));
}

AssumptionReport check_assumption(const SpectralField& h, double nu, double delta) {
    AssumptionReport r;
    r.grad_sup = grad_sup_norm(h);
    r.bound = std::sqrt(M_PI * delta) * nu * h.grid->lambda1() / 2.0;
    r.ratio = r.grad_sup / r.bound;
    r.pass = r.ratio < 1.0;
    r.h3 = sobolev_norm(h, 3.0);
    r.h4 = sobolev_norm(h, 4.0);
    return r;
}

EnstrophyReport enstrophy_quantities(const SpectralField& v) {
    const Grid& g = *v.grid;
    const double L2 = g.L * g.L;

    auto w1 = mul_tables(g.k2, g.ky2);
    auto w2 = mul_tables(g.k2, g.kx2);
    double lhs = L2 * 0.5 *
                 (kernels::sum_weighted_mag2(v.comp(0), v.comp(0), w1.data(), g.size) +
                  kernels::sum_weighted_mag2(v.comp(1), v.comp(1), w2.data(), g.size));

    auto w4 = mul_tables(g.mu, g.k2);  // kx^4 + ky^4
    double rhs = L2 * kernels::sum_weighted_mag2(v.comp(0), v.comp(1), w4.data(), g.size);

    double a2 = L2 * kernels::sum_pow_mag2(v.comp(0), v.comp(1), g.k2.data(), g.size, 2.0);

    EnstrophyReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.rel_err = std::abs(lhs - rhs) / std::max(rhs, 1e-300);
    rep.half_a2 = 0.5 * a2;
    if (rhs == 0.0 && lhs == 0.0) rep.rel_err = 0.0;
    return rep;
}

double divergence_max(const SpectralField& u) {
    const Grid& g = *u.grid;
    std::vector<double> dre(g.size), dim(g.size);
    for (std::size_t i = 0; i < g.size; ++i) {
        cplx d = g.kx[i] * u.comp(0)[i] + g.ky[i] * u.comp(1)[i];
        dre[i] = d.real();
        dim[i] = d.imag();
    }
    return std::sqrt(kernels::max_mag2_pair(dre.data(), dim.data(), g.size));
}

double max_velocity(const SpectralField& u) {
    const Grid& g = *u.grid;
    const Transform& tr = get_transform(g.N);
    std::vector<cplx> phys(g.size);
    std::vector<double> u1(g.size), u2(g.size);
    tr.backward(u.comp(0), phys.data());
    kernels::take_real(u1.data(), phys.data(), g.size);
    tr.backward(u.comp(1), phys.data());
    kernels::take_real(u2.data(), phys.data(), g.size);
    return std::sqrt(kernels::max_mag2_pair(u1.data(), u2.data(), g.size));
}

}  // namespace ans
