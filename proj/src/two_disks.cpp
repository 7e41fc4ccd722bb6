#include <lemnmap/lemniscatic.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include <lemnmap/error.hpp>

#include "complex_util.hpp"

namespace lemnmap
{

namespace
{

constexpr double pi = std::numbers::pi;

// Below this |T(z) + 1| the annulus map is evaluated through its offset form.
constexpr double offset_switch = 0.5;
constexpr double offset_inverse_switch = 0.1;

} // namespace

two_disk_geometry two_disk_geometry::from(const two_disk_config &cfg)
{
    if (!(cfg.r > 0.0 && cfg.r < cfg.z0) || !std::isfinite(cfg.z0)) {
        throw construction_error("two_disk_map: requires 0 < r < z0");
    }
    two_disk_geometry g{};
    g.z0 = cfg.z0;
    g.r = cfg.r;
    g.alpha = std::sqrt((cfg.z0 - cfg.r) * (cfg.z0 + cfg.r));
    const double sp = std::sqrt(cfg.z0 + cfg.r);
    const double sm = std::sqrt(cfg.z0 - cfg.r);
    g.rho = (sp - sm) / (sp + sm);
    g.elliptic = elliptic_parameters::from_rho(g.rho);
    g.f_prime = annulus_to_slit_derivative_at_minus_one(g.elliptic);
    const double scale = 2.0 * g.elliptic.K * g.alpha / pi;
    const double L = g.elliptic.L;
    g.C = scale * (1.0 - L) * (1.0 - L);
    g.D = scale * (1.0 + L) * (1.0 + L);
    return g;
}

complex two_disk_geometry::moebius(complex z) const
{
    return (alpha + z) / (alpha - z);
}

complex two_disk_geometry::moebius_inverse(complex z) const
{
    return alpha * (z - 1.0) / (z + 1.0);
}

lemniscatic_map two_disk_map(const two_disk_config &cfg)
{
    const auto g = two_disk_geometry::from(cfg);
    const auto slits = radial_slit_map({2, g.C, g.D});

    const double scale = 2.0 * g.elliptic.K * g.alpha / pi;
    const double L = g.elliptic.L;
    const double c = std::pow(scale * (1.0 + L * L), 2);
    const double mu = std::sqrt(2.0 * L * (1.0 + L * L)) * scale;

    auto in_set = [g](complex z) {
        return std::abs(z - g.z0) <= g.r || std::abs(z + g.z0) <= g.r;
    };

    // (T^{-1} o f o T)(z); near infinity T(z) = -1 + delta with delta small.
    auto forward = [g, slits](complex z) {
        const complex delta = 2.0 * g.alpha / (g.alpha - z);
        complex inner;
        if (std::abs(delta) < offset_switch) {
            const complex fp1 = annulus_to_slit_offset(delta, g.elliptic);
            inner = g.alpha * (fp1 - 2.0) / fp1;
        } else {
            inner = g.moebius_inverse(annulus_to_slit(-1.0 + delta, g.elliptic));
        }
        return slits.forward_unchecked(g.f_prime * inner);
    };

    auto inverse = [g, slits](complex w) {
        const complex z3 = slits.inverse_unchecked(w) / g.f_prime;
        const complex delta = 2.0 * g.alpha / (g.alpha - z3);
        if (std::abs(delta) < offset_inverse_switch) {
            try {
                const complex d1 = annulus_to_slit_offset_inverse(delta, g.elliptic);
                return g.alpha * (d1 - 2.0) / d1;
            } catch (const numerical_error &) {
                // fall through to the seeded inversion
            }
        }
        return g.moebius_inverse(annulus_to_slit_inverse(-1.0 + delta, g.elliptic));
    };

    return lemniscatic_map(lemniscatic_domain::symmetric(2, c, mu), forward, inverse, in_set, g.z0 + g.r,
                           source_description{"two-disks", {{"z0", cfg.z0}, {"r", cfg.r}}});
}

lemniscatic_map doubly_connected_from_annulus(const annulus_map_input &input)
{
    if (!input.h) {
        throw construction_error("doubly_connected_from_annulus: h is required");
    }
    if (input.a1 == 0.0) {
        throw construction_error("doubly_connected_from_annulus: a1 must be nonzero");
    }
    if (!(input.rho > 0.0 && input.rho < 1.0)) {
        throw construction_error("doubly_connected_from_annulus: rho must lie in (0, 1)");
    }
    const complex h_inf = input.h(complex{1e15, 0.0});
    if (!(std::abs(h_inf + 1.0) <= 1e-10)) {
        throw contract_error("doubly_connected_from_annulus: h(infinity) must equal -1");
    }

    const auto ell = elliptic_parameters::from_rho(input.rho);
    const double fp = annulus_to_slit_derivative_at_minus_one(ell);
    // S o f maps the annulus onto the exterior of [-1/b, -b] U [b, 1/b].
    const double b = (1.0 - ell.L) / (1.0 + ell.L);
    const complex c = -input.a1 * fp / 2.0;
    const double c_abs = std::abs(c);
    const complex rot = c / c_abs;
    const auto slits = radial_slit_map({2, c_abs * b, c_abs / b});

    auto h = input.h;
    // S(f(h(z))) with f + 1 taken from the offset form.
    auto s_of = [h, ell](complex z) {
        const complex delta = h(z) + 1.0;
        const complex fp1 = annulus_to_slit_offset(delta, ell);
        return (fp1 - 2.0) / fp1;
    };
    auto unshifted = [s_of, slits, rot, c_abs](complex z) { return rot * slits.forward_unchecked(c_abs * s_of(z)); };

    const double radius = input.beta_radius > 0.0 ? input.beta_radius : 16.0 * std::abs(input.a1);
    constexpr int beta_samples = 256;
    complex mean = 0.0;
    for (int j = 0; j < beta_samples; ++j) {
        const complex z = std::polar(radius, 2.0 * pi * (j + 0.5) / beta_samples);
        mean += unshifted(z) - z;
    }
    const complex beta = -mean / static_cast<double>(beta_samples);

    // h(z) + 1 cancels for large z, so far out use the Laurent series of
    // Phi(z) - z sampled on the same circle, in powers of radius / z.
    constexpr int terms = 64;
    std::vector<complex> laurent(terms + 1, 0.0);
    for (int j = 0; j < beta_samples; ++j) {
        const complex t = std::polar(1.0, 2.0 * pi * (j + 0.5) / beta_samples);
        const complex tail = unshifted(radius * t) + beta - radius * t;
        complex tk = t;
        for (int k = 1; k <= terms; ++k) {
            laurent[k] += tail * tk;
            tk *= t;
        }
    }
    for (auto &a : laurent) {
        a /= static_cast<double>(beta_samples);
    }
    const double far_radius = 4.0 * radius;

    auto forward = [unshifted, beta, laurent, radius, far_radius](complex z) {
        if (std::abs(z) < far_radius) {
            return unshifted(z) + beta;
        }
        const complex q = radius / z;
        complex sum = 0.0;
        for (int k = terms; k >= 1; --k) {
            sum = (sum + laurent[k]) * q;
        }
        return z + sum;
    };

    lemniscatic_map::function inverse;
    if (input.h_inverse) {
        auto h_inv = input.h_inverse;
        inverse = [h_inv, slits, rot, c_abs, beta, ell](complex w) {
            const complex s = slits.inverse_unchecked(std::conj(rot) * (w - beta)) / c_abs;
            const complex f = (1.0 + s) / (1.0 - s);
            return h_inv(annulus_to_slit_inverse(f, ell));
        };
    } else {
        inverse = [](complex) -> complex {
            throw domain_error("doubly_connected_from_annulus: no inverse of h supplied");
        };
    }
    lemniscatic_map::predicate in_set = input.in_set ? input.in_set : [](complex) { return false; };
    const double scale = input.scale > 0.0 ? input.scale : 0.5 * radius;

    return lemniscatic_map(slits.domain().transformed(rot, beta), forward, inverse, in_set, scale,
                           source_description{"doubly-connected",
                                              {{"rho", input.rho},
                                               {"a1_re", input.a1.real()},
                                               {"a1_im", input.a1.imag()},
                                               {"beta_re", beta.real()},
                                               {"beta_im", beta.imag()}}});
}

} // namespace lemnmap
