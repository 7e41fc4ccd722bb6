#include <lemnmap/lemniscatic.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include <lemnmap/error.hpp>

#include "complex_util.hpp"

namespace lemnmap
{

namespace
{

struct radial_slit_constants
{
    int n;
    double C;
    double D;
    double Cn;       // C^n
    double Dn;       // D^n
    double sqrt_CD;  // (CD)^{n/2}
    double center;   // (D^{n/2} + C^{n/2})^2 / 4
    double gap;      // (D^{n/2} - C^{n/2})^2 / 4
    double mu;       // ((D^n - C^n) / 4)^{1/n}

    explicit radial_slit_constants(const radial_slit_config &cfg)
        : n(cfg.n), C(cfg.C), D(cfg.D), Cn(std::pow(cfg.C, cfg.n)), Dn(std::pow(cfg.D, cfg.n)),
          sqrt_CD(std::pow(cfg.C * cfg.D, 0.5 * cfg.n))
    {
        const double sd = std::pow(D, 0.5 * n);
        const double sc = std::pow(C, 0.5 * n);
        center = 0.25 * (sd + sc) * (sd + sc);
        gap = 0.25 * (sd - sc) * (sd - sc);
        mu = std::pow(0.25 * (Dn - Cn), 1.0 / n);
    }

    bool on_slit(complex z) const
    {
        const double r = std::abs(z);
        if (r < C || r > D) {
            return false;
        }
        const double step = 2.0 * std::numbers::pi / n;
        const double j = std::round(std::arg(z) / step);
        const complex u = z * std::polar(1.0, -j * step);
        return std::abs(u.imag()) <= 4.0 * std::numeric_limits<double>::epsilon() * D && u.real() >= C &&
               u.real() <= D;
    }

    complex forward(complex z) const
    {
        if (z == 0.0) {
            return 0.0;
        }
        const complex zn = detail::ipow(z, n);
        // Branch of the square root with |Riemann(z^n)| > 1: the product of
        // principal roots is cut exactly along [C^n, D^n].
        const complex s = std::sqrt(zn - Cn) * std::sqrt(zn - Dn);
        const complex sp = sqrt_CD + s;
        const complex sm = sqrt_CD - s;
        complex bracket;
        if (std::abs(sp) >= std::abs(sm)) {
            bracket = 0.5 + sp / (2.0 * zn);
        } else {
            // sqrt_CD + s = z^n (C^n + D^n - z^n) / (sqrt_CD - s)
            bracket = 0.5 + (Cn + Dn - zn) / (2.0 * sm);
        }
        return z * detail::principal_root(bracket, n);
    }

    complex inverse(complex w) const
    {
        const complex wn = detail::ipow(w, n);
        return w * detail::principal_root(1.0 + gap / (wn - center), n);
    }
};

} // namespace

lemniscatic_map radial_slit_map(const radial_slit_config &cfg)
{
    if (cfg.n < 2) {
        throw construction_error("radial_slit_map: n must be at least 2");
    }
    if (!(cfg.C > 0.0 && cfg.C < cfg.D) || !std::isfinite(cfg.D)) {
        throw construction_error("radial_slit_map: requires 0 < C < D");
    }
    const radial_slit_constants k(cfg);
    return lemniscatic_map(
        lemniscatic_domain::symmetric(k.n, k.center, k.mu), [k](complex z) { return k.forward(z); },
        [k](complex w) { return k.inverse(w); }, [k](complex z) { return k.on_slit(z); }, k.D,
        source_description{"radial-slits", {{"n", cfg.n}, {"C", cfg.C}, {"D", cfg.D}}});
}

} // namespace lemnmap
