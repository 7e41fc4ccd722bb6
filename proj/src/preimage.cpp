#include <lemnmap/lemniscatic.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include <lemnmap/error.hpp>

#include "complex_util.hpp"

namespace lemnmap
{

namespace
{

constexpr int ray_check_samples = 4096;

// The closed ray (-inf, alpha0] must miss Omega: every real-axis crossing of
// the sampled boundary inverse(e^{it}) lies right of alpha0.
void check_ray_disjoint(const riemann_map &riemann, double alpha0)
{
    if (riemann.contains(alpha0)) {
        throw construction_error("from_polynomial_preimage: alpha0 lies in Omega");
    }
    complex prev = riemann.inverse(1.0);
    for (int j = 1; j <= ray_check_samples; ++j) {
        const complex cur = riemann.inverse(std::polar(1.0, 2.0 * std::numbers::pi * j / ray_check_samples));
        if ((prev.imag() <= 0.0 && cur.imag() >= 0.0) || (prev.imag() >= 0.0 && cur.imag() <= 0.0)) {
            const double dy = cur.imag() - prev.imag();
            const double t = (dy == 0.0) ? 0.0 : -prev.imag() / dy;
            const double x = prev.real() + t * (cur.real() - prev.real());
            if (!(x > alpha0)) {
                throw construction_error("from_polynomial_preimage: ray (-inf, alpha0] intersects Omega");
            }
        }
        prev = cur;
    }
}

struct preimage_state
{
    std::shared_ptr<const riemann_map> riemann;
    double alpha;
    double alpha0;
    int n;
    double mun;    // mu^n
    complex w0;    // Riemann(alpha0), real and < -1

    complex forward(complex z) const
    {
        if (z == 0.0) {
            return 0.0;
        }
        // mu^n / z^n [Riemann(P(z)) - Riemann(alpha0)] = mu^n alpha / G with G
        // the divided difference of the inverse, free of cancellation near 0.
        const complex w1 = riemann->forward(alpha0 + alpha * detail::ipow(z, n));
        const complex bracket = mun * alpha / riemann->inverse_divided_difference(w1, w0);
        return z * detail::principal_root(bracket, n);
    }

    // Reverses w -> w^n -> w^n/mu^n + w0 -> inverse -> ((. - alpha0)/alpha)^{1/n},
    // taking the root in the closed sector of w.
    complex inverse(complex w) const
    {
        if (w == 0.0) {
            return 0.0;
        }
        const complex scaled = detail::ipow(w, n) / mun;
        const complex zeta = scaled + w0;
        // (inverse(zeta) - alpha0) / alpha
        const complex t = scaled * riemann->inverse_divided_difference(zeta, w0) / alpha;
        const complex root = detail::principal_root(t, n, -1.0);
        const double step = 2.0 * std::numbers::pi / n;
        const double sector = std::round(std::arg(w) / step);
        return root * std::polar(1.0, sector * step);
    }

    bool in_set(complex z) const
    {
        return riemann->contains(alpha0 + alpha * detail::ipow(z, n));
    }
};

} // namespace

lemniscatic_map from_polynomial_preimage(const preimage_config &cfg)
{
    if (!cfg.riemann) {
        throw construction_error("from_polynomial_preimage: Riemann map required");
    }
    if (cfg.n < 2) {
        throw construction_error("from_polynomial_preimage: n must be at least 2");
    }
    if (!(cfg.alpha > 0.0)) {
        throw construction_error("from_polynomial_preimage: alpha must be positive");
    }
    if (!cfg.riemann->omega_is_real_symmetric()) {
        throw construction_error("from_polynomial_preimage: Omega must be symmetric about the real axis");
    }
    check_ray_disjoint(*cfg.riemann, cfg.alpha0);

    const complex w0 = cfg.riemann->forward(cfg.alpha0);
    if (!(w0.real() < -1.0) || std::abs(w0.imag()) > 1e-12 * std::abs(w0)) {
        throw construction_error("from_polynomial_preimage: Riemann(alpha0) must be real and < -1");
    }
    const double mu = std::pow(1.0 / (cfg.alpha * cfg.riemann->derivative_at_infinity()), 1.0 / cfg.n);
    const preimage_state st{cfg.riemann, cfg.alpha, cfg.alpha0, cfg.n, std::pow(mu, cfg.n), complex{w0.real(), 0.0}};

    // U(w) = (w^n + mu^n Riemann(alpha0))^{1/n}
    auto domain = lemniscatic_domain::symmetric(cfg.n, -st.mun * st.w0, mu);
    const double scale = std::pow((cfg.riemann->scale() + std::abs(cfg.alpha0)) / cfg.alpha, 1.0 / cfg.n);
    return lemniscatic_map(
        std::move(domain), [st](complex z) { return st.forward(z); }, [st](complex w) { return st.inverse(w); },
        [st](complex z) { return st.in_set(z); }, scale,
        source_description{"polynomial-preimage", {{"n", cfg.n}, {"alpha", cfg.alpha}, {"alpha0", cfg.alpha0}}});
}

} // namespace lemnmap
