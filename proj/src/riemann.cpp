#include <lemnmap/riemann.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <lemnmap/error.hpp>

namespace lemnmap
{

namespace
{

constexpr double eps = std::numeric_limits<double>::epsilon();

} // namespace

interval_map::interval_map(interval_config cfg)
    : lo_(cfg.lo), hi_(cfg.hi), half_width_(0.25 * (cfg.hi - cfg.lo)), mid_(0.5 * (cfg.hi + cfg.lo))
{
    if (!(cfg.lo > 0.0 && cfg.lo < cfg.hi) || !std::isfinite(cfg.hi)) {
        throw construction_error("interval_map: requires 0 < lo < hi");
    }
}

bool interval_map::contains(complex z) const
{
    return std::abs(z.imag()) <= 4.0 * eps * hi_ && z.real() >= lo_ && z.real() <= hi_;
}

complex interval_map::forward(complex z) const
{
    if (contains(z)) {
        throw boundary_error("interval_map: point on the interval");
    }
    // The product of principal roots has its cut exactly on [lo, hi] and
    // behaves like z at infinity, which is the |w| > 1 branch.
    const complex s = std::sqrt(z - lo_) * std::sqrt(z - hi_);
    return (z - mid_ + s) / (2.0 * half_width_);
}

complex interval_map::inverse(complex w) const
{
    if (w == 0.0) {
        throw domain_error("interval_map: inverse undefined at w = 0");
    }
    return half_width_ * (w + 1.0 / w) + mid_;
}

complex interval_map::inverse_divided_difference(complex w1, complex w0) const
{
    return half_width_ * (1.0 - 1.0 / (w1 * w0));
}

double interval_map::derivative_at_infinity() const
{
    return 1.0 / half_width_;
}

double rational_map_config::Q() const
{
    return std::tan(phi / 4.0) + 1.0 / std::cos(phi / 4.0);
}

double rational_map_config::N() const
{
    const double q = Q();
    return 0.5 * (q / R + R / q);
}

double rational_map_config::M() const
{
    return (R * R - 1.0) / (2.0 * R * std::tan(phi / 4.0));
}

rational_map::rational_map(rational_map_config cfg) : cfg_(cfg)
{
    if (!(cfg.R > 1.0) || !(cfg.phi > 0.0 && cfg.phi < 2.0 * std::numbers::pi)) {
        throw construction_error("rational_map: requires R > 1 and 0 < phi < 2 pi");
    }
    if (std::abs(cfg.lambda) == 0.0) {
        throw construction_error("rational_map: lambda must be nonzero");
    }
    const double N = cfg.N();
    const double M = cfg.M();
    p1_ = -cfg.lambda * (N + M);
    p0_ = cfg.lambda * cfg.lambda * N * M;
    q1_ = N - M;
    q0_ = cfg.lambda * (M * N - 1.0);
    if (!(q1_ > 0.0)) {
        throw construction_error("rational_map: requires N > M");
    }
    if (std::abs(q0_ / q1_) >= 1.0) {
        throw construction_error("rational_map: pole of the inverse must lie in |w| < 1");
    }
    scale_ = 0.0;
    for (int j = 0; j < 256; ++j) {
        scale_ = std::max(scale_, std::abs(inverse(std::polar(1.0, 2.0 * std::numbers::pi * j / 256))));
    }
}

rational_map::roots rational_map::solve(complex z) const
{
    // w^2 + (p1 - z q1) w + (p0 - z q0) = 0
    const complex b = p1_ - z * q1_;
    const complex c = p0_ - z * q0_;
    const complex disc = std::sqrt(b * b - 4.0 * c);
    const double sign = (std::real(std::conj(b) * disc) >= 0.0) ? 1.0 : -1.0;
    const complex q = -0.5 * (b + sign * disc);
    const complex r1 = q;
    const complex r2 = (q != 0.0) ? c / q : complex{};
    if (std::abs(r1) >= std::abs(r2)) {
        return {r1, r2};
    }
    return {r2, r1};
}

bool rational_map::contains(complex z) const
{
    return std::abs(solve(z).outer) <= 1.0 + 4.0 * eps;
}

complex rational_map::forward(complex z) const
{
    const auto r = solve(z);
    if (std::abs(r.outer) <= 1.0 + 4.0 * eps) {
        throw boundary_error("rational_map: point in Omega");
    }
    return r.outer;
}

complex rational_map::forward_newton(complex z) const
{
    complex w = z * q1_;
    for (int it = 0; it < 100; ++it) {
        const complex step = (inverse(w) - z) / inverse_divided_difference(w, w);
        w -= step;
        if (std::abs(step) <= 1e-15 * std::abs(w)) {
            if (std::abs(w) <= 1.0) {
                throw numerical_error("rational_map: Newton converged to the interior root");
            }
            return w;
        }
    }
    throw numerical_error("rational_map: Newton did not converge");
}

complex rational_map::inverse(complex w) const
{
    const complex den = q1_ * w + q0_;
    if (std::abs(den) <= 4.0 * eps * std::abs(q1_ * w)) {
        throw domain_error("rational_map: inverse evaluated at its pole");
    }
    return (w * w + p1_ * w + p0_) / den;
}

complex rational_map::inverse_divided_difference(complex w1, complex w0) const
{
    const complex num = q1_ * w1 * w0 + q0_ * (w1 + w0) + p1_ * q0_ - p0_ * q1_;
    return num / ((q1_ * w1 + q0_) * (q1_ * w0 + q0_));
}

double rational_map::derivative_at_infinity() const
{
    // inverse(w) = w / (N - M) + O(1)
    return q1_;
}

bool rational_map::omega_is_real_symmetric() const
{
    return cfg_.lambda.imag() == 0.0;
}

std::shared_ptr<const riemann_map> interval_exterior_map(interval_config cfg)
{
    return std::make_shared<interval_map>(cfg);
}

std::shared_ptr<const rational_map> make_rational_map(rational_map_config cfg)
{
    return std::make_shared<rational_map>(cfg);
}

} // namespace lemnmap
