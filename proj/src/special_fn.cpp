#include <lemnmap/special_fn.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <lemnmap/error.hpp>

#include "complex_util.hpp"

namespace lemnmap
{

namespace
{

using detail::I;

constexpr double pi = std::numbers::pi;

// Landen depth is bounded: the modulus sequence converges quadratically.
constexpr int max_landen_depth = 32;

void check_modulus(double k, const char *who)
{
    if (!(k >= 0.0 && k < 1.0)) {
        throw domain_error(std::string(who) + ": modulus must satisfy 0 <= k < 1");
    }
}

// Pole distance for sn/cn/dn: poles at 2mK + (2n+1) iK'.
double pole_distance(double x, double y, double K, double Kp)
{
    const double dx = x - 2.0 * K * std::round(x / (2.0 * K));
    const double m = std::round((y / Kp - 1.0) / 2.0);
    const double dy = y - (2.0 * m + 1.0) * Kp;
    return std::hypot(dx, dy);
}

} // namespace

double agm(double a, double b)
{
    if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw domain_error("agm: arguments must be positive and finite");
    }
    for (int i = 0; i < 64; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 1e-15 * a) {
            break;
        }
    }
    return 0.5 * (a + b);
}

double complete_elliptic_k(double k)
{
    check_modulus(k, "complete_elliptic_k");
    // sqrt((1-k)(1+k)) keeps full relative accuracy of k' near k = 1.
    return pi / (2.0 * agm(1.0, std::sqrt((1.0 - k) * (1.0 + k))));
}

jacobi_values jacobi_sn_cn_dn(double u, double k)
{
    check_modulus(k, "jacobi_sn_cn_dn");
    if (!std::isfinite(u)) {
        throw domain_error("jacobi_sn_cn_dn: argument must be finite");
    }
    if (k == 0.0) {
        return {std::sin(u), std::cos(u), 1.0};
    }
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));

    std::array<double, max_landen_depth + 1> a{};
    std::array<double, max_landen_depth + 1> c{};
    a[0] = 1.0;
    c[0] = k;
    double b = kp;
    int depth = 0;
    while (depth < max_landen_depth && c[depth] > 1e-16 * a[depth]) {
        const double an = a[depth];
        a[depth + 1] = 0.5 * (an + b);
        c[depth + 1] = 0.5 * (an - b);
        b = std::sqrt(an * b);
        ++depth;
    }

    // Reduce modulo the real period 4K; K = pi / (2 a_N).
    const double K = pi / (2.0 * a[depth]);
    const double ur = u - 4.0 * K * std::round(u / (4.0 * K));

    double phi = std::ldexp(a[depth] * ur, depth);
    for (int n = depth; n >= 1; --n) {
        phi = 0.5 * (phi + std::asin(c[n] * std::sin(phi) / a[n]));
    }
    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    // dn^2 = k'^2 + k^2 cn^2 has no cancellation.
    const double dn = std::sqrt(kp * kp + k * k * cn * cn);
    return {sn, cn, dn};
}

complex_jacobi_values jacobi_sn_cn_dn(complex z, double k)
{
    if (!(k > 0.0 && k < 1.0)) {
        throw domain_error("jacobi_sn_cn_dn: complex argument requires 0 < k < 1");
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw domain_error("jacobi_sn_cn_dn: argument must be finite");
    }
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    const double K = complete_elliptic_k(k);
    const double Kp = complete_elliptic_k(kp);
    if (pole_distance(z.real(), z.imag(), K, Kp) < 1e-12) {
        throw pole_error("jacobi_sn_cn_dn: argument within 1e-12 of a pole");
    }

    const auto [s, c, d] = jacobi_sn_cn_dn(z.real(), k);
    const auto [s1, c1, d1] = jacobi_sn_cn_dn(z.imag(), kp);

    const double k2 = k * k;
    const double den = c1 * c1 + k2 * s * s * s1 * s1;
    return {complex{s * d1, c * d * s1 * c1} / den, complex{c * c1, -s * d * s1 * d1} / den,
            complex{d * c1 * d1, -k2 * s * c * s1} / den};
}

complex jacobi_sn(complex z, double k)
{
    return jacobi_sn_cn_dn(z, k).sn;
}

double lemniscate_modulus(double rho)
{
    if (!(rho > 0.0 && rho < 1.0)) {
        throw domain_error("lemniscate_modulus: rho must lie in (0, 1)");
    }
    const double q = std::pow(rho, 4);
    double prod = 1.0;
    double q_odd = q;      // q^{2n-1}
    double q_even = q * q; // q^{2n}
    for (int n = 1; n < 1000; ++n) {
        const double factor = (1.0 + q_even) / (1.0 + q_odd);
        if (std::abs(factor - 1.0) < 1e-17) {
            break;
        }
        prod *= factor * factor;
        q_odd *= q * q;
        q_even *= q * q;
    }
    return 2.0 * rho * prod;
}

elliptic_parameters elliptic_parameters::from_rho(double rho)
{
    const double L = lemniscate_modulus(rho);
    const double k = L * L;
    const double K = complete_elliptic_k(k);
    return {rho, L, k, K, -(4.0 * K / pi) * std::log(rho)};
}

namespace
{

void check_annulus(complex z, const elliptic_parameters &p, const char *who)
{
    const double r = std::abs(z);
    if (!(r > p.rho && r < 1.0 / p.rho)) {
        throw domain_error(std::string(who) + ": point outside the open annulus rho < |z| < 1/rho");
    }
}

complex sn_argument(complex z, const elliptic_parameters &p)
{
    return (2.0 * p.K / pi) * I * std::log(z / p.rho) + p.K;
}

} // namespace

complex annulus_to_slit(complex z, const elliptic_parameters &p)
{
    check_annulus(z, p, "annulus_to_slit");
    return p.L * jacobi_sn(sn_argument(z, p), p.k);
}

complex annulus_to_slit_derivative(complex z, const elliptic_parameters &p)
{
    check_annulus(z, p, "annulus_to_slit_derivative");
    const auto v = jacobi_sn_cn_dn(sn_argument(z, p), p.k);
    return p.L * v.cn * v.dn * (2.0 * p.K / pi) * I / z;
}

double annulus_to_slit_derivative_at_minus_one(const elliptic_parameters &p)
{
    return (1.0 - p.L * p.L) * 2.0 * p.K / pi;
}

namespace
{

// H(D) = f evaluated at sn argument u0 + D, plus one, with u0 = -K + iK'/2.
// Uses the addition theorem around sn(u0) = -1/L, cn(u0) dn(u0) = i(1-L^2)/L.
complex offset_from_increment(complex D, const elliptic_parameters &p)
{
    const auto [sb, cb, db] = jacobi_sn_cn_dn(D, p.k);
    const double L2 = p.L * p.L;
    const complex sb2 = sb * sb;
    const complex cm1 = -sb2 / (1.0 + cb);
    const complex dm1 = -p.k * p.k * sb2 / (1.0 + db);
    const complex cdm1 = cm1 * dm1 + cm1 + dm1;
    return (-cdm1 + I * (1.0 - L2) * sb - L2 * sb2) / (1.0 - L2 * sb2);
}

} // namespace

complex annulus_to_slit_offset(complex delta, const elliptic_parameters &p)
{
    const complex z = -1.0 + delta;
    check_annulus(z, p, "annulus_to_slit_offset");
    if (std::abs(delta) >= 0.5) {
        return annulus_to_slit(z, p) + 1.0;
    }
    const complex D = (2.0 * p.K / pi) * I * detail::log1p(-delta);
    return offset_from_increment(D, p);
}

complex annulus_to_slit_offset_inverse(complex eps, const elliptic_parameters &p)
{
    if (eps == 0.0) {
        return 0.0;
    }
    const complex u0{-p.K, 0.5 * p.Kprime};
    // Steps stay well inside the pole-free disk of radius K'/2 around u0.
    const double max_step = 0.125 * p.Kprime;
    complex D = eps / (I * (1.0 - p.L * p.L));
    if (std::abs(D) > max_step) {
        D *= max_step / std::abs(D);
    }
    for (int it = 0; it < 60; ++it) {
        const complex h = offset_from_increment(D, p);
        const auto v = jacobi_sn_cn_dn(u0 + D, p.k);
        complex step = (h - eps) / (p.L * v.cn * v.dn);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
            break;
        }
        if (std::abs(step) > max_step) {
            step *= max_step / std::abs(step);
        }
        D -= step;
        if (std::abs(step) <= 4e-16 * std::abs(D)) {
            break;
        }
    }
    if (!(std::abs(offset_from_increment(D, p) - eps) <= 1e-13 * std::abs(eps))) {
        throw numerical_error("annulus_to_slit_offset_inverse: Newton did not converge");
    }
    return -detail::expm1(-I * pi * D / (2.0 * p.K));
}

namespace
{

// Distance on the Riemann sphere; finite-valued for large arguments.
double chordal(complex a, complex b)
{
    return std::abs(a - b) / (std::sqrt(1.0 + std::norm(a)) * std::sqrt(1.0 + std::norm(b)));
}

struct newton_result
{
    complex u;
    bool ok;
};

newton_result sn_newton(complex u, complex t, const elliptic_parameters &p)
{
    const bool reciprocal = std::abs(t) > 1.0;
    const complex t_inv = reciprocal ? 1.0 / t : complex{};
    const double max_step = 0.5 * p.K;
    for (int it = 0; it < 50; ++it) {
        complex_jacobi_values v;
        try {
            v = jacobi_sn_cn_dn(u, p.k);
        } catch (const pole_error &) {
            return {u, false};
        }
        complex step;
        if (reciprocal) {
            // F = 1/sn - 1/t, F' = -cn dn / sn^2
            step = (1.0 / v.sn - t_inv) / (-v.cn * v.dn / (v.sn * v.sn));
        } else {
            step = (v.sn - t) / (v.cn * v.dn);
        }
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
            return {u, false};
        }
        if (std::abs(step) > max_step) {
            step *= max_step / std::abs(step);
        }
        u -= step;
        if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(u))) {
            return {u, true};
        }
    }
    return {u, false};
}

double floor_mod(double x, double period, double lo)
{
    return x - period * std::floor((x - lo) / period);
}

} // namespace

complex annulus_to_slit_inverse(complex w, const elliptic_parameters &p)
{
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        throw domain_error("annulus_to_slit_inverse: target must be finite");
    }
    if (w.imag() == 0.0 && (std::abs(w.real()) <= p.L || std::abs(w.real()) >= 1.0 / p.L)) {
        throw boundary_error("annulus_to_slit_inverse: target lies on a slit");
    }
    const complex t = w / p.L;
    const double K = p.K;
    const double Kp = p.Kprime;

    // Seed scan: 64 points along |z| = 1 (Im u = K'/2) plus a few more radii.
    struct seed
    {
        double dist;
        complex u;
    };
    std::vector<seed> seeds;
    constexpr int n_angles = 64;
    constexpr std::array<double, 5> heights{0.5, 0.25, 0.75, 0.125, 0.875};
    seeds.reserve(n_angles * heights.size());
    for (double h : heights) {
        for (int j = 0; j < n_angles; ++j) {
            const complex u{-K + 4.0 * K * (j + 0.5) / n_angles, h * Kp};
            seeds.push_back({chordal(jacobi_sn(u, p.k), t), u});
        }
    }
    std::sort(seeds.begin(), seeds.end(), [](const seed &a, const seed &b) { return a.dist < b.dist; });

    const double tol = 1e-10 * std::max(1.0, std::abs(w));
    for (std::size_t i = 0; i < std::min<std::size_t>(seeds.size(), 16); ++i) {
        auto [u, ok] = sn_newton(seeds[i].u, t, p);
        if (!ok) {
            continue;
        }
        // Canonical strip 0 < Im u < K', -K <= Re u < 3K using the periods
        // 4K, 2iK' and the reflection sn(2K - u) = sn(u).
        double x = u.real();
        double y = floor_mod(u.imag(), 2.0 * Kp, 0.0);
        if (y > Kp) {
            x = 2.0 * K - x;
            y = 2.0 * Kp - y;
        }
        x = floor_mod(x, 4.0 * K, -K);
        if (!(y > 0.0 && y < Kp)) {
            continue;
        }
        const complex z = p.rho * std::exp(pi * y / (2.0 * K)) * std::polar(1.0, -pi * (x - K) / (2.0 * K));
        const double r = std::abs(z);
        if (!(r > p.rho && r < 1.0 / p.rho)) {
            continue;
        }
        if (std::abs(annulus_to_slit(z, p) - w) <= tol) {
            return z;
        }
    }
    throw numerical_error("annulus_to_slit_inverse: Newton failed from all seeds");
}

} // namespace lemnmap
