#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <lemnmap/error.hpp>
#include <lemnmap/special_fn.hpp>

#include "oracles.hpp"

using namespace lemnmap;
using std::numbers::pi;

TEST_CASE("agm")
{
    CHECK(agm(1.0, 1.0) == 1.0);
    // Six steps of the recursion in 50-digit arithmetic.
    using big = boost::multiprecision::cpp_bin_float_50;
    big a = 1, b = 0.5;
    for (int i = 0; i < 6; ++i) {
        const big an = (a + b) / 2;
        b = sqrt(a * b);
        a = an;
    }
    CHECK(std::abs(agm(1.0, 0.5) - static_cast<double>(a)) < 1e-15);
    CHECK(agm(2.0, 1.0) == doctest::Approx(2.0 * agm(1.0, 0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(agm(0.0, 1.0), domain_error);
    CHECK_THROWS_AS(agm(1.0, -2.0), domain_error);
}

TEST_CASE("complete elliptic K against quadrature")
{
    CHECK(std::abs(complete_elliptic_k(0.0) - pi / 2) < 1e-15);
    CHECK(std::abs(complete_elliptic_k(1.0 / std::sqrt(2.0)) - 1.854074677301372) < 1e-12);
    for (int i = 1; i <= 9; ++i) {
        const double k = 0.1 * i;
        CHECK(std::abs(complete_elliptic_k(k) - oracle::elliptic_k_quadrature(k)) < 1e-12);
    }
    CHECK_THROWS_AS(complete_elliptic_k(1.0), domain_error);
    CHECK_THROWS_AS(complete_elliptic_k(-0.1), domain_error);
}

TEST_CASE("real Jacobi functions")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ku(0.0, 0.999), uu(-20.0, 20.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double k = ku(rng);
        const double u = uu(rng);
        const auto v = jacobi_sn_cn_dn(u, k);
        worst = std::max(worst, std::abs(v.sn * v.sn + v.cn * v.cn - 1.0));
        worst = std::max(worst, std::abs(v.dn * v.dn + k * k * v.sn * v.sn - 1.0));
    }
    CHECK(worst < 1e-13);

    const auto zero = jacobi_sn_cn_dn(0.0, 0.6);
    CHECK(zero.sn == 0.0);
    CHECK(zero.cn == 1.0);
    CHECK(zero.dn == 1.0);

    const auto deg = jacobi_sn_cn_dn(1.3, 0.0);
    CHECK(deg.sn == doctest::Approx(std::sin(1.3)).epsilon(1e-15));
    CHECK(deg.cn == doctest::Approx(std::cos(1.3)).epsilon(1e-15));
    CHECK(deg.dn == 1.0);

    for (double k : {0.3, 0.7, 0.95}) {
        const double K = oracle::elliptic_k_quadrature(k);
        const auto at_k = jacobi_sn_cn_dn(K, k);
        CHECK(std::abs(at_k.sn - 1.0) < 1e-12);
        CHECK(std::abs(at_k.cn) < 1e-7); // cn vanishes linearly; quadrature K is exact to ~1e-15
        CHECK(std::abs(at_k.dn - std::sqrt(1.0 - k * k)) < 1e-12);
    }
}

TEST_CASE("real Jacobi functions invert the incomplete integral")
{
    for (double k : {0.2, 0.5, 0.9}) {
        for (double phi : {0.1, 0.7, 1.2, 1.5}) {
            const double u = oracle::incomplete_f_quadrature(phi, k);
            const auto v = jacobi_sn_cn_dn(u, k);
            CHECK(std::abs(v.sn - std::sin(phi)) < 1e-13);
            CHECK(std::abs(v.cn - std::cos(phi)) < 1e-13);
            CHECK(std::abs(v.dn - std::sqrt(1.0 - k * k * std::sin(phi) * std::sin(phi))) < 1e-13);
        }
    }
}

TEST_CASE("complex sn against an extended precision Landen oracle")
{
    const complex z{0.3, 0.2};
    CHECK(std::abs(jacobi_sn(z, 0.25) - oracle::sn_landen(z, 0.25)) < 1e-11);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> x(-4.0, 4.0), y(-0.3, 0.3), kk(0.05, 0.95);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double k = kk(rng);
        const double Kp = complete_elliptic_k(std::sqrt(1.0 - k * k));
        const complex w{x(rng), y(rng) * Kp};
        const complex r = oracle::sn_landen(w, k);
        worst = std::max(worst, std::abs(jacobi_sn(w, k) - r) / std::max(1.0, std::abs(r)));
    }
    CHECK(worst < 1e-11);
}

TEST_CASE("complex Jacobi identities and periods")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> x(-4.0, 4.0), kk(0.1, 0.9);
    double worst_shift = 0.0;
    double worst_period = 0.0;
    double worst_identity = 0.0;
    int used = 0;
    while (used < 500) {
        const double k = kk(rng);
        const double K = complete_elliptic_k(k);
        const complex z{x(rng), x(rng)};
        complex_jacobi_values a, b, c;
        try {
            a = jacobi_sn_cn_dn(z, k);
            b = jacobi_sn_cn_dn(z + 2.0 * K, k);
            c = jacobi_sn_cn_dn(z + 4.0 * K, k);
        } catch (const pole_error &) {
            continue;
        }
        if (std::abs(a.sn) > 1e3) {
            continue; // relative checks near poles are meaningless
        }
        ++used;
        const double scale = std::max(1.0, std::abs(a.sn));
        worst_shift = std::max({worst_shift, std::abs(b.sn + a.sn) / scale, std::abs(b.cn + a.cn) / scale,
                                std::abs(b.dn - a.dn) / scale});
        worst_period = std::max(worst_period, std::abs(c.sn - a.sn) / scale);
        worst_identity = std::max({worst_identity, std::abs(a.sn * a.sn + a.cn * a.cn - 1.0) / (scale * scale),
                                   std::abs(a.dn * a.dn + k * k * a.sn * a.sn - 1.0) / (scale * scale)});
    }
    CHECK(worst_shift < 1e-10);
    CHECK(worst_period < 1e-10);
    CHECK(worst_identity < 1e-12);
}

TEST_CASE("complex sn special value and poles")
{
    for (double rho : {0.1, 0.268, 0.5}) {
        const auto p = elliptic_parameters::from_rho(rho);
        const complex v = jacobi_sn(complex(p.K, 0.5 * p.Kprime), p.k);
        CHECK(std::abs(v - 1.0 / std::sqrt(p.k)) < 1e-10);
    }
    const double k = 0.6;
    const double Kp = complete_elliptic_k(0.8);
    CHECK_THROWS_AS(jacobi_sn(complex(0.0, Kp), k), pole_error);
    CHECK_THROWS_AS(jacobi_sn(complex(2.0 * complete_elliptic_k(k), -Kp + 1e-13), k), pole_error);
    CHECK_NOTHROW(jacobi_sn(complex(0.0, Kp + 1e-6), k));
}

TEST_CASE("lemniscate modulus")
{
    CHECK(lemniscate_modulus(1e-6) / 2e-6 == doctest::Approx(1.0).epsilon(1e-15));
    const double rho = 2.0 - std::sqrt(3.0);
    CHECK(std::abs(lemniscate_modulus(rho) - oracle::lemniscate_modulus_mp(rho)) < 1e-15);
    CHECK(lemniscate_modulus(rho) == doctest::Approx(0.53045).epsilon(1e-4));
    double prev = 0.0;
    for (int i = 1; i < 100; ++i) {
        const double r = i / 100.0 * 0.9;
        const double L = lemniscate_modulus(r);
        CHECK(L < 2.0 * r);
        CHECK(L > prev);
        CHECK(L < 1.0);
        prev = L;
    }
    CHECK_THROWS_AS(lemniscate_modulus(0.0), domain_error);
    CHECK_THROWS_AS(lemniscate_modulus(1.0), domain_error);
}

TEST_CASE("elliptic parameters")
{
    for (double rho : {0.05, 0.1, 2.0 - std::sqrt(3.0), 0.5, 0.8}) {
        const auto p = elliptic_parameters::from_rho(rho);
        CHECK(p.k == p.L * p.L);
        CHECK(p.K > 0.0);
        CHECK(p.Kprime > 0.0);
        // The implicit K' is the standard complementary integral.
        const double kp = std::sqrt((1.0 - p.k) * (1.0 + p.k));
        CHECK(std::abs(p.Kprime - oracle::elliptic_k_quadrature(kp)) < 1e-11 * p.Kprime);
    }
}

TEST_CASE("annulus to slit map")
{
    const auto p = elliptic_parameters::from_rho(2.0 - std::sqrt(3.0));
    CHECK(std::abs(annulus_to_slit(-1.0, p) + 1.0) < 1e-10);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lr(std::log(p.rho) * 0.98, -std::log(p.rho) * 0.98), th(-pi, pi);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const complex z = std::polar(std::exp(lr(rng)), th(rng));
        const complex f = annulus_to_slit(z, p);
        worst = std::max(worst, std::abs(annulus_to_slit(1.0 / z, p) - 1.0 / f) / std::max(1.0, std::abs(1.0 / f)));
        worst = std::max(worst, std::abs(annulus_to_slit(std::conj(z), p) - std::conj(f)) / std::max(1.0, std::abs(f)));
    }
    CHECK(worst < 1e-10);

    // Real points stay real; the unit circle maps to the unit circle.
    for (double x : {0.3, 0.9, 1.0, 1.7, 3.5, -0.5, -2.0}) {
        CHECK(std::abs(annulus_to_slit(x, p).imag()) < 1e-12);
    }
    for (int j = 0; j < 32; ++j) {
        CHECK(std::abs(std::abs(annulus_to_slit(std::polar(1.0, 0.1 + j * 0.19), p)) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(annulus_to_slit(0.2, p), domain_error);
    CHECK_THROWS_AS(annulus_to_slit(complex(0.0, 4.0), p), domain_error);
}

TEST_CASE("f'(-1)")
{
    const auto p0 = elliptic_parameters::from_rho(1e-4);
    CHECK(annulus_to_slit_derivative_at_minus_one(p0) == doctest::Approx(1.0).epsilon(1e-7));

    const double rho = 2.0 - std::sqrt(3.0);
    const auto p = elliptic_parameters::from_rho(rho);
    CHECK(annulus_to_slit_derivative_at_minus_one(p) ==
          doctest::Approx(oracle::f_prime_minus_one_mp(rho)).epsilon(1e-14));

    for (double r : {0.1, 0.268, 0.5, 0.7}) {
        const auto q = elliptic_parameters::from_rho(r);
        const double h = 1e-5;
        const complex fd = (annulus_to_slit(-1.0 + h, q) - annulus_to_slit(-1.0 - h, q)) / (2.0 * h);
        const double fp = annulus_to_slit_derivative_at_minus_one(q);
        CHECK(std::abs(fd - fp) / fp < 1e-6);
        CHECK(std::abs(annulus_to_slit_derivative(-1.0, q) - fp) < 1e-12);
    }
}

TEST_CASE("offset form near -1 and inverses")
{
    for (double rho : {0.1, 2.0 - std::sqrt(3.0), 0.6268}) {
        const auto p = elliptic_parameters::from_rho(rho);
        for (complex d : {complex(1e-3, 2e-3), complex(-0.2, 0.1), complex(0.3, -0.05)}) {
            const complex a = annulus_to_slit_offset(d, p);
            const complex b = annulus_to_slit(-1.0 + d, p) + 1.0;
            CHECK(std::abs(a - b) < 1e-13);
        }
        // Tiny offsets: linear behaviour with slope f'(-1).
        const complex tiny{1e-12, -3e-12};
        const double fp = annulus_to_slit_derivative_at_minus_one(p);
        CHECK(std::abs(annulus_to_slit_offset(tiny, p) / tiny - fp) < 1e-9);
        for (complex eps : {complex(1e-10, 1e-11), complex(1e-3, -1e-3), complex(-0.01, 0.02)}) {
            const complex d = annulus_to_slit_offset_inverse(eps, p);
            CHECK(std::abs(annulus_to_slit_offset(d, p) - eps) <= 1e-13 * std::abs(eps));
        }
    }
}

TEST_CASE("inverse of the annulus to slit map")
{
    for (double rho : {0.1, 2.0 - std::sqrt(3.0), 0.6268}) {
        const auto p = elliptic_parameters::from_rho(rho);
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> lr(std::log(rho) * 0.99, -std::log(rho) * 0.99), th(-pi, pi);
        double worst = 0.0;
        for (int i = 0; i < 300; ++i) {
            const complex z = std::polar(std::exp(lr(rng)), th(rng));
            worst = std::max(worst, std::abs(annulus_to_slit_inverse(annulus_to_slit(z, p), p) - z));
        }
        CHECK(worst < 1e-10);
        CHECK_THROWS_AS(annulus_to_slit_inverse(0.5 * p.L, p), boundary_error);
    }
}
