#ifndef LEMNMAP_SRC_COMPLEX_UTIL_HPP
#define LEMNMAP_SRC_COMPLEX_UTIL_HPP

#include <cmath>
#include <complex>
#include <numbers>

#include <lemnmap/error.hpp>

namespace lemnmap::detail
{

using complex = std::complex<double>;

inline constexpr complex I{0.0, 1.0};

// log(1 + x), accurate for small |x|.
inline complex log1p(complex x)
{
    const double a = x.real();
    const double b = x.imag();
    return {0.5 * std::log1p(2.0 * a + a * a + b * b), std::atan2(b, 1.0 + a)};
}

// exp(x) - 1, accurate for small |x|.
inline complex expm1(complex x)
{
    const double a = x.real();
    const double b = x.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// Principal n-th root, argument in (-pi/n, pi/n]. Throws when z sits on the
// negative real axis within the guard, where the principal branch is
// discontinuous.
inline complex principal_root(complex z, int n, double guard = 1e-14)
{
    if (n == 1) {
        return z;
    }
    const double r = std::abs(z);
    if (r == 0.0) {
        return 0.0;
    }
    if (z.real() < 0.0 && std::abs(z.imag()) <= guard * r) {
        throw numerical_error("principal root: argument on the branch cut");
    }
    return std::polar(std::pow(r, 1.0 / n), std::arg(z) / n);
}

// Integer power by repeated multiplication.
inline complex ipow(complex z, int n)
{
    complex r = 1.0;
    complex b = z;
    for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
        if (e & 1u) {
            r *= b;
        }
        b *= b;
    }
    return r;
}

} // namespace lemnmap::detail

#endif
