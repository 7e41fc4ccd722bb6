#ifndef LEMNMAP_SPECIAL_FN_HPP
#define LEMNMAP_SPECIAL_FN_HPP

#include <complex>

namespace lemnmap
{

using complex = std::complex<double>;

// Arithmetic-geometric mean of two positive reals.
double agm(double a, double b);

// Complete elliptic integral of the first kind, modulus convention:
// K(k) = int_0^1 dt / sqrt((1 - t^2)(1 - k^2 t^2)), 0 <= k < 1.
double complete_elliptic_k(double k);

struct jacobi_values
{
    double sn;
    double cn;
    double dn;
};

struct complex_jacobi_values
{
    complex sn;
    complex cn;
    complex dn;
};

// Jacobi sn, cn, dn for real argument and modulus 0 <= k < 1
// (descending Landen / AGM scheme).
jacobi_values jacobi_sn_cn_dn(double u, double k);

// Complex argument, real modulus 0 < k < 1. Assembled from real-argument
// values at moduli k and k' = sqrt(1 - k^2). Throws pole_error within 1e-12
// of a pole (2mK + (2n+1) iK').
complex_jacobi_values jacobi_sn_cn_dn(complex z, double k);

complex jacobi_sn(complex z, double k);

// L(rho) = 2 rho prod_{n>=1} ((1 + rho^{8n}) / (1 + rho^{8n-4}))^2.
double lemniscate_modulus(double rho);

// Parameters of the annulus-to-slit map f for rho < |z| < 1/rho.
struct elliptic_parameters
{
    double rho;
    double L;
    double k;      // modulus, k = L^2
    double K;      // K(k)
    double Kprime; // -(4K/pi) log(rho)

    static elliptic_parameters from_rho(double rho);
};

// f(z) = L sn((2K/pi) i log(z/rho) + K; k), mapping the annulus onto the
// plane minus the real slits (-inf, -1/L], [-L, L], [1/L, inf).
complex annulus_to_slit(complex z, const elliptic_parameters &p);

complex annulus_to_slit_derivative(complex z, const elliptic_parameters &p);

// Closed form f'(-1) = (1 - L^2) 2K/pi.
double annulus_to_slit_derivative_at_minus_one(const elliptic_parameters &p);

// f(-1 + delta) + 1 without cancellation for small delta.
complex annulus_to_slit_offset(complex delta, const elliptic_parameters &p);

// Inverse of annulus_to_slit_offset: the delta with f(-1 + delta) + 1 = eps.
// Intended for |eps| small; throws numerical_error on non-convergence.
complex annulus_to_slit_offset_inverse(complex eps, const elliptic_parameters &p);

// Inverse of f on the slit plane, returning the annulus point. Newton on the
// sn argument seeded from a scan of the annulus.
complex annulus_to_slit_inverse(complex w, const elliptic_parameters &p);

} // namespace lemnmap

#endif
