#ifndef LEMNMAP_RIEMANN_HPP
#define LEMNMAP_RIEMANN_HPP

#include <complex>
#include <memory>

namespace lemnmap
{

using complex = std::complex<double>;

// Exterior Riemann map of a simply connected compact set Omega onto |w| > 1,
// normalized by forward(inf) = inf and forward'(inf) > 0.
class riemann_map
{
public:
    virtual ~riemann_map() = default;

    // z outside Omega -> |w| > 1. Throws boundary_error for z in Omega.
    virtual complex forward(complex z) const = 0;

    // |w| > 1 -> z outside Omega.
    virtual complex inverse(complex w) const = 0;

    // (inverse(w1) - inverse(w0)) / (w1 - w0), the derivative when w1 == w0.
    // Lets callers form differences of forward values without cancellation.
    virtual complex inverse_divided_difference(complex w1, complex w0) const = 0;

    virtual double derivative_at_infinity() const = 0;

    // Omega == conj(Omega).
    virtual bool omega_is_real_symmetric() const = 0;

    // z in Omega (closed set), up to rounding.
    virtual bool contains(complex z) const = 0;

    // Rough diameter of Omega, used for sampling windows and scale guards.
    virtual double scale() const = 0;
};

// Omega = [lo, hi] on the real axis, 0 < lo < hi.
struct interval_config
{
    double lo;
    double hi;
};

// Rational-inverse family
//   inverse(w) = (w - lambda N)(w - lambda M) / ((N - M) w + lambda (MN - 1))
// with Q = tan(phi/4) + 1/cos(phi/4), N = (Q/R + R/Q)/2,
// M = (R^2 - 1) / (2 R tan(phi/4)).
struct rational_map_config
{
    complex lambda{-1.0, 0.0};
    double phi = 1.5707963267948966;
    double R = 1.1;

    double Q() const;
    double N() const;
    double M() const;
};

class interval_map final : public riemann_map
{
public:
    explicit interval_map(interval_config cfg);

    complex forward(complex z) const override;
    complex inverse(complex w) const override;
    complex inverse_divided_difference(complex w1, complex w0) const override;
    double derivative_at_infinity() const override;
    bool omega_is_real_symmetric() const override { return true; }
    bool contains(complex z) const override;
    double scale() const override { return hi_; }

    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_;
    double hi_;
    double half_width_; // (hi - lo) / 4
    double mid_;        // (hi + lo) / 2
};

class rational_map final : public riemann_map
{
public:
    explicit rational_map(rational_map_config cfg);

    // Root of the quadratic inverse(w) = z with |w| > 1.
    complex forward(complex z) const override;
    // Same root by Newton from w0 = (N - M) z; cross-check only.
    complex forward_newton(complex z) const;
    complex inverse(complex w) const override;
    complex inverse_divided_difference(complex w1, complex w0) const override;
    double derivative_at_infinity() const override;
    bool omega_is_real_symmetric() const override;
    bool contains(complex z) const override;
    double scale() const override { return scale_; }

    const rational_map_config &config() const { return cfg_; }

private:
    // inverse(w) = (w^2 + p1 w + p0) / (q1 w + q0)
    rational_map_config cfg_;
    complex p1_;
    complex p0_;
    double q1_;
    complex q0_;
    double scale_;

    struct roots
    {
        complex outer;
        complex inner;
    };
    roots solve(complex z) const;
};

std::shared_ptr<const riemann_map> interval_exterior_map(interval_config cfg);
std::shared_ptr<const rational_map> make_rational_map(rational_map_config cfg);

} // namespace lemnmap

#endif
