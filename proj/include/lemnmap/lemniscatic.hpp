#ifndef LEMNMAP_LEMNISCATIC_HPP
#define LEMNMAP_LEMNISCATIC_HPP

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <lemnmap/riemann.hpp>
#include <lemnmap/special_fn.hpp>

namespace lemnmap
{

using complex = std::complex<double>;

// |U(w)| = |w^n - c|^{1/n}: centers are the n-th roots of c, exponents 1/n.
struct symmetric_form
{
    int n;
    complex c;
};

// L = { w : |U(w)| > mu }, |U(w)| = prod |w - a_j|^{m_j}, sum m_j = 1.
class lemniscatic_domain
{
public:
    lemniscatic_domain(std::vector<complex> centers, std::vector<double> exponents, double mu,
                       std::optional<symmetric_form> form = std::nullopt);

    static lemniscatic_domain symmetric(int n, complex c, double mu);

    const std::vector<complex> &centers() const { return centers_; }
    const std::vector<double> &exponents() const { return exponents_; }
    double mu() const { return mu_; }
    const std::optional<symmetric_form> &form() const { return form_; }

    double abs_U(complex w) const;
    bool contains(complex w) const { return abs_U(w) > mu_; }

    // Image under w -> a w + b: centers a a_j + b, capacity |a| mu.
    lemniscatic_domain transformed(complex a, complex b) const;
    lemniscatic_domain conjugated() const;

private:
    std::vector<complex> centers_;
    std::vector<double> exponents_;
    double mu_;
    std::optional<symmetric_form> form_;
};

struct source_description
{
    std::string family;
    std::vector<std::pair<std::string, double>> parameters;
};

// Conformal map Phi from the exterior of a compact set E onto a lemniscatic
// domain, normalized by Phi(z) = z + O(1/z) at infinity. Immutable; copies
// share state.
class lemniscatic_map
{
public:
    using function = std::function<complex(complex)>;
    using predicate = std::function<bool(complex)>;

    lemniscatic_map(lemniscatic_domain domain, function forward, function inverse, predicate in_set,
                    double scale, source_description source);

    // Throws boundary_error when z lies in E.
    complex forward(complex z) const;
    // Throws domain_error unless |U(w)| > mu.
    complex inverse(complex w) const;

    // Same maps without the membership guards, for composing maps whose
    // intermediate values may sit within rounding of a boundary.
    complex forward_unchecked(complex z) const { return state_->forward(z); }
    complex inverse_unchecked(complex w) const { return state_->inverse(w); }

    bool in_set(complex z) const { return state_->in_set(z); }
    const lemniscatic_domain &domain() const { return state_->domain; }
    const source_description &source() const { return state_->source; }
    // Radius of a disk around the origin containing E.
    double scale() const { return state_->scale; }

private:
    struct state
    {
        lemniscatic_domain domain;
        function forward;
        function inverse;
        predicate in_set;
        double scale;
        source_description source;
    };
    std::shared_ptr<const state> state_;
};

// E = union_j e^{2 pi i j/n} [C, D], 0 < C < D, n >= 2.
struct radial_slit_config
{
    int n;
    double C;
    double D;
};

// E = P^{-1}(Omega) with P(z) = alpha z^n + alpha0, Omega = conj(Omega) and
// the ray (-inf, alpha0] disjoint from Omega.
struct preimage_config
{
    std::shared_ptr<const riemann_map> riemann;
    double alpha = 1.0;
    double alpha0 = 0.0;
    int n = 2;
};

// E = closed disks of radius r around z0 and -z0, 0 < r < z0.
struct two_disk_config
{
    double z0;
    double r;
};

// Quantities derived from a two_disk_config.
struct two_disk_geometry
{
    double z0;
    double r;
    double alpha; // sqrt(z0^2 - r^2)
    double rho;
    elliptic_parameters elliptic;
    double f_prime; // f'(-1)
    double C;
    double D;

    static two_disk_geometry from(const two_disk_config &cfg);

    // T(z) = (alpha + z) / (alpha - z)
    complex moebius(complex z) const;
    complex moebius_inverse(complex z) const;
};

// Conformal map h of the exterior of E onto rho < |z| < 1/rho with
// h(z) = -1 + a1/z + O(1/z^2) at infinity.
struct annulus_map_input
{
    std::function<complex(complex)> h;
    complex a1;
    double rho;
    // Optional: enables the inverse map.
    std::function<complex(complex)> h_inverse;
    // Optional membership test for E; without it forward never rejects.
    std::function<bool(complex)> in_set;
    // Radius of a circle outside E on which the constant Laurent term is
    // averaged. Zero selects 16 |a1|.
    double beta_radius = 0.0;
    // Radius of a disk containing E, reported by scale(). Zero selects
    // beta_radius / 2.
    double scale = 0.0;
};

lemniscatic_map radial_slit_map(const radial_slit_config &cfg);
lemniscatic_map from_polynomial_preimage(const preimage_config &cfg);
lemniscatic_map two_disk_map(const two_disk_config &cfg);
lemniscatic_map doubly_connected_from_annulus(const annulus_map_input &input);

// tau o Phi o tau^{-1} with tau(w) = a w + b.
lemniscatic_map apply_linear_transform(const lemniscatic_map &map, complex a, complex b);
// z -> conj(Phi(conj z)), the map of conj(E).
lemniscatic_map conjugate_map(const lemniscatic_map &map);
// z -> e^{-i theta} Phi(e^{i theta} z), the map of e^{-i theta} E.
lemniscatic_map rotate_map(const lemniscatic_map &map, double theta);

// g(z) = log |U(Phi(z))| - log mu for z outside E.
double green_value(const lemniscatic_map &map, complex z);

// | |U(Phi(z))| - mu |Riemann(P(z))|^{1/n} | / (mu |Riemann(P(z))|^{1/n})
double green_identity_residual(const lemniscatic_map &map, const preimage_config &cfg, complex z);

} // namespace lemnmap

#endif
