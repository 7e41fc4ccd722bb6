#include <lemnmap/lemniscatic.hpp>

#include <cmath>
#include <numbers>

#include <lemnmap/error.hpp>

#include "complex_util.hpp"

namespace lemnmap
{

lemniscatic_domain::lemniscatic_domain(std::vector<complex> centers, std::vector<double> exponents, double mu,
                                       std::optional<symmetric_form> form)
    : centers_(std::move(centers)), exponents_(std::move(exponents)), mu_(mu), form_(form)
{
    if (centers_.empty() || centers_.size() != exponents_.size()) {
        throw construction_error("lemniscatic_domain: need one exponent per center");
    }
    if (!(mu_ > 0.0) || !std::isfinite(mu_)) {
        throw construction_error("lemniscatic_domain: mu must be positive");
    }
    double sum = 0.0;
    for (double m : exponents_) {
        if (!(m > 0.0)) {
            throw construction_error("lemniscatic_domain: exponents must be positive");
        }
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-14) {
        throw construction_error("lemniscatic_domain: exponents must sum to one");
    }
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        for (std::size_t j = i + 1; j < centers_.size(); ++j) {
            if (centers_[i] == centers_[j]) {
                throw construction_error("lemniscatic_domain: centers must be pairwise distinct");
            }
        }
    }
}

lemniscatic_domain lemniscatic_domain::symmetric(int n, complex c, double mu)
{
    if (n < 1) {
        throw construction_error("lemniscatic_domain: n must be positive");
    }
    if (c == 0.0) {
        return lemniscatic_domain({0.0}, {1.0}, mu, symmetric_form{n, c});
    }
    const complex root = std::polar(std::pow(std::abs(c), 1.0 / n), std::arg(c) / n);
    std::vector<complex> centers;
    std::vector<double> exponents;
    for (int j = 0; j < n; ++j) {
        centers.push_back(root * std::polar(1.0, 2.0 * std::numbers::pi * j / n));
        exponents.push_back(1.0 / n);
    }
    // Exponents 1/n may not sum to one exactly in floating point.
    double rest = 1.0;
    for (int j = 0; j + 1 < n; ++j) {
        rest -= exponents[j];
    }
    exponents.back() = rest;
    return lemniscatic_domain(std::move(centers), std::move(exponents), mu, symmetric_form{n, c});
}

double lemniscatic_domain::abs_U(complex w) const
{
    double log_sum = 0.0;
    for (std::size_t j = 0; j < centers_.size(); ++j) {
        const double d = std::abs(w - centers_[j]);
        if (d == 0.0) {
            return 0.0;
        }
        log_sum += exponents_[j] * std::log(d);
    }
    return std::exp(log_sum);
}

lemniscatic_domain lemniscatic_domain::transformed(complex a, complex b) const
{
    if (a == 0.0) {
        throw domain_error("lemniscatic_domain: transform requires a != 0");
    }
    std::vector<complex> centers;
    centers.reserve(centers_.size());
    for (complex c : centers_) {
        centers.push_back(a * c + b);
    }
    std::optional<symmetric_form> form;
    if (form_ && b == 0.0) {
        form = symmetric_form{form_->n, detail::ipow(a, form_->n) * form_->c};
    }
    return lemniscatic_domain(std::move(centers), exponents_, std::abs(a) * mu_, form);
}

lemniscatic_domain lemniscatic_domain::conjugated() const
{
    std::vector<complex> centers;
    centers.reserve(centers_.size());
    for (complex c : centers_) {
        centers.push_back(std::conj(c));
    }
    std::optional<symmetric_form> form;
    if (form_) {
        form = symmetric_form{form_->n, std::conj(form_->c)};
    }
    return lemniscatic_domain(std::move(centers), exponents_, mu_, form);
}

lemniscatic_map::lemniscatic_map(lemniscatic_domain domain, function forward, function inverse, predicate in_set,
                                 double scale, source_description source)
    : state_(std::make_shared<const state>(state{std::move(domain), std::move(forward), std::move(inverse),
                                                 std::move(in_set), scale, std::move(source)}))
{
    if (!state_->forward || !state_->inverse || !state_->in_set) {
        throw construction_error("lemniscatic_map: forward, inverse and in_set are required");
    }
}

complex lemniscatic_map::forward(complex z) const
{
    if (state_->in_set(z)) {
        throw boundary_error("lemniscatic_map: point lies in E");
    }
    return state_->forward(z);
}

complex lemniscatic_map::inverse(complex w) const
{
    if (!state_->domain.contains(w)) {
        throw domain_error("lemniscatic_map: point outside the lemniscatic domain");
    }
    return state_->inverse(w);
}

lemniscatic_map apply_linear_transform(const lemniscatic_map &map, complex a, complex b)
{
    if (a == 0.0) {
        throw domain_error("apply_linear_transform: requires a != 0");
    }
    auto source = map.source();
    source.parameters.insert(source.parameters.end(),
                             {{"transform_a_re", a.real()},
                              {"transform_a_im", a.imag()},
                              {"transform_b_re", b.real()},
                              {"transform_b_im", b.imag()}});
    return lemniscatic_map(
        map.domain().transformed(a, b), [map, a, b](complex z) { return a * map.forward((z - b) / a) + b; },
        [map, a, b](complex w) { return a * map.inverse((w - b) / a) + b; },
        [map, a, b](complex z) { return map.in_set((z - b) / a); }, std::abs(a) * map.scale() + std::abs(b),
        std::move(source));
}

lemniscatic_map conjugate_map(const lemniscatic_map &map)
{
    auto source = map.source();
    source.parameters.emplace_back("conjugated", 1.0);
    return lemniscatic_map(
        map.domain().conjugated(), [map](complex z) { return std::conj(map.forward(std::conj(z))); },
        [map](complex w) { return std::conj(map.inverse(std::conj(w))); },
        [map](complex z) { return map.in_set(std::conj(z)); }, map.scale(), std::move(source));
}

lemniscatic_map rotate_map(const lemniscatic_map &map, double theta)
{
    const complex e = std::polar(1.0, theta);
    auto source = map.source();
    source.parameters.emplace_back("rotation", theta);
    return lemniscatic_map(
        map.domain().transformed(std::conj(e), 0.0), [map, e](complex z) { return std::conj(e) * map.forward(e * z); },
        [map, e](complex w) { return std::conj(e) * map.inverse(e * w); },
        [map, e](complex z) { return map.in_set(e * z); }, map.scale(), std::move(source));
}

double green_value(const lemniscatic_map &map, complex z)
{
    if (map.in_set(z)) {
        throw domain_error("green_value: point lies in E");
    }
    return std::log(map.domain().abs_U(map.forward(z))) - std::log(map.domain().mu());
}

double green_identity_residual(const lemniscatic_map &map, const preimage_config &cfg, complex z)
{
    if (map.in_set(z)) {
        throw domain_error("green_identity_residual: point lies in E");
    }
    const double lhs = map.domain().abs_U(map.forward(z));
    const complex p = cfg.alpha * detail::ipow(z, cfg.n) + cfg.alpha0;
    const double rhs = map.domain().mu() * std::pow(std::abs(cfg.riemann->forward(p)), 1.0 / cfg.n);
    return std::abs(lhs - rhs) / rhs;
}

} // namespace lemnmap
