#include <lemnmap/analysis.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <lemnmap/error.hpp>

#include "complex_util.hpp"

namespace lemnmap
{

namespace
{

constexpr double pi = std::numbers::pi;

std::vector<boundary_sample> slit_boundary(int n, double C, double D, int per_component)
{
    std::vector<boundary_sample> out;
    out.reserve(static_cast<std::size_t>(2 * n * per_component));
    for (int j = 0; j < n; ++j) {
        const complex dir = std::polar(1.0, 2.0 * pi * j / n);
        for (int k = 0; k < per_component; ++k) {
            const double t = C + (D - C) * (k + 0.5) / per_component;
            out.push_back({dir * t, dir * detail::I});
            out.push_back({dir * t, -dir * detail::I});
        }
    }
    return out;
}

std::vector<boundary_sample> disk_boundary(double z0, double r, int per_component)
{
    std::vector<boundary_sample> out;
    out.reserve(static_cast<std::size_t>(2 * per_component));
    for (double c : {z0, -z0}) {
        for (int k = 0; k < per_component; ++k) {
            const complex e = std::polar(1.0, 2.0 * pi * (k + 0.5) / per_component);
            out.push_back({c + r * e, e});
        }
    }
    return out;
}

std::vector<boundary_sample> preimage_boundary(const preimage_config &cfg, int per_component)
{
    std::vector<boundary_sample> out;
    out.reserve(static_cast<std::size_t>(cfg.n * per_component));
    for (int k = 0; k < per_component; ++k) {
        const complex w = std::polar(1.0, 2.0 * pi * (k + 0.5) / per_component);
        const complex zeta = cfg.riemann->inverse(w);
        // Outward in the w-plane is w; carried to Omega by inverse'(w).
        const complex normal_zeta = w * cfg.riemann->inverse_divided_difference(w, w);
        const complex base = detail::principal_root((zeta - cfg.alpha0) / cfg.alpha, cfg.n, -1.0);
        for (int j = 0; j < cfg.n; ++j) {
            const complex z = base * std::polar(1.0, 2.0 * pi * j / cfg.n);
            const complex dz = normal_zeta / (cfg.n * cfg.alpha * detail::ipow(z, cfg.n - 1));
            out.push_back({z, dz / std::abs(dz)});
        }
    }
    return out;
}

rectangle square(double half)
{
    return {-half, half, -half, half};
}

int integer_parameter(double v, const char *what)
{
    if (!(v == std::floor(v)) || v < 2.0 || v > 64.0) {
        throw construction_error(std::string(what) + " must be an integer in [2, 64]");
    }
    return static_cast<int>(v);
}

// Least-squares fit e_k = a + b log(k)/k + c/k; returns a.
double extrapolate(const std::vector<double> &e, int first)
{
    std::array<std::array<double, 4>, 3> m{}; // normal equations, augmented
    for (std::size_t k = static_cast<std::size_t>(first); k < e.size(); ++k) {
        const double kd = static_cast<double>(k);
        const std::array<double, 3> row{1.0, std::log(kd) / kd, 1.0 / kd};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                m[i][j] += row[i] * row[j];
            }
            m[i][3] += row[i] * e[k];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) {
                pivot = r;
            }
        }
        std::swap(m[col], m[pivot]);
        for (int r = 0; r < 3; ++r) {
            if (r != col) {
                const double f = m[r][col] / m[col][col];
                for (int j = col; j < 4; ++j) {
                    m[r][j] -= f * m[col][j];
                }
            }
        }
    }
    return m[0][3] / m[0][0];
}

} // namespace

double leja_capacity(const std::vector<complex> &candidates, int count)
{
    if (count < 64 || candidates.size() < static_cast<std::size_t>(count)) {
        throw domain_error("leja_capacity: need at least 64 points and enough candidates");
    }
    std::vector<double> log_sum(candidates.size(), 0.0);
    std::size_t current = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (std::abs(candidates[i]) > std::abs(candidates[current])) {
            current = i;
        }
    }
    // e[k] = log(prod_{j<k} |z_k - z_j|) / k
    std::vector<double> e(static_cast<std::size_t>(count), 0.0);
    for (int k = 1; k < count; ++k) {
        const complex chosen = candidates[current];
        std::size_t best = 0;
        double best_value = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            log_sum[i] += std::log(std::abs(candidates[i] - chosen));
            if (log_sum[i] > best_value) {
                best_value = log_sum[i];
                best = i;
            }
        }
        e[static_cast<std::size_t>(k)] = best_value / k;
        current = best;
    }
    return std::exp(extrapolate(e, 32));
}

std::vector<complex> sample_exterior(const lemniscatic_map &map, int count, std::uint64_t seed, double box)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-box, box);
    std::vector<complex> out;
    out.reserve(static_cast<std::size_t>(count));
    while (out.size() < static_cast<std::size_t>(count)) {
        const complex z{u(rng), u(rng)};
        if (!map.in_set(z)) {
            out.push_back(z);
        }
    }
    return out;
}

std::vector<complex> sample_domain(const lemniscatic_map &map, int count, std::uint64_t seed, double box)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-box, box);
    std::vector<complex> out;
    out.reserve(static_cast<std::size_t>(count));
    while (out.size() < static_cast<std::size_t>(count)) {
        const complex w{u(rng), u(rng)};
        if (map.domain().contains(w)) {
            out.push_back(w);
        }
    }
    return out;
}

family_instance make_family(const std::string &family, const std::vector<double> &p)
{
    if (family == "radial-slits") {
        if (p.size() != 3) {
            throw construction_error("radial-slits expects n C D");
        }
        const int n = integer_parameter(p[0], "n");
        const double C = p[1];
        const double D = p[2];
        auto map = radial_slit_map({n, C, D});
        preimage_config pre{interval_exterior_map({std::pow(C, n), std::pow(D, n)}), 1.0, 0.0, n};
        component_check comps{0.0, {}};
        for (int j = 0; j < n; ++j) {
            comps.anchors.push_back(std::polar(0.5 * (C + D), 2.0 * pi * j / n));
        }
        return {family,
                {{"n", n}, {"C", C}, {"D", D}},
                map,
                pre,
                [n, C, D](int m) { return slit_boundary(n, C, D, m); },
                comps,
                square(1.25 * D)};
    }
    if (family == "two-disks") {
        if (p.size() != 2) {
            throw construction_error("two-disks expects z0 r");
        }
        const double z0 = p[0];
        const double r = p[1];
        auto map = two_disk_map({z0, r});
        return {family,
                {{"z0", z0}, {"r", r}},
                map,
                std::nullopt,
                [z0, r](int m) { return disk_boundary(z0, r, m); },
                component_check{0.0, {z0, -z0}},
                square(1.25 * (z0 + r))};
    }
    if (family == "rational") {
        if (p.size() > 3) {
            throw construction_error("rational expects [n [alpha [alpha0]]]");
        }
        const int n = p.size() > 0 ? integer_parameter(p[0], "n") : 3;
        const double alpha = p.size() > 1 ? p[1] : 1.0;
        const double alpha0 = p.size() > 2 ? p[2] : 0.0;
        const auto riemann = make_rational_map({});
        preimage_config pre{riemann, alpha, alpha0, n};
        auto map = from_polynomial_preimage(pre);
        const double mid = 0.5 * (riemann->inverse(1.0).real() + riemann->inverse(-1.0).real());
        const complex base = detail::principal_root((mid - alpha0) / alpha, n, -1.0);
        component_check comps{0.0, {}};
        for (int j = 0; j < n; ++j) {
            comps.anchors.push_back(base * std::polar(1.0, 2.0 * pi * j / n));
        }
        return {family,
                {{"n", n}, {"alpha", alpha}, {"alpha0", alpha0}},
                map,
                pre,
                [pre](int m) { return preimage_boundary(pre, m); },
                comps,
                square(1.25 * map.scale())};
    }
    throw construction_error("unknown family '" + family + "'");
}

bool verification_report::passed() const
{
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const check_result &c) { return c.pass; });
}

namespace
{

constexpr int sample_count = 1000;
constexpr std::uint64_t sample_seed = 20150101;

class suite
{
public:
    explicit suite(verification_report &report) : report_(report) {}

    // Runs body and records its residual; exceptions become failed checks.
    template <class Body>
    void check(const std::string &name, double tolerance, Body body)
    {
        try {
            const double residual = body();
            report_.checks.push_back({name, residual, tolerance, std::isfinite(residual) && residual <= tolerance, ""});
        } catch (const std::exception &ex) {
            report_.checks.push_back({name, std::numeric_limits<double>::infinity(), tolerance, false, ex.what()});
        }
    }

private:
    verification_report &report_;
};

double max_distance(const lemniscatic_map &a, const lemniscatic_map &b, const std::vector<complex> &zs)
{
    double worst = 0.0;
    for (complex z : zs) {
        worst = std::max(worst, std::abs(a.forward(z) - b.forward(z)));
    }
    return worst;
}

} // namespace

verification_report run_verification(const std::string &family, const std::vector<double> &parameters)
{
    verification_report report;
    report.family = family;
    for (std::size_t i = 0; i < parameters.size(); ++i) {
        report.parameters.emplace_back("p" + std::to_string(i), parameters[i]);
    }
    std::optional<family_instance> inst;
    try {
        inst.emplace(make_family(family, parameters));
        report.parameters = inst->parameters;
        report.checks.push_back({"construction", 0.0, 0.0, true, ""});
    } catch (const std::exception &ex) {
        report.checks.push_back({"construction", std::numeric_limits<double>::infinity(), 0.0, false, ex.what()});
        return report;
    }
    const lemniscatic_map &map = inst->map;
    const double box = 2.0 * map.scale();
    const double mu = map.domain().mu();
    suite s(report);
    const auto zs = sample_exterior(map, sample_count, sample_seed, box);

    s.check("round_trip_forward", 1e-10, [&] {
        double worst = 0.0;
        for (complex z : zs) {
            worst = std::max(worst, std::abs(map.inverse(map.forward(z)) - z));
        }
        return worst;
    });
    s.check("round_trip_inverse", 1e-9, [&] {
        double worst = 0.0;
        for (complex w : sample_domain(map, sample_count, sample_seed + 1, box)) {
            worst = std::max(worst, std::abs(map.forward(map.inverse(w)) - w));
        }
        return worst;
    });
    s.check("normalization", 1e-4, [&] { return normalization_probe(map, 1e6); });
    s.check("green_asymptote", 1e-6, [&] {
        double worst = 0.0;
        for (int j = 0; j < 16; ++j) {
            const complex z = std::polar(1e6, 2.0 * pi * (j + 0.5) / 16);
            worst = std::max(worst, std::abs(green_value(map, z) - (std::log(std::abs(z)) - std::log(mu))));
        }
        return worst;
    });

    const auto boundary = inst->boundary(512);
    std::vector<double> lifted;
    lifted.reserve(boundary.size());
    s.check("boundary_level", 1e-6, [&] {
        double worst = 0.0;
        for (const auto &b : boundary) {
            const double v = (map.domain().abs_U(map.forward(b.point + 1e-8 * b.normal)) - mu) / mu;
            lifted.push_back(v);
            worst = std::max(worst, std::abs(v));
        }
        return worst;
    });
    s.check("boundary_side", 0.0, [&] {
        if (lifted.size() != boundary.size()) {
            throw numerical_error("boundary samples unavailable");
        }
        return std::max(0.0, -*std::min_element(lifted.begin(), lifted.end()));
    });

    s.check("capacity_oracle", 1e-2, [&] {
        std::vector<complex> candidates;
        for (const auto &b : inst->boundary(8192)) {
            candidates.push_back(b.point);
        }
        return std::abs(leja_capacity(candidates) - mu) / mu;
    });

    if (inst->preimage) {
        s.check("green_identity", 1e-10, [&] {
            double worst = 0.0;
            for (complex z : zs) {
                worst = std::max(worst, green_identity_residual(map, *inst->preimage, z));
            }
            return worst;
        });
    }

    if (family == "radial-slits" || family == "rational") {
        const int n = static_cast<int>(inst->parameters[0].second);
        s.check("rotation_symmetry", 1e-10,
                [&] { return max_distance(rotate_map(map, 2.0 * pi / n), map, zs); });
    }
    if (family == "two-disks" || family == "rational") {
        s.check("conjugation_symmetry", 1e-10, [&] { return max_distance(conjugate_map(map), map, zs); });
    }

    if (family == "radial-slits") {
        const int n = static_cast<int>(inst->parameters[0].second);
        s.check("decay_exponent", 0.2, [&] {
            // Slope of log probe against log radius over three decades.
            std::array<double, 3> x{};
            std::array<double, 3> y{};
            for (int i = 0; i < 3; ++i) {
                const double R = std::pow(10.0, 3 + i);
                x[i] = std::log(R);
                y[i] = std::log(normalization_probe(map, R));
            }
            const double xm = (x[0] + x[1] + x[2]) / 3.0;
            const double ym = (y[0] + y[1] + y[2]) / 3.0;
            double sxy = 0.0;
            double sxx = 0.0;
            for (int i = 0; i < 3; ++i) {
                sxy += (x[i] - xm) * (y[i] - ym);
                sxx += (x[i] - xm) * (x[i] - xm);
            }
            return std::abs(sxy / sxx + (n - 1));
        });
        s.check("cross_construction", 1e-12, [&] {
            const auto pre = from_polynomial_preimage(*inst->preimage);
            double worst = max_distance(pre, map, zs);
            for (complex w : sample_domain(map, sample_count, sample_seed + 2, box)) {
                worst = std::max(worst, std::abs(pre.inverse(w) - map.inverse(w)));
            }
            return worst;
        });
    }

    if (family == "two-disks") {
        const auto g = two_disk_geometry::from({parameters[0], parameters[1]});
        s.check("odd_symmetry", 1e-10, [&] {
            double worst = 0.0;
            for (complex z : zs) {
                worst = std::max(worst, std::abs(map.forward(-z) + map.forward(z)));
            }
            return worst;
        });
        s.check("reflection_symmetry", 1e-10, [&] {
            double worst = 0.0;
            for (complex z : zs) {
                worst = std::max(worst, std::abs(-std::conj(map.forward(-std::conj(z))) - map.forward(z)));
            }
            return worst;
        });
        s.check("f_minus_one", 1e-10, [&] { return std::abs(annulus_to_slit(-1.0, g.elliptic) + 1.0); });
        s.check("f_prime_minus_one", 1e-6, [&] {
            const double h = 1e-5;
            const complex fd =
                (annulus_to_slit(-1.0 + h, g.elliptic) - annulus_to_slit(-1.0 - h, g.elliptic)) / (2.0 * h);
            return std::abs(fd - g.f_prime) / g.f_prime;
        });
    }
    return report;
}

} // namespace lemnmap
