#include <lemnmap/analysis.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <lemnmap/error.hpp>

namespace lemnmap
{

bool rectangle::valid() const
{
    return std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) && std::isfinite(y_max) &&
           x_min < x_max && y_min < y_max;
}

double lemniscatic_green(const lemniscatic_domain &domain, complex w)
{
    return std::log(domain.abs_U(w)) - std::log(domain.mu());
}

double normalization_probe(const lemniscatic_map &map, double radius, int samples)
{
    if (!(radius > 0.0) || samples < 1) {
        throw domain_error("normalization_probe: radius and sample count must be positive");
    }
    if (radius <= map.scale()) {
        throw domain_error("normalization_probe: probe circle must enclose E");
    }
    double worst = 0.0;
    for (int j = 0; j < samples; ++j) {
        const complex z = std::polar(radius, 2.0 * std::numbers::pi * (j + 0.5) / samples);
        if (map.in_set(z)) {
            throw domain_error("normalization_probe: probe circle meets E");
        }
        worst = std::max(worst, std::abs(map.forward(z) - z));
    }
    return worst;
}

namespace
{

// g with points of E (where g throws) mapped to the boundary value 0.
double safe_eval(const std::function<double(complex)> &g, complex z)
{
    try {
        const double v = g(z);
        return std::isnan(v) ? 0.0 : v;
    } catch (const domain_error &) {
        return 0.0;
    }
}

int sign_changes_along_ray(const std::function<double(complex)> &g, double level, complex from, complex through,
                           const rectangle &window, int samples)
{
    const complex dir = (through - from) / std::abs(through - from);
    // Parameter where the ray leaves the window.
    double t_max = std::numeric_limits<double>::infinity();
    if (dir.real() > 0.0) {
        t_max = std::min(t_max, (window.x_max - from.real()) / dir.real());
    } else if (dir.real() < 0.0) {
        t_max = std::min(t_max, (window.x_min - from.real()) / dir.real());
    }
    if (dir.imag() > 0.0) {
        t_max = std::min(t_max, (window.y_max - from.imag()) / dir.imag());
    } else if (dir.imag() < 0.0) {
        t_max = std::min(t_max, (window.y_min - from.imag()) / dir.imag());
    }
    int changes = 0;
    bool prev = safe_eval(g, from) < level;
    for (int j = 1; j <= samples; ++j) {
        const bool cur = safe_eval(g, from + dir * (t_max * j / samples)) < level;
        changes += cur != prev;
        prev = cur;
    }
    return changes;
}

struct grid
{
    int nx; // nodes per row
    int ny;
    double x0;
    double y0;
    double h;

    complex node(int i, int j) const { return {x0 + h * i, y0 + h * j}; }
    // Horizontal edges first, then vertical.
    int h_edge(int i, int j) const { return j * (nx - 1) + i; }
    int v_edge(int i, int j) const { return (nx - 1) * ny + j * nx + i; }
    int edge_count() const { return (nx - 1) * ny + nx * (ny - 1); }
};

} // namespace

std::vector<curve> trace_level_curve(const std::function<double(complex)> &g, double sigma, const rectangle &window,
                                     const level_curve_options &options)
{
    if (!(sigma > 1.0) || !std::isfinite(sigma)) {
        throw domain_error("trace_level_curve: sigma must exceed 1");
    }
    if (!window.valid()) {
        throw domain_error("trace_level_curve: invalid window");
    }
    if (options.resolution < 2) {
        throw domain_error("trace_level_curve: resolution must be at least 2");
    }
    const double level = std::log(sigma);

    if (options.components) {
        for (complex anchor : options.components->anchors) {
            if (sign_changes_along_ray(g, level, options.components->center, anchor, window, 8 * options.resolution) <
                2) {
                throw domain_error("trace_level_curve: sigma is past the level where the components merge");
            }
        }
    }

    const double h = std::max(window.width(), window.height()) / options.resolution;
    const grid gr{static_cast<int>(std::ceil(window.width() / h)) + 1, static_cast<int>(std::ceil(window.height() / h)) + 1,
                  window.x_min, window.y_min, h};

    std::vector<double> value(static_cast<std::size_t>(gr.nx) * gr.ny);
    for (int j = 0; j < gr.ny; ++j) {
        for (int i = 0; i < gr.nx; ++i) {
            value[static_cast<std::size_t>(j) * gr.nx + i] = safe_eval(g, gr.node(i, j));
        }
    }
    auto below = [&](int i, int j) { return value[static_cast<std::size_t>(j) * gr.nx + i] < level; };

    // Crossing point on each crossed edge, refined by bisection.
    std::vector<complex> crossing(gr.edge_count());
    std::vector<char> crossed(gr.edge_count(), 0);
    auto refine = [&](complex a, bool a_below, complex b) {
        for (int it = 0; it < 200 && std::abs(b - a) > options.tolerance; ++it) {
            const complex m = 0.5 * (a + b);
            if ((safe_eval(g, m) < level) == a_below) {
                a = m;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };
    for (int j = 0; j < gr.ny; ++j) {
        for (int i = 0; i + 1 < gr.nx; ++i) {
            if (below(i, j) != below(i + 1, j)) {
                crossed[gr.h_edge(i, j)] = 1;
                crossing[gr.h_edge(i, j)] = refine(gr.node(i, j), below(i, j), gr.node(i + 1, j));
            }
        }
    }
    for (int j = 0; j + 1 < gr.ny; ++j) {
        for (int i = 0; i < gr.nx; ++i) {
            if (below(i, j) != below(i, j + 1)) {
                crossed[gr.v_edge(i, j)] = 1;
                crossing[gr.v_edge(i, j)] = refine(gr.node(i, j), below(i, j), gr.node(i, j + 1));
            }
        }
    }

    // Segment adjacency: every crossed edge touches at most two segments.
    std::vector<std::array<int, 2>> link(gr.edge_count(), {-1, -1});
    auto connect = [&](int a, int b) {
        for (int e : {a, b}) {
            const int other = (e == a) ? b : a;
            if (link[e][0] < 0) {
                link[e][0] = other;
            } else {
                link[e][1] = other;
            }
        }
    };
    for (int j = 0; j + 1 < gr.ny; ++j) {
        for (int i = 0; i + 1 < gr.nx; ++i) {
            // Corners a, b, c, d counter-clockwise from the lower left.
            const std::array<bool, 4> corner{below(i, j), below(i + 1, j), below(i + 1, j + 1), below(i, j + 1)};
            const std::array<int, 4> edge{gr.h_edge(i, j), gr.v_edge(i + 1, j), gr.h_edge(i, j + 1), gr.v_edge(i, j)};
            std::array<int, 4> hit{};
            int count = 0;
            for (int e : edge) {
                if (crossed[e]) {
                    hit[count++] = e;
                }
            }
            if (count == 2) {
                connect(hit[0], hit[1]);
            } else if (count == 4) {
                // Saddle: corners on the same side as the cell center join
                // through it; the other two are cut off individually.
                const bool center_below = safe_eval(g, gr.node(i, j) + complex{0.5 * h, 0.5 * h}) < level;
                for (int k = 0; k < 4; ++k) {
                    if (corner[k] != center_below) {
                        connect(edge[(k + 3) % 4], edge[k]);
                    }
                }
            }
        }
    }

    std::vector<curve> curves;
    std::vector<char> used(gr.edge_count(), 0);
    auto walk = [&](int start) {
        curve c;
        c.level = sigma;
        int prev = -1;
        int cur = start;
        while (cur >= 0 && !used[cur]) {
            used[cur] = 1;
            c.points.push_back(crossing[cur]);
            const int next = (link[cur][0] != prev) ? link[cur][0] : link[cur][1];
            prev = cur;
            cur = next;
        }
        c.closed = (cur == start);
        if (c.closed) {
            c.points.push_back(c.points.front());
        }
        curves.push_back(std::move(c));
    };
    // Open curves start at a window-boundary edge; the rest are loops.
    for (int e = 0; e < gr.edge_count(); ++e) {
        if (crossed[e] && !used[e] && link[e][1] < 0) {
            walk(e);
        }
    }
    for (int e = 0; e < gr.edge_count(); ++e) {
        if (crossed[e] && !used[e]) {
            walk(e);
        }
    }
    return curves;
}

} // namespace lemnmap
