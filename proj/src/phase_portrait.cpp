#include <lemnmap/analysis.hpp>

#include <array>
#include <cmath>
#include <numbers>

#include <lemnmap/error.hpp>

namespace lemnmap
{

complex phase_grid::pixel_center(int col, int row) const
{
    const double dx = window.width() / width;
    const double dy = window.height() / height;
    return {window.x_min + (col + 0.5) * dx, window.y_max - (row + 0.5) * dy};
}

phase_grid render_phase_portrait(const std::function<complex(complex)> &func, const rectangle &window, int width,
                                 int height, const std::function<bool(complex)> &interior)
{
    if (width < 1 || height < 1) {
        throw domain_error("render_phase_portrait: dimensions must be positive");
    }
    if (!window.valid()) {
        throw domain_error("render_phase_portrait: invalid window");
    }
    phase_grid grid;
    grid.window = window;
    grid.width = width;
    grid.height = height;
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    grid.values.assign(n, complex{});
    grid.flags.assign(n, pixel_flag::ok);

    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            const std::size_t idx = static_cast<std::size_t>(row) * width + col;
            const complex z = grid.pixel_center(col, row);
            const bool inside = interior && interior(z);
            if (inside) {
                grid.flags[idx] = pixel_flag::interior;
            }
            try {
                const complex v = func(z);
                if (std::isfinite(v.real()) && std::isfinite(v.imag())) {
                    grid.values[idx] = v;
                    continue;
                }
            } catch (const error &) {
            }
            // Interior pixels keep their flag with value 0 when func fails there.
            if (!inside) {
                grid.flags[idx] = pixel_flag::invalid;
            }
        }
    }
    return grid;
}

std::vector<phase_singularity> find_phase_singularities(const phase_grid &grid, double max_step)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<phase_singularity> found;
    for (int row = 0; row + 1 < grid.height; ++row) {
        for (int col = 0; col + 1 < grid.width; ++col) {
            // Counter-clockwise in the plane; rows grow downwards.
            const std::array<std::pair<int, int>, 4> loop{
                {{col, row + 1}, {col + 1, row + 1}, {col + 1, row}, {col, row}}};
            bool usable = true;
            for (auto [c, r] : loop) {
                if (grid.flag(c, r) == pixel_flag::invalid || grid.value(c, r) == 0.0) {
                    usable = false;
                }
            }
            if (!usable) {
                continue;
            }
            double total = 0.0;
            for (int k = 0; k < 4 && usable; ++k) {
                const auto [c0, r0] = loop[k];
                const auto [c1, r1] = loop[(k + 1) % 4];
                const double step = std::arg(grid.value(c1, r1) / grid.value(c0, r0));
                if (std::abs(step) > max_step) {
                    usable = false;
                }
                total += step;
            }
            if (!usable) {
                continue;
            }
            const int winding = static_cast<int>(std::lround(total / two_pi));
            if (winding != 0) {
                const complex a = grid.pixel_center(col, row);
                const complex b = grid.pixel_center(col + 1, row + 1);
                found.push_back({0.5 * (a + b), winding});
            }
        }
    }
    return found;
}

} // namespace lemnmap
