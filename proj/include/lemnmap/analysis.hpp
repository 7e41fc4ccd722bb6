#ifndef LEMNMAP_ANALYSIS_HPP
#define LEMNMAP_ANALYSIS_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <lemnmap/lemniscatic.hpp>

namespace lemnmap
{

struct rectangle
{
    double x_min;
    double x_max;
    double y_min;
    double y_max;

    bool valid() const;
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
};

struct curve
{
    std::vector<complex> points;
    bool closed = false;
    double level = 0.0; // sigma
};

// Rays from center through each anchor. Gamma_sigma has one component per
// anchor only while g - log(sigma) changes sign at least twice along every
// such ray (inside, then outside the component around the anchor).
struct component_check
{
    complex center;
    std::vector<complex> anchors;
};

struct level_curve_options
{
    // Cells along the longer side of the window.
    int resolution = 400;
    // Edge crossings are bisected to this absolute tolerance.
    double tolerance = 1e-8;
    std::optional<component_check> components;
};

// Contours g = log(sigma) by marching squares. g may throw domain_error on
// points of E; those nodes are treated as g = 0. Throws domain_error when
// sigma <= 1 or when the component check shows sigma past the critical level.
std::vector<curve> trace_level_curve(const std::function<double(complex)> &g, double sigma, const rectangle &window,
                                     const level_curve_options &options = {});

// Level function of the lemniscatic side: log|U(w)| - log(mu).
double lemniscatic_green(const lemniscatic_domain &domain, complex w);

// max |Phi(z) - z| over samples on |z| = radius. Throws domain_error when a
// sample lies in E.
double normalization_probe(const lemniscatic_map &map, double radius, int samples = 256);

enum class pixel_flag : std::uint8_t
{
    ok,
    interior,
    invalid,
};

struct phase_grid
{
    rectangle window;
    int width = 0;
    int height = 0;
    // Row-major, row 0 at the top (y_max).
    std::vector<complex> values;
    std::vector<pixel_flag> flags;

    complex pixel_center(int col, int row) const;
    complex value(int col, int row) const { return values[static_cast<std::size_t>(row) * width + col]; }
    pixel_flag flag(int col, int row) const { return flags[static_cast<std::size_t>(row) * width + col]; }
};

// Samples func at pixel centers. Pixels where interior returns true are
// flagged but still evaluated; pixels where func throws or returns a
// non-finite value are flagged invalid with value 0.
phase_grid render_phase_portrait(const std::function<complex(complex)> &func, const rectangle &window, int width,
                                 int height, const std::function<bool(complex)> &interior = {});

struct phase_singularity
{
    complex location; // center of the 2x2 pixel cell
    int winding;
};

// Nonzero winding numbers of the phase around each 2x2 block of pixel
// centers. Cells touching invalid pixels, or with a phase step larger than
// max_step (a branch cut rather than a zero), are skipped.
std::vector<phase_singularity> find_phase_singularities(const phase_grid &grid, double max_step = 2.8274333882308138);

// Logarithmic capacity estimated from greedy Leja points chosen among
// candidate boundary samples, extrapolated in the point count.
double leja_capacity(const std::vector<complex> &candidates, int count = 256);

struct boundary_sample
{
    complex point;
    complex normal; // unit outward normal
};

// A named family with everything the verification suite and the CLI need.
struct family_instance
{
    std::string family;
    std::vector<std::pair<std::string, double>> parameters;
    lemniscatic_map map;
    // Pre-image description when the map comes from one.
    std::optional<preimage_config> preimage;
    // Boundary samples; per_component points on each component of E. Slits
    // yield each point once per side.
    std::function<std::vector<boundary_sample>(int per_component)> boundary;
    std::optional<component_check> components;
    rectangle default_window;
};

// Families: "radial-slits" n C D, "two-disks" z0 r, "rational" [n [alpha
// [alpha0]]] (defaults 3, 1, 0) over the example rational Riemann map.
// Throws construction_error for unknown families or bad parameters.
family_instance make_family(const std::string &family, const std::vector<double> &parameters);

struct check_result
{
    std::string name;
    double residual;
    double tolerance;
    bool pass;
    std::string note;
};

struct verification_report
{
    std::string family;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<check_result> checks;

    bool passed() const;
};

// Runs the invariant suite for a family. Construction failures become a
// failed "construction" check.
verification_report run_verification(const std::string &family, const std::vector<double> &parameters);

// Deterministic samples for tests and the verification suite.
std::vector<complex> sample_exterior(const lemniscatic_map &map, int count, std::uint64_t seed, double box);
std::vector<complex> sample_domain(const lemniscatic_map &map, int count, std::uint64_t seed, double box);

} // namespace lemnmap

#endif
