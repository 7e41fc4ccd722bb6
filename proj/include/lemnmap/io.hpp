#ifndef LEMNMAP_IO_HPP
#define LEMNMAP_IO_HPP

#include <ostream>
#include <string>
#include <vector>

#include <lemnmap/analysis.hpp>
#include <lemnmap/lemniscatic.hpp>

namespace lemnmap::io
{

// Shortest decimal that reads back to the same double.
std::string format_number(double v);

struct map_row
{
    complex in;
    complex out;
    std::string status; // "ok" or an error tag; out is unused unless ok
};

// Header re_in,im_in,re_out,im_out,status; failed rows leave the output
// columns empty.
void write_map_csv(std::ostream &os, const std::vector<map_row> &rows);

// {"centers": [[re, im], ...], "exponents": [...], "mu": ..., "symmetric_form": {...} | null}
std::string domain_json(const lemniscatic_domain &domain, const source_description &source);

std::string report_json(const verification_report &report);

struct svg_layer
{
    std::string side; // "E" or "L"
    std::vector<curve> curves;
};

// One path per curve; y is flipped so the picture matches the complex plane.
void write_svg(std::ostream &os, const rectangle &window, const std::vector<svg_layer> &layers);

// Binary P6, hue from the argument, interior pixels darkened, invalid pixels
// black.
void write_ppm(std::ostream &os, const phase_grid &grid);

struct rgb
{
    unsigned char r;
    unsigned char g;
    unsigned char b;
};

rgb phase_color(complex v);

} // namespace lemnmap::io

#endif
