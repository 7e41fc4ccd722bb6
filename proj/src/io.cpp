#include <lemnmap/io.hpp>

#include <charconv>
#include <cmath>
#include <numbers>

#include <json.hpp>

namespace lemnmap::io
{

using nlohmann::json;

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace
{

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

json number(double v)
{
    // Non-finite values become null; callers attach a status string.
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json complex_pair(complex z)
{
    return json::array({number(z.real()), number(z.imag())});
}

json parameters_json(const std::vector<std::pair<std::string, double>> &params)
{
    json obj = json::object();
    for (const auto &[k, v] : params) {
        obj[k] = number(v);
    }
    return obj;
}

} // namespace

void write_map_csv(std::ostream &os, const std::vector<map_row> &rows)
{
    os << "re_in,im_in,re_out,im_out,status\r\n";
    for (const auto &r : rows) {
        os << format_number(r.in.real()) << ',' << format_number(r.in.imag()) << ',';
        if (r.status == "ok") {
            os << format_number(r.out.real()) << ',' << format_number(r.out.imag());
        } else {
            os << ',';
        }
        os << ',' << csv_field(r.status) << "\r\n";
    }
}

std::string domain_json(const lemniscatic_domain &domain, const source_description &source)
{
    json centers = json::array();
    for (complex c : domain.centers()) {
        centers.push_back(complex_pair(c));
    }
    json out;
    out["centers"] = centers;
    out["exponents"] = domain.exponents();
    out["mu"] = number(domain.mu());
    if (domain.form()) {
        out["symmetric_form"] = {{"n", domain.form()->n}, {"c", complex_pair(domain.form()->c)}};
    } else {
        out["symmetric_form"] = nullptr;
    }
    out["source"] = {{"family", source.family}, {"parameters", parameters_json(source.parameters)}};
    return out.dump(2) + "\n";
}

std::string report_json(const verification_report &report)
{
    json checks = json::array();
    for (const auto &c : report.checks) {
        json item = {{"name", c.name},
                     {"residual", number(c.residual)},
                     {"tolerance", number(c.tolerance)},
                     {"status", c.pass ? "pass" : "fail"}};
        if (!c.note.empty()) {
            item["note"] = c.note;
        }
        checks.push_back(std::move(item));
    }
    json out = {{"family", report.family},
                {"parameters", parameters_json(report.parameters)},
                {"checks", checks},
                {"status", report.passed() ? "pass" : "fail"}};
    return out.dump(2) + "\n";
}

void write_svg(std::ostream &os, const rectangle &window, const std::vector<svg_layer> &layers)
{
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << format_number(window.x_min) << ' '
       << format_number(0.0 - window.y_max) << ' ' << format_number(window.width()) << ' '
       << format_number(window.height()) << "\" data-window=\"" << format_number(window.x_min) << ' '
       << format_number(window.x_max) << ' ' << format_number(window.y_min) << ' ' << format_number(window.y_max)
       << "\">\n";
    for (const auto &layer : layers) {
        os << "  <g data-side=\"" << layer.side << "\" fill=\"none\" stroke=\"" << (layer.side == "E" ? "black" : "blue")
           << "\" stroke-width=\"" << format_number(window.width() / 500.0) << "\">\n";
        for (const auto &c : layer.curves) {
            os << "    <path data-level=\"" << format_number(c.level) << "\" data-side=\"" << layer.side
               << "\" data-closed=\"" << (c.closed ? "true" : "false") << "\" d=\"";
            for (std::size_t i = 0; i < c.points.size(); ++i) {
                if (c.closed && i + 1 == c.points.size()) {
                    os << 'Z';
                    break;
                }
                os << (i == 0 ? "M" : "L") << format_number(c.points[i].real()) << ','
                   << format_number(0.0 - c.points[i].imag()) << ' ';
            }
            os << "\"/>\n";
        }
        os << "  </g>\n";
    }
    os << "</svg>\n";
}

rgb phase_color(complex v)
{
    double h = std::arg(v) / (2.0 * std::numbers::pi);
    if (h < 0.0) {
        h += 1.0;
    }
    const double x = 6.0 * h;
    const int sector = static_cast<int>(x) % 6;
    const double f = x - std::floor(x);
    auto byte = [](double c) { return static_cast<unsigned char>(std::lround(255.0 * c)); };
    switch (sector) {
    case 0:
        return {255, byte(f), 0};
    case 1:
        return {byte(1.0 - f), 255, 0};
    case 2:
        return {0, 255, byte(f)};
    case 3:
        return {0, byte(1.0 - f), 255};
    case 4:
        return {byte(f), 0, 255};
    default:
        return {255, 0, byte(1.0 - f)};
    }
}

void write_ppm(std::ostream &os, const phase_grid &grid)
{
    os << "P6\n" << grid.width << ' ' << grid.height << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(grid.width) * 3);
    for (int r = 0; r < grid.height; ++r) {
        for (int c = 0; c < grid.width; ++c) {
            rgb px{0, 0, 0};
            switch (grid.flag(c, r)) {
            case pixel_flag::ok:
                px = phase_color(grid.value(c, r));
                break;
            case pixel_flag::interior:
                px = grid.value(c, r) == 0.0 ? rgb{128, 128, 128} : phase_color(grid.value(c, r));
                px = {static_cast<unsigned char>(px.r / 2), static_cast<unsigned char>(px.g / 2),
                      static_cast<unsigned char>(px.b / 2)};
                break;
            case pixel_flag::invalid:
                break;
            }
            row[3 * static_cast<std::size_t>(c)] = px.r;
            row[3 * static_cast<std::size_t>(c) + 1] = px.g;
            row[3 * static_cast<std::size_t>(c) + 2] = px.b;
        }
        os.write(reinterpret_cast<const char *>(row.data()), static_cast<std::streamsize>(row.size()));
    }
}

} // namespace lemnmap::io
