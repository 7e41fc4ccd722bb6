#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include <lemnmap/analysis.hpp>
#include <lemnmap/error.hpp>
#include <lemnmap/io.hpp>
#include <lemnmap/lemniscatic.hpp>

namespace lemnmap::cli
{

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_real(std::string s)
{
    s = trim(s);
    if (!s.empty() && s[0] == '+') {
        s.erase(0, 1);
    }
    if (s.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

struct family_args
{
    std::string family;
    std::vector<double> parameters;
    std::string scale = "1";
    std::string shift = "0";
    std::string output;
};

void add_family_args(CLI::App &cmd, family_args &a)
{
    cmd.add_option("family", a.family, "radial-slits | two-disks | rational")->required();
    cmd.add_option("parameters", a.parameters, "family parameters");
    cmd.add_option("--output,-o", a.output, "output file (default: standard output)");
}

void add_transform_args(CLI::App &cmd, family_args &a)
{
    cmd.add_option("--scale", a.scale, "apply w -> a w + b with this a");
    cmd.add_option("--shift", a.shift, "apply w -> a w + b with this b");
}

struct usage_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

complex require_complex(const std::string &text, const char *what)
{
    const auto v = parse_complex(text);
    if (!v) {
        throw usage_error(std::string("cannot parse ") + what + " '" + text + "'");
    }
    return *v;
}

family_instance build(const family_args &a, bool transform)
{
    family_instance inst = make_family(a.family, a.parameters);
    if (transform) {
        const complex s = require_complex(a.scale, "--scale");
        const complex b = require_complex(a.shift, "--shift");
        if (s == 0.0) {
            throw usage_error("--scale must be nonzero");
        }
        if (s != 1.0 || b != 0.0) {
            inst.map = apply_linear_transform(inst.map, s, b);
            if (inst.components) {
                inst.components->center = s * inst.components->center + b;
                for (auto &p : inst.components->anchors) {
                    p = s * p + b;
                }
            }
            const double r = std::abs(s) * std::max(inst.default_window.x_max, inst.default_window.y_max);
            inst.default_window = {b.real() - r, b.real() + r, b.imag() - r, b.imag() + r};
        }
    }
    return inst;
}

rectangle parse_window(const std::string &text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto x = parse_real(item);
        if (!x) {
            throw usage_error("invalid window '" + text + "'");
        }
        v.push_back(*x);
    }
    if (v.size() != 4) {
        throw usage_error("window needs xmin,xmax,ymin,ymax");
    }
    const rectangle r{v[0], v[1], v[2], v[3]};
    if (!r.valid()) {
        throw usage_error("invalid window '" + text + "'");
    }
    return r;
}

// Writes payload to the named file, or to out when the name is empty or "-".
void emit(const std::string &path, std::ostream &out, const std::string &payload)
{
    if (path.empty() || path == "-") {
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw usage_error("cannot open '" + path + "' for writing");
    }
    f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!f) {
        throw usage_error("write to '" + path + "' failed");
    }
}

std::vector<complex> read_points(const std::string &path)
{
    std::ifstream f(path);
    if (!f) {
        throw usage_error("cannot read points file '" + path + "'");
    }
    std::vector<complex> pts;
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto z = parse_complex(line);
        if (!z) {
            throw usage_error(path + ":" + std::to_string(line_no) + ": cannot parse point '" + line + "'");
        }
        pts.push_back(*z);
    }
    return pts;
}

std::string status_of(const std::exception &ex)
{
    if (dynamic_cast<const domain_error *>(&ex) != nullptr) {
        return "outside_domain";
    }
    if (dynamic_cast<const numerical_error *>(&ex) != nullptr) {
        return "numerical_error";
    }
    return "error";
}

} // namespace

std::optional<complex> parse_complex(const std::string &raw)
{
    const std::string s = trim(raw);
    if (s.empty()) {
        return std::nullopt;
    }
    const auto sep = s.find_first_of(", \t");
    if (sep != std::string::npos) {
        const auto re = parse_real(s.substr(0, sep));
        std::string rest = trim(s.substr(sep));
        if (!rest.empty() && rest[0] == ',') {
            rest = rest.substr(1);
        }
        const auto im = parse_real(rest);
        if (!re || !im) {
            return std::nullopt;
        }
        return complex{*re, *im};
    }
    const char last = s.back();
    if (last != 'i' && last != 'j') {
        const auto re = parse_real(s);
        return re ? std::optional<complex>(complex{*re, 0.0}) : std::nullopt;
    }
    const std::string body = s.substr(0, s.size() - 1);
    // Split before the last sign that does not belong to an exponent.
    std::size_t split = 0;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re_text = body.substr(0, split);
    const std::string im_text = body.substr(split);
    double re = 0.0;
    if (!re_text.empty()) {
        const auto r = parse_real(re_text);
        if (!r) {
            return std::nullopt;
        }
        re = *r;
    }
    double im = 0.0;
    if (im_text.empty() || im_text == "+") {
        im = 1.0;
    } else if (im_text == "-") {
        im = -1.0;
    } else {
        const auto v = parse_real(im_text);
        if (!v) {
            return std::nullopt;
        }
        im = *v;
    }
    return complex{re, im};
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Conformal maps onto lemniscatic domains"};
    app.name("lemnmap");
    app.require_subcommand(1);

    family_args map_a;
    bool inverse = false;
    bool strict = false;
    std::string points_file;
    std::vector<std::string> inline_points;
    auto *map_cmd = app.add_subcommand("map", "evaluate Phi (or its inverse) at points, CSV output");
    add_family_args(*map_cmd, map_a);
    add_transform_args(*map_cmd, map_a);
    map_cmd->add_flag("--inverse", inverse, "evaluate the inverse map");
    map_cmd->add_option("--points", points_file, "file with one complex number per line");
    map_cmd->add_option("--point", inline_points, "complex point, repeatable")->allow_extra_args(false);
    map_cmd->add_flag("--strict", strict, "exit 1 when any point fails");

    family_args dom_a;
    auto *dom_cmd = app.add_subcommand("domain", "lemniscatic domain as JSON");
    add_family_args(*dom_cmd, dom_a);
    add_transform_args(*dom_cmd, dom_a);

    family_args lvl_a;
    double sigma = 0.0;
    std::string lvl_window;
    int resolution = 400;
    auto *lvl_cmd = app.add_subcommand("levelcurve", "level curves of the Green's function as SVG");
    add_family_args(*lvl_cmd, lvl_a);
    add_transform_args(*lvl_cmd, lvl_a);
    lvl_cmd->add_option("--sigma", sigma, "level sigma > 1")->required();
    lvl_cmd->add_option("--window", lvl_window, "xmin,xmax,ymin,ymax");
    lvl_cmd->add_option("--resolution", resolution, "cells along the longer window side");

    family_args por_a;
    std::string function = "inverse";
    std::string por_window;
    int width = 400;
    int height = 400;
    auto *por_cmd = app.add_subcommand("portrait", "phase portrait as binary PPM");
    por_cmd->add_option("family", por_a.family, "family name, or identity")->required();
    por_cmd->add_option("parameters", por_a.parameters, "family parameters");
    por_cmd->add_option("--output,-o", por_a.output, "output file (default: standard output)");
    add_transform_args(*por_cmd, por_a);
    por_cmd->add_option("--function", function, "forward | inverse")
        ->check(CLI::IsMember({"forward", "inverse"}));
    por_cmd->add_option("--window", por_window, "xmin,xmax,ymin,ymax");
    por_cmd->add_option("--width", width, "pixels")->check(CLI::Range(1, 8192));
    por_cmd->add_option("--height", height, "pixels")->check(CLI::Range(1, 8192));

    family_args ver_a;
    auto *ver_cmd = app.add_subcommand("verify", "run the invariant suite, JSON report");
    add_family_args(*ver_cmd, ver_a);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError &ex) {
        err << "lemnmap: " << ex.what() << "\n";
        return exit_usage;
    }

    try {
        if (*map_cmd) {
            const auto inst = build(map_a, true);
            std::vector<complex> pts;
            if (!points_file.empty()) {
                pts = read_points(points_file);
            }
            for (const auto &text : inline_points) {
                pts.push_back(require_complex(text, "--point"));
            }
            std::vector<io::map_row> rows;
            bool all_ok = true;
            for (complex p : pts) {
                io::map_row row{p, {}, "ok"};
                try {
                    row.out = inverse ? inst.map.inverse(p) : inst.map.forward(p);
                } catch (const error &ex) {
                    row.status = status_of(ex);
                    all_ok = false;
                }
                rows.push_back(row);
            }
            std::ostringstream os;
            io::write_map_csv(os, rows);
            emit(map_a.output, out, os.str());
            return (strict && !all_ok) ? exit_verification : exit_ok;
        }
        if (*dom_cmd) {
            const auto inst = build(dom_a, true);
            emit(dom_a.output, out, io::domain_json(inst.map.domain(), inst.map.source()));
            return exit_ok;
        }
        if (*lvl_cmd) {
            const auto inst = build(lvl_a, true);
            const rectangle window = lvl_window.empty() ? inst.default_window : parse_window(lvl_window);
            level_curve_options opt;
            opt.resolution = resolution;
            opt.components = inst.components;
            const auto map = inst.map;
            auto e_side = trace_level_curve([map](complex z) { return green_value(map, z); }, sigma, window, opt);
            const auto &dom = map.domain();
            component_check lcheck{opt.components ? opt.components->center : complex{}, dom.centers()};
            opt.components = lcheck;
            auto l_side = trace_level_curve([dom](complex w) { return lemniscatic_green(dom, w); }, sigma, window, opt);
            std::ostringstream os;
            io::write_svg(os, window, {{"E", std::move(e_side)}, {"L", std::move(l_side)}});
            emit(lvl_a.output, out, os.str());
            return exit_ok;
        }
        if (*por_cmd) {
            phase_grid grid;
            if (por_a.family == "identity") {
                if (!por_a.parameters.empty()) {
                    throw usage_error("identity takes no parameters");
                }
                const rectangle window = por_window.empty() ? rectangle{-1.0, 1.0, -1.0, 1.0} : parse_window(por_window);
                grid = render_phase_portrait([](complex z) { return z; }, window, width, height);
            } else {
                const auto inst = build(por_a, true);
                const rectangle window = por_window.empty() ? inst.default_window : parse_window(por_window);
                const auto map = inst.map;
                if (function == "forward") {
                    grid = render_phase_portrait([map](complex z) { return map.forward_unchecked(z); }, window, width,
                                                 height, [map](complex z) { return map.in_set(z); });
                } else {
                    grid = render_phase_portrait([map](complex w) { return map.inverse_unchecked(w); }, window, width,
                                                 height, [map](complex w) { return !map.domain().contains(w); });
                }
            }
            std::ostringstream os(std::ios::binary);
            io::write_ppm(os, grid);
            emit(por_a.output, out, os.str());
            return exit_ok;
        }
        if (*ver_cmd) {
            const auto report = run_verification(ver_a.family, ver_a.parameters);
            emit(ver_a.output, out, io::report_json(report));
            return report.passed() ? exit_ok : exit_verification;
        }
    } catch (const usage_error &ex) {
        err << "lemnmap: " << ex.what() << "\n";
        return exit_usage;
    } catch (const construction_error &ex) {
        err << "lemnmap: " << ex.what() << "\n";
        return exit_usage;
    } catch (const domain_error &ex) {
        err << "lemnmap: " << ex.what() << "\n";
        return exit_usage;
    } catch (const std::exception &ex) {
        err << "lemnmap: " << ex.what() << "\n";
        return exit_verification;
    }
    return exit_usage;
}

} // namespace lemnmap::cli
