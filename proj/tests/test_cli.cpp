#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <lemnmap/io.hpp>
#include <lemnmap/lemniscatic.hpp>

#include "cli.hpp"

using lemnmap::complex;
using lemnmap::cli::parse_complex;

namespace
{

struct result
{
    int code;
    std::string out;
    std::string err;
};

result run(std::initializer_list<const char *> args)
{
    std::vector<const char *> argv{"lemnmap"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out;
    std::ostringstream err;
    const int code = lemnmap::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        out.push_back(line);
    }
    return out;
}

std::size_t count(const std::string &s, const std::string &needle)
{
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

} // namespace

TEST_CASE("complex number parsing")
{
    CHECK(parse_complex("1") == complex(1, 0));
    CHECK(parse_complex("-2.5") == complex(-2.5, 0));
    CHECK(parse_complex("i") == complex(0, 1));
    CHECK(parse_complex("-i") == complex(0, -1));
    CHECK(parse_complex("3i") == complex(0, 3));
    CHECK(parse_complex("1+2i") == complex(1, 2));
    CHECK(parse_complex("1-2e-3i") == complex(1, -2e-3));
    CHECK(parse_complex("1e-3+i") == complex(1e-3, 1));
    CHECK(parse_complex("1,2") == complex(1, 2));
    CHECK(parse_complex(" 1 2 ") == complex(1, 2));
    CHECK(!parse_complex(""));
    CHECK(!parse_complex("abc"));
    CHECK(!parse_complex("1+"));
    CHECK(!parse_complex("1,2,3"));
}

TEST_CASE("map command")
{
    const auto r = run({"map", "radial-slits", "2", "0.1", "1", "--point", "10", "--point", "0,10", "--point", "0.5"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "re_in,im_in,re_out,im_out,status");
    CHECK(r.out.find("\r\n") != std::string::npos);
    for (int i : {1, 2}) {
        CHECK(rows[i].substr(rows[i].rfind(',') + 1) == "ok");
        double v[4];
        char sep;
        std::stringstream ss(rows[i]);
        ss >> v[0] >> sep >> v[1] >> sep >> v[2] >> sep >> v[3];
        CHECK(std::abs(complex(v[2], v[3]) - complex(v[0], v[1])) < 0.05);
    }
    CHECK(rows[3] == "0.5,0,,,outside_domain");

    CHECK(run({"map", "radial-slits", "2", "0.1", "1", "--point", "0.5", "--strict"}).code == 1);

    const auto empty = run({"map", "two-disks", "1", "0.5"});
    CHECK(empty.code == 0);
    CHECK(empty.out == "re_in,im_in,re_out,im_out,status\r\n");

    const auto inv = run({"map", "two-disks", "1", "0.5", "--inverse", "--point", "3+i"});
    CHECK(inv.code == 0);
    CHECK(lines(inv.out)[1].substr(lines(inv.out)[1].rfind(',') + 1) == "ok");

    // Points file with a blank line.
    const auto dir = std::filesystem::temp_directory_path() / "lemnmap_cli_test";
    std::filesystem::create_directories(dir);
    const auto file = dir / "points.txt";
    std::ofstream(file) << "2+1i\n\n-1.5, 0.25\n";
    const auto fromfile = run({"map", "rational", "--points", file.c_str()});
    CHECK(fromfile.code == 0);
    CHECK(lines(fromfile.out).size() == 3);

    CHECK(run({"map", "radial-slits", "2", "0.1", "1", "--points", "/nonexistent/points"}).code == 2);
    CHECK(run({"map", "radial-slits", "2", "0.1", "1", "--point", "nonsense"}).code == 2);
    CHECK(run({"map", "radial-slits", "2", "1", "0.1", "--point", "3"}).code == 2);
    CHECK(run({"map", "spirals", "--point", "3"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("domain command")
{
    const auto r = run({"domain", "radial-slits", "2", "0.1", "1"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["mu"].get<double>() == doctest::Approx(0.497493718553).epsilon(1e-12));
    CHECK(j["symmetric_form"]["n"] == 2);
    CHECK(j["source"]["family"] == "radial-slits");

    const auto t = run({"domain", "radial-slits", "2", "0.1", "1", "--scale", "2", "--shift", "i"});
    CHECK(t.code == 0);
    const auto jt = nlohmann::json::parse(t.out);
    CHECK(jt["mu"].get<double>() == 2.0 * j["mu"].get<double>());
    for (int k = 0; k < 2; ++k) {
        CHECK(jt["centers"][k][0].get<double>() == doctest::Approx(2.0 * j["centers"][k][0].get<double>()));
        CHECK(jt["centers"][k][1].get<double>() == doctest::Approx(2.0 * j["centers"][k][1].get<double>() + 1.0));
    }

    const auto disks = nlohmann::json::parse(run({"domain", "two-disks", "1", "0.5"}).out);
    CHECK(disks["mu"].get<double>() == doctest::Approx(lemnmap::two_disk_map({1.0, 0.5}).domain().mu()).epsilon(1e-15));
    CHECK(run({"domain", "two-disks", "1", "0.5", "--scale", "0"}).code == 2);

    // Byte-identical reruns.
    CHECK(run({"domain", "rational"}).out == run({"domain", "rational"}).out);
}

TEST_CASE("levelcurve command")
{
    const auto r = run({"levelcurve", "radial-slits", "3", "1", "2", "--sigma", "1.15", "--resolution", "200"});
    CHECK(r.code == 0);
    CHECK(count(r.out, "<path") == 6);
    CHECK(count(r.out, "data-side=\"E\" data-closed=\"true\"") == 3);
    CHECK(count(r.out, "data-side=\"L\" data-closed=\"true\"") == 3);
    CHECK(count(r.out, "data-level=\"1.15\"") == 6);
    CHECK(run({"levelcurve", "radial-slits", "3", "1", "2", "--sigma", "1.15", "--window", "1,-1,0,1"}).code == 2);
    CHECK(run({"levelcurve", "radial-slits", "3", "1", "2", "--sigma", "1.15", "--window", "1,2"}).code == 2);
    CHECK(run({"levelcurve", "radial-slits", "3", "1", "2", "--sigma", "0.9"}).code == 2);
    CHECK(run({"levelcurve", "radial-slits", "3", "1", "2"}).code == 2);
}

TEST_CASE("portrait command")
{
    const auto r = run({"portrait", "identity", "--width", "32", "--height", "32"});
    CHECK(r.code == 0);
    const std::string header = "P6\n32 32\n255\n";
    REQUIRE(r.out.size() == header.size() + 32 * 32 * 3);
    CHECK(r.out.compare(0, header.size(), header) == 0);
    auto px = [&](int c, int row) {
        const std::size_t at = header.size() + 3 * (static_cast<std::size_t>(row) * 32 + c);
        return std::vector<unsigned char>(r.out.begin() + static_cast<long>(at), r.out.begin() + static_cast<long>(at) + 3);
    };
    // Hue depends on the angle only: both pixels sit on the diagonal y = x.
    CHECK(px(24, 7) == px(28, 3));
    const auto rgb = lemnmap::io::phase_color(complex(1.0, 1.0));
    CHECK(px(24, 7) == std::vector<unsigned char>{rgb.r, rgb.g, rgb.b});
    CHECK(px(24, 7) != px(7, 24));

    const auto inv = run({"portrait", "radial-slits", "2", "0.1", "1", "--function", "inverse", "--width", "40",
                          "--height", "40", "--window", "-1.5,1.5,-1.5,1.5"});
    CHECK(inv.code == 0);
    CHECK(inv.out.size() == std::string("P6\n40 40\n255\n").size() + 40 * 40 * 3);
    CHECK(run({"portrait", "identity", "--width", "0"}).code == 2);
    CHECK(run({"portrait", "identity", "--window", "0,0,0,1"}).code == 2);
    CHECK(run({"portrait", "two-disks", "1", "0.5", "--function", "sideways"}).code == 2);
}

TEST_CASE("verify command")
{
    const auto r = run({"verify", "two-disks", "1", "0.7"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "pass");
    for (const auto &c : j["checks"]) {
        CHECK(c["status"] == "pass");
    }
    const auto bad = run({"verify", "radial-slits", "2", "1", "0.5"});
    CHECK(bad.code == 1);
    CHECK(nlohmann::json::parse(bad.out)["checks"][0]["name"] == "construction");

    const auto dir = std::filesystem::temp_directory_path() / "lemnmap_cli_test";
    std::filesystem::create_directories(dir);
    const auto file = dir / "report.json";
    CHECK(run({"verify", "radial-slits", "2", "0.1", "1", "-o", file.c_str()}).code == 0);
    std::ifstream in(file);
    CHECK(nlohmann::json::parse(in)["status"] == "pass");
    CHECK(run({"verify", "radial-slits", "2", "0.1", "1", "-o", "/nonexistent/dir/report.json"}).code == 2);
}
