#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace tcbe::tools {

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

csv_writer::csv_writer(std::vector<std::string> header)
{
    for (std::size_t i = 0; i < header.size(); ++i)
        text_ += (i ? "," : "") + header[i];
    text_ += '\n';
}

void csv_writer::sep()
{
    if (row_open_)
        text_ += ',';
    row_open_ = true;
}

csv_writer& csv_writer::add(double x)
{
    sep();
    text_ += format_double(x);
    return *this;
}

csv_writer& csv_writer::add(cplx z)
{
    add(z.real());
    return add(z.imag());
}

csv_writer& csv_writer::add(std::size_t k)
{
    sep();
    text_ += std::to_string(k);
    return *this;
}

csv_writer& csv_writer::add(int k)
{
    sep();
    text_ += std::to_string(k);
    return *this;
}

void csv_writer::end_row()
{
    text_ += '\n';
    row_open_ = false;
}

void csv_writer::save(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text_;
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed for " + path.string());
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

manifest::manifest(int argc, char** argv, std::uint64_t seed) : seed_(seed)
{
    for (int i = 0; i < argc; ++i)
        command_ += (i ? " " : "") + std::string(argv[i]);
}

void manifest::add_output(const std::filesystem::path& path)
{
    outputs_.push_back(path);
}

void manifest::save(const std::filesystem::path& path, double wall_seconds) const
{
    nlohmann::json j;
    j["command_line"] = command_;
    j["seed"] = seed_;
    j["parameters"] = params_;
    j["version"] = TCBE_VERSION;
    j["wall_time_seconds"] = wall_seconds;
    j["outputs"] = nlohmann::json::array();
    for (const auto& p : outputs_)
        j["outputs"].push_back({{"path", p.filename().string()},
                                {"sha256", sha256_file(p)},
                                {"bytes", std::filesystem::file_size(p)}});
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

void write_svg(const std::filesystem::path& path, const std::vector<point_sample>& samples)
{
    double x0 = -1.05, x1 = 1.05, y0 = -1.05, y1 = 1.05;
    bool disk = samples.empty() || samples.front().where == frame::unit_disk;
    if (!disk) {
        x0 = y0 = 0.0;
        x1 = y1 = 1.0;
        for (const auto& s : samples)
            for (cplx z : s.points) {
                x0 = std::min(x0, z.real());
                x1 = std::max(x1, z.real());
                y1 = std::max(y1, z.imag());
            }
    }
    const double size = 600.0;
    const double scale = size / std::max(x1 - x0, y1 - y0);
    const double w = (x1 - x0) * scale, h = (y1 - y0) * scale;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(w) << "\" height=\""
        << format_double(h) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (disk)
        out << "<circle cx=\"" << format_double(-x0 * scale) << "\" cy=\"" << format_double(y1 * scale)
            << "\" r=\"" << format_double(scale) << "\" fill=\"none\" stroke=\"gray\"/>\n";
    for (const auto& s : samples)
        for (cplx z : s.points)
            out << "<circle cx=\"" << format_double((z.real() - x0) * scale) << "\" cy=\""
                << format_double((y1 - z.imag()) * scale) << "\" r=\"1.2\" fill=\"black\"/>\n";
    out << "</svg>\n";
}

} // namespace tcbe::tools
