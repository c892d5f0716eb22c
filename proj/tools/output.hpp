#ifndef TCBE_TOOLS_OUTPUT_HPP
#define TCBE_TOOLS_OUTPUT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcbe/roots.hpp"

namespace tcbe::tools {

// 17 significant digits, locale independent.
std::string format_double(double x);

class csv_writer {
public:
    explicit csv_writer(std::vector<std::string> header);

    csv_writer& add(double x);
    csv_writer& add(cplx z);           // two columns: re, im
    csv_writer& add(std::size_t k);
    csv_writer& add(int k);
    void end_row();

    void save(const std::filesystem::path& path) const;

private:
    std::string text_;
    bool row_open_ = false;
    void sep();
};

std::string sha256_file(const std::filesystem::path& path);

// Manifest listing every output file with its checksum.
class manifest {
public:
    manifest(int argc, char** argv, std::uint64_t seed);

    nlohmann::json& parameters() { return params_; }
    void add_output(const std::filesystem::path& path);
    void save(const std::filesystem::path& path, double wall_seconds) const;

private:
    std::string command_;
    std::uint64_t seed_;
    nlohmann::json params_ = nlohmann::json::object();
    std::vector<std::filesystem::path> outputs_;
};

// Flat scatter plot of all points, one circle per point.
void write_svg(const std::filesystem::path& path, const std::vector<point_sample>& samples);

} // namespace tcbe::tools

#endif
