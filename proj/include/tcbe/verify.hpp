#ifndef TCBE_VERIFY_HPP
#define TCBE_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

// The fifteen acceptance criteria, shared by the CLI and the acceptance test.
namespace tcbe::verify {

enum class suite { exact, mc, all };

suite parse_suite(const std::string& name);
std::string to_string(suite s);

struct criterion_result {
    int id = 0;
    std::string name;
    bool passed = false;
    double value = 0.0;       // the gated statistic
    std::string relation;     // "<=" or ">"
    double tolerance = 0.0;
    double seconds = 0.0;
    double time_limit = 0.0;  // 0 when the criterion has no runtime bound
    std::string detail;
};

struct options {
    std::uint64_t seed = 1;
};

// Shared state between criteria (criterion 11 reuses criterion 10's mean).
struct context {
    options opts;
    std::optional<double> finite_edge_mean;
};

std::vector<int> criteria_in(suite s);
criterion_result run_criterion(int id, context& ctx);
std::vector<criterion_result> run_suite(suite s, const options& opts,
                                        const std::function<void(const criterion_result&)>& on_result = {});

// One line: "[PASS] 07 name: value <= tol (1.2 s) detail"
std::string format_line(const criterion_result& r);

} // namespace tcbe::verify

#endif
