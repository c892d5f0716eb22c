#include <iostream>

#include "tcbe/verify.hpp"

int main()
{
    using namespace tcbe::verify;
    int failed = 0;
    run_suite(suite::all, options{1}, [&](const criterion_result& r) {
        std::cout << format_line(r) << std::endl;
        failed += r.passed ? 0 : 1;
    });
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
    return failed ? 1 : 0;
}
