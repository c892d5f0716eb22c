#ifndef TCBE_TYPES_HPP
#define TCBE_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcbe {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Thrown when a coefficient sits on the point 1 where the modified
// recursion or the Cayley transform is singular.
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter or precondition violations.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Iterative numerics that failed to reach tolerance.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tcbe

#endif
