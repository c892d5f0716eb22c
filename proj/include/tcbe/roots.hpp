#ifndef TCBE_ROOTS_HPP
#define TCBE_ROOTS_HPP

#include <cstdint>
#include <string>

#include "tcbe/cmv.hpp"

namespace tcbe {

enum class frame { unit_disk, upper_half_plane };

struct point_sample {
    cvec points;
    frame where = frame::unit_disk;
    std::size_t n = 0;       // originating matrix size
    std::string ensemble;    // free-form description of the source
    std::uint64_t seed = 0;
    std::size_t dropped = 0; // branch-cut points removed by edge_scale
};

struct root_options {
    int max_iterations = 500;
    int polish_steps = 3;
};

// Aberth-Ehrlich on all roots at once, then Newton polish.
cvec find_roots(const polynomial& p, const root_options& opts = {});

// w = -n i log z on the slit plane; points within 1e-12 of (-inf, 0] are dropped.
point_sample edge_scale(const point_sample& points, std::size_t n);
cplx edge_map(cplx z, std::size_t n);

} // namespace tcbe

#endif
