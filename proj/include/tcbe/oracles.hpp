#ifndef TCBE_ORACLES_HPP
#define TCBE_ORACLES_HPP

#include <functional>

#include "tcbe/cmv.hpp"
#include "tcbe/limits.hpp"

// Independent reference computations used only by tests and the
// verification suite; nothing here is on a production code path.
namespace tcbe::oracle {

// Coefficients of det(zI - C) by Laplace expansion along the first row.
cvec cofactor_char_poly(const cmv_matrix& c);

// Dense eigenvalues (Eigen's complex Schur solver).
cvec eigenvalues(const cmv_matrix& c);

// Bottleneck matching distance: min over bijections of max |a_i - b_pi(i)|.
// Exhaustive branch and bound, intended for n <= 10.
double matching_distance(const cvec& a, const cvec& b);

// Adaptive Gauss-Kronrod on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

// K_edge(z, z) from its defining integral, and its integral over a box.
double edge_intensity_quadrature(cplx z);
double edge_box_mass_quadrature(const box& b);

// Expected count of a radial intensity rho(|z|) in the annulus r0 <= |z| <= r1.
double annulus_mass_quadrature(const std::function<double(double)>& rho, double r0, double r1);

// Disk density of Theta(a+1, delta) (a > 0) normalised by quadrature, not by
// the closed-form constant.
class theta_delta_density {
public:
    theta_delta_density(double a, cplx delta);
    double operator()(cplx z) const;
    // probability of the polar cell [r0, r1] x [t0, t1]
    double cell_mass(double r0, double r1, double t0, double t1) const;

private:
    double unnormalised(cplx z) const;
    double a_;
    cplx delta_;
    double norm_ = 1.0;
};

// Mass of the polar cell [r0, r1] x [t0, t1] under a Lebesgue density on the
// disk, by nested adaptive quadrature.
double polar_cell_mass(const std::function<double(cplx)>& density, double r0, double r1,
                       double t0, double t1);

} // namespace tcbe::oracle

#endif
