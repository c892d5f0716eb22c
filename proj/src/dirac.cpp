#include "tcbe/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tcbe {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double inf = std::numeric_limits<double>::infinity();

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

cplx cayley(cplx z)
{
    if (!finite(z))
        return 1.0;
    return (z - I) / (z + I);
}

cplx cayley_inverse(cplx b)
{
    if (b == 1.0)
        return {inf, 0.0};
    return I * (1.0 + b) / (1.0 - b);
}

double hyperbolic_distance(cplx z, cplx w)
{
    return std::acosh(1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag()));
}

hyperbolic_path path_from_regular(const verblunsky& alpha)
{
    const std::size_t n = alpha.size();
    hyperbolic_path path;
    path.disk.reserve(n + 1);
    // running product M_0 ... M_{k-1}, rescaled each step
    cplx p11 = 1.0, p12 = 0.0, p21 = 0.0, p22 = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
        path.disk.push_back(p22 == 0.0 ? cplx(inf, 0.0) : p12 / p22);
        if (k == n)
            break;
        const cplx a = alpha.values[k];
        const cplx q11 = p11 + p12 * a, q12 = p11 * std::conj(a) + p12;
        const cplx q21 = p21 + p22 * a, q22 = p21 * std::conj(a) + p22;
        const double s = std::max({std::abs(q11), std::abs(q12), std::abs(q21), std::abs(q22)});
        p11 = q11 / s;
        p12 = q12 / s;
        p21 = q21 / s;
        p22 = q22 / s;
    }
    path.halfplane.reserve(n + 1);
    for (cplx b : path.disk)
        path.halfplane.push_back(cayley_inverse(b));
    return path;
}

hyperbolic_path path_from_modified(const modified_verblunsky& gamma)
{
    hyperbolic_path path;
    cplx z = I;
    path.halfplane.push_back(z);
    for (cplx g : gamma.values) {
        if (std::abs(1.0 - g) < degenerate_tol)
            throw degenerate_error("path_from_modified: coefficient equals 1");
        // z + 2 i y g / (1 - g), with the new height in product form to avoid cancellation
        const cplx u = 1.0 - g;
        const double y = z.imag();
        z = {z.real() - 2.0 * y * (g / u).imag(), y * (1.0 - std::norm(g)) / std::norm(u)};
        path.halfplane.push_back(z);
    }
    for (cplx w : path.halfplane)
        path.disk.push_back(cayley(w));
    return path;
}

cvec disk_path_recursive(const modified_verblunsky& gamma)
{
    cvec b{0.0};
    for (cplx g : gamma.values) {
        const cplx bk = b.back();
        const cplx c = g * (1.0 - bk) / (1.0 - std::conj(bk));
        b.push_back((bk + c) / (1.0 + std::conj(bk) * c));
    }
    return b;
}

cvec disk_path_composed(const modified_verblunsky& gamma)
{
    // b_k = A_{g_0}^{-1} o ... o A_{g_{k-1}}^{-1}(0), with A_g^{-1} = A_{g^iota}
    cvec b{0.0};
    cplx p11 = 1.0, p12 = 0.0, p21 = 0.0, p22 = 1.0;
    for (cplx g : gamma.values) {
        // A_g^{-1}(0) = g; iota sends the whole circle to 1, so the boundary
        // step is taken through this limit rather than the matrix of g^iota
        b.push_back((p11 * g + p12) / (p21 * g + p22));
        if (std::abs(g) >= 1.0)
            break;
        const cplx h = gamma_iota(g);
        const cplx a11 = 1.0 / (1.0 - h), a12 = h / (h - 1.0);
        const cplx a21 = std::conj(h) / (std::conj(h) - 1.0), a22 = 1.0 / (1.0 - std::conj(h));
        const cplx q11 = p11 * a11 + p12 * a21, q12 = p11 * a12 + p12 * a22;
        const cplx q21 = p21 * a11 + p22 * a21, q22 = p21 * a12 + p22 * a22;
        const double s = std::max({std::abs(q11), std::abs(q12), std::abs(q21), std::abs(q22)});
        p11 = q11 / s;
        p12 = q12 / s;
        p21 = q21 / s;
        p22 = q22 / s;
    }
    return b;
}

hyperbolic_path reversed_path(const verblunsky& alpha)
{
    return path_from_regular(reverse(alpha));
}

hyperbolic_path pulled_back_path(const hyperbolic_path& rev)
{
    const std::size_t n = rev.steps();
    if (n < 1)
        throw domain_error("pulled_back_path: need at least one step");
    const cplx anchor = rev.halfplane[n - 1];
    const double x = anchor.real(), y = anchor.imag();
    hyperbolic_path out;
    for (std::size_t k = 0; k <= n; ++k) {
        const cplx w = rev.halfplane[k];
        const cplx moved = finite(w) ? cplx((w.real() - x) / y, w.imag() / y) : w;
        out.halfplane.push_back(moved);
        out.disk.push_back(cayley(moved));
    }
    return out;
}

hyperbolic_path pulled_back_reversed_path(const verblunsky& alpha)
{
    const verblunsky rev = reverse(alpha);
    const std::size_t n = rev.size();
    const modified_verblunsky gamma = modified_from_regular(rev);
    hyperbolic_path out;
    out.halfplane.assign(n + 1, I);
    // backward from the anchor z_{n-1} = i through the inverse half-plane steps
    for (std::size_t k = n - 1; k-- > 0;) {
        const cplx g = gamma.values[k], u = 1.0 - g;
        const double y = out.halfplane[k + 1].imag() * std::norm(u) / (1.0 - std::norm(rev.values[k]));
        out.halfplane[k] = {out.halfplane[k + 1].real() + 2.0 * y * (g / u).imag(), y};
    }
    const cplx last = gamma.values[n - 1];
    out.halfplane[n] = last == 1.0 ? cplx(inf, 0.0) : cplx(-2.0 * (last / (1.0 - last)).imag(), 0.0);
    for (cplx w : out.halfplane)
        out.disk.push_back(cayley(w));
    return out;
}

dirac_operator measure_operator(const hyperbolic_path& path)
{
    const std::size_t n = path.steps();
    if (n < 1)
        throw domain_error("measure_operator: empty path");
    const cplx end = path.halfplane[n];
    if (!finite(end))
        throw degenerate_error("measure_operator: z_n is infinite (measure has an atom at 1)");
    dirac_operator op;
    op.cells.assign(path.halfplane.begin(), path.halfplane.begin() + n);
    op.u1 = {-end.real(), -1.0};
    return op;
}

std::array<double, 3> weight_matrix(cplx z)
{
    const double x = z.real(), y = z.imag();
    const double s = 0.5 / y;
    return {s, -x * s, (x * x + y * y) * s};
}

namespace {

// u^T R(z) v = <X u, X v> / (2 y), X = [[1, -x], [0, y]]; the factored form avoids the
// cancellation between entries of size 1/y when z is close to the real axis
double form(cplx z, const vec2& u, const vec2& v)
{
    const double x = z.real(), y = z.imag();
    return ((u[0] - x * u[1]) * (v[0] - x * v[1]) + y * y * u[1] * v[1]) / (2.0 * y);
}

} // namespace

double hs_norm(const dirac_operator& op)
{
    const double h = 1.0 / double(op.n());
    double prefix = 0.0, total = 0.0;
    for (cplx zk : op.cells) {
        const double a = form(zk, op.u0, op.u0), c = form(zk, op.u1, op.u1);
        total += c * (prefix * h + a * h * h / 2.0);
        prefix += a * h;
    }
    if (!std::isfinite(total))
        throw numeric_error("hs_norm: weight is not integrable");
    return std::sqrt(2.0 * total);
}

double integral_trace(const dirac_operator& op)
{
    const double h = 1.0 / double(op.n());
    double total = 0.0;
    for (cplx zk : op.cells)
        total += form(zk, op.u0, op.u1) * h;
    return total;
}

namespace {

// With X = [[1, -x], [0, y]] one has J R = X^{-1} J X / 2, so each cell exponential is
// X^{-1} rot(z h / 2) X. The product is carried in the frame of the current cell, w = X_j H,
// so that only the transitions X_{j+1} X_j^{-1} = [[1, (x_j - x_{j+1}) / y_j], [0, y_{j+1} / y_j]]
// appear; their size is set by neighbouring cells rather than by the distance to i.
cvec2 cell_frame_solution(const dirac_operator& op, cplx z, std::size_t k)
{
    const cplx s = z / (2.0 * double(op.n()));
    const cplx c = std::cos(s), sn = std::sin(s);
    cvec2 w{1.0, 0.0};
    for (std::size_t j = 0; j < k; ++j) {
        w = {c * w[0] + sn * w[1], c * w[1] - sn * w[0]};
        if (j + 1 < k) {
            const cplx a = op.cells[j], b = op.cells[j + 1];
            w = {w[0] + (a.real() - b.real()) / a.imag() * w[1], b.imag() / a.imag() * w[1]};
        }
    }
    return w;
}

} // namespace

cvec2 canonical_solution(const dirac_operator& op, cplx z, std::size_t k)
{
    if (k > op.n())
        throw domain_error("canonical_solution: cell index beyond 1");
    const cvec2 w = cell_frame_solution(op, z, k);
    if (k == 0)
        return w;
    const cplx last = op.cells[k - 1];
    return {w[0] + last.real() / last.imag() * w[1], w[1] / last.imag()};
}

cvec2 canonical_solution(const dirac_operator& op, cplx z, double t)
{
    if (!(t > 0.0 && t <= 1.0))
        throw domain_error("canonical_solution: t must lie in (0,1]");
    const auto k = static_cast<std::size_t>(std::floor(t * double(op.n()) + 1e-9));
    return canonical_solution(op, z, std::min(k, op.n()));
}

cplx secular_function(const dirac_operator& op, cplx z)
{
    // <H, J u1> = -u1[1] h0 + u1[0] h1, paired in the last cell frame to avoid the
    // cancellation between h0 and x_n h1
    const cvec2 w = cell_frame_solution(op, z, op.n());
    if (op.n() == 0)
        return -op.u1[1] * w[0] + op.u1[0] * w[1];
    const cplx last = op.cells.back();
    return -op.u1[1] * w[0] + (op.u1[0] - last.real() * op.u1[1]) / last.imag() * w[1];
}

namespace {

cplx structure_at(const dirac_operator& op, cplx z, std::size_t k)
{
    const cvec2 w = cell_frame_solution(op, z, k);
    if (k == 0)
        return w[0] - I * w[1];
    const cplx last = op.cells[k - 1];
    return w[0] + (last.real() - I) / last.imag() * w[1];
}

} // namespace

cplx structure_function(const dirac_operator& op, cplx z)
{
    return structure_at(op, z, op.n());
}

cplx finite_structure_function(const verblunsky& alpha, cplx z)
{
    const dirac_operator op = measure_operator(pulled_back_reversed_path(alpha));
    return structure_at(op, z, op.n() - 1);
}

} // namespace tcbe
