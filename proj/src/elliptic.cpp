#include "oddcover/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "oddcover/error.hpp"

namespace oddcover
{

namespace
{

constexpr double pi = std::numbers::pi;
const Complex two_pi_i{0.0, 2.0 * pi};

struct Theta
{
    Complex value;
    Complex d1;
    Complex d2;
};

// theta_1(v) = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1) v) and two derivatives.
Theta theta1(const Complex &tau, Complex v)
{
    Complex s0, s1, s2;
    const double growth = std::abs(v.imag());
    for (int n = 0; n < 100000; ++n) {
        const double k = 2.0 * n + 1.0;
        const double e = (n + 0.5) * (n + 0.5);
        const Complex qn = std::exp(Complex(0.0, pi) * tau * e);
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        const Complex sn = std::sin(k * v);
        const Complex cs = std::cos(k * v);
        s0 += sign * qn * sn;
        s1 += sign * qn * k * cs;
        s2 -= sign * qn * k * k * sn;
        const double bound = std::abs(qn) * std::exp(k * growth) * k * k;
        if (n > 1 && bound < 1e-18 * (std::abs(s0) + std::abs(s1) + std::abs(s2))) {
            break;
        }
    }
    return {2.0 * s0, 2.0 * s1, 2.0 * s2};
}

// Lattice coordinates (x, y) with z = x + y tau.
std::pair<double, double> lattice_coordinates(const Complex &tau, Complex z)
{
    const double y = z.imag() / tau.imag();
    return {z.real() - y * tau.real(), y};
}

Complex zeta_raw(const Lattice &lat, Complex z)
{
    const auto th = theta1(lat.tau, pi * z);
    return lat.eta1 * z + pi * th.d1 / th.value;
}

struct Reduced
{
    Complex w;
    double m;
    double n;
};

Reduced reduce(const Lattice &lat, Complex z)
{
    const auto [x, y] = lattice_coordinates(lat.tau, z);
    const double m = std::round(x);
    const double n = std::round(y);
    return {z - m - n * lat.tau, m, n};
}

Complex quasi_period(const Lattice &lat, int torsion_index)
{
    // eta(2 t_i) for t = (0, 1/2, tau/2, (1+tau)/2).
    switch (torsion_index) {
        case 1: return lat.eta1;
        case 2: return lat.eta2;
        case 3: return lat.eta1 + lat.eta2;
        default: return 0.0;
    }
}

double norm2(const ResidueVector &a)
{
    double s = 0.0;
    for (const auto &x : a) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

Complex sum(const ResidueVector &a)
{
    Complex s;
    for (const auto &x : a) {
        s += x;
    }
    return s;
}

Complex sum_of_squares(const ResidueVector &a)
{
    Complex s;
    for (const auto &x : a) {
        s += x * x;
    }
    return s;
}

} // namespace

Lattice lattice_init(Complex tau)
{
    if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()) || tau.imag() <= 0.0) {
        throw Error(ErrorCode::DegenerateLattice, "tau must have positive imaginary part");
    }
    Lattice lat;
    lat.tau = tau;
    lat.q = std::exp(Complex(0.0, pi) * tau);
    if (std::abs(lat.q) >= 1.0 - 1e-6) {
        throw Error(ErrorCode::DegenerateLattice, "|q| is too close to 1");
    }
    lat.half_periods = {0.0, 0.5, tau / 2.0, (1.0 + tau) / 2.0};

    // eta1 = -pi^2 theta1'''(0) / (3 theta1'(0))
    Complex num, den;
    for (int n = 0; n < 100000; ++n) {
        const double k = 2.0 * n + 1.0;
        const Complex qn = std::exp(Complex(0.0, pi) * tau * ((n + 0.5) * (n + 0.5)));
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        num += sign * qn * k * k * k;
        den += sign * qn * k;
        if (n > 1 && std::abs(qn) * k * k * k < 1e-18 * std::abs(num)) {
            break;
        }
    }
    lat.eta1 = pi * pi / 3.0 * num / den;
    lat.eta2 = lat.eta1 * tau - two_pi_i;

    const Complex z = 0.2 + 0.1 * tau;
    const Complex e1 = zeta_raw(lat, z + 1.0) - zeta_raw(lat, z);
    const Complex e2 = zeta_raw(lat, z + tau) - zeta_raw(lat, z);
    lat.legendre_residual = std::abs(e1 * tau - e2 - two_pi_i);
    return lat;
}

Complex weierstrass_zeta(const Lattice &lat, Complex z)
{
    const auto r = reduce(lat, z);
    return zeta_raw(lat, r.w) + r.m * lat.eta1 + r.n * lat.eta2;
}

Complex weierstrass_p(const Lattice &lat, Complex z)
{
    const auto r = reduce(lat, z);
    const auto th = theta1(lat.tau, pi * r.w);
    const Complex l1 = th.d1 / th.value;
    return -lat.eta1 - pi * pi * (th.d2 / th.value - l1 * l1);
}

AntiInvariantFunction::AntiInvariantFunction(const Lattice &lat, const ResidueVector &a) : lat_(lat), a_(a)
{
    double scale = 1.0;
    for (const auto &x : a) {
        scale = std::max(scale, std::abs(x));
    }
    if (std::abs(sum(a)) > 1e-12 * scale) {
        throw Error(ErrorCode::ResidueSumNonzero, "residues must sum to zero");
    }
    // zeta is odd and zeta(w + 2t) = zeta(w) + eta(2t), so oddness of f
    // forces c = (1/2) sum a_i eta(2 t_i).
    for (int i = 0; i < 4; ++i) {
        c_ += 0.5 * a[static_cast<std::size_t>(i)] * quasi_period(lat, i);
    }
}

Complex AntiInvariantFunction::operator()(Complex z) const
{
    Complex s = c_;
    for (std::size_t i = 0; i < 4; ++i) {
        if (a_[i] != 0.0) {
            s += a_[i] * weierstrass_zeta(lat_, z - lat_.half_periods[i]);
        }
    }
    return s;
}

Complex AntiInvariantFunction::derivative(Complex z) const
{
    Complex s;
    for (std::size_t i = 0; i < 4; ++i) {
        if (a_[i] != 0.0) {
            s -= a_[i] * weierstrass_p(lat_, z - lat_.half_periods[i]);
        }
    }
    return s;
}

AntiInvariantFunction build_f(const Lattice &lat, const ResidueVector &a) { return AntiInvariantFunction(lat, a); }

double pole_distance(const Lattice &lat, Complex from, Complex to)
{
    const auto [x0, y0] = lattice_coordinates(lat.tau, from);
    const auto [x1, y1] = lattice_coordinates(lat.tau, to);
    const int i_lo = static_cast<int>(std::floor(2.0 * std::min(x0, x1))) - 1;
    const int i_hi = static_cast<int>(std::ceil(2.0 * std::max(x0, x1))) + 1;
    const int j_lo = static_cast<int>(std::floor(2.0 * std::min(y0, y1))) - 1;
    const int j_hi = static_cast<int>(std::ceil(2.0 * std::max(y0, y1))) + 1;
    const Complex dir = to - from;
    const double len2 = std::norm(dir);
    double best = std::numeric_limits<double>::infinity();
    for (int i = i_lo; i <= i_hi; ++i) {
        for (int j = j_lo; j <= j_hi; ++j) {
            const Complex p = 0.5 * i + 0.5 * j * lat.tau;
            double s = len2 > 0.0 ? ((p - from) * std::conj(dir)).real() / len2 : 0.0;
            s = std::clamp(s, 0.0, 1.0);
            best = std::min(best, std::abs(from + s * dir - p));
        }
    }
    return best;
}

double pole_guard(const Lattice &lat) { return 0.05 * std::min(1.0, lat.tau.imag()); }

Complex integrate_f_squared(const AntiInvariantFunction &f, Complex from, Complex to)
{
    const Complex dir = to - from;
    auto integrand = [&](double s) {
        const Complex v = f(from + s * dir);
        return v * v * dir;
    };
    // Error control is relative to the L1 norm of the integrand, so an
    // integral that nearly cancels does not force refinement into roundoff.
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate(integrand, 0.0, 1.0, 1e-14);
}

std::array<Complex, 2> period_map(const Lattice &lat, const ResidueVector &a)
{
    const auto f = build_f(lat, a);
    const Complex base = period_basepoint_offset.real() + period_basepoint_offset.imag() * lat.tau;
    const double guard = pole_guard(lat);
    for (int k = 0; k <= 5; ++k) {
        const Complex z0 = base + 0.013 * k * (1.0 + lat.tau);
        if (pole_distance(lat, z0, z0 + 1.0) < guard || pole_distance(lat, z0, z0 + lat.tau) < guard) {
            continue;
        }
        return {integrate_f_squared(f, z0, z0 + 1.0), integrate_f_squared(f, z0, z0 + lat.tau)};
    }
    throw Error(ErrorCode::PathTooCloseToPole, "every jittered basepoint passes within the guard radius of a pole");
}

ResidueVector from_coordinates(const Vector3 &x) { return {x[0] + x[1] + x[2], -x[0], -x[1], -x[2]}; }

Vector3 to_coordinates(const ResidueVector &a) { return {-a[1], -a[2], -a[3]}; }

QuadraticForms quadratic_forms(const Lattice &lat)
{
    std::array<Vector3, 3> basis{};
    for (std::size_t k = 0; k < 3; ++k) {
        basis[k][k] = 1.0;
    }
    std::array<std::array<Complex, 2>, 3> diag{};
    for (std::size_t k = 0; k < 3; ++k) {
        diag[k] = period_map(lat, from_coordinates(basis[k]));
    }
    QuadraticForms qf{};
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t j = 0; j < 2; ++j) {
            qf.psi[j][k][k] = diag[k][j];
        }
        for (std::size_t l = k + 1; l < 3; ++l) {
            Vector3 s{};
            s[k] = 1.0;
            s[l] = 1.0;
            const auto both = period_map(lat, from_coordinates(s));
            for (std::size_t j = 0; j < 2; ++j) {
                const Complex b = 0.5 * (both[j] - diag[k][j] - diag[l][j]);
                qf.psi[j][k][l] = b;
                qf.psi[j][l][k] = b;
            }
        }
    }
    return qf;
}

Complex evaluate(const Matrix3 &m, const Vector3 &x)
{
    Complex s;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            s += x[i] * m[i][j] * x[j];
        }
    }
    return s;
}

ResidueVector normalize_projective(const ResidueVector &a)
{
    std::size_t j = 0;
    for (std::size_t i = 1; i < 4; ++i) {
        if (std::abs(a[i]) > std::abs(a[j])) {
            j = i;
        }
    }
    if (a[j] == 0.0) {
        return a;
    }
    ResidueVector out{};
    for (std::size_t i = 0; i < 4; ++i) {
        out[i] = a[i] / a[j];
    }
    out[j] = 1.0;
    return out;
}

double projective_distance(const ResidueVector &a, const ResidueVector &b)
{
    const double na = norm2(a);
    const double nb = norm2(b);
    Complex inner;
    for (std::size_t i = 0; i < 4; ++i) {
        inner += std::conj(a[i] / na) * (b[i] / nb);
    }
    double perp = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        perp += std::norm(b[i] / nb - inner * a[i] / na);
    }
    return std::atan2(std::sqrt(perp), std::abs(inner));
}

ResidueVector two_torsion_swap(const ResidueVector &a, int k)
{
    switch (k) {
        case 1: return {a[1], a[0], a[3], a[2]};
        case 2: return {a[2], a[3], a[0], a[1]};
        case 3: return {a[3], a[2], a[1], a[0]};
        default: return a;
    }
}

namespace
{

Complex bilinear(const Matrix3 &m, const Vector3 &x, const Vector3 &y)
{
    Complex s;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            s += x[i] * m[i][j] * y[j];
        }
    }
    return s;
}

Vector3 axpy(Complex a, const Vector3 &x, Complex b, const Vector3 &y)
{
    return {a * x[0] + b * y[0], a * x[1] + b * y[1], a * x[2] + b * y[2]};
}

// Sum of squares of the residues, on coordinates of L.
Matrix3 residue_form()
{
    Matrix3 s{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            s[i][j] = i == j ? 2.0 : 1.0;
        }
    }
    return s;
}

// Roots of c0 + c1 t + ... + c4 t^4 via the companion matrix.
std::vector<Complex> quartic_roots(const std::array<Complex, 5> &c)
{
    Eigen::Matrix4cd comp = Eigen::Matrix4cd::Zero();
    for (int i = 1; i < 4; ++i) {
        comp(i, i - 1) = 1.0;
    }
    for (int i = 0; i < 4; ++i) {
        comp(i, 3) = -c[static_cast<std::size_t>(i)] / c[4];
    }
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(comp, false);
    std::vector<Complex> out;
    for (int i = 0; i < 4; ++i) {
        out.push_back(es.eigenvalues()(i));
    }
    return out;
}

struct Polished
{
    Vector3 x;
    double residual;
    bool converged;
};

// Damped Newton on (Q1(x), Q2(x), x_j - 1).
Polished polish(const QuadraticForms &qf, Vector3 x)
{
    std::size_t j = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (std::abs(x[i]) > std::abs(x[j])) {
            j = i;
        }
    }
    const Complex pivot = x[j];
    for (auto &v : x) {
        v /= pivot;
    }
    auto residual = [&](const Vector3 &y) {
        return std::max(std::abs(evaluate(qf.psi[0], y)), std::abs(evaluate(qf.psi[1], y)));
    };
    double r = residual(x);
    bool converged = false;
    for (int it = 0; it < 60 && !converged; ++it) {
        Eigen::Matrix3cd jac;
        Eigen::Vector3cd rhs;
        for (std::size_t q = 0; q < 2; ++q) {
            for (std::size_t c = 0; c < 3; ++c) {
                Complex d;
                for (std::size_t k = 0; k < 3; ++k) {
                    d += 2.0 * qf.psi[q][c][k] * x[k];
                }
                jac(static_cast<int>(q), static_cast<int>(c)) = d;
            }
            rhs(static_cast<int>(q)) = -evaluate(qf.psi[q], x);
        }
        for (std::size_t c = 0; c < 3; ++c) {
            jac(2, static_cast<int>(c)) = c == j ? 1.0 : 0.0;
        }
        rhs(2) = 1.0 - x[j];
        const Eigen::Vector3cd step = jac.fullPivLu().solve(rhs);
        double damping = 1.0;
        for (int half = 0; half < 30; ++half, damping *= 0.5) {
            Vector3 trial{};
            for (std::size_t c = 0; c < 3; ++c) {
                trial[c] = x[c] + damping * step(static_cast<int>(c));
            }
            const double rt = residual(trial);
            if (rt <= r || half == 29) {
                x = trial;
                const double moved = damping * step.norm();
                converged = moved < 1e-15 || rt < 1e-16 || (rt >= r && moved < 1e-12);
                r = rt;
                break;
            }
        }
    }
    return {x, r, r < 1e-10};
}

} // namespace

std::vector<EllipticSolution> solve_theta(const Lattice &lat)
{
    const auto qf = quadratic_forms(lat);
    const Matrix3 s = residue_form();
    // Lines through T1 = (1, -1, i, -i), which lies on the residue conic,
    // meet it again at x(t) = S(D) T - 2 B(T, D) D with D = D0 + t D1.
    const Vector3 t1 = to_coordinates({1.0, -1.0, Complex(0, 1), Complex(0, -1)});
    const Vector3 d0{Complex(0.31, 0.72), Complex(-1.13, 0.21), Complex(0.52, -0.43)};
    std::array<Vector3, 3> d1_choices{{{Complex(0.91, -0.27), Complex(0.38, 0.83), Complex(-0.61, 0.14)},
                                       {Complex(-0.44, 0.57), Complex(0.73, -0.19), Complex(0.26, 0.95)},
                                       {Complex(0.12, 0.34), Complex(-0.81, -0.66), Complex(0.47, 0.29)}}};

    // Substitute into whichever Psi component is larger on the residue conic.
    const std::size_t target = std::abs(evaluate(qf.psi[0], d0)) >= std::abs(evaluate(qf.psi[1], d0)) ? 0 : 1;
    const Matrix3 &q = qf.psi[target];

    std::string diagnostics;
    for (const auto &d1 : d1_choices) {
        const Complex s00 = bilinear(s, d0, d0);
        const Complex s01 = bilinear(s, d0, d1);
        const Complex s11 = bilinear(s, d1, d1);
        const Complex b0 = bilinear(s, t1, d0);
        const Complex b1 = bilinear(s, t1, d1);
        const Vector3 x0 = axpy(s00, t1, -2.0 * b0, d0);
        const Vector3 x1 = axpy(1.0, axpy(2.0 * s01, t1, -2.0 * b0, d1), -2.0 * b1, d0);
        const Vector3 x2 = axpy(s11, t1, -2.0 * b1, d1);
        const std::array<Complex, 5> c{evaluate(q, x0), 2.0 * bilinear(q, x0, x1),
                                       evaluate(q, x1) + 2.0 * bilinear(q, x0, x2), 2.0 * bilinear(q, x1, x2),
                                       evaluate(q, x2)};
        double cmax = 0.0;
        for (const auto &v : c) {
            cmax = std::max(cmax, std::abs(v));
        }
        if (std::abs(c[4]) < 1e-8 * cmax) {
            diagnostics += "leading coefficient vanishes for this pencil direction; ";
            continue;
        }

        std::vector<EllipticSolution> out;
        bool all_ok = true;
        for (const auto &t : quartic_roots(c)) {
            const Vector3 x = axpy(1.0, axpy(1.0, x0, t, x1), t * t, x2);
            const auto p = polish(qf, x);
            if (!p.converged) {
                all_ok = false;
                diagnostics += "root t=(" + std::to_string(t.real()) + "," + std::to_string(t.imag()) +
                               ") polished to residual " + std::to_string(p.residual) + "; ";
                continue;
            }
            EllipticSolution sol;
            sol.a = normalize_projective(from_coordinates(p.x));
            const auto psi = period_map(lat, sol.a);
            sol.residual = std::max(std::abs(psi[0]), std::abs(psi[1]));
            sol.on_q1_residual = std::abs(sum_of_squares(sol.a));
            if (sol.residual >= 1e-8) {
                all_ok = false;
                diagnostics += "root with period residual " + std::to_string(sol.residual) + "; ";
                continue;
            }
            const bool duplicate = std::any_of(out.begin(), out.end(), [&](const EllipticSolution &o) {
                return projective_distance(o.a, sol.a) <= 1e-6;
            });
            if (!duplicate) {
                out.push_back(sol);
            }
        }
        if (!all_ok || out.empty()) {
            continue;
        }

        std::sort(out.begin(), out.end(), [](const EllipticSolution &x, const EllipticSolution &y) {
            for (std::size_t i = 0; i < 4; ++i) {
                if (x.a[i].real() != y.a[i].real()) {
                    return x.a[i].real() < y.a[i].real();
                }
                if (x.a[i].imag() != y.a[i].imag()) {
                    return x.a[i].imag() < y.a[i].imag();
                }
            }
            return false;
        });
        // Orbit labels under the 2-torsion swaps.
        std::vector<int> label(out.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (label[i] >= 0) {
                continue;
            }
            label[i] = next;
            for (int k = 1; k <= 3; ++k) {
                const auto image = two_torsion_swap(out[i].a, k);
                for (std::size_t j = 0; j < out.size(); ++j) {
                    if (label[j] < 0 && projective_distance(out[j].a, image) < 1e-7) {
                        label[j] = next;
                    }
                }
            }
            ++next;
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i].orbit_id = label[i];
        }
        return out;
    }
    throw Error(ErrorCode::SolveFailed, "conic intersection failed: " + diagnostics);
}

namespace
{

// Integral of f^2 from `from` to `to` along quarter-lattice lines, which
// stay at distance >= Im(tau)/(4|tau|) from the half-lattice of poles.
Complex routed_integral(const AntiInvariantFunction &f, Complex from, Complex to)
{
    const Lattice &lat = f.lattice();
    auto centre = [&](Complex z) {
        const auto [x, y] = lattice_coordinates(lat.tau, z);
        return std::pair{std::floor(2.0 * x) / 2.0 + 0.25, std::floor(2.0 * y) / 2.0 + 0.25};
    };
    const auto [xa, ya] = centre(from);
    const auto [xb, yb] = centre(to);
    const std::array<Complex, 5> pts{from, xa + ya * lat.tau, xb + ya * lat.tau, xb + yb * lat.tau, to};
    const double guard = pole_guard(lat);
    Complex total;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (std::abs(pts[i + 1] - pts[i]) == 0.0) {
            continue;
        }
        if (pole_distance(lat, pts[i], pts[i + 1]) < guard) {
            throw Error(ErrorCode::PathTooCloseToPole, "integration route passes within the guard radius of a pole");
        }
        total += integrate_f_squared(f, pts[i], pts[i + 1]);
    }
    return total;
}

Complex reduce_to_cell(const Lattice &lat, Complex z)
{
    const auto [x, y] = lattice_coordinates(lat.tau, z);
    return z - std::floor(x) - std::floor(y) * lat.tau;
}

double lattice_separation(const Lattice &lat, Complex a, Complex b)
{
    const auto r = reduce(lat, a - b);
    double best = std::abs(r.w);
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            best = std::min(best, std::abs(r.w + static_cast<double>(i) + static_cast<double>(j) * lat.tau));
        }
    }
    return best;
}

} // namespace

SolutionCertificate certify_solution(const Lattice &lat, const EllipticSolution &s)
{
    SolutionCertificate cert;
    cert.residue_quadric_residual = std::abs(sum_of_squares(s.a));
    cert.clauses[0] = cert.residue_quadric_residual < 1e-9;

    const auto psi = period_map(lat, s.a);
    cert.psi_residual = std::max(std::abs(psi[0]), std::abs(psi[1]));
    cert.clauses[1] = cert.psi_residual < 1e-8;

    const auto f = build_f(lat, s.a);
    const Complex base = period_basepoint_offset.real() + period_basepoint_offset.imag() * lat.tau;
    auto primitive = [&](Complex z) { return routed_integral(f, base, z); };

    const std::array<std::pair<double, double>, 6> samples{
        {{0.2, 0.3}, {0.3, 0.8}, {0.7, 0.15}, {0.8, 0.7}, {0.35, 0.65}, {0.65, 0.35}}};
    const Complex w0 = samples[0].first + samples[0].second * lat.tau;
    // h(z) + h(-z) is constant because f^2 is even; fix it to zero.
    const Complex offset = 0.5 * (primitive(w0) + primitive(-w0));
    auto h = [&](Complex z) { return primitive(z) - offset; };
    for (const auto &[x, y] : samples) {
        const Complex z = x + y * lat.tau;
        const Complex hz = h(z);
        cert.h_oddness_defect = std::max(cert.h_oddness_defect, std::abs(hz + h(-z)));
        cert.h_periodicity_defect = std::max(cert.h_periodicity_defect, std::abs(h(z + 1.0) - hz));
        cert.h_periodicity_defect = std::max(cert.h_periodicity_defect, std::abs(h(z + lat.tau) - hz));
    }
    cert.clauses[2] = cert.h_periodicity_defect < 1e-8 && cert.h_oddness_defect < 1e-8;

    // Zeros of f by Newton from a grid over the fundamental cell.
    const double guard = pole_guard(lat);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            Complex z = (i + 0.5) / 6.0 + (j + 0.5) / 6.0 * lat.tau;
            bool ok = false;
            for (int it = 0; it < 80; ++it) {
                Complex dz = f(z) / f.derivative(z);
                if (!std::isfinite(dz.real()) || !std::isfinite(dz.imag())) {
                    break;
                }
                if (std::abs(dz) > 0.1) {
                    dz *= 0.1 / std::abs(dz);
                }
                z -= dz;
                if (std::abs(dz) < 1e-14) {
                    ok = true;
                    break;
                }
            }
            if (!ok || std::abs(f(z)) > 1e-10 || pole_distance(lat, z, z) < 0.1 * guard) {
                continue;
            }
            z = reduce_to_cell(lat, z);
            const bool seen = std::any_of(cert.zeros.begin(), cert.zeros.end(),
                                          [&](Complex o) { return lattice_separation(lat, o, z) < 1e-7; });
            if (!seen) {
                cert.zeros.push_back(z);
            }
        }
    }
    std::sort(cert.zeros.begin(), cert.zeros.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    cert.min_zero_derivative = std::numeric_limits<double>::infinity();
    for (const auto &z : cert.zeros) {
        cert.min_zero_derivative = std::min(cert.min_zero_derivative, std::abs(f.derivative(z)));
        cert.critical_values.push_back(h(z));
    }
    for (const auto &v : cert.critical_values) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto &u : cert.critical_values) {
            best = std::min(best, std::abs(v + u));
        }
        cert.critical_pairing_defect = std::max(cert.critical_pairing_defect, best);
    }
    // A degree-4 elliptic function with four distinct zeros has only simple ones.
    cert.clauses[3] = cert.zeros.size() == 4 && cert.min_zero_derivative > 1e-6 && cert.critical_pairing_defect < 1e-7;

    static const std::array<const char *, 4> names{
        "clause 1: residue quadric residual", "clause 2: period residual",
        "clause 3: h is not doubly periodic and odd", "clause 4: zeros of f or critical value pairing"};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!cert.clauses[i]) {
            cert.failure = names[i];
            break;
        }
    }
    return cert;
}

SolutionCertificate verify_solution(const Lattice &lat, const EllipticSolution &s)
{
    auto cert = certify_solution(lat, s);
    if (!cert.passed()) {
        throw Error(ErrorCode::CertificateFailed, cert.failure);
    }
    return cert;
}

} // namespace oddcover
