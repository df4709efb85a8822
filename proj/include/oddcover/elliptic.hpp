#ifndef ODDCOVER_ELLIPTIC_HPP
#define ODDCOVER_ELLIPTIC_HPP

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace oddcover
{

using Complex = std::complex<double>;

/// The lattice Z + tau Z with its Weierstrass quasi-periods.
///
/// Convention: eta1 = zeta(z+1) - zeta(z), eta2 = zeta(z+tau) - zeta(z),
/// so that eta1 * tau - eta2 = 2 pi i.
struct Lattice
{
    Complex tau;
    Complex q;                             ///< exp(pi i tau)
    std::array<Complex, 4> half_periods{}; ///< 0, 1/2, tau/2, (1+tau)/2
    Complex eta1;
    Complex eta2;
    double legendre_residual = 0.0;        ///< from eta values measured on the raw series
};

/// Throws DegenerateLattice unless Im tau > 0 and |q| < 1 - 1e-6.
Lattice lattice_init(Complex tau);

Complex weierstrass_zeta(const Lattice &lat, Complex z);
Complex weierstrass_p(const Lattice &lat, Complex z);

/// Residues at the four 2-torsion points; members of L have zero sum.
using ResidueVector = std::array<Complex, 4>;

/// f(z) = sum a_i zeta(z - t_i) + c, with c making f odd.
class AntiInvariantFunction
{
public:
    AntiInvariantFunction(const Lattice &lat, const ResidueVector &a);

    Complex operator()(Complex z) const;
    /// f'(z) = -sum a_i p(z - t_i)
    Complex derivative(Complex z) const;
    Complex constant() const { return c_; }
    const ResidueVector &residues() const { return a_; }
    const Lattice &lattice() const { return lat_; }

private:
    Lattice lat_;
    ResidueVector a_;
    Complex c_;
};

/// Throws ResidueSumNonzero unless sum a_i vanishes.
AntiInvariantFunction build_f(const Lattice &lat, const ResidueVector &a);

/// Distance from the segment [from, to] to the nearest 2-torsion translate.
double pole_distance(const Lattice &lat, Complex from, Complex to);

/// Pole-distance guard radius: 0.05 min(1, Im tau).
double pole_guard(const Lattice &lat);

inline constexpr Complex period_basepoint_offset{0.1837, 0.2912}; ///< z0 = re + im * tau

/// Integral of f^2 dz along the straight segment; adaptive tanh-sinh.
Complex integrate_f_squared(const AntiInvariantFunction &f, Complex from, Complex to);

/// (Psi_1, Psi_2): integrals of f^2 dz along z0 -> z0+1 and z0 -> z0+tau.
/// The basepoint is re-jittered up to five times if a path comes within the
/// guard radius of a pole. Throws ResidueSumNonzero, PathTooCloseToPole.
std::array<Complex, 2> period_map(const Lattice &lat, const ResidueVector &a);

using Matrix3 = std::array<std::array<Complex, 3>, 3>;
using Vector3 = std::array<Complex, 3>;

/// Coordinates on L with respect to u1 = e1-e2, u2 = e1-e3, u3 = e1-e4.
ResidueVector from_coordinates(const Vector3 &x);
Vector3 to_coordinates(const ResidueVector &a);

/// The two components of Psi as symmetric forms on the coordinates of L,
/// obtained by polarization.
struct QuadraticForms
{
    std::array<Matrix3, 2> psi;
};

QuadraticForms quadratic_forms(const Lattice &lat);

Complex evaluate(const Matrix3 &m, const Vector3 &x);

/// Largest-modulus coordinate scaled to exactly 1.
ResidueVector normalize_projective(const ResidueVector &a);

/// Fubini-Study distance (an angle in [0, pi/2]).
double projective_distance(const ResidueVector &a, const ResidueVector &b);

/// Coordinate permutation induced by translation by the k-th nonzero
/// 2-torsion point (k = 1, 2, 3): (b,a,d,c), (c,d,a,b), (d,c,b,a).
ResidueVector two_torsion_swap(const ResidueVector &a, int k);

struct EllipticSolution
{
    ResidueVector a{};
    double residual = 0.0;       ///< max |Psi_j(a)|
    double on_q1_residual = 0.0; ///< |sum a_i^2|
    int orbit_id = 0;
};

/// All distinct points of P(L) where both components of Psi vanish.
/// Throws SolveFailed, DegenerateLattice.
std::vector<EllipticSolution> solve_theta(const Lattice &lat);

struct SolutionCertificate
{
    double residue_quadric_residual = 0.0; ///< clause 1
    double psi_residual = 0.0;             ///< clause 2
    double h_periodicity_defect = 0.0;     ///< clause 3
    double h_oddness_defect = 0.0;         ///< clause 3
    std::vector<Complex> zeros;            ///< clause 4, reduced to the fundamental cell
    double min_zero_derivative = 0.0;      ///< smallest |f'| at a zero
    std::vector<Complex> critical_values;  ///< h at the zeros of f
    double critical_pairing_defect = 0.0;
    std::array<bool, 4> clauses{};
    std::string failure;                   ///< empty when every clause holds

    bool passed() const { return clauses[0] && clauses[1] && clauses[2] && clauses[3]; }
};

/// Evaluates every clause without throwing.
SolutionCertificate certify_solution(const Lattice &lat, const EllipticSolution &s);

/// certify_solution, throwing CertificateFailed naming the first failing clause.
SolutionCertificate verify_solution(const Lattice &lat, const EllipticSolution &s);

} // namespace oddcover

#endif
