#ifndef ODDCOVER_SPIN_RESIDUE_HPP
#define ODDCOVER_SPIN_RESIDUE_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oddcover/monodromy.hpp"
#include "oddcover/permutation.hpp"

namespace oddcover
{

using Rational = boost::multiprecision::cpp_rational;

/// Every profile of genus g, lexicographic. There are C(3g, g-1) of them.
std::vector<RamificationProfile> enumerate_profiles(int g);

/// C(3g, g-1), computed as a binomial coefficient.
std::uint64_t count_profiles(int g);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct SpinParity
{
    Parity parity = Parity::Odd;
    int h0 = 1;
};

/// Parity of the theta characteristic O(F), F = sum n_i P_i.
///
/// Pairs 2P_i ~ g^1_2 reduce F to m g^1_2 + sum_{i in T} P_i with
/// T = {i : n_i odd} and m = (g-1-|T|)/2; then h0 = m + 1.
SpinParity spin_parity(const RamificationProfile &p);

/// Residue vectors: C^{2g+2} cut down by sum x_i = 0.
struct ResidueSpace
{
    int g = 1;
    int ambient = 4;
    int dimension = 3;
};

ResidueSpace residue_space(int g);

/// sum x_i^2 / (2 n_i + 1) on the residue space.
struct ResidueQuadric
{
    RamificationProfile profile;
    std::vector<Rational> coefficients; ///< 1/(2 n_i + 1)
    int rank_on_residue_space = 0;      ///< exact rank of the form restricted to sum x_i = 0

    bool smooth() const { return rank_on_residue_space == 2 * profile.g + 1; }
};

ResidueQuadric residue_quadric(const RamificationProfile &p);

/// Throws DimensionMismatch unless |x| = 2g+2.
std::complex<double> evaluate(const ResidueQuadric &q, std::span<const std::complex<double>> x);
Rational evaluate(const ResidueQuadric &q, std::span<const Rational> x);

} // namespace oddcover

#endif
