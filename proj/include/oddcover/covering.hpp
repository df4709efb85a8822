#ifndef ODDCOVER_COVERING_HPP
#define ODDCOVER_COVERING_HPP

#include <optional>
#include <vector>

#include "oddcover/monodromy.hpp"
#include "oddcover/spin_residue.hpp"

namespace oddcover
{

/// Genus of the cover from Riemann-Hurwitz over all 4g+1 branch points:
/// 2 g_C - 2 = -2d + sum_p (d - #cycles(p)). Throws NotTransitive.
int riemann_hurwitz_genus(const MonodromyTuple &t);

/// Every cycle of every branch permutation (tau_i, their iota images,
/// gamma_infinity) has odd length.
bool is_odd_covering(const MonodromyTuple &t);

/// n_i = (len_i - 1)/2 over the cycles of gamma_infinity in canonical
/// cycle order. Throws NotOddProfile unless there are 2g+2 odd cycles.
RamificationProfile profile_from_tuple(const MonodromyTuple &t);

/// Bookkeeping for the quotient C' = C/alpha by the lifted involution.
struct QuotientCertificate
{
    int composite_degree = 0;                 ///< 8g, for C -> P^1 -> P^1/iota
    int composite_infinity_contribution = 0;  ///< forced by RH for the composite: 6g - 2
    std::vector<int> admissible_fixed_counts; ///< k with sum_fixed(4n+1) + sum_rest(2n) matching the above
    int fixed_points = 0;                     ///< the unique admissible k
    int quotient_branch_contribution = 0;     ///< 2g simple branch points of C'->P^1, 2 each
    int quotient_zero_contribution = 0;       ///< 2g double points over 0
    int quotient_infinity_contribution = 0;   ///< sum 2 n_i with every point over infinity fixed
    int quotient_genus = 0;
};

/// Throws ConditionsFailed unless every condition passes and the tuple is transitive.
QuotientCertificate quotient_report(const MonodromyTuple &t);

struct CoveringReport
{
    int g = 1;
    int degree = 4;
    ConditionReport conditions;
    bool transitive = false;
    std::optional<int> genus_upstairs;          ///< absent when not transitive
    bool odd = false;
    std::optional<RamificationProfile> profile; ///< absent when gamma_infinity is not an odd profile
    std::optional<QuotientCertificate> quotient;
    std::optional<SpinParity> spin;
    bool root_normalizes_infinity = false;      ///< B gamma_inf B^-1 == gamma_inf for B = A ell

    bool all_pass() const
    {
        return conditions.all_pass() && transitive && odd && genus_upstairs == g && profile.has_value() &&
               quotient.has_value() && quotient->quotient_genus == 0 && quotient->fixed_points == 2 * g + 2 &&
               root_normalizes_infinity;
    }
};

CoveringReport verify_cover(const MonodromyTuple &t);

} // namespace oddcover

#endif
