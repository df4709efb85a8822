#ifndef ODDCOVER_MONODROMY_HPP
#define ODDCOVER_MONODROMY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "oddcover/permutation.hpp"

namespace oddcover
{

/// Multiplicities over infinity: the fibre cycle of the i-th Weierstrass
/// point has length 2 n_i + 1. Ordered (points are labeled).
struct RamificationProfile
{
    int g = 1;
    std::vector<int> n;

    /// Validating constructor; throws InvalidProfile unless g >= 1,
    /// |n| = 2g+2, n_i >= 0 and sum n_i = g-1.
    static RamificationProfile make(int g, std::vector<int> n);

    /// {2 n_i + 1}, non-increasing; sums to 4g.
    CycleType infinity_cycle_type() const;

    friend bool operator==(const RamificationProfile &, const RamificationProfile &) = default;
    friend auto operator<=>(const RamificationProfile &, const RamificationProfile &) = default;
};

void validate(const RamificationProfile &p);

/// The 2g three-cycles m(gamma_1..gamma_2g) in S_4g. The images of the
/// iota-conjugate loops are never stored: they are always ell^-1 tau_i ell.
struct MonodromyTuple
{
    int g = 1;
    std::vector<Permutation> tau;

    /// Throws InvalidTuple unless g >= 1, |tau| = 2g and every entry has degree 4g.
    static MonodromyTuple make(int g, std::vector<Permutation> tau);

    int degree() const { return 4 * g; }

    friend bool operator==(const MonodromyTuple &, const MonodromyTuple &) = default;
    friend auto operator<=>(const MonodromyTuple &, const MonodromyTuple &) = default;
};

/// (1 2)(3 4)...(4g-1 4g).
Permutation canonical_ell(int g);

/// A = tau_1 ... tau_2g.
Permutation tau_product(const MonodromyTuple &t);

/// ell^-1 tau_i ell for each i.
std::vector<Permutation> iota_images(const MonodromyTuple &t);

/// tau_1 ... tau_2g, then the iota images, multiplied in that order.
Permutation gamma_infinity(const MonodromyTuple &t);

/// The same element computed as (A ell)^2.
Permutation gamma_infinity_squared_form(const MonodromyTuple &t);

/// All 4g finite branch permutations: the tau_i followed by their iota images.
std::vector<Permutation> branch_generators(const MonodromyTuple &t);

bool is_transitive(const MonodromyTuple &t);

struct ConditionReport
{
    std::vector<bool> tau_is_three_cycle; ///< condition (i), per entry
    bool three_cycles = false;            ///< condition (i)
    bool iota_compatible = true;          ///< condition (ii): holds by representation
    std::vector<Permutation> iota_images;
    CycleType infinity_type;
    bool infinity_odd = false;            ///< condition (iii)
    std::optional<bool> profile_match;    ///< set only when a profile was supplied

    bool all_pass() const { return three_cycles && iota_compatible && infinity_odd && profile_match.value_or(true); }
};

ConditionReport check_conditions(const MonodromyTuple &t, const std::optional<RamificationProfile> &profile = std::nullopt);

inline constexpr int default_max_attempts = 10000;

/// A transitive tuple passing every condition for `profile`.
///
/// Attempt 0 is canonical: infinity cycles laid out on consecutive points,
/// longest first, with the deterministic square root and factorization.
/// Later attempts draw a random placement, a random even square root and a
/// random conjugating frame for the factorization, all from `seed`.
///
/// Throws InvalidProfile, TransitivityNotFound.
MonodromyTuple build_tuple(const RamificationProfile &profile, std::uint64_t seed = 0, int max_attempts = default_max_attempts);

} // namespace oddcover

#endif
