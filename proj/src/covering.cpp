#include "oddcover/covering.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "oddcover/error.hpp"

namespace oddcover
{

int riemann_hurwitz_genus(const MonodromyTuple &t)
{
    if (!is_transitive(t)) {
        throw Error(ErrorCode::NotTransitive, "Riemann-Hurwitz needs a connected cover");
    }
    const int d = t.degree();
    int ramification = 0;
    for (const auto &p : branch_generators(t)) {
        ramification += d - cycle_count(p);
    }
    ramification += d - cycle_count(gamma_infinity(t));
    // 2 g_C - 2 = -2d + ramification; the total is even because the
    // branch permutations multiply to the identity.
    return (ramification - 2 * d + 2) / 2;
}

bool is_odd_covering(const MonodromyTuple &t)
{
    auto odd = [](const Permutation &p) {
        const auto ty = cycle_type(p);
        return std::all_of(ty.parts.begin(), ty.parts.end(), [](int x) { return x % 2 == 1; });
    };
    const auto gens = branch_generators(t);
    return std::all_of(gens.begin(), gens.end(), odd) && odd(gamma_infinity(t));
}

RamificationProfile profile_from_tuple(const MonodromyTuple &t)
{
    const auto cycles = cycle_decomposition(gamma_infinity(t));
    if (cycles.size() != static_cast<std::size_t>(2 * t.g + 2)) {
        throw Error(ErrorCode::NotOddProfile, "gamma_infinity has " + std::to_string(cycles.size()) + " cycles, expected 2g+2");
    }
    std::vector<int> n;
    for (const auto &c : cycles) {
        if (c.size() % 2 == 0) {
            throw Error(ErrorCode::NotOddProfile, "gamma_infinity has a cycle of even length");
        }
        n.push_back(static_cast<int>(c.size() - 1) / 2);
    }
    return RamificationProfile::make(t.g, std::move(n));
}

QuotientCertificate quotient_report(const MonodromyTuple &t)
{
    if (!check_conditions(t).all_pass() || !is_transitive(t)) {
        throw Error(ErrorCode::ConditionsFailed, "quotient bookkeeping needs an all-pass transitive tuple");
    }
    const int g = t.g;
    const auto profile = profile_from_tuple(t);

    QuotientCertificate q;
    q.composite_degree = 8 * g;
    // C -> P^1 -> P^1/iota: 2g - 2 = -2(8g) + 4g (over 0) + 4 * 2g (over the
    // images of B_i) + X (over infinity).
    q.composite_infinity_contribution = (2 * g - 2) + 2 * q.composite_degree - 4 * g - 4 * 2 * g;

    // k fixed points among the 2g+2 over infinity: which k admit a subset S
    // with sum_S (4 n_i + 1) + sum_{not S} 2 n_i = X?
    const int points = 2 * g + 2;
    std::vector<std::set<int>> reach(static_cast<std::size_t>(points + 1));
    reach[0].insert(0);
    for (int i = 0; i < points; ++i) {
        const int fixed = 4 * profile.n[static_cast<std::size_t>(i)] + 1;
        const int moved = 2 * profile.n[static_cast<std::size_t>(i)];
        for (int k = i; k >= 0; --k) {
            std::set<int> next_fixed;
            for (int s : reach[static_cast<std::size_t>(k)]) {
                next_fixed.insert(s + fixed);
            }
            std::set<int> stay;
            for (int s : reach[static_cast<std::size_t>(k)]) {
                stay.insert(s + moved);
            }
            reach[static_cast<std::size_t>(k + 1)].insert(next_fixed.begin(), next_fixed.end());
            reach[static_cast<std::size_t>(k)] = std::move(stay);
        }
    }
    for (int k = 0; k <= points; ++k) {
        if (reach[static_cast<std::size_t>(k)].count(q.composite_infinity_contribution)) {
            q.admissible_fixed_counts.push_back(k);
        }
    }
    if (q.admissible_fixed_counts.size() != 1) {
        throw Error(ErrorCode::ConditionsFailed, "fixed-point count over infinity is not forced");
    }
    q.fixed_points = q.admissible_fixed_counts.front();

    // C' -> P^1 of degree 4g: 2g simple branch points (a 3-cycle each),
    // 2g points of index 2 over 0 (alpha swaps the fibre there since ell
    // is fixed-point free), and over infinity the fixed P_i keep index 2n_i+1.
    q.quotient_branch_contribution = 2 * (2 * g);
    q.quotient_zero_contribution = 2 * g;
    q.quotient_infinity_contribution = 2 * std::accumulate(profile.n.begin(), profile.n.end(), 0);
    const int twice_genus_minus_two = -2 * (4 * g) + q.quotient_branch_contribution + q.quotient_zero_contribution +
                                      q.quotient_infinity_contribution;
    q.quotient_genus = (twice_genus_minus_two + 2) / 2;
    return q;
}

CoveringReport verify_cover(const MonodromyTuple &t)
{
    CoveringReport r;
    r.g = t.g;
    r.degree = t.degree();
    r.conditions = check_conditions(t);
    r.transitive = is_transitive(t);
    if (r.transitive) {
        r.genus_upstairs = riemann_hurwitz_genus(t);
    }
    r.odd = is_odd_covering(t);
    try {
        r.profile = profile_from_tuple(t);
        r.spin = spin_parity(*r.profile);
    } catch (const Error &e) {
        if (e.code() != ErrorCode::NotOddProfile && e.code() != ErrorCode::InvalidProfile) {
            throw;
        }
    }
    if (r.conditions.all_pass() && r.transitive) {
        r.quotient = quotient_report(t);
    }
    const auto gamma = gamma_infinity(t);
    const auto root = compose(tau_product(t), canonical_ell(t.g));
    r.root_normalizes_infinity = compose(compose(root, gamma), inverse(root)) == gamma;
    return r;
}

} // namespace oddcover
