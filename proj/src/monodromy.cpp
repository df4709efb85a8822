#include "oddcover/monodromy.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "oddcover/error.hpp"

namespace oddcover
{

void validate(const RamificationProfile &p)
{
    if (p.g < 1) {
        throw Error(ErrorCode::InvalidProfile, "genus must be at least 1");
    }
    if (p.n.size() != static_cast<std::size_t>(2 * p.g + 2)) {
        throw Error(ErrorCode::InvalidProfile,
                    "profile needs 2g+2 = " + std::to_string(2 * p.g + 2) + " entries, got " + std::to_string(p.n.size()));
    }
    if (std::any_of(p.n.begin(), p.n.end(), [](int x) { return x < 0; })) {
        throw Error(ErrorCode::InvalidProfile, "profile entries must be non-negative");
    }
    const int sum = std::accumulate(p.n.begin(), p.n.end(), 0);
    if (sum != p.g - 1) {
        throw Error(ErrorCode::InvalidProfile, "profile entries must sum to g-1 = " + std::to_string(p.g - 1));
    }
}

RamificationProfile RamificationProfile::make(int g, std::vector<int> n)
{
    RamificationProfile p{g, std::move(n)};
    validate(p);
    return p;
}

CycleType RamificationProfile::infinity_cycle_type() const
{
    CycleType t;
    for (int x : n) {
        t.parts.push_back(2 * x + 1);
    }
    std::sort(t.parts.begin(), t.parts.end(), std::greater<>());
    return t;
}

MonodromyTuple MonodromyTuple::make(int g, std::vector<Permutation> tau)
{
    if (g < 1) {
        throw Error(ErrorCode::InvalidTuple, "genus must be at least 1");
    }
    if (tau.size() != static_cast<std::size_t>(2 * g)) {
        throw Error(ErrorCode::InvalidTuple, "a genus-" + std::to_string(g) + " tuple has " + std::to_string(2 * g) + " entries");
    }
    for (const auto &t : tau) {
        if (t.degree() != 4 * g) {
            throw Error(ErrorCode::InvalidTuple, "tuple entries must have degree 4g");
        }
    }
    return MonodromyTuple{g, std::move(tau)};
}

Permutation canonical_ell(int g)
{
    std::vector<std::vector<int>> cycles;
    for (int i = 1; i <= 4 * g; i += 2) {
        cycles.push_back({i, i + 1});
    }
    return Permutation::from_cycles(4 * g, cycles);
}

Permutation tau_product(const MonodromyTuple &t) { return product(t.tau, t.degree()); }

std::vector<Permutation> iota_images(const MonodromyTuple &t)
{
    const auto ell = canonical_ell(t.g);
    std::vector<Permutation> out;
    out.reserve(t.tau.size());
    for (const auto &x : t.tau) {
        out.push_back(conjugate(x, ell));
    }
    return out;
}

std::vector<Permutation> branch_generators(const MonodromyTuple &t)
{
    auto out = t.tau;
    for (auto &x : iota_images(t)) {
        out.push_back(std::move(x));
    }
    return out;
}

Permutation gamma_infinity(const MonodromyTuple &t) { return product(branch_generators(t), t.degree()); }

Permutation gamma_infinity_squared_form(const MonodromyTuple &t)
{
    const auto b = compose(tau_product(t), canonical_ell(t.g));
    return compose(b, b);
}

bool is_transitive(const MonodromyTuple &t) { return is_transitive(branch_generators(t), t.degree()); }

ConditionReport check_conditions(const MonodromyTuple &t, const std::optional<RamificationProfile> &profile)
{
    ConditionReport r;
    for (const auto &x : t.tau) {
        r.tau_is_three_cycle.push_back(is_three_cycle(x));
    }
    r.three_cycles = std::all_of(r.tau_is_three_cycle.begin(), r.tau_is_three_cycle.end(), [](bool b) { return b; });
    r.iota_images = iota_images(t);
    r.iota_compatible = true;

    r.infinity_type = cycle_type(gamma_infinity(t));
    const auto &parts = r.infinity_type.parts;
    const bool all_odd = std::all_of(parts.begin(), parts.end(), [](int p) { return p % 2 == 1; });
    int excess = 0;
    for (int p : parts) {
        excess += (p - 1) / 2;
    }
    r.infinity_odd = all_odd && parts.size() == static_cast<std::size_t>(2 * t.g + 2) && excess == t.g - 1;

    if (profile) {
        r.profile_match = profile->g == t.g && profile->infinity_cycle_type() == r.infinity_type;
    }
    return r;
}

namespace
{

// Infinity permutation for the canonical layout: cycles of the profile on
// consecutive points, longest first.
Permutation canonical_infinity(const RamificationProfile &p)
{
    std::vector<std::vector<int>> cycles;
    int next = 1;
    for (int len : p.infinity_cycle_type().parts) {
        std::vector<int> c(static_cast<std::size_t>(len));
        std::iota(c.begin(), c.end(), next);
        next += len;
        cycles.push_back(std::move(c));
    }
    return Permutation::from_cycles(4 * p.g, cycles);
}

std::optional<MonodromyTuple> accept(const RamificationProfile &profile, std::vector<Permutation> tau)
{
    auto t = MonodromyTuple::make(profile.g, std::move(tau));
    if (!check_conditions(t, profile).all_pass() || !is_transitive(t)) {
        return std::nullopt;
    }
    return t;
}

} // namespace

MonodromyTuple build_tuple(const RamificationProfile &profile, std::uint64_t seed, int max_attempts)
{
    validate(profile);
    const int d = 4 * profile.g;
    const auto ell = canonical_ell(profile.g);
    const auto base = canonical_infinity(profile);

    {
        // (A ell)^2 = G with A = B ell^-1 = B ell, so A is even.
        const auto root = alternating_square_root(base);
        if (auto t = accept(profile, factor_into_three_cycles(compose(root, ell)))) {
            return *t;
        }
    }

    std::mt19937_64 rng(seed);
    for (int attempt = 1; attempt < max_attempts; ++attempt) {
        const auto placed = conjugate(base, random_permutation(d, rng));
        const auto root = alternating_square_root(placed, &rng);
        const auto a = compose(root, ell);
        // Factor c^-1 A c and conjugate the factors back by c^-1.
        const auto frame = random_permutation(d, rng);
        const auto frame_inv = inverse(frame);
        auto tau = factor_into_three_cycles(conjugate(a, frame));
        for (auto &x : tau) {
            x = conjugate(x, frame_inv);
        }
        if (auto t = accept(profile, std::move(tau))) {
            return *t;
        }
    }
    throw Error(ErrorCode::TransitivityNotFound,
                "no transitive tuple found within " + std::to_string(max_attempts) + " attempts");
}

} // namespace oddcover
