#include "oddcover/spin_residue.hpp"

#include <string>

#include "oddcover/error.hpp"

namespace oddcover
{

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

std::uint64_t count_profiles(int g)
{
    if (g < 1) {
        throw Error(ErrorCode::InvalidProfile, "genus must be at least 1");
    }
    return binomial(static_cast<std::uint64_t>(3 * g), static_cast<std::uint64_t>(g - 1));
}

std::vector<RamificationProfile> enumerate_profiles(int g)
{
    if (g < 1) {
        throw Error(ErrorCode::InvalidProfile, "genus must be at least 1");
    }
    const std::size_t slots = static_cast<std::size_t>(2 * g + 2);
    std::vector<RamificationProfile> out;
    std::vector<int> n(slots, 0);
    // Lexicographic order: earlier slots vary slowest, so fill left to
    // right taking the smallest admissible value first.
    auto rec = [&](auto &&self, std::size_t i, int remaining) -> void {
        if (i + 1 == slots) {
            n[i] = remaining;
            out.push_back(RamificationProfile{g, n});
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            n[i] = v;
            self(self, i + 1, remaining - v);
        }
    };
    rec(rec, 0, g - 1);
    return out;
}

SpinParity spin_parity(const RamificationProfile &p)
{
    validate(p);
    int odd_entries = 0;
    for (int x : p.n) {
        odd_entries += x % 2;
    }
    // |T| = g-1 (mod 2) since sum n_i = g-1.
    const int m = (p.g - 1 - odd_entries) / 2;
    SpinParity s;
    s.h0 = m + 1;
    s.parity = (s.h0 % 2 == 1) ? Parity::Odd : Parity::Even;
    return s;
}

ResidueSpace residue_space(int g)
{
    if (g < 1) {
        throw Error(ErrorCode::InvalidProfile, "genus must be at least 1");
    }
    return ResidueSpace{g, 2 * g + 2, 2 * g + 1};
}

namespace
{

int rational_rank(std::vector<std::vector<Rational>> m)
{
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        std::swap(m[piv], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) {
                continue;
            }
            const Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) {
                m[r][k] -= f * m[rank][k];
            }
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

} // namespace

ResidueQuadric residue_quadric(const RamificationProfile &p)
{
    validate(p);
    ResidueQuadric q;
    q.profile = p;
    for (int x : p.n) {
        q.coefficients.emplace_back(1, 2 * x + 1);
    }
    // Gram matrix on the basis e_i - e_last (i < last) of sum x_i = 0:
    // w_i delta_ij + w_last.
    const std::size_t k = q.coefficients.size() - 1;
    const Rational &w_last = q.coefficients.back();
    std::vector<std::vector<Rational>> gram(k, std::vector<Rational>(k, w_last));
    for (std::size_t i = 0; i < k; ++i) {
        gram[i][i] += q.coefficients[i];
    }
    q.rank_on_residue_space = rational_rank(std::move(gram));
    return q;
}

std::complex<double> evaluate(const ResidueQuadric &q, std::span<const std::complex<double>> x)
{
    if (x.size() != q.coefficients.size()) {
        throw Error(ErrorCode::DimensionMismatch, "residue vector needs " + std::to_string(q.coefficients.size()) + " coordinates");
    }
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * x[i] / static_cast<double>(2 * q.profile.n[i] + 1);
    }
    return s;
}

Rational evaluate(const ResidueQuadric &q, std::span<const Rational> x)
{
    if (x.size() != q.coefficients.size()) {
        throw Error(ErrorCode::DimensionMismatch, "residue vector needs " + std::to_string(q.coefficients.size()) + " coordinates");
    }
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += q.coefficients[i] * x[i] * x[i];
    }
    return s;
}

} // namespace oddcover
