#include "oddcover/permutation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "oddcover/error.hpp"

namespace oddcover
{

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Permutation::Permutation(int degree)
{
    if (degree < 1) {
        throw Error(ErrorCode::InvalidPermutation, "degree must be positive");
    }
    img_.resize(static_cast<std::size_t>(degree));
    std::iota(img_.begin(), img_.end(), 0);
}

Permutation Permutation::from_one_line(const std::vector<int> &images)
{
    const int d = static_cast<int>(images.size());
    if (d < 1) {
        throw Error(ErrorCode::InvalidPermutation, "empty one-line form");
    }
    std::vector<int> img(images.size());
    std::vector<bool> seen(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
        const int v = images[i];
        if (v < 1 || v > d || seen[static_cast<std::size_t>(v - 1)]) {
            throw Error(ErrorCode::InvalidPermutation, "one-line form is not a bijection of {1..d}");
        }
        seen[static_cast<std::size_t>(v - 1)] = true;
        img[i] = v - 1;
    }
    return Permutation(std::move(img), raw_tag{});
}

Permutation Permutation::from_cycles(int degree, const std::vector<std::vector<int>> &cycles)
{
    Permutation p(degree);
    std::vector<bool> used(static_cast<std::size_t>(degree), false);
    for (const auto &c : cycles) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            const int x = c[k];
            if (x < 1 || x > degree || used[static_cast<std::size_t>(x - 1)]) {
                throw Error(ErrorCode::InvalidPermutation, "cycles are not disjoint within {1..d}");
            }
            used[static_cast<std::size_t>(x - 1)] = true;
            p.img_[static_cast<std::size_t>(x - 1)] = c[(k + 1) % c.size()] - 1;
        }
    }
    return p;
}

Permutation Permutation::parse(int degree, std::string_view text)
{
    std::vector<std::vector<int>> cycles;
    std::vector<int> *cur = nullptr;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == '(') {
            if (cur) {
                throw Error(ErrorCode::ParseError, "nested '(' in cycle notation");
            }
            cur = &cycles.emplace_back();
            ++i;
        } else if (ch == ')') {
            if (!cur) {
                throw Error(ErrorCode::ParseError, "unbalanced ')' in cycle notation");
            }
            cur = nullptr;
            ++i;
        } else if (ch == ' ' || ch == ',' || ch == '\t') {
            ++i;
        } else if (ch >= '0' && ch <= '9') {
            if (!cur) {
                throw Error(ErrorCode::ParseError, "number outside a cycle");
            }
            int v = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                v = v * 10 + (text[i] - '0');
                ++i;
            }
            cur->push_back(v);
        } else {
            throw Error(ErrorCode::ParseError, "unexpected character in cycle notation");
        }
    }
    if (cur) {
        throw Error(ErrorCode::ParseError, "unterminated cycle");
    }
    return from_cycles(degree, cycles);
}

std::vector<int> Permutation::one_line() const
{
    std::vector<int> out(img_.size());
    std::transform(img_.begin(), img_.end(), out.begin(), [](int v) { return v + 1; });
    return out;
}

bool Permutation::is_identity() const noexcept
{
    for (std::size_t i = 0; i < img_.size(); ++i) {
        if (img_[i] != static_cast<int>(i)) {
            return false;
        }
    }
    return true;
}

std::string Permutation::to_string() const
{
    std::ostringstream os;
    bool any = false;
    for (const auto &c : cycle_decomposition(*this)) {
        if (c.size() < 2) {
            continue;
        }
        any = true;
        os << '(';
        for (std::size_t k = 0; k < c.size(); ++k) {
            os << (k ? " " : "") << c[k];
        }
        os << ')';
    }
    return any ? os.str() : "()";
}

Permutation permutation_from_raw(std::vector<int> images) { return Permutation(std::move(images), Permutation::raw_tag{}); }

Permutation compose(const Permutation &a, const Permutation &b)
{
    if (a.degree() != b.degree()) {
        throw Error(ErrorCode::DegreeMismatch, "compose: degrees differ");
    }
    std::vector<int> out(a.img_.size());
    for (std::size_t x = 0; x < out.size(); ++x) {
        out[x] = b.img_[static_cast<std::size_t>(a.img_[x])];
    }
    return Permutation(std::move(out), Permutation::raw_tag{});
}

Permutation product(std::span<const Permutation> factors, int degree)
{
    Permutation acc(degree);
    for (const auto &f : factors) {
        acc = compose(acc, f);
    }
    return acc;
}

Permutation inverse(const Permutation &a)
{
    std::vector<int> out(a.img_.size());
    for (std::size_t x = 0; x < out.size(); ++x) {
        out[static_cast<std::size_t>(a.img_[x])] = static_cast<int>(x);
    }
    return Permutation(std::move(out), Permutation::raw_tag{});
}

Permutation conjugate(const Permutation &a, const Permutation &by)
{
    if (a.degree() != by.degree()) {
        throw Error(ErrorCode::DegreeMismatch, "conjugate: degrees differ");
    }
    // (by^-1 a by)(by(x)) = by(a(x))
    const auto src = a.raw();
    const auto b = by.raw();
    std::vector<int> out(src.size());
    for (std::size_t x = 0; x < src.size(); ++x) {
        out[static_cast<std::size_t>(b[x])] = b[static_cast<std::size_t>(src[x])];
    }
    return permutation_from_raw(std::move(out));
}

int cycle_count(const Permutation &a)
{
    const auto img = a.raw();
    std::vector<bool> seen(img.size(), false);
    int count = 0;
    for (std::size_t s = 0; s < img.size(); ++s) {
        if (seen[s]) {
            continue;
        }
        ++count;
        for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(img[x])) {
            seen[x] = true;
        }
    }
    return count;
}

Parity parity(const Permutation &a) { return ((a.degree() - cycle_count(a)) % 2 == 0) ? Parity::Even : Parity::Odd; }

std::vector<Cycle> cycle_decomposition(const Permutation &a)
{
    const auto img = a.raw();
    std::vector<bool> seen(img.size(), false);
    std::vector<Cycle> out;
    for (std::size_t s = 0; s < img.size(); ++s) {
        if (seen[s]) {
            continue;
        }
        Cycle c;
        for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(img[x])) {
            seen[x] = true;
            c.push_back(static_cast<int>(x) + 1);
        }
        out.push_back(std::move(c));
    }
    return out;
}

CycleType cycle_type(const Permutation &a)
{
    CycleType t;
    for (const auto &c : cycle_decomposition(a)) {
        t.parts.push_back(static_cast<int>(c.size()));
    }
    std::sort(t.parts.begin(), t.parts.end(), std::greater<>());
    return t;
}

bool is_three_cycle(const Permutation &a)
{
    int moved = 0;
    for (const auto &c : cycle_decomposition(a)) {
        if (c.size() == 3) {
            ++moved;
        } else if (c.size() != 1) {
            return false;
        }
    }
    return moved == 1;
}

std::uint64_t order(const Permutation &a)
{
    std::uint64_t l = 1;
    for (const auto &c : cycle_decomposition(a)) {
        l = std::lcm(l, static_cast<std::uint64_t>(c.size()));
    }
    return l;
}

std::vector<std::vector<int>> orbits(std::span<const Permutation> gens, int degree)
{
    std::vector<int> parent(static_cast<std::size_t>(degree));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto &g : gens) {
        if (g.degree() != degree) {
            throw Error(ErrorCode::DegreeMismatch, "orbits: generator degree differs");
        }
        const auto img = g.raw();
        for (int x = 0; x < degree; ++x) {
            const int rx = find(x);
            const int ry = find(img[static_cast<std::size_t>(x)]);
            if (rx != ry) {
                parent[static_cast<std::size_t>(std::max(rx, ry))] = std::min(rx, ry);
            }
        }
    }
    std::map<int, std::vector<int>> by_root;
    for (int x = 0; x < degree; ++x) {
        by_root[find(x)].push_back(x + 1);
    }
    std::vector<std::vector<int>> out;
    out.reserve(by_root.size());
    for (auto &[root, members] : by_root) {
        out.push_back(std::move(members));
    }
    return out;
}

std::vector<std::vector<int>> orbits(std::span<const Permutation> gens)
{
    if (gens.empty()) {
        throw Error(ErrorCode::EmptyGeneratorList, "cannot infer degree from an empty generator list");
    }
    return orbits(gens, gens.front().degree());
}

bool is_transitive(std::span<const Permutation> gens, int degree) { return orbits(gens, degree).size() == 1; }

namespace
{

void require_even(const Permutation &a, const char *who)
{
    if (parity(a) != Parity::Even) {
        throw Error(ErrorCode::OddInput, std::string(who) + ": input permutation is odd");
    }
}

// Writes the unique m-cycle square root of an odd-length cycle: c^((m+1)/2).
void root_odd_cycle(const Cycle &c, std::vector<int> &out)
{
    const std::size_t m = c.size();
    const std::size_t step = (m + 1) / 2;
    for (std::size_t k = 0; k < m; ++k) {
        out[static_cast<std::size_t>(c[k] - 1)] = c[(k + step) % m] - 1;
    }
}

// (a1 b1 a2 b2 ... am bm) squares to (a1 ... am)(b1 ... bm); `shift` rotates b.
void interleave(const Cycle &a, const Cycle &b, std::size_t shift, std::vector<int> &out)
{
    const std::size_t m = a.size();
    for (std::size_t k = 0; k < m; ++k) {
        const int ak = a[k];
        const int bk = b[(k + shift) % m];
        const int ak1 = a[(k + 1) % m];
        out[static_cast<std::size_t>(ak - 1)] = bk - 1;
        out[static_cast<std::size_t>(bk - 1)] = ak1 - 1;
    }
}

template <typename T>
void shuffle_with(std::vector<T> &v, std::mt19937_64 &rng)
{
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[static_cast<std::size_t>(draw_below(rng, i))]);
    }
}

} // namespace

Permutation random_permutation(int degree, std::mt19937_64 &rng)
{
    std::vector<int> img(static_cast<std::size_t>(degree));
    std::iota(img.begin(), img.end(), 0);
    shuffle_with(img, rng);
    return permutation_from_raw(std::move(img));
}

bool is_square_in_alternating(const Permutation &a)
{
    require_even(a, "is_square_in_alternating");
    const auto cycles = cycle_decomposition(a);
    const bool all_odd = std::all_of(cycles.begin(), cycles.end(), [](const Cycle &c) { return c.size() % 2 == 1; });
    if (all_odd) {
        return true;
    }
    try {
        (void)alternating_square_root(a);
        return true;
    } catch (const Error &e) {
        if (e.code() == ErrorCode::NotASquare) {
            return false;
        }
        throw;
    }
}

Permutation alternating_square_root(const Permutation &a, std::mt19937_64 *rng)
{
    require_even(a, "alternating_square_root");
    std::map<std::size_t, std::vector<Cycle>> by_length;
    for (auto &c : cycle_decomposition(a)) {
        by_length[c.size()].push_back(std::move(c));
    }

    std::vector<int> root(a.raw().begin(), a.raw().end());
    std::size_t interleaved_pairs = 0;

    auto rotate_random = [&](Cycle &c) {
        if (rng) {
            std::rotate(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(draw_below(*rng, c.size())), c.end());
        }
    };

    // Even cycles have no root of their own; they must pair up.
    for (auto &[len, cycles] : by_length) {
        if (len % 2 != 0) {
            continue;
        }
        if (cycles.size() % 2 != 0) {
            throw Error(ErrorCode::NotASquare, "odd number of cycles of even length " + std::to_string(len));
        }
        if (rng) {
            shuffle_with(cycles, *rng);
        }
        for (std::size_t k = 0; k + 1 < cycles.size(); k += 2) {
            rotate_random(cycles[k + 1]);
            interleave(cycles[k], cycles[k + 1], 0, root);
            ++interleaved_pairs;
        }
    }

    // Odd cycles: interleaving a pair flips parity of the root.
    std::vector<std::size_t> pairable;
    for (auto &[len, cycles] : by_length) {
        if (len % 2 == 1 && cycles.size() >= 2) {
            pairable.push_back(len);
        }
    }

    std::size_t extra_pairs = 0;
    if (interleaved_pairs % 2 == 1) {
        if (pairable.empty()) {
            throw Error(ErrorCode::NotASquare, "no even square root: parity cannot be repaired");
        }
        extra_pairs = 1;
    }
    if (rng && !pairable.empty() && draw_below(*rng, 2) == 1) {
        extra_pairs += 2;
    }

    // Choose which odd cycles get interleaved. Deterministic mode uses the
    // shortest pairable length and its first two cycles.
    std::vector<std::pair<Cycle, Cycle>> odd_pairs;
    if (extra_pairs > 0) {
        std::vector<std::pair<std::size_t, std::size_t>> slots; // (length, index of first)
        for (auto len : pairable) {
            auto &cycles = by_length[len];
            if (rng) {
                shuffle_with(cycles, *rng);
            }
            for (std::size_t k = 0; k + 1 < cycles.size(); k += 2) {
                slots.emplace_back(len, k);
            }
        }
        if (rng) {
            shuffle_with(slots, *rng);
        }
        // The deterministic repair needs only one slot; random extras may
        // exceed what is available, in which case keep parity by dropping two.
        while (extra_pairs > slots.size()) {
            extra_pairs -= 2;
        }
        for (std::size_t s = 0; s < extra_pairs; ++s) {
            const auto [len, k] = slots[s];
            auto &cycles = by_length[len];
            odd_pairs.emplace_back(cycles[k], cycles[k + 1]);
            cycles[k].clear();
            cycles[k + 1].clear();
        }
    }

    for (auto &[len, cycles] : by_length) {
        if (len % 2 == 0) {
            continue;
        }
        for (const auto &c : cycles) {
            if (!c.empty()) {
                root_odd_cycle(c, root);
            }
        }
    }
    for (auto &[c1, c2] : odd_pairs) {
        rotate_random(c2);
        interleave(c1, c2, 0, root);
    }

    return permutation_from_raw(std::move(root));
}

std::vector<Permutation> factor_into_three_cycles(const Permutation &a)
{
    const int n = a.degree();
    if (n < 3) {
        throw Error(ErrorCode::DegreeTooSmall, "factor_into_three_cycles: degree must be at least 3");
    }
    require_even(a, "factor_into_three_cycles");

    std::vector<Permutation> out;
    auto three = [&](int x, int y, int z) { out.push_back(Permutation::from_cycles(n, {{x, y, z}})); };

    // (a1 ... am) = (a1 a2)(a1 a3)...(a1 am); consecutive transpositions
    // sharing a1 merge into (a1 ai aj). Two disjoint transpositions give
    // (x y)(z w) = (x y w)(x z w).
    const Cycle *pending_even = nullptr;
    const auto cycles = cycle_decomposition(a);
    for (const auto &c : cycles) {
        const std::size_t m = c.size();
        if (m == 1) {
            continue;
        }
        if (m % 2 == 1) {
            for (std::size_t k = 1; k + 1 < m; k += 2) {
                three(c[0], c[k], c[k + 1]);
            }
            continue;
        }
        if (!pending_even) {
            for (std::size_t k = 1; k + 2 < m; k += 2) {
                three(c[0], c[k], c[k + 1]);
            }
            pending_even = &c;
            continue;
        }
        const Cycle &p = *pending_even;
        // leftover (p0 p_last) with (c0 c1)
        three(p[0], p.back(), c[1]);
        three(p[0], c[0], c[1]);
        for (std::size_t k = 2; k + 1 < m; k += 2) {
            three(c[0], c[k], c[k + 1]);
        }
        pending_even = nullptr;
    }

    const std::size_t want = static_cast<std::size_t>(n / 2);
    if (out.empty() && want >= 2) {
        three(1, 2, 3);
        three(1, 3, 2);
    }
    if (out.empty()) {
        throw Error(ErrorCode::DegreeTooSmall, "the identity of S_3 is not a single 3-cycle");
    }
    // Padding: (rho, rho^-1) adds two factors; tau = tau^-1 tau^-1 adds one.
    while (out.size() + 2 <= want) {
        const Permutation rho = Permutation::from_cycles(n, {{1, 2, 3}});
        out.push_back(rho);
        out.push_back(inverse(rho));
    }
    if (out.size() < want) {
        const Permutation last_inv = inverse(out.back());
        out.back() = last_inv;
        out.push_back(last_inv);
    }
    return out;
}

} // namespace oddcover
