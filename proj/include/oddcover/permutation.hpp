#ifndef ODDCOVER_PERMUTATION_HPP
#define ODDCOVER_PERMUTATION_HPP

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oddcover
{

enum class Parity
{
    Even,
    Odd
};

std::string_view to_string(Parity p);

/// Element of S_d in one-line form.
///
/// The public interface is 1-indexed: `p(i)` is the image of i for
/// i in {1,...,d}. Composition is left-to-right, (a*b)(x) = b(a(x)), so a
/// written product of loops reads in the order the loops are traversed.
class Permutation
{
public:
    /// Identity of degree d (d >= 1).
    explicit Permutation(int degree);

    static Permutation identity(int degree) { return Permutation(degree); }

    /// One-line form, 1-indexed. Throws InvalidPermutation unless the input
    /// is a bijection of {1,...,d}.
    static Permutation from_one_line(const std::vector<int> &images);

    /// Product of disjoint cycles in S_degree, 1-indexed entries. Cycles of
    /// length 1 are allowed and ignored.
    static Permutation from_cycles(int degree, const std::vector<std::vector<int>> &cycles);

    /// Parses the display form "(1 2 3)(4 5)"; "()" or "" is the identity.
    static Permutation parse(int degree, std::string_view text);

    int degree() const noexcept { return static_cast<int>(img_.size()); }

    /// Image of x, 1-indexed.
    int operator()(int x) const { return img_.at(static_cast<std::size_t>(x - 1)) + 1; }

    std::vector<int> one_line() const;

    /// 0-indexed images; hot loops use this directly.
    std::span<const int> raw() const noexcept { return img_; }

    bool is_identity() const noexcept;

    /// Display form with fixed points omitted, "()" for the identity.
    std::string to_string() const;

    friend bool operator==(const Permutation &, const Permutation &) = default;
    friend auto operator<=>(const Permutation &, const Permutation &) = default;

private:
    struct raw_tag
    {};
    Permutation(std::vector<int> images, raw_tag) : img_(std::move(images)) {}

    friend Permutation compose(const Permutation &, const Permutation &);
    friend Permutation inverse(const Permutation &);
    friend Permutation permutation_from_raw(std::vector<int>);

    std::vector<int> img_;
};

/// Builds from 0-indexed images without validation. Internal hot paths only.
Permutation permutation_from_raw(std::vector<int> images);

/// Left-to-right product: result(x) = b(a(x)). Throws DegreeMismatch.
Permutation compose(const Permutation &a, const Permutation &b);

inline Permutation operator*(const Permutation &a, const Permutation &b) { return compose(a, b); }

/// Left-to-right product of a list; identity of `degree` if empty.
Permutation product(std::span<const Permutation> factors, int degree);

Permutation inverse(const Permutation &a);

/// by^-1 * a * by.
Permutation conjugate(const Permutation &a, const Permutation &by);

Parity parity(const Permutation &a);

using Cycle = std::vector<int>;

/// Canonical disjoint cycle decomposition: each cycle starts at its minimal
/// element, cycles sorted by that element, fixed points included.
std::vector<Cycle> cycle_decomposition(const Permutation &a);

/// Multiset of cycle lengths (fixed points included), non-increasing.
struct CycleType
{
    std::vector<int> parts;

    friend bool operator==(const CycleType &, const CycleType &) = default;
};

CycleType cycle_type(const Permutation &a);
int cycle_count(const Permutation &a);
bool is_three_cycle(const Permutation &a);
std::uint64_t order(const Permutation &a);

/// Orbits of the group generated by `gens` on {1,...,degree}, each sorted,
/// listed by minimal element.
std::vector<std::vector<int>> orbits(std::span<const Permutation> gens, int degree);

/// Same, degree inferred; throws EmptyGeneratorList when `gens` is empty.
std::vector<std::vector<int>> orbits(std::span<const Permutation> gens);

bool is_transitive(std::span<const Permutation> gens, int degree);

/// Whether a (even) is the square of an even permutation. Throws OddInput.
bool is_square_in_alternating(const Permutation &a);

/// An even b with b*b == a. Odd cycles of a are rooted individually
/// (c -> c^((m+1)/2)); equal-length even cycles are paired and interleaved;
/// when that root is odd, one pair of equal-length odd cycles is interleaved
/// instead to fix parity.
///
/// With `rng` set, pairings, interleaving offsets and the parity-repair
/// pair are drawn at random, and extra odd pairs may be interleaved two at
/// a time; the result is still an even square root of a.
///
/// Throws OddInput, NotASquare.
Permutation alternating_square_root(const Permutation &a, std::mt19937_64 *rng = nullptr);

/// Exactly floor(n/2) three-cycles whose left-to-right product is a.
/// Throws OddInput, DegreeTooSmall (n < 3, or the identity of S_3 which has
/// no such factorization).
std::vector<Permutation> factor_into_three_cycles(const Permutation &a);

/// Uniform draw in [0, bound) from a 64-bit engine; stable across platforms.
inline std::uint64_t draw_below(std::mt19937_64 &rng, std::uint64_t bound) { return rng() % bound; }

/// Uniformly random permutation of degree d (Fisher-Yates on draw_below).
Permutation random_permutation(int degree, std::mt19937_64 &rng);

} // namespace oddcover

#endif
