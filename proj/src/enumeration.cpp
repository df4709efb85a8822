#include "oddcover/enumeration.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "oddcover/covering.hpp"
#include "oddcover/error.hpp"

namespace oddcover
{

void ClassCensus::merge(const ClassCensus &other)
{
    for (const auto &[key, pc] : other.counts) {
        auto &mine = counts[key];
        mine.tuple_count += pc.tuple_count;
        mine.classes.insert(pc.classes.begin(), pc.classes.end());
        mine.verified += pc.verified;
        mine.verify_failures += pc.verify_failures;
    }
}

std::vector<int> census_key(const RamificationProfile &p)
{
    auto key = p.n;
    std::sort(key.begin(), key.end(), std::greater<>());
    return key;
}

std::vector<Permutation> three_cycle_candidates(int d)
{
    std::vector<Permutation> out;
    for (int a = 1; a <= d; ++a) {
        for (int b = a + 1; b <= d; ++b) {
            for (int c = b + 1; c <= d; ++c) {
                out.push_back(Permutation::from_cycles(d, {{a, b, c}}));
                out.push_back(Permutation::from_cycles(d, {{a, c, b}}));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Permutation &x, const Permutation &y) { return x.one_line() < y.one_line(); });
    return out;
}

std::uint64_t task_hash(const EnumerationTask &task)
{
    std::string s = "g=" + std::to_string(task.g) + ";profile=";
    if (task.profile) {
        for (int v : task.profile->n) {
            s += std::to_string(v) + ",";
        }
    } else {
        s += "*";
    }
    s += ";transitive=" + std::to_string(task.require_transitive);
    s += ";shard=" + std::to_string(task.shard.index) + "/" + std::to_string(task.shard.total);

    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

MonodromyTuple unpack_representative(int g, std::uint64_t packed)
{
    const auto cands = three_cycle_candidates(4 * g);
    std::vector<Permutation> tau;
    for (int k = 0; k < 2 * g; ++k) {
        const auto i = static_cast<std::size_t>((packed >> (7 * k)) & 0x7f);
        if (i >= cands.size()) {
            throw Error(ErrorCode::InvalidTuple, "packed representative out of range");
        }
        tau.push_back(cands[i]);
    }
    return MonodromyTuple::make(g, std::move(tau));
}

namespace
{

constexpr int max_points = 4 * max_exhaustive_genus;
using Arr = std::array<std::uint8_t, max_points>;

// Centralizer of ell: permute the 2g blocks {2b, 2b+1} (0-based), flipping some.
std::vector<std::vector<int>> centralizer_of_ell(int g)
{
    const int blocks = 2 * g;
    std::vector<int> perm(static_cast<std::size_t>(blocks));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        for (int mask = 0; mask < (1 << blocks); ++mask) {
            std::vector<int> z(static_cast<std::size_t>(2 * blocks));
            for (int b = 0; b < blocks; ++b) {
                const int flip = (mask >> b) & 1;
                const int to = perm[static_cast<std::size_t>(b)];
                z[static_cast<std::size_t>(2 * b)] = 2 * to + flip;
                z[static_cast<std::size_t>(2 * b + 1)] = 2 * to + 1 - flip;
            }
            out.push_back(std::move(z));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

class Engine
{
public:
    Engine(int g, const std::optional<std::vector<int>> &filter_type) : g_(g), d_(4 * g), m_(2 * g)
    {
        for (const auto &c : three_cycle_candidates(d_)) {
            Arr a{};
            for (int x = 0; x < d_; ++x) {
                a[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(c.raw()[static_cast<std::size_t>(x)]);
            }
            index_of_[key(a)] = static_cast<int>(cand_.size());
            cand_.push_back(a);
        }
        for (int x = 0; x < d_; ++x) {
            ell_[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(x ^ 1);
        }
        build_levels(filter_type);
        build_symmetry();
    }

    int candidate_count() const { return static_cast<int>(cand_.size()); }

    // Visits every valid tuple whose first entry is candidate `first`.
    template <class Leaf> void scan(int first, Leaf &&leaf) const
    {
        std::array<int, max_points> idx{};
        idx[0] = first;
        const Arr &p = cand_[static_cast<std::size_t>(first)];
        if (!good(m_ - 1, p)) {
            return;
        }
        if (m_ == 1) {
            leaf(idx, p);
        } else {
            descend(1, p, idx, leaf);
        }
    }

    bool transitive(const std::array<int, max_points> &idx) const
    {
        std::array<int, max_points> parent{};
        std::iota(parent.begin(), parent.begin() + d_, 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) {
                x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            }
            return x;
        };
        int components = d_;
        auto unite = [&](int a, int b) {
            a = find(a);
            b = find(b);
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                --components;
            }
        };
        for (int k = 0; k < m_; ++k) {
            const Arr &c = cand_[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            for (int x = 0; x < d_; ++x) {
                const int y = c[static_cast<std::size_t>(x)];
                if (y != x) {
                    unite(x, y);
                    unite(x ^ 1, y ^ 1);
                }
            }
        }
        return components == 1;
    }

    // Profile multiset of the tuple with product a.
    std::vector<int> profile_key(const Arr &a) const
    {
        std::vector<int> key;
        for (int len : cycle_lengths(square(compose(a, ell_)))) {
            key.push_back((len - 1) / 2);
        }
        std::sort(key.begin(), key.end(), std::greater<>());
        return key;
    }

    bool canonical(const std::array<int, max_points> &idx) const
    {
        const auto first = static_cast<std::size_t>(idx[0]);
        if (!orbit_min_[first]) {
            return false;
        }
        for (int z : stabilizer_[first]) {
            const auto &row = conj_[static_cast<std::size_t>(z)];
            for (int k = 1; k < m_; ++k) {
                const int mine = idx[static_cast<std::size_t>(k)];
                const int theirs = row[static_cast<std::size_t>(mine)];
                if (theirs < mine) {
                    return false;
                }
                if (theirs > mine) {
                    break;
                }
            }
        }
        return true;
    }

    static std::uint64_t pack(const std::array<int, max_points> &idx, int m)
    {
        std::uint64_t p = 0;
        for (int k = 0; k < m; ++k) {
            p |= static_cast<std::uint64_t>(idx[static_cast<std::size_t>(k)]) << (7 * k);
        }
        return p;
    }

    MonodromyTuple to_tuple(const std::array<int, max_points> &idx) const
    {
        std::vector<Permutation> tau;
        for (int k = 0; k < m_; ++k) {
            const Arr &c = cand_[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            std::vector<int> raw(c.begin(), c.begin() + d_);
            tau.push_back(permutation_from_raw(std::move(raw)));
        }
        return MonodromyTuple::make(g_, std::move(tau));
    }

private:
    int g_;
    int d_;
    int m_;
    std::vector<Arr> cand_;
    std::unordered_map<std::uint32_t, int> index_of_;
    Arr ell_{};
    // reach_[r]: bitset over packed permutations P for which some r further
    // 3-cycles complete P to a product A with (A ell)^2 of the wanted type.
    std::vector<std::vector<std::uint64_t>> reach_;
    std::vector<std::vector<int>> conj_; // conj_[z][i]
    std::vector<char> orbit_min_;
    std::vector<std::vector<int>> stabilizer_;

    std::uint32_t key(const Arr &a) const
    {
        std::uint32_t k = 0;
        for (int x = 0; x < d_; ++x) {
            k |= static_cast<std::uint32_t>(a[static_cast<std::size_t>(x)]) << (3 * x);
        }
        return k;
    }

    bool good(int remaining, const Arr &p) const
    {
        const std::uint32_t k = key(p);
        return (reach_[static_cast<std::size_t>(remaining)][k >> 6] >> (k & 63)) & 1;
    }

    Arr compose(const Arr &a, const Arr &b) const
    {
        Arr r{};
        for (int x = 0; x < d_; ++x) {
            r[static_cast<std::size_t>(x)] = b[a[static_cast<std::size_t>(x)]];
        }
        return r;
    }

    Arr square(const Arr &a) const { return compose(a, a); }

    std::vector<int> cycle_lengths(const Arr &a) const
    {
        std::vector<int> out;
        unsigned seen = 0;
        for (int x = 0; x < d_; ++x) {
            if (seen & (1u << x)) {
                continue;
            }
            int len = 0;
            for (int y = x; !(seen & (1u << y)); y = a[static_cast<std::size_t>(y)]) {
                seen |= 1u << y;
                ++len;
            }
            out.push_back(len);
        }
        std::sort(out.begin(), out.end(), std::greater<>());
        return out;
    }

    bool wanted(const Arr &a, const std::optional<std::vector<int>> &filter_type) const
    {
        const auto lens = cycle_lengths(square(compose(a, ell_)));
        if (filter_type) {
            return lens == *filter_type;
        }
        return lens.size() == static_cast<std::size_t>(2 * g_ + 2) &&
               std::all_of(lens.begin(), lens.end(), [](int l) { return l % 2 == 1; });
    }

    template <class Leaf>
    void descend(int depth, const Arr &p, std::array<int, max_points> &idx, Leaf &leaf) const
    {
        const int remaining = m_ - depth - 1;
        for (std::size_t i = 0; i < cand_.size(); ++i) {
            const Arr q = compose(p, cand_[i]);
            if (!good(remaining, q)) {
                continue;
            }
            idx[static_cast<std::size_t>(depth)] = static_cast<int>(i);
            if (remaining == 0) {
                leaf(idx, q);
            } else {
                descend(depth + 1, q, idx, leaf);
            }
        }
    }

    void build_levels(const std::optional<std::vector<int>> &filter_type)
    {
        const std::size_t words = (std::size_t{1} << (3 * d_)) / 64 + 1;
        std::vector<Arr> frontier;
        Arr p{};
        std::iota(p.begin(), p.begin() + d_, std::uint8_t{0});
        reach_.assign(static_cast<std::size_t>(m_), std::vector<std::uint64_t>(words, 0));
        auto mark = [&](std::vector<std::uint64_t> &bits, const Arr &a) {
            const std::uint32_t k = key(a);
            const std::uint64_t bit = std::uint64_t{1} << (k & 63);
            if (bits[k >> 6] & bit) {
                return false;
            }
            bits[k >> 6] |= bit;
            return true;
        };
        do {
            // Only even A can be a product of 3-cycles.
            if ((d_ - static_cast<int>(cycle_lengths(p).size())) % 2 == 0 && wanted(p, filter_type)) {
                frontier.push_back(p);
            }
        } while (std::next_permutation(p.begin(), p.begin() + d_));

        // reach_[0] is the target set itself; reach_[r] = reach_[r-1] * c^-1.
        for (const auto &a : frontier) {
            mark(reach_[0], a);
        }
        std::vector<Arr> inverses;
        for (const auto &c : cand_) {
            Arr inv{};
            for (int x = 0; x < d_; ++x) {
                inv[c[static_cast<std::size_t>(x)]] = static_cast<std::uint8_t>(x);
            }
            inverses.push_back(inv);
        }
        for (int r = 1; r < m_; ++r) {
            std::vector<Arr> next;
            for (const auto &q : frontier) {
                for (const auto &ci : inverses) {
                    const Arr pr = compose(q, ci);
                    if (mark(reach_[static_cast<std::size_t>(r)], pr)) {
                        next.push_back(pr);
                    }
                }
            }
            frontier = std::move(next);
        }
    }

    void build_symmetry()
    {
        const auto zs = centralizer_of_ell(g_);
        const std::size_t n = cand_.size();
        orbit_min_.assign(n, 1);
        stabilizer_.assign(n, {});
        for (std::size_t zi = 0; zi < zs.size(); ++zi) {
            const auto &z = zs[zi];
            std::vector<int> zinv(z.size());
            for (std::size_t x = 0; x < z.size(); ++x) {
                zinv[static_cast<std::size_t>(z[x])] = static_cast<int>(x);
            }
            std::vector<int> row(n);
            for (std::size_t i = 0; i < n; ++i) {
                // z^-1 c z: z(y) -> z(c(y)).
                Arr r{};
                for (int x = 0; x < d_; ++x) {
                    const int y = zinv[static_cast<std::size_t>(x)];
                    r[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(z[cand_[i][static_cast<std::size_t>(y)]]);
                }
                const int j = index_of_.at(key(r));
                row[i] = j;
                if (j < static_cast<int>(i)) {
                    orbit_min_[i] = 0;
                }
                if (j == static_cast<int>(i)) {
                    stabilizer_[i].push_back(static_cast<int>(zi));
                }
            }
            conj_.push_back(std::move(row));
        }
    }
};

struct Prepared
{
    std::optional<std::vector<int>> filter_type;
    std::optional<std::vector<int>> filter_key;
    bool filter_infeasible = false;
    std::vector<int> units;
};

Prepared prepare(const EnumerationTask &task)
{
    if (task.g < 1) {
        throw Error(ErrorCode::InvalidProfile, "genus must be at least 1");
    }
    if (task.g > max_exhaustive_genus) {
        throw Error(ErrorCode::SearchSpaceTooLarge,
                    "exhaustive enumeration is limited to g <= " + std::to_string(max_exhaustive_genus));
    }
    if (task.shard.total < 1 || task.shard.index < 0 || task.shard.index >= task.shard.total) {
        throw Error(ErrorCode::InvalidShard, "shard index must satisfy 0 <= index < total");
    }
    Prepared prep;
    if (task.profile) {
        const auto &p = *task.profile;
        if (p.g != task.g || p.n.size() != static_cast<std::size_t>(2 * task.g + 2) ||
            std::any_of(p.n.begin(), p.n.end(), [](int v) { return v < 0; })) {
            throw Error(ErrorCode::InvalidProfile, "profile filter must have 2g+2 non-negative entries");
        }
        prep.filter_key = census_key(p);
        prep.filter_infeasible = std::accumulate(p.n.begin(), p.n.end(), 0) != task.g - 1;
        if (!prep.filter_infeasible) {
            prep.filter_type = p.infinity_cycle_type().parts;
        }
    }
    const int n = static_cast<int>(2 * (4 * task.g) * (4 * task.g - 1) * (4 * task.g - 2) / 6);
    for (int i = task.shard.index; i < n; i += task.shard.total) {
        prep.units.push_back(i);
    }
    return prep;
}

ClassCensus empty_census(int g, const Prepared &prep)
{
    ClassCensus c;
    c.g = g;
    if (prep.filter_key) {
        c.counts[*prep.filter_key];
    } else {
        for (const auto &p : enumerate_profiles(g)) {
            c.counts[census_key(p)];
        }
    }
    return c;
}

} // namespace

void enumerate_tuples(const EnumerationTask &task, const std::function<void(const MonodromyTuple &)> &sink)
{
    const auto prep = prepare(task);
    if (prep.filter_infeasible) {
        return;
    }
    const Engine engine(task.g, prep.filter_type);
    for (int first : prep.units) {
        engine.scan(first, [&](const std::array<int, max_points> &idx, const Arr &) {
            if (!task.require_transitive || engine.transitive(idx)) {
                sink(engine.to_tuple(idx));
            }
        });
    }
}

MonodromyTuple canonical_class_representative(const MonodromyTuple &t)
{
    MonodromyTuple best = t;
    std::vector<std::vector<int>> best_key;
    for (const auto &x : t.tau) {
        best_key.push_back(x.one_line());
    }
    for (const auto &z0 : centralizer_of_ell(t.g)) {
        std::vector<int> one(z0.size());
        std::transform(z0.begin(), z0.end(), one.begin(), [](int v) { return v + 1; });
        const auto z = Permutation::from_one_line(one);
        std::vector<Permutation> tau;
        std::vector<std::vector<int>> k;
        for (const auto &x : t.tau) {
            tau.push_back(conjugate(x, z));
            k.push_back(tau.back().one_line());
        }
        if (k < best_key) {
            best_key = std::move(k);
            best = MonodromyTuple::make(t.g, std::move(tau));
        }
    }
    return best;
}

ClassCensus count_classes(const EnumerationTask &task, const CensusOptions &options)
{
    const auto start = std::chrono::steady_clock::now();
    const auto prep = prepare(task);
    const std::uint64_t hash = task_hash(task);

    ClassCensus acc = empty_census(task.g, prep);
    std::size_t cursor = 0;
    if (task.checkpoint) {
        if (task.checkpoint->task_hash != hash) {
            throw Error(ErrorCode::ResumeCursorMismatch, "checkpoint belongs to a different task");
        }
        if (task.checkpoint->cursor > prep.units.size() || task.checkpoint->partial.g != task.g) {
            throw Error(ErrorCode::ResumeCursorMismatch, "checkpoint cursor is out of range for this task");
        }
        cursor = static_cast<std::size_t>(task.checkpoint->cursor);
        acc.merge(task.checkpoint->partial);
    }

    auto finish = [&] {
        acc.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return acc;
    };
    if (prep.filter_infeasible) {
        return finish();
    }

    const Engine engine(task.g, prep.filter_type);
    const int m = 2 * task.g;

    auto run_unit = [&](int first) {
        ClassCensus part;
        part.g = task.g;
        engine.scan(first, [&](const std::array<int, max_points> &idx, const Arr &product) {
            if (task.require_transitive && !engine.transitive(idx)) {
                return;
            }
            auto &pc = part.counts[engine.profile_key(product)];
            ++pc.tuple_count;
            if (engine.canonical(idx)) {
                pc.classes.insert(Engine::pack(idx, m));
            }
            if (options.verify_each) {
                ++pc.verified;
                if (!verify_cover(engine.to_tuple(idx)).all_pass()) {
                    ++pc.verify_failures;
                }
            }
        });
        return part;
    };

    const std::size_t total_units = prep.units.size();
    std::vector<std::optional<ClassCensus>> done(total_units);
    std::mutex mu;
    std::atomic<std::size_t> next{cursor};
    std::exception_ptr failure;
    std::size_t merged = cursor;

    auto worker = [&] {
        for (;;) {
            const std::size_t u = next.fetch_add(1);
            if (u >= total_units) {
                return;
            }
            ClassCensus part;
            try {
                part = run_unit(prep.units[u]);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = total_units;
                return;
            }
            std::lock_guard lock(mu);
            done[u] = std::move(part);
            bool advanced = false;
            while (merged < total_units && done[merged]) {
                acc.merge(*done[merged]);
                done[merged].reset();
                ++merged;
                advanced = true;
            }
            if (advanced && options.on_checkpoint) {
                options.on_checkpoint(Checkpoint{hash, merged, acc});
            }
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return finish();
}

} // namespace oddcover
