#ifndef ODDCOVER_ENUMERATION_HPP
#define ODDCOVER_ENUMERATION_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "oddcover/monodromy.hpp"

namespace oddcover
{

/// Largest genus accepted by the exhaustive scan.
inline constexpr int max_exhaustive_genus = 2;

struct Shard
{
    int index = 0;
    int total = 1;
};

/// Census bucket for one profile, keyed by the multiset of the n_i.
struct ProfileCount
{
    std::uint64_t tuple_count = 0;
    /// Canonical class representatives, packed as candidate indices (7 bits
    /// per entry, first entry lowest). Merging shards takes the union.
    std::set<std::uint64_t> classes;
    std::uint64_t verified = 0;
    std::uint64_t verify_failures = 0;

    std::uint64_t class_count() const { return classes.size(); }
    bool operator==(const ProfileCount &) const = default;
};

struct ClassCensus
{
    int g = 1;
    /// Sorted, non-increasing n_i -> counts.
    std::map<std::vector<int>, ProfileCount> counts;
    /// Excluded from comparisons.
    double wall_time_seconds = 0.0;

    void merge(const ClassCensus &other);
    bool operator==(const ClassCensus &o) const { return g == o.g && counts == o.counts; }
};

struct Checkpoint
{
    std::uint64_t task_hash = 0;
    /// Completed work units (first-entry candidates of this shard, in order).
    std::uint64_t cursor = 0;
    ClassCensus partial;
};

struct EnumerationTask
{
    int g = 1;
    /// Filter on the multiset of the n_i. A filter whose entries do not sum
    /// to g-1 is accepted and simply matches nothing.
    std::optional<RamificationProfile> profile;
    bool require_transitive = true;
    Shard shard;
    std::optional<Checkpoint> checkpoint;
};

/// Sorted non-increasing copy of p.n.
std::vector<int> census_key(const RamificationProfile &p);

/// The 3-cycles of S_d in the candidate order (ascending one-line notation).
std::vector<Permutation> three_cycle_candidates(int d);

/// FNV-1a over g, profile filter, transitivity flag and shard.
std::uint64_t task_hash(const EnumerationTask &task);

/// Unpacks a class representative stored in ProfileCount::classes.
MonodromyTuple unpack_representative(int g, std::uint64_t packed);

/// Calls `sink` for every tuple of 3-cycles passing the conditions (and the
/// filter / transitivity requirement), in lexicographic candidate order,
/// restricted to the shard. Throws SearchSpaceTooLarge, InvalidProfile,
/// InvalidShard.
void enumerate_tuples(const EnumerationTask &task, const std::function<void(const MonodromyTuple &)> &sink);

/// Lexicographically least conjugate of t (entries compared by one-line
/// notation) under the centralizer of ell, which has 2^{2g} (2g)! elements.
MonodromyTuple canonical_class_representative(const MonodromyTuple &t);

struct CensusOptions
{
    int jobs = 1;
    /// Run verify_cover on every tuple and tally the outcome.
    bool verify_each = false;
    /// Called after each completed prefix of work units.
    std::function<void(const Checkpoint &)> on_checkpoint;
};

/// Tuple and class counts per profile. Resumes from task.checkpoint when
/// present. Throws SearchSpaceTooLarge, ResumeCursorMismatch, InvalidProfile,
/// InvalidShard.
ClassCensus count_classes(const EnumerationTask &task, const CensusOptions &options = {});

} // namespace oddcover

#endif
