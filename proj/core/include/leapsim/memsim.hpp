#pragma once

#include <cstdint>
#include <functional>
#include <list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>

#include "leapsim/prefetcher.hpp"
#include "leapsim/trace.hpp"

namespace leapsim {

enum class Medium { rdma, disk };
enum class DatapathKind { default_path, lean };
enum class EvictionMode { eager, lazy };
enum class AccessOutcome { resident_hit, prefetch_hit, late_prefetch_hit, miss };

std::string_view to_string(Medium m);
std::string_view to_string(DatapathKind d);
std::string_view to_string(EvictionMode e);

/// Per-access latency constants in nanoseconds.
/// Fetch costs: 4.3 us for a 4KB remote read over RDMA, 91.5 us from disk.
/// The default data path spends 34 us preparing and batching a request; the
/// lean path models a sub-microsecond constant overhead instead. Hit costs
/// are model choices for sub-microsecond cache hits.
struct LatencyModel {
    std::uint64_t t_resident_hit = 100;
    std::uint64_t t_prefetch_hit = 800;
    std::uint64_t t_fetch_rdma = 4'300;
    std::uint64_t t_fetch_disk = 91'500;
    std::uint64_t t_datapath_default = 34'000;
    std::uint64_t t_datapath_lean = 700;
    Medium medium = Medium::rdma;
    DatapathKind datapath = DatapathKind::default_path;

    std::uint64_t fetch_ns() const {
        return medium == Medium::rdma ? t_fetch_rdma : t_fetch_disk;
    }
    std::uint64_t datapath_ns() const {
        return datapath == DatapathKind::lean ? t_datapath_lean : t_datapath_default;
    }
    std::uint64_t miss_ns() const { return fetch_ns() + datapath_ns(); }
};

/// Resident set with LRU eviction. Pages are tagged by how they arrived.
class LocalMemory {
public:
    enum class Origin { demand, promoted };

    explicit LocalMemory(std::size_t capacity);

    bool contains(std::uint64_t page) const;
    /// Moves page to the MRU position. Precondition: contains(page).
    void touch(std::uint64_t page);
    /// Inserts page at MRU, evicting and returning the LRU page when full.
    std::optional<std::uint64_t> insert(std::uint64_t page, Origin origin);
    std::optional<Origin> origin_of(std::uint64_t page) const;

    std::size_t size() const { return index_.size(); }
    std::size_t capacity() const { return capacity_; }

private:
    struct Slot {
        std::list<std::uint64_t>::iterator pos;
        Origin origin;
    };
    std::size_t capacity_;
    std::list<std::uint64_t> lru_;  // front = most recently used
    std::unordered_map<std::uint64_t, Slot> index_;
};

/// FIFO-ordered prefetch cache. Under eager eviction an entry is freed the
/// moment it is hit; under lazy eviction it stays, marked used, until
/// capacity pressure removes it. Unused entries are always evicted before
/// used ones, oldest first.
class PrefetchCache {
public:
    struct Entry {
        std::uint64_t page = 0;
        std::uint64_t insert_tick = 0;
        std::uint64_t origin_process = 0;
        bool used = false;
    };

    PrefetchCache(std::optional<std::size_t> capacity, EvictionMode mode);

    bool contains(std::uint64_t page) const;
    /// Entry for a page that has not been consumed yet, else nullptr.
    const Entry* find_unused(std::uint64_t page) const;

    /// Inserts pages at the FIFO tail, skipping pages already resident or
    /// already present in the cache. Evicts oldest-unused entries when the
    /// capacity would be exceeded. Returns the number actually inserted.
    std::size_t insert_batch(std::span<const std::uint64_t> pages, std::uint64_t tick,
                             std::uint64_t pid, const LocalMemory& resident);

    /// Consumes the entry for page after a hit: marks it used and, in eager
    /// mode, frees the slot immediately. Precondition: find_unused(page).
    void consume(std::uint64_t page);

    std::size_t size() const { return index_.size(); }
    std::size_t used_count() const { return used_count_; }
    std::size_t unused_count() const { return index_.size() - used_count_; }
    bool any_used() const { return used_count_ > 0; }
    /// Unused entries evicted by capacity pressure so far (pollution).
    std::uint64_t evicted_unused() const { return evicted_unused_; }

private:
    void evict_one();

    std::optional<std::size_t> capacity_;
    EvictionMode mode_;
    std::list<Entry> fifo_;  // front = oldest
    std::unordered_map<std::uint64_t, std::list<Entry>::iterator> index_;
    std::size_t used_count_ = 0;
    std::uint64_t evicted_unused_ = 0;
};

struct MemoryConfig {
    std::size_t capacity_resident = 4096;
    std::optional<std::size_t> capacity_prefetch;  // nullopt = unbounded
    EvictionMode eviction = EvictionMode::eager;
    /// Ticks until an inserted prefetch becomes hittable. Only
    /// simulate_latency_aware accepts a nonzero value.
    std::uint64_t prefetch_arrival_delay = 0;
};

/// Percentile/mean summary of an integer sample distribution.
/// Percentiles use nearest-rank on the sorted samples.
struct DistSummary {
    std::uint64_t p50 = 0;
    std::uint64_t p90 = 0;
    std::uint64_t p99 = 0;
    std::uint64_t p999 = 0;
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    std::uint64_t total = 0;  // exact integer sum
    std::uint64_t count = 0;
    double mean = 0.0;
};

DistSummary summarize(std::vector<std::uint64_t> samples);

struct OutcomeCounts {
    std::uint64_t requests = 0;
    std::uint64_t resident_hits = 0;
    std::uint64_t prefetch_hits = 0;
    std::uint64_t misses = 0;
};

/// Replay results. resident_hits + prefetch_hits + misses == total_requests;
/// late prefetch hits are included in prefetch_hits and also reported on
/// their own.
struct SimReport {
    std::string prefetcher;
    std::uint64_t total_requests = 0;
    std::uint64_t resident_hits = 0;
    std::uint64_t prefetch_hits = 0;
    std::uint64_t late_prefetch_hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t pages_prefetched = 0;  // cache adds
    std::uint64_t pollution = 0;         // evicted unused + unused at end
    double accuracy = 0.0;               // prefetch_hits / pages_prefetched
    double coverage = 0.0;               // prefetch_hits / total_requests
    DistSummary latency_ns;
    DistSummary timeliness;  // first-hit tick minus insert tick
    std::map<std::uint64_t, OutcomeCounts> per_process;
};

/// Optional per-event tap for tests and instrumentation.
struct AccessView {
    const PageAccessEvent& event;
    AccessOutcome outcome;
    std::uint64_t latency_ns;
    std::size_t candidates_inserted;
};
using SimObserver =
    std::function<void(const AccessView&, const LocalMemory&, const PrefetchCache&)>;

/// Replays the trace in order. A resident hit never reaches the prefetcher;
/// prefetch hits and misses are faults: the fault is recorded, the
/// prefetcher decides, candidates are inserted, and only then is the access
/// resolved (so a hit on the demanded page counts toward the *next*
/// decision). Fully deterministic. Requires prefetch_arrival_delay == 0;
/// use simulate_latency_aware for delayed arrival.
SimReport simulate(const Trace& trace, const PrefetcherConfig& prefetcher_config,
                   const MemoryConfig& memory_config, const LatencyModel& latency,
                   const SimObserver& observer = {});

/// Like simulate, but prefetched entries become hittable only at
/// insert_tick + delay. An access to an in-flight entry is a late prefetch
/// hit whose latency is the remaining wait (ticks taken as nanoseconds)
/// plus the prefetch-hit cost.
SimReport simulate_latency_aware(const Trace& trace, const PrefetcherConfig& prefetcher_config,
                                 const MemoryConfig& memory_config, const LatencyModel& latency,
                                 std::uint64_t prefetch_arrival_delay,
                                 const SimObserver& observer = {});

}  // namespace leapsim
