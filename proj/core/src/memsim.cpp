#include "leapsim/memsim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace leapsim {

std::string_view to_string(Medium m) {
    return m == Medium::rdma ? "rdma" : "disk";
}
std::string_view to_string(DatapathKind d) {
    return d == DatapathKind::lean ? "lean" : "default";
}
std::string_view to_string(EvictionMode e) {
    return e == EvictionMode::eager ? "eager" : "lazy";
}

// --- LocalMemory -------------------------------------------------------------

LocalMemory::LocalMemory(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) {
        throw std::invalid_argument("LocalMemory capacity must be at least 1");
    }
}

bool LocalMemory::contains(std::uint64_t page) const { return index_.contains(page); }

void LocalMemory::touch(std::uint64_t page) {
    auto it = index_.find(page);
    assert(it != index_.end());
    lru_.splice(lru_.begin(), lru_, it->second.pos);
}

std::optional<std::uint64_t> LocalMemory::insert(std::uint64_t page, Origin origin) {
    auto it = index_.find(page);
    if (it != index_.end()) {
        it->second.origin = origin;
        lru_.splice(lru_.begin(), lru_, it->second.pos);
        return std::nullopt;
    }
    std::optional<std::uint64_t> victim;
    if (index_.size() == capacity_) {
        victim = lru_.back();
        index_.erase(lru_.back());
        lru_.pop_back();
    }
    lru_.push_front(page);
    index_.emplace(page, Slot{lru_.begin(), origin});
    return victim;
}

std::optional<LocalMemory::Origin> LocalMemory::origin_of(std::uint64_t page) const {
    auto it = index_.find(page);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second.origin;
}

// --- PrefetchCache ------------------------------------------------------------

PrefetchCache::PrefetchCache(std::optional<std::size_t> capacity, EvictionMode mode)
    : capacity_(capacity), mode_(mode) {
    if (capacity_ && *capacity_ == 0) {
        throw std::invalid_argument("PrefetchCache capacity must be at least 1 or unbounded");
    }
}

bool PrefetchCache::contains(std::uint64_t page) const { return index_.contains(page); }

const PrefetchCache::Entry* PrefetchCache::find_unused(std::uint64_t page) const {
    auto it = index_.find(page);
    if (it == index_.end() || it->second->used) {
        return nullptr;
    }
    return &*it->second;
}

void PrefetchCache::evict_one() {
    // Oldest unused goes first; used leftovers (lazy mode) only when no
    // unused entry remains.
    for (auto it = fifo_.begin(); it != fifo_.end(); ++it) {
        if (!it->used) {
            ++evicted_unused_;
            index_.erase(it->page);
            fifo_.erase(it);
            return;
        }
    }
    assert(!fifo_.empty());
    --used_count_;
    index_.erase(fifo_.front().page);
    fifo_.pop_front();
}

std::size_t PrefetchCache::insert_batch(std::span<const std::uint64_t> pages,
                                        std::uint64_t tick, std::uint64_t pid,
                                        const LocalMemory& resident) {
    std::size_t inserted = 0;
    for (std::uint64_t page : pages) {
        if (resident.contains(page) || index_.contains(page)) {
            continue;
        }
        fifo_.push_back(Entry{page, tick, pid, false});
        index_.emplace(page, std::prev(fifo_.end()));
        ++inserted;
        if (capacity_ && index_.size() > *capacity_) {
            evict_one();
        }
    }
    return inserted;
}

void PrefetchCache::consume(std::uint64_t page) {
    auto it = index_.find(page);
    assert(it != index_.end() && !it->second->used);
    if (mode_ == EvictionMode::eager) {
        fifo_.erase(it->second);
        index_.erase(it);
    } else {
        it->second->used = true;
        ++used_count_;
    }
}

// --- Distribution summary ------------------------------------------------------

DistSummary summarize(std::vector<std::uint64_t> samples) {
    DistSummary s;
    s.count = samples.size();
    if (samples.empty()) {
        return s;
    }
    std::sort(samples.begin(), samples.end());
    auto rank = [&](double q) {
        const std::size_t r = static_cast<std::size_t>(
            std::ceil(q * static_cast<double>(samples.size())));
        return samples[std::max<std::size_t>(r, 1) - 1];
    };
    s.p50 = rank(0.50);
    s.p90 = rank(0.90);
    s.p99 = rank(0.99);
    s.p999 = rank(0.999);
    s.min = samples.front();
    s.max = samples.back();
    for (auto v : samples) {
        s.total += v;
    }
    s.mean = static_cast<double>(s.total) / static_cast<double>(samples.size());
    return s;
}

// --- Replay loop ---------------------------------------------------------------

namespace {

SimReport run_simulation(const Trace& trace, const PrefetcherConfig& prefetcher_config,
                         const MemoryConfig& memory_config, const LatencyModel& latency,
                         std::uint64_t arrival_delay, const SimObserver& observer) {
    auto prefetcher = make_prefetcher(prefetcher_config);
    LocalMemory resident(memory_config.capacity_resident);
    PrefetchCache cache(memory_config.capacity_prefetch, memory_config.eviction);

    SimReport report;
    report.prefetcher = std::string(prefetcher->name());
    std::vector<std::uint64_t> latencies;
    std::vector<std::uint64_t> timeliness;
    latencies.reserve(trace.events.size());

    for (const auto& ev : trace.events) {
        ++report.total_requests;
        auto& proc = report.per_process[ev.process_id];
        ++proc.requests;

        AccessOutcome outcome;
        std::uint64_t cost = 0;
        std::size_t inserted = 0;

        if (resident.contains(ev.page_id)) {
            resident.touch(ev.page_id);
            ++report.resident_hits;
            ++proc.resident_hits;
            outcome = AccessOutcome::resident_hit;
            cost = latency.t_resident_hit;
        } else {
            // Fault: log, decide, stage the candidates, then resolve. The
            // demanded page's own hit lands after the decision, so it
            // credits the next one.
            PrefetchDecision decision =
                prefetcher->on_fault(ev.process_id, ev.page_id, ev.tick);
            inserted = cache.insert_batch(decision.candidates, ev.tick, ev.process_id,
                                          resident);
            report.pages_prefetched += inserted;

            if (const auto* entry = cache.find_unused(ev.page_id)) {
                const std::uint64_t ready_tick = entry->insert_tick + arrival_delay;
                if (ev.tick >= ready_tick) {
                    outcome = AccessOutcome::prefetch_hit;
                    cost = latency.t_prefetch_hit;
                } else {
                    outcome = AccessOutcome::late_prefetch_hit;
                    ++report.late_prefetch_hits;
                    cost = (ready_tick - ev.tick) + latency.t_prefetch_hit;
                }
                timeliness.push_back(ev.tick - entry->insert_tick);
                cache.consume(ev.page_id);
                resident.insert(ev.page_id, LocalMemory::Origin::promoted);
                prefetcher->on_prefetch_hit(ev.process_id, ev.page_id);
                ++report.prefetch_hits;
                ++proc.prefetch_hits;
            } else {
                outcome = AccessOutcome::miss;
                cost = latency.miss_ns();
                resident.insert(ev.page_id, LocalMemory::Origin::demand);
                ++report.misses;
                ++proc.misses;
            }
        }

        latencies.push_back(cost);
        if (observer) {
            observer(AccessView{ev, outcome, cost, inserted}, resident, cache);
        }
    }

    report.pollution = cache.evicted_unused() + cache.unused_count();
    report.accuracy = report.pages_prefetched == 0
                          ? 0.0
                          : static_cast<double>(report.prefetch_hits) /
                                static_cast<double>(report.pages_prefetched);
    report.coverage = report.total_requests == 0
                          ? 0.0
                          : static_cast<double>(report.prefetch_hits) /
                                static_cast<double>(report.total_requests);
    report.latency_ns = summarize(std::move(latencies));
    report.timeliness = summarize(std::move(timeliness));
    return report;
}

}  // namespace

SimReport simulate(const Trace& trace, const PrefetcherConfig& prefetcher_config,
                   const MemoryConfig& memory_config, const LatencyModel& latency,
                   const SimObserver& observer) {
    if (memory_config.prefetch_arrival_delay != 0) {
        throw std::invalid_argument(
            "simulate: prefetch arrival delay requires simulate_latency_aware");
    }
    return run_simulation(trace, prefetcher_config, memory_config, latency, 0, observer);
}

SimReport simulate_latency_aware(const Trace& trace, const PrefetcherConfig& prefetcher_config,
                                 const MemoryConfig& memory_config,
                                 const LatencyModel& latency,
                                 std::uint64_t prefetch_arrival_delay,
                                 const SimObserver& observer) {
    return run_simulation(trace, prefetcher_config, memory_config, latency,
                          prefetch_arrival_delay, observer);
}

}  // namespace leapsim
