#include <doctest.h>

#include <vector>

#include "leapsim/prefetcher.hpp"

using namespace leapsim;

namespace {

AccessHistory record_all(std::size_t cap, const std::vector<std::uint64_t>& pages) {
    AccessHistory h(cap);
    for (auto p : pages) {
        h.record(p);
    }
    return h;
}

const std::vector<std::uint64_t> kShiftingStream = {
    0x48, 0x45, 0x42, 0x3F, 0x3C, 0x02, 0x04, 0x06,
    0x08, 0x0A, 0x0C, 0x10, 0x39, 0x12, 0x14, 0x16,
};

}  // namespace

TEST_CASE("leap_window_size follows the sizing rules") {
    SUBCASE("no hits, fault follows the trend: one page") {
        LeapState s(8);
        s.pw_prev = 0;
        CHECK(leap_window_size(s, true) == 1);
        CHECK(s.pw_prev == 1);
        CHECK(s.c_hit == 0);
    }
    SUBCASE("no hits, off trend: suspend") {
        LeapState s(8);
        s.pw_prev = 0;
        CHECK(leap_window_size(s, false) == 0);
    }
    SUBCASE("hits round up to the next power of two") {
        LeapState s(8);
        s.pw_prev = 4;
        s.c_hit = 3;
        CHECK(leap_window_size(s, false) == 4);
    }
    SUBCASE("smooth shrink instead of a hard stop") {
        LeapState s(8);
        s.pw_prev = 8;
        s.c_hit = 0;
        CHECK(leap_window_size(s, false) == 4);
    }
    SUBCASE("cap at pw_max") {
        LeapState s(8);
        s.pw_prev = 8;
        s.c_hit = 9;
        CHECK(leap_window_size(s, false) == 8);
    }
    SUBCASE("round-up is strict: four hits give eight") {
        LeapState s(8);
        s.pw_prev = 0;
        s.c_hit = 4;
        CHECK(leap_window_size(s, false) == 8);
    }
    SUBCASE("window resets the hit counter every call") {
        LeapState s(8);
        s.c_hit = 5;
        leap_window_size(s, false);
        CHECK(s.c_hit == 0);
    }
}

TEST_CASE("leap_on_fault rides a detected trend") {
    // Stream through 0x08 (t8): the +2 run owns the small window.
    auto h = record_all(8, {kShiftingStream.begin(), kShiftingStream.begin() + 9});
    LeapState s(8);
    s.c_hit = 1;  // earlier prefetches had a hit
    s.pw_prev = 1;
    auto d = leap_on_fault(s, h, 0x08, 2);
    CHECK(d.window_size_used == 2);
    CHECK(d.candidates == std::vector<std::uint64_t>{0x0A, 0x0C});
    CHECK(s.last_trend == +2);
}

TEST_CASE("leap_on_fault with a zero window reads only the demand page") {
    AccessHistory h(8);
    h.record(500);
    LeapState s(8);
    s.pw_prev = 0;  // throttled down already
    auto d = leap_on_fault(s, h, 500, 2);
    CHECK(d.window_size_used == 0);
    CHECK(d.candidates.empty());
}

TEST_CASE("leap_on_fault speculates along the last trend when no majority") {
    // Through 0x06 (t7): neither window has a majority.
    auto h = record_all(8, {kShiftingStream.begin(), kShiftingStream.begin() + 8});
    LeapState s(8);
    s.last_trend = -3;
    s.pw_prev = 4;  // keeps the window open through the smooth shrink
    auto d = leap_on_fault(s, h, 0x06, 2);
    CHECK(d.window_size_used == 2);
    CHECK(d.candidates == std::vector<std::uint64_t>{0x03, 0x00});
    CHECK(s.last_trend == -3);  // speculation does not update the trend
}

TEST_CASE("leap_on_fault drops candidates outside the page range") {
    AccessHistory h(8);
    for (std::uint64_t p : {20, 17, 14, 11, 8, 5}) {
        h.record(p);
    }
    LeapState s(8);
    s.c_hit = 3;  // window 4
    auto d = leap_on_fault(s, h, 5, 2);
    CHECK(d.window_size_used == 4);
    CHECK(d.candidates == std::vector<std::uint64_t>{2});  // 5-3; -1, -4, -7 dropped
}

TEST_CASE("leap keeps detecting trends while prefetching is suspended") {
    AccessHistory h(32);
    LeapState s(8);
    s.pw_prev = 0;
    // Feed a clean +10 run through zero-size decisions.
    std::uint64_t page = 1000;
    h.record(page);
    leap_on_fault(s, h, page, 2);
    for (int i = 0; i < 6; ++i) {
        page += 10;
        h.record(page);
        leap_on_fault(s, h, page, 2);
    }
    CHECK(s.last_trend == +10);
    // Next on-trend fault reopens the window.
    page += 10;
    h.record(page);
    auto d = leap_on_fault(s, h, page, 2);
    CHECK(d.window_size_used == 1);
    CHECK(d.candidates == std::vector<std::uint64_t>{page + 10});
}

TEST_CASE("leap_on_prefetch_hit counts per call") {
    LeapState s(8);
    leap_on_prefetch_hit(s);
    CHECK(s.c_hit == 1);
    leap_on_prefetch_hit(s);
    leap_on_prefetch_hit(s);
    CHECK(s.c_hit == 3);
    s.pw_prev = 4;
    CHECK(leap_window_size(s, false) == 4);  // 3 hits round to window 4
}

TEST_CASE("leap throttles to zero on patternless faults") {
    // No majority trend and no hits: the window halves from pw_max and
    // reaches zero within log2(pw_max)+1 decisions, then stays there.
    auto pf = make_prefetcher({.kind = PrefetcherKind::leap});
    std::uint64_t page = 1;
    std::vector<unsigned> sizes;
    for (int i = 0; i < 12; ++i) {
        page += 1000003 + static_cast<std::uint64_t>(i) * 77777;  // distinct deltas
        sizes.push_back(pf->on_fault(1, page, i).window_size_used);
    }
    CHECK(sizes[0] == 4);
    CHECK(sizes[1] == 2);
    CHECK(sizes[2] == 1);
    for (std::size_t i = 3; i < sizes.size(); ++i) {
        CHECK(sizes[i] == 0);
    }
}

TEST_CASE("per-process isolation of leap state") {
    auto pf = make_prefetcher({.kind = PrefetcherKind::leap});
    for (int i = 0; i < 8; ++i) {
        pf->on_fault(1, 100 + i * 10, i);
    }
    pf->on_prefetch_hit(1, 0);
    // Process 2 starts fresh: its first decisions mirror a new state.
    auto d = pf->on_fault(2, 5000, 99);
    CHECK(d.window_size_used == 4);  // first smooth-shrink step from pw_max
}

TEST_CASE("next_n_line issues the next N pages") {
    auto d = next_n_line(100, 4);
    CHECK(d.candidates == std::vector<std::uint64_t>{101, 102, 103, 104});
    CHECK(d.window_size_used == 4);
    CHECK(next_n_line(0, 1).candidates == std::vector<std::uint64_t>{1});
    CHECK_THROWS_AS(next_n_line(0, 0), std::invalid_argument);
}

TEST_CASE("stride baseline confirms a stride before prefetching") {
    StrideState s;
    auto d0 = stride_baseline(s, 0);
    CHECK(d0.candidates.empty());  // no stride yet
    auto d1 = stride_baseline(s, 10);
    CHECK(d1.candidates.empty());  // first stride, unconfirmed
    auto d2 = stride_baseline(s, 20);
    CHECK(s.depth == 1);
    REQUIRE(!d2.candidates.empty());
    CHECK(d2.candidates[0] == 30);
}

TEST_CASE("stride baseline decays on alternating strides") {
    StrideState s;
    std::uint64_t page = 0;
    stride_baseline(s, page);
    for (int i = 0; i < 12; ++i) {
        page += (i % 2 == 0) ? 2 : 5;
        stride_baseline(s, page);
    }
    CHECK(s.depth == 0);
    auto d = stride_baseline(s, page + 2);
    CHECK(d.candidates.empty());
}

TEST_CASE("stride baseline depth doubles up to the cap") {
    StrideState s;
    std::uint64_t page = 0;
    stride_baseline(s, page);
    for (int i = 0; i < 12; ++i) {
        page += 10;
        stride_baseline(s, page);
    }
    CHECK(s.depth == 8);
}

TEST_CASE("readahead grows on consecutive faults") {
    ReadaheadState s;
    readahead_baseline(s, 100);
    auto d = readahead_baseline(s, 101);
    CHECK(s.window == 2);
    REQUIRE(d.candidates.size() == 2);
    CHECK(d.candidates[0] == 102);
    CHECK(d.candidates[1] == 103);
}

TEST_CASE("readahead resets to minimum granularity on a jump") {
    ReadaheadState s;
    readahead_baseline(s, 100);
    auto d = readahead_baseline(s, 110);
    CHECK(s.window == 0);
    // The adaptive window is gone; what remains is the one-page block
    // granule, which never matches a stride of 10.
    CHECK(d.candidates == std::vector<std::uint64_t>{111});
    CHECK(d.window_size_used == 1);
}

TEST_CASE("readahead saturates at window 8 and stays inside the block") {
    ReadaheadState s;
    for (std::uint64_t p = 0; p < 8; ++p) {
        readahead_baseline(s, p);
    }
    CHECK(s.window == 8);
    auto d = readahead_baseline(s, 8);  // block head
    CHECK(d.candidates == std::vector<std::uint64_t>{9, 10, 11, 12, 13, 14, 15});
    auto d2 = readahead_baseline(s, 9);
    CHECK(d2.candidates == std::vector<std::uint64_t>{10, 11, 12, 13, 14, 15});
}

TEST_CASE("decisions never contain the demand page or duplicates") {
    auto check_decision = [](const PrefetchDecision& d) {
        CHECK(d.candidates.size() <= d.window_size_used);
        for (std::size_t i = 0; i < d.candidates.size(); ++i) {
            CHECK(d.candidates[i] != d.demand_page);
            for (std::size_t j = i + 1; j < d.candidates.size(); ++j) {
                CHECK(d.candidates[i] != d.candidates[j]);
            }
        }
    };
    for (auto kind : {PrefetcherKind::leap, PrefetcherKind::readahead,
                      PrefetcherKind::next_n_line, PrefetcherKind::stride,
                      PrefetcherKind::none}) {
        auto pf = make_prefetcher({.kind = kind});
        std::uint64_t page = 4096;
        for (int i = 0; i < 64; ++i) {
            page += (i % 3 == 0) ? 1 : 10;
            check_decision(pf->on_fault(1, page, i));
        }
    }
}

TEST_CASE("identical fault streams give identical decision streams") {
    for (auto kind : {PrefetcherKind::leap, PrefetcherKind::readahead,
                      PrefetcherKind::next_n_line, PrefetcherKind::stride}) {
        auto a = make_prefetcher({.kind = kind});
        auto b = make_prefetcher({.kind = kind});
        std::uint64_t page = 0;
        for (int i = 0; i < 200; ++i) {
            page += (i % 7 == 0) ? 17 : 1;
            auto da = a->on_fault(3, page, i);
            auto db = b->on_fault(3, page, i);
            CHECK(da.candidates == db.candidates);
            CHECK(da.window_size_used == db.window_size_used);
            if (i % 5 == 0) {
                a->on_prefetch_hit(3, page);
                b->on_prefetch_hit(3, page);
            }
        }
    }
}

TEST_CASE("prefetcher names round-trip") {
    for (auto kind : {PrefetcherKind::leap, PrefetcherKind::readahead,
                      PrefetcherKind::next_n_line, PrefetcherKind::stride,
                      PrefetcherKind::none}) {
        CHECK(prefetcher_from_string(to_string(kind)) == kind);
    }
    CHECK_FALSE(prefetcher_from_string("bogus").has_value());
}
