#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simclass/bigint.hpp"
#include "simclass/canon2.hpp"
#include "simclass/matrix.hpp"

namespace simclass {

/// Mixed-radix index of a matrix: entries row-major, (0,0) most significant.
std::uint64_t pack(const Mat& a);
Mat unpack(const RingCtx& ctx, int n, std::uint64_t index);

std::vector<Mat> gl_generators(const RingCtx& ctx, int n);
BigInt group_order(const RingCtx& ctx, int n);

struct OracleOptions {
    std::uint64_t state_budget = std::uint64_t{1} << 28;
    unsigned jobs = 1;
    /// Directory for cached censuses; no caching when empty.
    std::string cache_dir;
};

struct OrbitCensus {
    std::string ring;
    int n;
    Group group;
    /// Sorted by min_rep.
    std::vector<std::uint64_t> min_reps;
    std::vector<std::uint64_t> sizes;
    bool from_cache = false;

    std::size_t class_count() const noexcept { return min_reps.size(); }
};

OrbitCensus orbit_census(const RingCtx& ctx, int n, Group group, const OracleOptions& opts = {});

/// Orbit index (position in the M census) of every state; for small state spaces.
std::vector<std::uint32_t> orbit_labels(const RingCtx& ctx, int n, std::uint64_t budget = std::uint64_t{1} << 24);

struct OrbitInfo {
    BigInt size;
    Mat min_rep;
};

OrbitInfo orbit_of(const Mat& a, std::uint64_t budget = 10'000'000);

struct VerifyReport {
    std::string ring;
    int n = 0;
    std::uint64_t oracle_m = 0, oracle_gl = 0;
    BigInt formula_m, formula_gl;
    std::uint64_t enumerate_m = 0, enumerate_gl = 0;
    std::uint64_t distinct_canon = 0;
    std::uint64_t orbits_sampled = 0;
    std::uint64_t members_checked = 0;
    std::vector<std::string> mismatches;

    bool ok() const noexcept { return mismatches.empty(); }
};

VerifyReport verify_counts(const RingCtx& ctx, int n, const OracleOptions& opts = {});

} // namespace simclass
