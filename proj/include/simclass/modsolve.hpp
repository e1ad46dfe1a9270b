#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "simclass/bigint.hpp"
#include "simclass/matrix.hpp"

namespace simclass {

using Vec = std::vector<std::uint64_t>;

/**
 * Howell basis of a submodule of A^width. Pivots are powers of pi,
 * entries above a pivot pi^e are reduced to their low e digits, and the
 * span is closed under the annihilator trick so that membership can be
 * tested by greedy reduction.
 */
class HowellBasis {
public:
    HowellBasis(const RingCtx& ctx, std::size_t width) : ctx_(ctx), width_(width) {}

    static HowellBasis echelonize(const RingCtx& ctx, std::size_t width, std::vector<Vec> rows);

    const RingCtx& ctx() const noexcept { return ctx_; }
    std::size_t width() const noexcept { return width_; }
    const std::vector<Vec>& rows() const noexcept { return rows_; }
    std::size_t pivot_col(std::size_t i) const noexcept { return pivot_col_[i]; }
    std::uint32_t pivot_val(std::size_t i) const noexcept { return pivot_val_[i]; }

    bool contains(std::span<const std::uint64_t> v) const;
    /// |span| = q^log_card().
    std::uint64_t log_card() const noexcept;
    BigInt cardinality() const;

private:
    RingCtx ctx_;
    std::size_t width_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivot_col_;
    std::vector<std::uint32_t> pivot_val_;
};

/// Kernel {v : Mv = 0} of a rows x cols matrix M, as a Howell basis of A^cols.
HowellBasis kernel(const RingCtx& ctx, std::size_t cols, const std::vector<Vec>& m);

/// The module S = {X : a1 X = X a2}.
struct IntertwinerModule {
    RingCtx ctx;
    int n;
    std::vector<Mat> generators;
    HowellBasis basis;

    bool contains(const Mat& x) const;
};

IntertwinerModule intertwiner(const Mat& a1, const Mat& a2);

struct SearchOptions {
    std::uint64_t cap = 10'000'000;
};

/// First invertible element of S in a fixed enumeration of its residue span.
std::optional<Mat> find_unit_element(const IntertwinerModule& s, const SearchOptions& opts = {});

struct SimilarityOptions {
    SearchOptions search;
    /// Reject early on differing exact invariants (scalar split, charpoly).
    bool invariant_filter = true;
};

struct Similarity {
    bool similar = false;
    /// a1 * witness = witness * a2, witness invertible.
    std::optional<Mat> witness;
};

Similarity is_similar(const Mat& a1, const Mat& a2, const SimilarityOptions& opts = {});

/// |{X in GL_n : X a = a X}|.
BigInt centralizer_order(const Mat& a, const SearchOptions& opts = {});

} // namespace simclass
