#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "simclass/ring.hpp"

namespace simclass {

/// Square matrix of size 2 or 3 over a chain ring; indices are 0-based.
class Mat {
public:
    Mat(const RingCtx& ctx, int n);

    static Mat identity(const RingCtx& ctx, int n);
    static Mat scalar(const RingElem& d, int n);
    /// Entries are canonical representatives.
    static Mat from_rows(const RingCtx& ctx, const std::vector<std::vector<std::uint64_t>>& rows);

    const RingCtx& ctx() const noexcept { return ctx_; }
    int n() const noexcept { return n_; }

    RingElem at(int i, int j) const { return {ctx_, e_[idx(i, j)]}; }
    std::uint64_t raw(int i, int j) const noexcept { return e_[idx(i, j)]; }
    void set(int i, int j, const RingElem& x);
    void set_raw(int i, int j, std::uint64_t x) noexcept { e_[idx(i, j)] = x; }
    std::vector<std::vector<std::uint64_t>> rows() const;

    /// Entrywise quotient map to A_level.
    Mat truncate(std::uint32_t level) const;
    /// Entrywise zero-padded lift into a longer ring.
    Mat lift(const RingCtx& target) const;
    Mat residue() const { return truncate(1); }
    bool is_scalar() const noexcept;

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator*(const RingElem& s, const Mat& a);
    bool operator==(const Mat&) const = default;

private:
    int idx(int i, int j) const noexcept { return i * n_ + j; }

    RingCtx ctx_;
    int n_;
    std::array<std::uint64_t, 9> e_{};
};

RingElem det(const Mat& a);
RingElem trace(const Mat& a);
bool is_unit(const Mat& a);
/// Throws NotInvertible.
Mat inverse(const Mat& a);
/// x * a * x^-1.
Mat conjugate(const Mat& a, const Mat& x);

/// Coefficients (a_0, ..., a_{n-1}) with charpoly x^n - a_{n-1}x^{n-1} - ... - a_0.
std::vector<RingElem> charpoly(const Mat& a);

/// Largest j such that a is congruent to a scalar matrix mod pi^j.
std::uint32_t scalar_level(const Mat& a);

/// Rows (0,1,0), (0,0,1), (a_0,...,a_{n-1}); n = coeffs.size().
Mat companion(std::span<const RingElem> coeffs);
/// diag(a, block) for a 2x2 block.
Mat block_diag(const RingElem& a, const Mat& block);
/// [[d, pi^m, 0], [0, d, 1], [a, b, c + d]].
Mat e_matrix(std::uint32_t m, const RingElem& a, const RingElem& b, const RingElem& c, const RingElem& d);
Mat j_matrix(const RingElem& c, const RingElem& d);
/// I + x E^{ij}.
Mat elementary(const RingCtx& ctx, int n, int i, int j, const RingElem& x);
Mat diagonal(std::span<const RingElem> ds);

enum class BuildKind { Companion, BlockDiag, EMatrix, JMatrix, Elementary };

/**
 * Generic constructor used by the C API. Params are canonical
 * representatives: companion (a_0..a_{n-1}); block_diag (a, b00, b01, b10,
 * b11); e_matrix (m, a, b, c, d); j_matrix (c, d); elementary (n, i, j, x).
 */
Mat build(const RingCtx& ctx, BuildKind kind, std::span<const std::uint64_t> params);

} // namespace simclass
