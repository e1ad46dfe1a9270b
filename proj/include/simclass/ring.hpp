#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace simclass {

enum class Flavor : std::uint8_t { Zadic, Poly };

/**
 * A finite chain ring A_len: Z/p^len (Zadic) or F_p[t]/(t^len) (Poly).
 *
 * Elements are stored as canonical integers in [0, p^len) whose base-p
 * digits are the pi-adic digits of the element (pi = p or pi = t). With
 * that packing, multiplication by pi^k, exact division by pi^k, truncation
 * and the zero-padded lift are the same integer operations in both flavors;
 * only addition and multiplication differ.
 */
class RingCtx {
public:
    RingCtx(Flavor flavor, std::uint64_t p, std::uint32_t len);

    /// Parses "z:<p>:<len>" or "t:<p>:<len>".
    static RingCtx parse(std::string_view descriptor);

    Flavor flavor() const noexcept { return flavor_; }
    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t q() const noexcept { return p_; }
    std::uint32_t len() const noexcept { return len_; }
    std::uint64_t card() const noexcept { return card_; }
    std::string descriptor() const;

    /// Same flavor and prime, different length.
    RingCtx at_level(std::uint32_t len) const;

    bool operator==(const RingCtx&) const = default;

    // Raw arithmetic on canonical representatives.
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept;
    std::uint64_t neg(std::uint64_t a) const noexcept;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
    /// Image of an integer under Z -> A.
    std::uint64_t from_int(std::int64_t v) const noexcept;
    std::uint32_t valuation(std::uint64_t a) const noexcept;
    bool is_unit(std::uint64_t a) const noexcept { return a % p_ != 0; }
    /// Throws NonUnit.
    std::uint64_t inverse(std::uint64_t a) const;
    /// p^k as an integer (k <= len).
    std::uint64_t radix(std::uint32_t k) const noexcept;
    /// pi^k, zero when k >= len.
    std::uint64_t pi_pow(std::uint32_t k) const noexcept;
    /// a * pi^k.
    std::uint64_t mul_pi(std::uint64_t a, std::uint32_t k) const noexcept;
    /// The zero-padded y with y * pi^k = a; requires v(a) >= k.
    std::uint64_t div_pi(std::uint64_t a, std::uint32_t k) const noexcept;
    /// a mod pi^j read back through the digit section K_j.
    std::uint64_t low(std::uint64_t a, std::uint32_t j) const noexcept;
    std::uint64_t digit(std::uint64_t a, std::uint32_t j) const noexcept;

private:
    std::uint64_t poly_add(std::uint64_t a, std::uint64_t b, bool subtract) const noexcept;
    std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) const noexcept;

    Flavor flavor_;
    std::uint64_t p_;
    std::uint32_t len_;
    std::uint64_t card_;
};

class RingElem {
public:
    RingElem(const RingCtx& ctx, std::uint64_t repr);

    static RingElem zero(const RingCtx& ctx) { return {ctx, 0}; }
    static RingElem one(const RingCtx& ctx) { return {ctx, ctx.from_int(1)}; }
    static RingElem from_int(const RingCtx& ctx, std::int64_t v) { return {ctx, ctx.from_int(v)}; }
    static RingElem pi_pow(const RingCtx& ctx, std::uint32_t k) { return {ctx, ctx.pi_pow(k)}; }

    const RingCtx& ctx() const noexcept { return ctx_; }
    std::uint64_t repr() const noexcept { return repr_; }

    std::uint32_t valuation() const noexcept { return ctx_.valuation(repr_); }
    bool is_unit() const noexcept { return ctx_.is_unit(repr_); }
    bool is_zero() const noexcept { return repr_ == 0; }
    RingElem inverse() const { return {ctx_, ctx_.inverse(repr_)}; }

    std::uint64_t digit(std::uint32_t j) const noexcept { return ctx_.digit(repr_, j); }
    RingElem mul_pi(std::uint32_t k) const noexcept { return {ctx_, ctx_.mul_pi(repr_, k)}; }
    /// Zero-padded quotient by pi^k; requires valuation() >= k.
    RingElem div_pi(std::uint32_t k) const;
    /// Projection onto the section K_j (digits below j).
    RingElem low(std::uint32_t j) const noexcept { return {ctx_, ctx_.low(repr_, j)}; }

    RingElem operator-() const noexcept { return {ctx_, ctx_.neg(repr_)}; }
    RingElem& operator+=(const RingElem& o);
    RingElem& operator-=(const RingElem& o);
    RingElem& operator*=(const RingElem& o);
    friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
    friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
    friend RingElem operator*(RingElem a, const RingElem& b) { return a *= b; }
    bool operator==(const RingElem&) const = default;

private:
    RingCtx ctx_;
    std::uint64_t repr_;
};

/// x = u * pi^t with u a unit; zero maps to (len, 1).
std::pair<std::uint32_t, RingElem> valuation_split(const RingElem& x);

RingElem invert(const RingElem& x);

/// pi-adic digits, least significant first, exactly len of them.
std::vector<std::uint64_t> digits(const RingElem& x);

/// An element of K_level given by its digits; lives in the ring ctx.
struct Section {
    std::uint32_t level;
    RingElem value;
    bool operator==(const Section&) const = default;
};

Section section(const RingCtx& ctx, std::span<const std::uint64_t> ds, std::uint32_t level);
/// The section element with the same low digits as x.
Section section_of(const RingElem& x, std::uint32_t level);

/// Quotient map A_len -> A_level.
RingElem truncate(const RingElem& x, std::uint32_t level);
/// Zero-padded lift A_len -> A_target (target.len >= x.len).
RingElem lift(const RingElem& x, const RingCtx& target);

void require_same(const RingCtx& a, const RingCtx& b);

} // namespace simclass
