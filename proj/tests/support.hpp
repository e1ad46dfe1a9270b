#pragma once

// Test-side reference arithmetic, written independently of the library:
// Zadic rings use plain modular integers, Poly rings use digit vectors.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "simclass/matrix.hpp"

namespace ref {

struct Ring {
    bool poly;
    std::uint64_t p;
    std::uint32_t len;
    std::uint64_t card;

    Ring(bool poly_, std::uint64_t p_, std::uint32_t len_) : poly(poly_), p(p_), len(len_), card(1)
    {
        for (std::uint32_t i = 0; i < len; ++i) card *= p;
    }

    std::vector<std::uint64_t> coeffs(std::uint64_t x) const
    {
        std::vector<std::uint64_t> c(len);
        for (auto& v : c) {
            v = x % p;
            x /= p;
        }
        return c;
    }

    std::uint64_t pack(const std::vector<std::uint64_t>& c) const
    {
        std::uint64_t x = 0;
        for (std::uint32_t i = len; i-- > 0;) x = x * p + c[i];
        return x;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const
    {
        if (!poly) return (a + b) % card;
        auto x = coeffs(a), y = coeffs(b);
        for (std::uint32_t i = 0; i < len; ++i) x[i] = (x[i] + y[i]) % p;
        return pack(x);
    }

    std::uint64_t neg(std::uint64_t a) const
    {
        if (!poly) return (card - a) % card;
        auto x = coeffs(a);
        for (auto& v : x) v = (p - v) % p;
        return pack(x);
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const
    {
        if (!poly) return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % card);
        auto x = coeffs(a), y = coeffs(b);
        std::vector<std::uint64_t> z(len, 0);
        for (std::uint32_t i = 0; i < len; ++i)
            for (std::uint32_t j = 0; i + j < len; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
        return pack(z);
    }

    bool unit(std::uint64_t a) const { return a % p != 0; }
};

using M = std::vector<std::uint64_t>;

inline M mul(const Ring& r, int n, const M& a, const M& b)
{
    M c(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) c[i * n + j] = r.add(c[i * n + j], r.mul(a[i * n + k], b[k * n + j]));
    return c;
}

inline std::uint64_t det(const Ring& r, int n, const M& a)
{
    if (n == 2) return r.sub(r.mul(a[0], a[3]), r.mul(a[1], a[2]));
    std::uint64_t d = 0;
    for (int c = 0; c < 3; ++c) {
        std::uint64_t minor = r.sub(r.mul(a[3 + (c + 1) % 3], a[6 + (c + 2) % 3]), r.mul(a[3 + (c + 2) % 3], a[6 + (c + 1) % 3]));
        d = r.add(d, r.mul(a[c], minor));
    }
    return d;
}

inline M unpack(const Ring& r, int n, std::uint64_t s)
{
    M m(n * n);
    for (int k = n * n; k-- > 0;) {
        m[k] = s % r.card;
        s /= r.card;
    }
    return m;
}

inline std::uint64_t pack(const Ring& r, const M& m)
{
    std::uint64_t s = 0;
    for (auto v : m) s = s * r.card + v;
    return s;
}

inline std::uint64_t state_count(const Ring& r, int n)
{
    std::uint64_t s = 1;
    for (int i = 0; i < n * n; ++i) s *= r.card;
    return s;
}

/// Every invertible matrix, listed explicitly.
inline std::vector<M> all_units(const Ring& r, int n)
{
    std::vector<M> out;
    const std::uint64_t states = state_count(r, n);
    for (std::uint64_t s = 0; s < states; ++s) {
        M m = unpack(r, n, s);
        if (r.unit(det(r, n, m))) out.push_back(std::move(m));
    }
    return out;
}

/// Orbit partition by direct conjugation with every group element: label per state.
inline std::vector<std::uint32_t> brute_orbits(const Ring& r, int n, std::uint32_t* count = nullptr)
{
    const std::uint64_t states = state_count(r, n);
    const std::vector<M> group = all_units(r, n);
    std::map<M, M> inverse;
    {
        M id(n * n, 0);
        for (int i = 0; i < n; ++i) id[i * n + i] = 1 % r.card;
        for (const M& x : group)
            for (const M& y : group)
                if (mul(r, n, x, y) == id) {
                    inverse[x] = y;
                    break;
                }
    }
    const std::uint32_t none = ~0u;
    std::vector<std::uint32_t> label(states, none);
    std::uint32_t next = 0;
    for (std::uint64_t s = 0; s < states; ++s) {
        if (label[s] != none) continue;
        M a = unpack(r, n, s);
        for (const M& x : group) label[pack(r, mul(r, n, mul(r, n, x, a), inverse.at(x)))] = next;
        ++next;
    }
    if (count) *count = next;
    return label;
}

inline std::uint64_t centralizer_brute(const Ring& r, int n, const M& a)
{
    std::uint64_t c = 0;
    for (const M& x : all_units(r, n))
        if (mul(r, n, x, a) == mul(r, n, a, x)) ++c;
    return c;
}

inline M from_mat(const simclass::Mat& m)
{
    M out;
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) out.push_back(m.raw(i, j));
    return out;
}

inline Ring from_ctx(const simclass::RingCtx& c)
{
    return Ring(c.flavor() == simclass::Flavor::Poly, c.p(), c.len());
}

} // namespace ref

namespace testutil {

inline simclass::Mat random_mat(const simclass::RingCtx& ctx, int n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint64_t> d(0, ctx.card() - 1);
    simclass::Mat m(ctx, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set_raw(i, j, d(rng));
    return m;
}

inline simclass::Mat random_unit(const simclass::RingCtx& ctx, int n, std::mt19937_64& rng)
{
    for (;;) {
        simclass::Mat m = random_mat(ctx, n, rng);
        if (simclass::is_unit(m)) return m;
    }
}

} // namespace testutil

inline simclass::Mat unpack_test(const simclass::RingCtx& ctx, int n, std::uint64_t state)
{
    ref::Ring r = ref::from_ctx(ctx);
    ref::M m = ref::unpack(r, n, state);
    simclass::Mat out(ctx, n);
    for (int k = 0; k < n * n; ++k) out.set_raw(k / n, k % n, m[k]);
    return out;
}
