#include "simclass/ring.hpp"

#include <array>
#include <charconv>
#include <limits>

#include "simclass/error.hpp"

namespace simclass {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t uipow(std::uint64_t b, std::uint32_t e)
{
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

} // namespace

RingCtx::RingCtx(Flavor flavor, std::uint64_t p, std::uint32_t len)
    : flavor_(flavor), p_(p), len_(len), card_(1)
{
    if (!is_prime(p)) fail(Errc::BadParams, "ring characteristic " + std::to_string(p) + " is not prime");
    if (len == 0) fail(Errc::BadLevel, "ring length must be positive");
    constexpr std::uint64_t limit = std::uint64_t{1} << 63;
    for (std::uint32_t i = 0; i < len; ++i) {
        if (static_cast<u128>(card_) * p >= limit)
            fail(Errc::BadParams, "ring has more than 2^63 elements");
        card_ *= p;
    }
}

RingCtx RingCtx::parse(std::string_view s)
{
    auto bad = [&]() -> RingCtx { fail(Errc::Parse, "bad ring descriptor '" + std::string(s) + "'"); };
    if (s.size() < 5 || s[1] != ':' || (s[0] != 'z' && s[0] != 't')) return bad();
    auto colon = s.find(':', 2);
    if (colon == std::string_view::npos) return bad();
    std::uint64_t p = 0;
    std::uint32_t len = 0;
    auto ps = s.substr(2, colon - 2);
    auto ls = s.substr(colon + 1);
    auto r1 = std::from_chars(ps.data(), ps.data() + ps.size(), p);
    auto r2 = std::from_chars(ls.data(), ls.data() + ls.size(), len);
    if (r1.ec != std::errc{} || r1.ptr != ps.data() + ps.size() || r2.ec != std::errc{} ||
        r2.ptr != ls.data() + ls.size() || ps.empty() || ls.empty())
        return bad();
    return RingCtx(s[0] == 'z' ? Flavor::Zadic : Flavor::Poly, p, len);
}

std::string RingCtx::descriptor() const
{
    return std::string(flavor_ == Flavor::Zadic ? "z:" : "t:") + std::to_string(p_) + ":" +
           std::to_string(len_);
}

RingCtx RingCtx::at_level(std::uint32_t len) const
{
    return RingCtx(flavor_, p_, len);
}

std::uint64_t RingCtx::radix(std::uint32_t k) const noexcept
{
    if (p_ == 2) return std::uint64_t{1} << k;
    return uipow(p_, k);
}

std::uint64_t RingCtx::poly_add(std::uint64_t a, std::uint64_t b, bool subtract) const noexcept
{
    if (p_ == 2) return a ^ b;
    std::uint64_t r = 0, w = 1;
    for (std::uint32_t i = 0; i < len_; ++i) {
        std::uint64_t x = a % p_, y = b % p_;
        a /= p_;
        b /= p_;
        std::uint64_t z = subtract ? (x >= y ? x - y : x + p_ - y) : (x + y >= p_ ? x + y - p_ : x + y);
        r += z * w;
        w *= p_;
    }
    return r;
}

std::uint64_t RingCtx::poly_mul(std::uint64_t a, std::uint64_t b) const noexcept
{
    if (len_ == 1) return mulmod(a, b, p_);
    if (p_ == 2) {
        std::uint64_t r = 0;
        for (std::uint32_t i = 0; i < len_ && a; ++i, a >>= 1) {
            if (a & 1) r ^= b << i;
        }
        return r & (card_ - 1);
    }
    std::array<std::uint64_t, 64> x{}, y{}, z{};
    for (std::uint32_t i = 0; i < len_; ++i) {
        x[i] = a % p_;
        a /= p_;
        y[i] = b % p_;
        b /= p_;
    }
    for (std::uint32_t i = 0; i < len_; ++i) {
        if (!x[i]) continue;
        for (std::uint32_t j = 0; i + j < len_; ++j) {
            z[i + j] = (z[i + j] + mulmod(x[i], y[j], p_)) % p_;
        }
    }
    std::uint64_t r = 0;
    for (std::uint32_t i = len_; i-- > 0;) r = r * p_ + z[i];
    return r;
}

std::uint64_t RingCtx::add(std::uint64_t a, std::uint64_t b) const noexcept
{
    if (flavor_ == Flavor::Poly) return poly_add(a, b, false);
    std::uint64_t s = a + b;
    return s >= card_ ? s - card_ : s;
}

std::uint64_t RingCtx::sub(std::uint64_t a, std::uint64_t b) const noexcept
{
    if (flavor_ == Flavor::Poly) return poly_add(a, b, true);
    return a >= b ? a - b : a + card_ - b;
}

std::uint64_t RingCtx::neg(std::uint64_t a) const noexcept
{
    return sub(0, a);
}

std::uint64_t RingCtx::mul(std::uint64_t a, std::uint64_t b) const noexcept
{
    if (flavor_ == Flavor::Poly) return poly_mul(a, b);
    return mulmod(a, b, card_);
}

std::uint64_t RingCtx::from_int(std::int64_t v) const noexcept
{
    std::int64_t m = static_cast<std::int64_t>(flavor_ == Flavor::Zadic ? card_ : p_);
    std::int64_t r = v % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint32_t RingCtx::valuation(std::uint64_t a) const noexcept
{
    if (a == 0) return len_;
    if (p_ == 2) return static_cast<std::uint32_t>(__builtin_ctzll(a));
    std::uint32_t t = 0;
    while (a % p_ == 0) {
        a /= p_;
        ++t;
    }
    return t;
}

std::uint64_t RingCtx::inverse(std::uint64_t a) const
{
    if (!is_unit(a)) fail(Errc::NonUnit, "element " + std::to_string(a) + " is not a unit");
    // Fermat on the residue, then Newton x <- x(2 - ax) doubles the precision.
    std::uint64_t x = powmod(a % p_, p_ - 2, p_);
    std::uint64_t two = from_int(2);
    for (std::uint32_t prec = 1; prec < len_; prec *= 2) {
        x = mul(x, sub(two, mul(a, x)));
    }
    return x;
}

std::uint64_t RingCtx::pi_pow(std::uint32_t k) const noexcept
{
    return k >= len_ ? 0 : radix(k);
}

std::uint64_t RingCtx::mul_pi(std::uint64_t a, std::uint32_t k) const noexcept
{
    if (k >= len_) return 0;
    return low(a, len_ - k) * radix(k);
}

std::uint64_t RingCtx::div_pi(std::uint64_t a, std::uint32_t k) const noexcept
{
    if (k >= len_) return 0;
    return a / radix(k);
}

std::uint64_t RingCtx::low(std::uint64_t a, std::uint32_t j) const noexcept
{
    if (j >= len_) return a;
    return a % radix(j);
}

std::uint64_t RingCtx::digit(std::uint64_t a, std::uint32_t j) const noexcept
{
    if (j >= len_) return 0;
    return (a / radix(j)) % p_;
}

void require_same(const RingCtx& a, const RingCtx& b)
{
    if (!(a == b)) fail(Errc::CtxMismatch, "ring mismatch: " + a.descriptor() + " vs " + b.descriptor());
}

RingElem::RingElem(const RingCtx& ctx, std::uint64_t repr) : ctx_(ctx), repr_(repr)
{
    if (repr >= ctx.card())
        fail(Errc::BadParams, "value " + std::to_string(repr) + " is not canonical in " + ctx.descriptor());
}

RingElem RingElem::div_pi(std::uint32_t k) const
{
    if (valuation() < k) fail(Errc::BadParams, "element not divisible by pi^" + std::to_string(k));
    return {ctx_, ctx_.div_pi(repr_, k)};
}

RingElem& RingElem::operator+=(const RingElem& o)
{
    require_same(ctx_, o.ctx_);
    repr_ = ctx_.add(repr_, o.repr_);
    return *this;
}

RingElem& RingElem::operator-=(const RingElem& o)
{
    require_same(ctx_, o.ctx_);
    repr_ = ctx_.sub(repr_, o.repr_);
    return *this;
}

RingElem& RingElem::operator*=(const RingElem& o)
{
    require_same(ctx_, o.ctx_);
    repr_ = ctx_.mul(repr_, o.repr_);
    return *this;
}

std::pair<std::uint32_t, RingElem> valuation_split(const RingElem& x)
{
    const RingCtx& ctx = x.ctx();
    if (x.is_zero()) return {ctx.len(), RingElem::one(ctx)};
    std::uint32_t t = x.valuation();
    // x = pi^t * y where y is determined mod pi^(len-t); the zero-padded y is a unit.
    return {t, RingElem(ctx, ctx.div_pi(x.repr(), t))};
}

RingElem invert(const RingElem& x)
{
    return x.inverse();
}

std::vector<std::uint64_t> digits(const RingElem& x)
{
    std::vector<std::uint64_t> ds(x.ctx().len());
    std::uint64_t r = x.repr();
    for (auto& d : ds) {
        d = r % x.ctx().p();
        r /= x.ctx().p();
    }
    return ds;
}

Section section(const RingCtx& ctx, std::span<const std::uint64_t> ds, std::uint32_t level)
{
    if (level > ctx.len()) fail(Errc::BadLevel, "section level exceeds ring length");
    if (ds.size() > level) fail(Errc::BadLevel, "more digits than the section level");
    std::uint64_t r = 0;
    for (std::size_t i = ds.size(); i-- > 0;) {
        if (ds[i] >= ctx.p()) fail(Errc::DigitOutOfRange, "digit " + std::to_string(ds[i]) + " out of range");
        r = r * ctx.p() + ds[i];
    }
    return {level, RingElem(ctx, r)};
}

Section section_of(const RingElem& x, std::uint32_t level)
{
    if (level > x.ctx().len()) fail(Errc::BadLevel, "section level exceeds ring length");
    return {level, x.low(level)};
}

RingElem truncate(const RingElem& x, std::uint32_t level)
{
    if (level > x.ctx().len() || level == 0) fail(Errc::BadLevel, "bad truncation level");
    RingCtx target = x.ctx().at_level(level);
    return {target, x.ctx().low(x.repr(), level)};
}

RingElem lift(const RingElem& x, const RingCtx& target)
{
    if (target.flavor() != x.ctx().flavor() || target.p() != x.ctx().p())
        fail(Errc::CtxMismatch, "lift between unrelated rings");
    if (target.len() < x.ctx().len()) fail(Errc::BadLevel, "lift target is shorter");
    return {target, x.repr()};
}

} // namespace simclass
