#include "simclass/census.hpp"

#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "simclass/error.hpp"

namespace simclass {

namespace {

using Rational = boost::multiprecision::cpp_rational;

Rational rpow(const Rational& b, int e)
{
    Rational r = 1;
    Rational base = e < 0 ? Rational(1) / b : b;
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
    return r;
}

BigInt to_integer(const Rational& r)
{
    if (boost::multiprecision::denominator(r) != 1)
        fail(Errc::NonIntegralDivision, "generating function coefficient is not an integer");
    return boost::multiprecision::numerator(r);
}

void check_q(std::uint64_t q)
{
    if (q < 2) fail(Errc::BadParams, "q must be at least 2");
}

} // namespace

TransferMatrix transfer_matrix(std::uint64_t q)
{
    check_q(q);
    const BigInt Q(q);
    TransferMatrix t{};
    t[0] = {Q, 0, 0, 0};
    t[1] = {Q * Q - Q, Q * Q, 0, 0};
    t[2] = {Q, 0, Q * Q, 0};
    t[3] = {Q * Q * Q, Q * Q * Q, Q * Q * Q + Q, Q * Q * Q};
    return t;
}

TransferMatrix transfer_power(std::uint64_t q, std::uint32_t level, PowerMode mode)
{
    check_q(q);
    TransferMatrix r{};
    for (int i = 0; i < 4; ++i) r[i][i] = 1;
    if (level == 0) return r;
    const BigInt Q(q);
    if (mode == PowerMode::Iterate) {
        const TransferMatrix t = transfer_matrix(q);
        for (std::uint32_t s = 0; s < level; ++s) {
            TransferMatrix n{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k) n[i][j] += t[i][k] * r[k][j];
            r = std::move(n);
        }
        return r;
    }
    const BigInt qi = ipow(Q, level), q2i = qi * qi, q3i = q2i * qi;
    const BigInt geo = exact_div(qi - 1, Q - 1);
    // theta with the inner fractions brought over one common denominator
    const BigInt q4 = ipow(Q, 4), q3 = ipow(Q, 3);
    const BigInt theta = exact_div(ipow(Q, level - 1) * (qi - 1) * ((q4 + 1) * (qi + 1) - (q3 + 1) * (Q + 1)),
                                   (Q - 1) * (Q - 1) * (Q + 1));
    TransferMatrix t{};
    t[0] = {qi, 0, 0, 0};
    t[1] = {q2i - qi, q2i, 0, 0};
    t[2] = {qi * geo, 0, q2i, 0};
    t[3] = {theta, q2i * Q * geo, exact_div(q2i * (Q * Q + 1) * geo, Q), q3i};
    return t;
}

CountVector apply_transfer(const TransferMatrix& t, const CountVector& v)
{
    CountVector r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) r.eta[i] += t[i][k] * v.eta[k];
    return r;
}

CountVector initial_vector(std::uint64_t q, Group group)
{
    check_q(q);
    const BigInt Q(q);
    if (group == Group::M) return {{Q, Q * Q - Q, Q, Q * Q * Q}};
    return {{Q - 1, (Q - 1) * (Q - 2), Q - 1, Q * Q * Q - Q * Q}};
}

BigInt count3(std::uint64_t q, std::uint32_t level, Group group, CountMode mode)
{
    check_q(q);
    if (level == 0) return 1;
    const BigInt Q(q);
    if (mode == CountMode::Recursion)
        return apply_transfer(transfer_power(q, level - 1, PowerMode::Iterate), initial_vector(q, group)).total();
    // Multiply numerator and denominator by q (M) or q^2 (GL) to clear negative powers.
    const std::uint64_t i = level;
    if (group == Group::M) {
        BigInt num = ipow(Q, 3 * i + 4) + ipow(Q, 3 * i) - ipow(Q, 2 * i + 3) - ipow(Q, 2 * i + 2) -
                     ipow(Q, 2 * i + 1) - ipow(Q, 2 * i) + 2 * ipow(Q, i + 1);
        return exact_div(num, Q * (Q - 1) * (Q * Q - 1));
    }
    BigInt num = ipow(Q, 3 * i + 4) - ipow(Q, 3 * i + 2) + 2 * ipow(Q, 3 * i) - ipow(Q, 2 * i + 3) -
                 ipow(Q, 2 * i + 1) - 2 * ipow(Q, 2 * i) + 2 * ipow(Q, i + 1);
    return exact_div(num, Q * Q * (Q * Q - 1));
}

std::vector<BigInt> gf_coeffs(std::uint64_t q, Group group, std::uint32_t terms, int n)
{
    check_q(q);
    if (terms < 1) fail(Errc::BadParams, "need at least one term");
    if (n != 2 && n != 3) fail(Errc::BadParams, "n must be 2 or 3");
    const Rational Q(q);
    // Partial fractions sum_k w_k / (1 - r_k z), scaled by a common prefactor.
    std::vector<std::pair<Rational, Rational>> terms_wr;
    Rational pre;
    if (n == 3 && group == Group::M) {
        pre = 1 / ((Q - 1) * (Q * Q - 1));
        terms_wr = {{Q * Q * Q + 1 / Q, Q * Q * Q}, {-(Q * Q + Q + 1 + 1 / Q), Q * Q}, {2, Q}};
    } else if (n == 3) {
        pre = 1 / (Q * Q - 1);
        terms_wr = {{Q * Q - 1 + 2 / (Q * Q), Q * Q * Q}, {-(Q + 1 / Q + 2 / (Q * Q)), Q * Q}, {2 / Q, Q}};
    } else if (group == Group::M) {
        pre = 1 / (Q - 1);
        terms_wr = {{Q, Q * Q}, {-1, Q}};
    } else {
        pre = 1;
        terms_wr = {{1, Q * Q}, {-1 / Q, Q}};
    }
    std::vector<BigInt> out;
    // index 0 is the trivial ring: one class by convention
    out.push_back(1);
    for (std::uint32_t i = 1; i < terms; ++i) {
        Rational c = 0;
        for (const auto& [w, r] : terms_wr) c += w * rpow(r, static_cast<int>(i));
        out.push_back(to_integer(pre * c));
    }
    return out;
}

int type_index(const CanonicalForm3& f)
{
    if (std::holds_alternative<ScalarBody>(f.body)) return 0;
    if (const auto* s = std::get_if<SplitBody>(&f.body)) {
        return s->inner.j == s->a.ctx().len() ? 1 : 3;
    }
    if (const auto* h = std::get_if<HardBody>(&f.body)) return h->form.tag == HardTag::TypeI ? 2 : 3;
    return 3;
}

std::vector<Representative> enumerate3(const RingCtx& ctx, Group group, std::uint64_t budget,
                                       const SearchOptions& opts)
{
    if (count3(ctx.q(), ctx.len(), Group::M) > budget)
        fail(Errc::BudgetExceeded, "enumeration exceeds budget of " + std::to_string(budget));
    const std::uint64_t p = ctx.p();
    std::map<std::uint32_t, std::vector<HardForm>> hard_cache;
    std::vector<Representative> out;
    auto emit = [&](std::uint32_t j, const Section& d, Body body) {
        CanonicalForm3 f{j, d, std::move(body)};
        Mat m = canonical_matrix(ctx, f);
        if (group == Group::GL && j == 0 && !is_unit(m)) return;
        out.push_back({std::move(f), std::move(m)});
    };
    for (std::uint32_t j = 0; j <= ctx.len(); ++j) {
        for (std::uint64_t dv = 0; dv < ctx.radix(j); ++dv) {
            Section d{j, RingElem(ctx, dv)};
            if (group == Group::GL && j >= 1 && !ctx.is_unit(dv)) continue;
            if (j == ctx.len()) {
                emit(j, d, ScalarBody{});
                continue;
            }
            const std::uint32_t n = ctx.len() - j;
            const RingCtx sub = ctx.at_level(n);
            for (std::uint64_t a0 = 0; a0 < sub.card(); ++a0)
                for (std::uint64_t a1 = 0; a1 < sub.card(); ++a1)
                    for (std::uint64_t a2 = 0; a2 < sub.card(); ++a2)
                        emit(j, d, CyclicBody{{RingElem(sub, a0), RingElem(sub, a1), RingElem(sub, a2)}});
            for (std::uint64_t a = 0; a < sub.card(); ++a)
                for (std::uint32_t jj = 1; jj <= n; ++jj)
                    for (std::uint64_t b = 0; b < sub.radix(jj); ++b) {
                        if (b % p == a % p) continue;
                        Section bs{jj, RingElem(sub, b)};
                        if (jj == n) {
                            emit(j, d, SplitBody{RingElem(sub, a), {jj, bs, std::nullopt, std::nullopt}});
                            continue;
                        }
                        const RingCtx inner = sub.at_level(n - jj);
                        for (std::uint64_t c = 0; c < inner.card(); ++c)
                            for (std::uint64_t e = 0; e < inner.card(); ++e)
                                emit(j, d,
                                     SplitBody{RingElem(sub, a), {jj, bs, RingElem(inner, c), RingElem(inner, e)}});
                    }
            auto it = hard_cache.find(n);
            if (it == hard_cache.end()) it = hard_cache.emplace(n, hard_classes(sub, opts)).first;
            for (const HardForm& h : it->second) emit(j, d, HardBody{h});
        }
    }
    return out;
}

std::vector<CountVector> type_histogram(const RingCtx& ctx, Group group, std::uint64_t budget)
{
    std::vector<CountVector> out;
    for (std::uint32_t level = 1; level <= ctx.len(); ++level) {
        CountVector v;
        for (const Representative& r : enumerate3(ctx.at_level(level), group, budget)) v.eta[type_index(r.form)] += 1;
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace simclass
