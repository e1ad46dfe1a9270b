#include "simclass/canon2.hpp"

#include <string>

#include "simclass/error.hpp"

namespace simclass {

ScalarSplit split_scalar(const Mat& a)
{
    const RingCtx& R = a.ctx();
    const std::uint32_t j = scalar_level(a);
    Section d = section_of(a.at(0, 0), j);
    if (j == R.len()) return {j, d, std::nullopt};
    Mat diff = a - Mat::scalar(d.value, a.n());
    Mat beta(R.at_level(R.len() - j), a.n());
    for (int r = 0; r < a.n(); ++r)
        for (int c = 0; c < a.n(); ++c) beta.set_raw(r, c, R.div_pi(diff.raw(r, c), j));
    return {j, d, beta};
}

Mat rebuild(const ScalarSplit& s, int n)
{
    const RingCtx& R = s.d.value.ctx();
    Mat out = Mat::scalar(s.d.value, n);
    if (s.beta) out += RingElem::pi_pow(R, s.level) * s.beta->lift(R);
    return out;
}

Mat cyclic_basis(const Mat& b)
{
    const RingCtx& R = b.ctx();
    const int n = b.n();
    const std::uint64_t p = R.p();
    Mat res = b.residue();
    const RingCtx k = res.ctx();
    auto try_vec = [&](const std::vector<std::uint64_t>& w) -> std::optional<Mat> {
        Mat x(k, n);
        std::vector<std::uint64_t> row = w;
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < n; ++c) x.set_raw(i, c, row[c]);
            std::vector<std::uint64_t> next(n, 0);
            for (int c = 0; c < n; ++c)
                for (int t = 0; t < n; ++t) next[c] = k.add(next[c], k.mul(row[t], res.raw(t, c)));
            row = next;
        }
        if (!is_unit(x)) return std::nullopt;
        // same rows over the full ring
        Mat full(R, n);
        std::vector<std::uint64_t> fr = w;
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < n; ++c) full.set_raw(i, c, fr[c]);
            std::vector<std::uint64_t> next(n, 0);
            for (int c = 0; c < n; ++c)
                for (int t = 0; t < n; ++t) next[c] = R.add(next[c], R.mul(fr[t], b.raw(t, c)));
            fr = next;
        }
        return full;
    };
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint64_t> w(n, 0);
        w[i] = 1;
        if (auto x = try_vec(w)) return *x;
    }
    std::vector<std::uint64_t> w(n, 0);
    for (;;) {
        int pos = n - 1;
        while (pos >= 0 && ++w[pos] == p) w[pos--] = 0;
        if (pos < 0) break;
        if (auto x = try_vec(w)) return *x;
    }
    fail(Errc::WrongResidueType, "matrix has no cyclic vector");
}

Mat canonical_matrix(const RingCtx& ctx, const CanonicalForm2& f)
{
    Mat out = Mat::scalar(f.d.value, 2);
    if (f.j < ctx.len()) {
        RingElem cs[2] = {*f.c, *f.e};
        out += RingElem::pi_pow(ctx, f.j) * companion(cs).lift(ctx);
    }
    return out;
}

Canon2Result canon2(const Mat& a)
{
    if (a.n() != 2) fail(Errc::BadParams, "canon2 expects a 2x2 matrix");
    const RingCtx& R = a.ctx();
    ScalarSplit s = split_scalar(a);
    if (!s.beta) return {{s.level, s.d, std::nullopt, std::nullopt}, Mat::identity(R, 2)};
    const Mat& b = *s.beta;
    CanonicalForm2 f{s.level, s.d, -det(b), trace(b)};
    Mat x = cyclic_basis(b).lift(R);
    if (!(conjugate(a, x) == canonical_matrix(R, f))) fail(Errc::Internal, "canon2 witness failed verification");
    return {f, x};
}

std::vector<CanonicalForm2> enumerate2(const RingCtx& ctx, Group group, std::uint64_t budget)
{
    if (count2(ctx.q(), ctx.len(), Group::M) > budget)
        fail(Errc::BudgetExceeded, "enumeration exceeds budget of " + std::to_string(budget));
    std::vector<CanonicalForm2> out;
    for (std::uint32_t j = 0; j <= ctx.len(); ++j) {
        const std::uint64_t nd = ctx.radix(j);
        for (std::uint64_t d = 0; d < nd; ++d) {
            Section sd{j, RingElem(ctx, d)};
            if (j == ctx.len()) {
                if (group == Group::GL && !ctx.is_unit(d)) continue;
                out.push_back({j, sd, std::nullopt, std::nullopt});
                continue;
            }
            if (group == Group::GL && j >= 1 && !ctx.is_unit(d)) continue;
            RingCtx sub = ctx.at_level(ctx.len() - j);
            for (std::uint64_t c = 0; c < sub.card(); ++c) {
                if (group == Group::GL && j == 0 && !sub.is_unit(c)) continue;
                for (std::uint64_t e = 0; e < sub.card(); ++e)
                    out.push_back({j, sd, RingElem(sub, c), RingElem(sub, e)});
            }
        }
    }
    return out;
}

BigInt count2(std::uint64_t q, std::uint32_t level, Group group, CountMode mode)
{
    if (q < 2) fail(Errc::BadParams, "q must be at least 2");
    if (level == 0) return 1;
    const BigInt Q(q);
    if (mode == CountMode::ClosedForm) {
        if (group == Group::M) return exact_div(ipow(Q, 2 * level + 1) - ipow(Q, level), Q - 1);
        return ipow(Q, 2 * level) - ipow(Q, level - 1);
    }
    // (a, b) <- T (a, b) with T = [[q, 0], [q^2, q^2]]
    BigInt a = group == Group::M ? Q : BigInt(Q - 1);
    BigInt b = group == Group::M ? BigInt(Q * Q) : BigInt(Q * Q - Q);
    for (std::uint32_t i = 1; i < level; ++i) {
        BigInt na = Q * a;
        BigInt nb = Q * Q * a + Q * Q * b;
        a = std::move(na);
        b = std::move(nb);
    }
    return a + b;
}

} // namespace simclass
