#include "simclass/matrix.hpp"

#include <algorithm>
#include <string>

#include "simclass/error.hpp"

namespace simclass {

namespace {

void check_n(int n)
{
    if (n != 2 && n != 3) fail(Errc::BadParams, "matrix size must be 2 or 3, got " + std::to_string(n));
}

} // namespace

Mat::Mat(const RingCtx& ctx, int n) : ctx_(ctx), n_(n)
{
    check_n(n);
}

Mat Mat::identity(const RingCtx& ctx, int n)
{
    Mat r(ctx, n);
    for (int i = 0; i < n; ++i) r.set_raw(i, i, ctx.from_int(1));
    return r;
}

Mat Mat::scalar(const RingElem& d, int n)
{
    Mat r(d.ctx(), n);
    for (int i = 0; i < n; ++i) r.set_raw(i, i, d.repr());
    return r;
}

Mat Mat::from_rows(const RingCtx& ctx, const std::vector<std::vector<std::uint64_t>>& rows)
{
    int n = static_cast<int>(rows.size());
    check_n(n);
    Mat r(ctx, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) fail(Errc::BadParams, "matrix is not square");
        for (int j = 0; j < n; ++j) r.set(i, j, RingElem(ctx, rows[i][j]));
    }
    return r;
}

void Mat::set(int i, int j, const RingElem& x)
{
    require_same(ctx_, x.ctx());
    e_[idx(i, j)] = x.repr();
}

std::vector<std::vector<std::uint64_t>> Mat::rows() const
{
    std::vector<std::vector<std::uint64_t>> r(n_, std::vector<std::uint64_t>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i][j] = raw(i, j);
    return r;
}

Mat Mat::truncate(std::uint32_t level) const
{
    if (level == 0 || level > ctx_.len()) fail(Errc::BadLevel, "bad truncation level");
    Mat r(ctx_.at_level(level), n_);
    for (int k = 0; k < n_ * n_; ++k) r.e_[k] = ctx_.low(e_[k], level);
    return r;
}

Mat Mat::lift(const RingCtx& target) const
{
    if (target.flavor() != ctx_.flavor() || target.p() != ctx_.p())
        fail(Errc::CtxMismatch, "lift between unrelated rings");
    if (target.len() < ctx_.len()) fail(Errc::BadLevel, "lift target is shorter");
    Mat r(target, n_);
    r.e_ = e_;
    return r;
}

bool Mat::is_scalar() const noexcept
{
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j ? raw(i, j) != 0 : raw(i, i) != raw(0, 0)) return false;
    return true;
}

Mat& Mat::operator+=(const Mat& o)
{
    require_same(ctx_, o.ctx_);
    if (n_ != o.n_) fail(Errc::BadParams, "matrix size mismatch");
    for (int k = 0; k < n_ * n_; ++k) e_[k] = ctx_.add(e_[k], o.e_[k]);
    return *this;
}

Mat& Mat::operator-=(const Mat& o)
{
    require_same(ctx_, o.ctx_);
    if (n_ != o.n_) fail(Errc::BadParams, "matrix size mismatch");
    for (int k = 0; k < n_ * n_; ++k) e_[k] = ctx_.sub(e_[k], o.e_[k]);
    return *this;
}

Mat operator*(const Mat& a, const Mat& b)
{
    require_same(a.ctx_, b.ctx_);
    if (a.n_ != b.n_) fail(Errc::BadParams, "matrix size mismatch");
    const RingCtx& R = a.ctx_;
    Mat r(R, a.n_);
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j < a.n_; ++j) {
            std::uint64_t s = 0;
            for (int k = 0; k < a.n_; ++k) s = R.add(s, R.mul(a.raw(i, k), b.raw(k, j)));
            r.set_raw(i, j, s);
        }
    return r;
}

Mat operator*(const RingElem& s, const Mat& a)
{
    require_same(s.ctx(), a.ctx_);
    Mat r(a.ctx_, a.n_);
    for (int k = 0; k < a.n_ * a.n_; ++k) r.e_[k] = a.ctx_.mul(s.repr(), a.e_[k]);
    return r;
}

RingElem det(const Mat& a)
{
    const RingCtx& R = a.ctx();
    auto m = [&](std::uint64_t x, std::uint64_t y) { return R.mul(x, y); };
    if (a.n() == 2) return {R, R.sub(m(a.raw(0, 0), a.raw(1, 1)), m(a.raw(0, 1), a.raw(1, 0)))};
    std::uint64_t t0 = m(a.raw(0, 0), R.sub(m(a.raw(1, 1), a.raw(2, 2)), m(a.raw(1, 2), a.raw(2, 1))));
    std::uint64_t t1 = m(a.raw(0, 1), R.sub(m(a.raw(1, 0), a.raw(2, 2)), m(a.raw(1, 2), a.raw(2, 0))));
    std::uint64_t t2 = m(a.raw(0, 2), R.sub(m(a.raw(1, 0), a.raw(2, 1)), m(a.raw(1, 1), a.raw(2, 0))));
    return {R, R.add(R.sub(t0, t1), t2)};
}

RingElem trace(const Mat& a)
{
    RingElem t = RingElem::zero(a.ctx());
    for (int i = 0; i < a.n(); ++i) t += a.at(i, i);
    return t;
}

bool is_unit(const Mat& a)
{
    return det(a).is_unit();
}

Mat inverse(const Mat& a)
{
    RingElem d = det(a);
    if (!d.is_unit()) fail(Errc::NotInvertible, "matrix is not invertible");
    const RingCtx& R = a.ctx();
    RingElem di = d.inverse();
    Mat adj(R, a.n());
    if (a.n() == 2) {
        adj.set_raw(0, 0, a.raw(1, 1));
        adj.set_raw(0, 1, R.neg(a.raw(0, 1)));
        adj.set_raw(1, 0, R.neg(a.raw(1, 0)));
        adj.set_raw(1, 1, a.raw(0, 0));
    } else {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                // adj[j][i] is the (i,j) cofactor
                int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
                std::uint64_t cof = R.sub(R.mul(a.raw(r0, c0), a.raw(r1, c1)), R.mul(a.raw(r0, c1), a.raw(r1, c0)));
                adj.set_raw(j, i, cof);
            }
    }
    return di * adj;
}

Mat conjugate(const Mat& a, const Mat& x)
{
    return x * a * inverse(x);
}

std::vector<RingElem> charpoly(const Mat& a)
{
    const RingCtx& R = a.ctx();
    RingElem tr = trace(a), dt = det(a);
    if (a.n() == 2) return {-dt, tr};
    std::uint64_t c2 = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            c2 = R.add(c2, R.sub(R.mul(a.raw(i, i), a.raw(j, j)), R.mul(a.raw(i, j), a.raw(j, i))));
    return {dt, RingElem(R, R.neg(c2)), tr};
}

std::uint32_t scalar_level(const Mat& a)
{
    const RingCtx& R = a.ctx();
    std::uint32_t j = R.len();
    for (int r = 0; r < a.n(); ++r)
        for (int c = 0; c < a.n(); ++c) {
            std::uint64_t x = r == c ? R.sub(a.raw(r, r), a.raw(0, 0)) : a.raw(r, c);
            j = std::min(j, R.valuation(x));
        }
    return j;
}

Mat companion(std::span<const RingElem> coeffs)
{
    if (coeffs.empty()) fail(Errc::BadParams, "companion needs coefficients");
    int n = static_cast<int>(coeffs.size());
    check_n(n);
    const RingCtx& R = coeffs[0].ctx();
    Mat r(R, n);
    for (int i = 0; i + 1 < n; ++i) r.set_raw(i, i + 1, R.from_int(1));
    for (int j = 0; j < n; ++j) r.set(n - 1, j, coeffs[j]);
    return r;
}

Mat block_diag(const RingElem& a, const Mat& block)
{
    if (block.n() != 2) fail(Errc::BadParams, "block_diag expects a 2x2 block");
    require_same(a.ctx(), block.ctx());
    Mat r(a.ctx(), 3);
    r.set(0, 0, a);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.set_raw(i + 1, j + 1, block.raw(i, j));
    return r;
}

Mat e_matrix(std::uint32_t m, const RingElem& a, const RingElem& b, const RingElem& c, const RingElem& d)
{
    if (m < 1) fail(Errc::BadParams, "e_matrix needs m >= 1");
    const RingCtx& R = a.ctx();
    for (const RingElem* x : {&b, &c, &d}) require_same(R, x->ctx());
    Mat r = Mat::scalar(d, 3);
    r.set_raw(0, 1, R.pi_pow(m));
    r.set_raw(1, 2, R.from_int(1));
    r.set(2, 0, a);
    r.set(2, 1, b);
    r.set(2, 2, c + d);
    return r;
}

Mat j_matrix(const RingElem& c, const RingElem& d)
{
    const RingCtx& R = c.ctx();
    return e_matrix(R.len(), RingElem::zero(R), RingElem::zero(R), c, d);
}

Mat elementary(const RingCtx& ctx, int n, int i, int j, const RingElem& x)
{
    check_n(n);
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) fail(Errc::BadParams, "elementary needs distinct indices in range");
    Mat r = Mat::identity(ctx, n);
    r.set(i, j, x);
    return r;
}

Mat diagonal(std::span<const RingElem> ds)
{
    if (ds.empty()) fail(Errc::BadParams, "diagonal needs entries");
    Mat r(ds[0].ctx(), static_cast<int>(ds.size()));
    for (int i = 0; i < r.n(); ++i) r.set(i, i, ds[i]);
    return r;
}

Mat build(const RingCtx& ctx, BuildKind kind, std::span<const std::uint64_t> params)
{
    auto need = [&](std::size_t k) {
        if (params.size() != k) fail(Errc::BadParams, "wrong number of build parameters");
    };
    auto el = [&](std::size_t i) { return RingElem(ctx, params[i]); };
    switch (kind) {
    case BuildKind::Companion: {
        std::vector<RingElem> cs;
        for (std::size_t i = 0; i < params.size(); ++i) cs.push_back(el(i));
        return companion(cs);
    }
    case BuildKind::BlockDiag: {
        need(5);
        Mat b(ctx, 2);
        for (int k = 0; k < 4; ++k) b.set(k / 2, k % 2, el(1 + k));
        return block_diag(el(0), b);
    }
    case BuildKind::EMatrix:
        need(5);
        if (params[0] < 1) fail(Errc::BadParams, "e_matrix needs m >= 1");
        return e_matrix(static_cast<std::uint32_t>(std::min<std::uint64_t>(params[0], ctx.len())), el(1), el(2),
                        el(3), el(4));
    case BuildKind::JMatrix:
        need(2);
        return j_matrix(el(0), el(1));
    case BuildKind::Elementary:
        need(4);
        return elementary(ctx, static_cast<int>(params[0]), static_cast<int>(params[1]),
                          static_cast<int>(params[2]), el(3));
    }
    fail(Errc::BadParams, "unknown build kind");
}

} // namespace simclass
