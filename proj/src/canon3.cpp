#include "simclass/canon3.hpp"

#include <string>

#include "simclass/error.hpp"

namespace simclass {

namespace {

using FpVec = std::vector<std::uint64_t>;

std::uint64_t fmul(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t finv(std::uint64_t a, std::uint64_t p)
{
    std::uint64_t r = 1, e = p - 2;
    while (e) {
        if (e & 1) r = fmul(r, a, p);
        a = fmul(a, a, p);
        e >>= 1;
    }
    return r;
}

/// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> fp_rref(std::vector<FpVec>& m, std::uint64_t p)
{
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t r = row;
        while (r < m.size() && m[r][c] == 0) ++r;
        if (r == m.size()) continue;
        std::swap(m[r], m[row]);
        std::uint64_t inv = finv(m[row][c], p);
        for (auto& x : m[row]) x = fmul(x, inv, p);
        for (std::size_t o = 0; o < m.size(); ++o) {
            if (o == row || m[o][c] == 0) continue;
            std::uint64_t f = m[o][c];
            for (std::size_t k = 0; k < cols; ++k) m[o][k] = (m[o][k] + fmul(p - f, m[row][k], p)) % p;
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::size_t fp_rank(std::vector<FpVec> m, std::uint64_t p)
{
    return fp_rref(m, p).size();
}

/// Basis of {v : v N = 0} for a square residue matrix N.
std::vector<FpVec> left_kernel(const Mat& nres)
{
    const int n = nres.n();
    const std::uint64_t p = nres.ctx().p();
    std::vector<FpVec> t(n, FpVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = nres.raw(j, i);
    auto piv = fp_rref(t, p);
    std::vector<FpVec> basis;
    for (int f = 0; f < n; ++f) {
        if (std::find(piv.begin(), piv.end(), static_cast<std::size_t>(f)) != piv.end()) continue;
        FpVec v(n, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = (p - t[r][f]) % p;
        basis.push_back(v);
    }
    return basis;
}

FpVec flat(const Mat& x)
{
    FpVec v;
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < x.n(); ++j) v.push_back(x.raw(i, j));
    return v;
}

Mat rows_matrix(const RingCtx& R, const std::vector<FpVec>& rows)
{
    Mat x(R, static_cast<int>(rows.size()));
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < x.n(); ++j) x.set_raw(i, j, rows[i][j]);
    return x;
}

Mat diag3(const RingElem& a, const RingElem& b, const RingElem& c)
{
    RingElem ds[3] = {a, b, c};
    return diagonal(ds);
}

/// Running conjugation: cur = conjugate(start, x).
struct Conj {
    Mat cur;
    Mat x;
    explicit Conj(const Mat& start) : cur(start), x(Mat::identity(start.ctx(), start.n())) {}
    void apply(const Mat& s)
    {
        cur = conjugate(cur, s);
        x = s * x;
    }
};

RingElem el(const RingCtx& R, std::uint64_t digit)
{
    return RingElem(R, R.from_int(static_cast<std::int64_t>(digit)));
}

EParams truncate_params(const EParams& e, std::uint32_t level)
{
    return {std::min(e.m, level), truncate(e.a, level), truncate(e.b, level), truncate(e.c, level),
            truncate(e.d, level)};
}

void check_e(const Mat& cur, const EParams& want, const char* what)
{
    if (!(cur == e_matrix(want))) fail(Errc::Internal, std::string("normalization failed: ") + what);
}

/// Branching-level normal form: e lives over A_{k+1} and departs at depth k.
HardResult normalize_branching(const EParams& e, HardTag tag, std::uint32_t k)
{
    const RingCtx& R = e.a.ctx();
    const std::uint64_t p = R.p();
    const std::uint32_t L = R.len();
    Conj st(e_matrix(e));
    EParams cur = e;
    RingElem one = RingElem::one(R);
    RingElem pik = RingElem::pi_pow(R, k);

    if (tag == HardTag::TypeII) {
        if (cur.m > k) {
            // put pi^k * unit into the (1,2) slot, then re-reduce
            RingElem s = el(R, finv(cur.b.digit(k), p));
            st.apply(elementary(R, 3, 0, 2, s));
            EReduction red = reduce_to_e_form(st.cur);
            st.apply(red.witness);
            cur = red.params;
            if (cur.m != k) fail(Errc::Internal, "type II: (1,2) valuation not lowered");
        }
        if (!cur.a.is_zero()) {
            std::uint64_t b1 = cur.b.digit(k);
            std::uint64_t ed = fmul(p - cur.a.digit(k), finv(b1, p), p);
            RingElem ev = el(R, ed);
            Mat xe = Mat::identity(R, 3);
            xe.set(1, 0, -ev);
            xe.set(2, 0, ev * ev * pik);
            xe.set(2, 1, -(el(R, 2) * ev * pik));
            st.apply(xe);
            EParams want{k, RingElem::zero(R), cur.b, cur.c - el(R, 3) * ev * pik, cur.d + ev * pik};
            check_e(st.cur, want, "type II a-elimination");
            cur = want;
        }
    } else if (tag == HardTag::TypeIII0) {
        std::uint64_t a1 = cur.a.digit(k);
        st.apply(diag3(el(R, a1), one, one));
        cur.a = pik;
        check_e(st.cur, cur, "type III0 scaling");
        std::uint64_t delta = cur.d.digit(k);
        if (delta != 0) {
            RingElem dv = el(R, delta);
            Mat x = Mat::identity(R, 3);
            x.set(0, 1, dv * dv * pik + dv * cur.c);
            x.set(0, 2, -dv);
            x.set(2, 1, dv * pik);
            st.apply(x);
            EParams want{L, pik, RingElem::zero(R), cur.c + el(R, 3) * dv * pik, cur.d - dv * pik};
            check_e(st.cur, want, "type III0 d-absorption");
            cur = want;
        }
    } else if (tag == HardTag::TypeIII1) {
        std::uint64_t delta = p == 3 ? cur.d.digit(k) : fmul(p - cur.c.digit(k), finv(3 % p, p), p);
        if (delta != 0) {
            RingElem dv = el(R, delta);
            Mat x = Mat::identity(R, 3);
            x.set(1, 0, -dv);
            x.set(2, 0, dv * dv * pik);
            x.set(2, 1, -(el(R, 2) * dv * pik));
            st.apply(inverse(x));
            EParams want{cur.m, cur.a, cur.b, cur.c + el(R, 3) * dv * pik, cur.d - dv * pik};
            check_e(st.cur, want, "type III1 trace normalization");
            cur = want;
        }
    }
    return {{tag, k, cur}, st.x};
}

/// Candidate lifts of r (over A_l) to A_{l+1}, in the fixed search order.
template <class Visit>
void for_each_candidate(const EParams& r, const RingCtx& up, Visit&& visit)
{
    const std::uint32_t l = r.a.ctx().len();
    const std::uint64_t p = up.p();
    Mat base = e_matrix(r).lift(up);
    RingElem pil = RingElem::pi_pow(up, l);
    for (std::uint64_t dx = 0; dx < p; ++dx)
        for (std::uint64_t da = 0; da < p; ++da)
            for (std::uint64_t db = 0; db < p; ++db)
                for (std::uint64_t dc = 0; dc < p; ++dc)
                    for (std::uint64_t dd = 0; dd < p; ++dd) {
                        Mat delta(up, 3);
                        delta.set_raw(0, 1, dx);
                        delta.set_raw(2, 0, da);
                        delta.set_raw(2, 1, db);
                        delta.set_raw(2, 2, dc);
                        for (int i = 0; i < 3; ++i) delta.set_raw(i, i, up.add(delta.raw(i, i), dd));
                        if (visit(base + pil * delta)) return;
                    }
}

HardTag departure(const EParams& e, std::uint32_t& k)
{
    const std::uint32_t n = e.a.ctx().len();
    const std::uint32_t va = e.a.valuation(), vb = e.b.valuation();
    const std::uint32_t mu = std::min(e.m, va);
    if (vb >= n && mu >= n) {
        k = n;
        return HardTag::TypeI;
    }
    if (vb <= mu) {
        k = vb;
        return HardTag::TypeII;
    }
    k = mu;
    return e.m > va ? HardTag::TypeIII0 : HardTag::TypeIII1;
}

} // namespace

ResidueType residue_type(const Mat& b)
{
    if (b.n() != 3) fail(Errc::BadParams, "residue_type expects a 3x3 matrix");
    Mat r = b.residue();
    const RingCtx& k = r.ctx();
    const std::uint64_t p = k.p();
    if (r.is_scalar()) return {ResidueTag::Scalar, 0, 0, r.raw(0, 0)};
    Mat r2 = r * r;
    if (fp_rank({flat(Mat::identity(k, 3)), flat(r), flat(r2)}, p) == 3) return {ResidueTag::Cyclic};
    // minimal polynomial x^2 - s x - t; the double eigenvalue is tr - s
    std::uint64_t s = 0;
    bool found = false;
    for (int i = 0; i < 3 && !found; ++i)
        for (int j = 0; j < 3 && !found; ++j)
            if (i != j && r.raw(i, j) != 0) {
                s = fmul(r2.raw(i, j), finv(r.raw(i, j), p), p);
                found = true;
            }
    if (!found) {
        for (int i = 1; i < 3 && !found; ++i)
            if (r.raw(i, i) != r.raw(0, 0)) {
                s = (r.raw(i, i) + r.raw(0, 0)) % p;
                found = true;
            }
    }
    std::uint64_t tr = trace(r).repr();
    std::uint64_t dbl = (tr + p - s) % p;
    std::uint64_t sgl = (fmul(2, s, p) + p - tr) % p;
    if (dbl == sgl) return {ResidueTag::JType, 0, 0, dbl};
    return {ResidueTag::SplitDiag, sgl, dbl, 0};
}

Mat e_matrix(const EParams& e)
{
    return e_matrix(e.m, e.a, e.b, e.c, e.d);
}

std::optional<EParams> read_e_form(const Mat& x)
{
    if (x.n() != 3) return std::nullopt;
    const RingCtx& R = x.ctx();
    if (x.raw(1, 1) != x.raw(0, 0) || x.raw(0, 2) != 0 || x.raw(1, 0) != 0 || x.raw(1, 2) != R.from_int(1))
        return std::nullopt;
    std::uint64_t top = x.raw(0, 1);
    std::uint32_t m = R.valuation(top);
    if (top != R.pi_pow(m) || m == 0) return std::nullopt;
    RingElem d = x.at(0, 0);
    return EParams{m, x.at(2, 0), x.at(2, 1), x.at(2, 2) - d, d};
}

BlockSplit hensel_block_split(const Mat& b)
{
    ResidueType rt = residue_type(b);
    if (rt.tag != ResidueTag::SplitDiag) fail(Errc::WrongResidueType, "block split needs a SplitDiag residue");
    const RingCtx& R = b.ctx();
    Conj st(b);
    Mat res = b.residue();
    const RingCtx& k = res.ctx();
    RingElem ab = RingElem(k, rt.a), bb = RingElem(k, rt.b);
    Mat want = diag3(ab, bb, bb);
    if (!(res == want)) {
        auto ka = left_kernel(res - Mat::scalar(ab, 3));
        auto kb = left_kernel(res - Mat::scalar(bb, 3));
        if (ka.size() != 1 || kb.size() != 2) fail(Errc::Internal, "unexpected eigenspace dimensions");
        st.apply(rows_matrix(R, {ka[0], kb[0], kb[1]}));
    }
    // Newton on the (1,2), (1,3) entries of U beta U^-1, U = I + x E12 + y E13.
    const Mat b1 = st.cur;
    RingElem x = RingElem::zero(R), y = RingElem::zero(R);
    auto u_of = [&](const RingElem& xx, const RingElem& yy) {
        Mat u = Mat::identity(R, 3);
        u.set(0, 1, xx);
        u.set(0, 2, yy);
        return u;
    };
    RingElem two = el(R, 2);
    bool converged = false;
    for (std::uint32_t it = 0; it < R.len() + 8; ++it) {
        Mat g = conjugate(b1, u_of(x, y));
        if (g.raw(0, 1) == 0 && g.raw(0, 2) == 0) {
            converged = true;
            break;
        }
        auto B = [&](int i, int j) { return b1.at(i, j); };
        Mat jac(R, 2);
        jac.set(0, 0, B(1, 1) - B(0, 0) - two * x * B(1, 0) - y * B(2, 0));
        jac.set(0, 1, B(2, 1) - x * B(2, 0));
        jac.set(1, 0, B(1, 2) - y * B(1, 0));
        jac.set(1, 1, B(2, 2) - B(0, 0) - x * B(1, 0) - two * y * B(2, 0));
        Mat ji = inverse(jac);
        RingElem f1 = g.at(0, 1), f2 = g.at(0, 2);
        x -= ji.at(0, 0) * f1 + ji.at(0, 1) * f2;
        y -= ji.at(1, 0) * f1 + ji.at(1, 1) * f2;
    }
    if (!converged) fail(Errc::Internal, "Newton iteration did not converge");
    st.apply(u_of(x, y));
    // Clear the first column with L = I + x1 E21 + y1 E31 (a linear system).
    const Mat& g = st.cur;
    Mat sys(R, 2);
    sys.set(0, 0, g.at(0, 0) - g.at(1, 1));
    sys.set(0, 1, -g.at(1, 2));
    sys.set(1, 0, -g.at(2, 1));
    sys.set(1, 1, g.at(0, 0) - g.at(2, 2));
    Mat si = inverse(sys);
    RingElem r1 = -g.at(1, 0), r2 = -g.at(2, 0);
    Mat l = Mat::identity(R, 3);
    l.set(1, 0, si.at(0, 0) * r1 + si.at(0, 1) * r2);
    l.set(2, 0, si.at(1, 0) * r1 + si.at(1, 1) * r2);
    st.apply(l);
    const Mat& f = st.cur;
    if (f.raw(0, 1) || f.raw(0, 2) || f.raw(1, 0) || f.raw(2, 0)) fail(Errc::Internal, "block split failed");
    Mat blk(R, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) blk.set_raw(i, j, f.raw(i + 1, j + 1));
    return {f.at(0, 0), blk, st.x};
}

EReduction reduce_to_e_form(const Mat& b)
{
    ResidueType rt = residue_type(b);
    if (rt.tag != ResidueTag::JType) fail(Errc::WrongResidueType, "E-form reduction needs a JType residue");
    const RingCtx& R = b.ctx();
    Conj st(b);
    Mat res = b.residue();
    const RingCtx& k = res.ctx();
    RingElem db = RingElem(k, rt.d);
    Mat jres = Mat::scalar(db, 3);
    jres.set_raw(1, 2, 1);
    if (!(res == jres)) {
        Mat nres = res - Mat::scalar(db, 3);
        FpVec r2, r3(3, 0);
        for (int i = 0; i < 3; ++i) {
            bool nz = false;
            for (int c = 0; c < 3; ++c) nz = nz || nres.raw(i, c) != 0;
            if (nz) {
                r2.assign(3, 0);
                r2[i] = 1;
                for (int c = 0; c < 3; ++c) r3[c] = nres.raw(i, c);
                break;
            }
        }
        FpVec r1;
        for (const auto& v : left_kernel(nres)) {
            if (fp_rank({v, r3}, k.p()) == 2) {
                r1 = v;
                break;
            }
        }
        if (r1.empty() || r2.empty()) fail(Errc::Internal, "residue normalization failed");
        st.apply(rows_matrix(R, {r1, r2, r3}));
    }
    RingElem one = RingElem::one(R);
    // (2,3) entry to 1
    st.apply(diag3(one, one, st.cur.at(1, 2)));
    // clear (1,3)
    st.apply(elementary(R, 3, 0, 1, -st.cur.at(0, 2)));
    RingElem d = st.cur.at(0, 0);
    // clear (2,1), then make (2,2) equal to d
    st.apply(elementary(R, 3, 2, 0, st.cur.at(1, 0)));
    st.apply(elementary(R, 3, 2, 1, st.cur.at(1, 1) - d));
    // (1,2) entry to an exact power of pi
    std::uint32_t m = R.len();
    if (st.cur.raw(0, 1) != 0) {
        auto [t, u] = valuation_split(st.cur.at(0, 1));
        m = t;
        st.apply(diag3(u.inverse(), one, one));
    }
    if (m == 0) fail(Errc::Internal, "E-form reduction produced a unit (1,2) entry");
    EParams e{m, st.cur.at(2, 0), st.cur.at(2, 1), st.cur.at(2, 2) - d, d};
    check_e(st.cur, e, "E-form reduction");
    return {e, st.x};
}

const char* hard_tag_name(HardTag t) noexcept
{
    switch (t) {
    case HardTag::TypeI: return "I";
    case HardTag::TypeII: return "II";
    case HardTag::TypeIII0: return "III0";
    case HardTag::TypeIII1: return "III1";
    }
    return "?";
}

HardResult classify_hard(const EParams& e, const SearchOptions& opts)
{
    const RingCtx& R = e.a.ctx();
    for (const RingElem* x : {&e.b, &e.c, &e.d}) require_same(R, x->ctx());
    const std::uint32_t n = R.len();
    if (e.m < 1 || e.m > n) fail(Errc::BadParams, "E-form exponent out of range");
    if (e.a.digit(0) || e.b.digit(0) || e.c.digit(0))
        fail(Errc::NotHardCase, "E-form parameters a, b, c must lie in the maximal ideal");
    std::uint32_t k = 0;
    HardTag tag = departure(e, k);
    if (tag == HardTag::TypeI) return {{tag, n, e}, Mat::identity(R, 3)};

    const Mat start = e_matrix(e);
    const std::uint32_t L = k + 1;
    HardResult br = normalize_branching(truncate_params(e, L), tag, k);
    Mat x = br.witness.lift(R);
    Mat cur = conjugate(start, x);
    EParams form = br.form.params;
    SimilarityOptions sopts;
    sopts.search = opts;
    for (std::uint32_t l = L; l < n; ++l) {
        RingCtx up = R.at_level(l + 1);
        Mat target = cur.truncate(l + 1);
        std::optional<Mat> step;
        for_each_candidate(form, up, [&](const Mat& cand) {
            Similarity s = is_similar(cand, target, sopts);
            if (!s.similar) return false;
            EReduction red = reduce_to_e_form(cand);
            form = red.params;
            step = red.witness * *s.witness;
            return true;
        });
        if (!step) fail(Errc::Internal, "no candidate lift is similar");
        Mat w = step->lift(R);
        cur = conjugate(cur, w);
        x = w * x;
    }
    check_e(cur, form, "hard normal form");
    return {{tag, k, form}, x};
}

BigInt CentralizerShape::order() const
{
    return ipow(BigInt(q - 1), static_cast<std::uint64_t>(unit_rank)) * ipow(BigInt(q), affine_dim);
}

CentralizerShape centralizer_shape(const EParams& e)
{
    const RingCtx& R = e.a.ctx();
    const std::uint64_t n = R.len();
    const std::uint64_t va = e.a.valuation(), vb = e.b.valuation();
    const std::uint64_t mu = std::min<std::uint64_t>(e.m, va);
    if (vb <= mu) return {2, 3 * n + 2 * vb - 2, R.q()};
    return {1, 3 * n + 2 * mu - 1, R.q()};
}

Mat body_matrix(const Body& body)
{
    return std::visit(
        [](const auto& b) -> Mat {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ScalarBody>) {
                fail(Errc::BadParams, "scalar body has no matrix");
            } else if constexpr (std::is_same_v<T, CyclicBody>) {
                return companion(b.coeffs);
            } else if constexpr (std::is_same_v<T, SplitBody>) {
                return block_diag(b.a, canonical_matrix(b.a.ctx(), b.inner));
            } else {
                return e_matrix(b.form.params);
            }
        },
        body);
}

Mat canonical_matrix(const RingCtx& ctx, const CanonicalForm3& f)
{
    Mat out = Mat::scalar(f.d.value, 3);
    if (std::holds_alternative<ScalarBody>(f.body)) return out;
    return out + RingElem::pi_pow(ctx, f.j) * body_matrix(f.body).lift(ctx);
}

Canon3Result canon3(const Mat& a, const SearchOptions& opts)
{
    if (a.n() != 3) fail(Errc::BadParams, "canon3 expects a 3x3 matrix");
    const RingCtx& R = a.ctx();
    ScalarSplit s = split_scalar(a);
    if (!s.beta) return {{s.level, s.d, ScalarBody{}}, Mat::identity(R, 3)};
    const Mat& b = *s.beta;
    ResidueType rt = residue_type(b);
    Body body;
    Mat x(b.ctx(), 3);
    switch (rt.tag) {
    case ResidueTag::Scalar:
        fail(Errc::Internal, "scalar residue after a maximal scalar split");
    case ResidueTag::Cyclic: {
        auto cp = charpoly(b);
        body = CyclicBody{{cp[0], cp[1], cp[2]}};
        x = cyclic_basis(b);
        break;
    }
    case ResidueTag::SplitDiag: {
        BlockSplit bs = hensel_block_split(b);
        Canon2Result inner = canon2(bs.block);
        body = SplitBody{bs.a, inner.form};
        x = block_diag(RingElem::one(b.ctx()), inner.witness) * bs.witness;
        break;
    }
    case ResidueTag::JType: {
        EReduction red = reduce_to_e_form(b);
        HardResult hr = classify_hard(red.params, opts);
        body = HardBody{hr.form};
        x = hr.witness * red.witness;
        break;
    }
    }
    CanonicalForm3 f{s.level, s.d, body};
    Mat w = x.lift(R);
    if (!(conjugate(a, w) == canonical_matrix(R, f))) fail(Errc::Internal, "canon3 witness failed verification");
    return {f, w};
}

std::vector<HardForm> hard_classes(const RingCtx& ctx, const SearchOptions& opts)
{
    const std::uint32_t n = ctx.len();
    const std::uint64_t p = ctx.p();
    std::vector<HardForm> out;
    auto params = [](const RingCtx& R, std::uint32_t m, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                     std::uint64_t d) {
        return EParams{m, RingElem(R, a), RingElem(R, b), RingElem(R, c), RingElem(R, d)};
    };
    for (std::uint64_t d = 0; d < ctx.card(); ++d)
        for (std::uint64_t c = 0; c < ctx.card(); c += p) out.push_back({HardTag::TypeI, n, params(ctx, n, 0, 0, c, d)});

    SimilarityOptions sopts;
    sopts.search = opts;
    for (std::uint32_t k = 1; k < n; ++k) {
        const RingCtx lo = ctx.at_level(k);
        const RingCtx br = ctx.at_level(k + 1);
        const std::uint64_t pk = br.pi_pow(k);
        std::vector<HardForm> reps;
        for (std::uint64_t d = 0; d < lo.card(); ++d)
            for (std::uint64_t c = 0; c < lo.card(); c += p) {
                for (std::uint64_t b1 = 1; b1 < p; ++b1)
                    for (std::uint64_t g = 0; g < p; ++g)
                        for (std::uint64_t dl = 0; dl < p; ++dl)
                            reps.push_back({HardTag::TypeII, k, params(br, k, 0, b1 * pk, c + g * pk, d + dl * pk)});
                for (std::uint64_t g = 0; g < p; ++g)
                    reps.push_back({HardTag::TypeIII0, k, params(br, k + 1, pk, 0, c + g * pk, d)});
                for (std::uint64_t a1 = 0; a1 < p; ++a1)
                    for (std::uint64_t t = 0; t < p; ++t) {
                        if (p == 3)
                            reps.push_back({HardTag::TypeIII1, k, params(br, k, a1 * pk, 0, c + t * pk, d)});
                        else
                            reps.push_back({HardTag::TypeIII1, k, params(br, k, a1 * pk, 0, c, d + t * pk)});
                    }
            }
        for (const HardForm& rep : reps) {
            std::vector<EParams> level{rep.params};
            for (std::uint32_t l = k + 1; l < n; ++l) {
                RingCtx up = ctx.at_level(l + 1);
                std::vector<EParams> next;
                for (const EParams& r : level) {
                    std::vector<EParams> kids;
                    std::vector<Mat> kid_mats;
                    for_each_candidate(r, up, [&](const Mat& cand) {
                        for (const Mat& km : kid_mats)
                            if (is_similar(cand, km, sopts).similar) return false;
                        EReduction red = reduce_to_e_form(cand);
                        kids.push_back(red.params);
                        kid_mats.push_back(cand);
                        return false;
                    });
                    next.insert(next.end(), kids.begin(), kids.end());
                }
                level = std::move(next);
            }
            for (const EParams& e : level) out.push_back({rep.tag, k, e});
        }
    }
    return out;
}

} // namespace simclass
