#include "simclass/modsolve.hpp"

#include <algorithm>
#include <limits>

#include "simclass/error.hpp"

namespace simclass {

namespace {

bool is_zero_vec(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
}

// v -= f * w
void axpy_sub(const RingCtx& R, Vec& v, std::uint64_t f, const Vec& w)
{
    if (f == 0) return;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = R.sub(v[k], R.mul(f, w[k]));
}

void scale(const RingCtx& R, Vec& v, std::uint64_t f)
{
    for (auto& x : v) x = R.mul(f, x);
}

std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t fp_det(const std::vector<std::uint64_t>& m, int n, std::uint64_t p)
{
    auto at = [&](int i, int j) { return m[i * n + j]; };
    auto sub = [&](std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + p - b; };
    auto add = [&](std::uint64_t a, std::uint64_t b) { return a + b >= p ? a + b - p : a + b; };
    if (n == 2) return sub(fp_mul(at(0, 0), at(1, 1), p), fp_mul(at(0, 1), at(1, 0), p));
    std::uint64_t t0 = fp_mul(at(0, 0), sub(fp_mul(at(1, 1), at(2, 2), p), fp_mul(at(1, 2), at(2, 1), p)), p);
    std::uint64_t t1 = fp_mul(at(0, 1), sub(fp_mul(at(1, 0), at(2, 2), p), fp_mul(at(1, 2), at(2, 0), p)), p);
    std::uint64_t t2 = fp_mul(at(0, 2), sub(fp_mul(at(1, 0), at(2, 1), p), fp_mul(at(1, 1), at(2, 0), p)), p);
    return add(sub(t0, t1), t2);
}

Vec to_vec(const Mat& x)
{
    int n = x.n();
    Vec v(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i + n * j)] = x.raw(i, j);
    return v;
}

Mat from_vec(const RingCtx& R, int n, const Vec& v)
{
    Mat x(R, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x.set_raw(i, j, v[static_cast<std::size_t>(i + n * j)]);
    return x;
}

/// Basis of the residue span of S over F_p, each vector paired with a preimage in S.
struct ResidueSpan {
    int n;
    std::uint64_t p;
    std::vector<std::vector<std::uint64_t>> res; // row-major n*n residues, pivot normalized to 1
    std::vector<std::size_t> piv;
    std::vector<Mat> lifts;
};

ResidueSpan residue_span(const IntertwinerModule& s)
{
    const RingCtx& R = s.ctx;
    const std::uint64_t p = R.p();
    const int n = s.n;
    ResidueSpan out{n, p, {}, {}, {}};
    for (const Mat& g : s.generators) {
        std::vector<std::uint64_t> r(static_cast<std::size_t>(n * n));
        for (int k = 0; k < n * n; ++k) r[k] = R.low(g.raw(k / n, k % n), 1);
        Mat lifted = g;
        for (std::size_t b = 0; b < out.res.size(); ++b) {
            std::uint64_t f = r[out.piv[b]];
            if (f == 0) continue;
            for (int k = 0; k < n * n; ++k) r[k] = (r[k] + fp_mul(p - f, out.res[b][k], p)) % p;
            lifted -= RingElem(R, R.from_int(static_cast<std::int64_t>(f))) * out.lifts[b];
        }
        auto nz = std::find_if(r.begin(), r.end(), [](std::uint64_t x) { return x != 0; });
        if (nz == r.end()) continue;
        std::size_t pc = static_cast<std::size_t>(nz - r.begin());
        std::uint64_t inv = R.at_level(1).inverse(r[pc]);
        for (auto& x : r) x = fp_mul(x, inv, p);
        lifted = RingElem(R, R.low(inv, 1)) * lifted;
        // keep earlier rows reduced at the new pivot so residues stay a clean basis
        for (std::size_t b = 0; b < out.res.size(); ++b) {
            std::uint64_t f = out.res[b][pc];
            if (f == 0) continue;
            for (int k = 0; k < n * n; ++k) out.res[b][k] = (out.res[b][k] + fp_mul(p - f, r[k], p)) % p;
            out.lifts[b] -= RingElem(R, f) * lifted;
        }
        out.res.push_back(std::move(r));
        out.piv.push_back(pc);
        out.lifts.push_back(std::move(lifted));
    }
    return out;
}

void check_budget(std::uint64_t p, std::size_t dim, std::uint64_t cap)
{
    unsigned __int128 total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        total *= p;
        if (total > cap)
            fail(Errc::SearchBudgetExceeded,
                 "residue span has more than " + std::to_string(cap) + " elements");
    }
}

/// Visits every residue combination in odometer order; stops when visit returns true.
template <class Visit>
void enumerate_residues(const ResidueSpan& rs, Visit&& visit)
{
    const std::size_t dim = rs.res.size();
    const int nn = rs.n * rs.n;
    const std::uint64_t p = rs.p;
    std::vector<std::uint64_t> coeff(dim, 0);
    std::vector<std::uint64_t> cur(static_cast<std::size_t>(nn), 0);
    for (;;) {
        if (visit(coeff, cur)) return;
        std::size_t i = 0;
        for (; i < dim; ++i) {
            for (int k = 0; k < nn; ++k) {
                std::uint64_t s = cur[k] + rs.res[i][k];
                cur[k] = s >= p ? s - p : s;
            }
            if (++coeff[i] < p) break;
            coeff[i] = 0;
        }
        if (i == dim) return;
    }
}

} // namespace

HowellBasis HowellBasis::echelonize(const RingCtx& R, std::size_t width, std::vector<Vec> rows)
{
    HowellBasis hb(R, width);
    std::erase_if(rows, is_zero_vec);
    for (std::size_t col = 0; col < width && !rows.empty(); ++col) {
        std::size_t best = rows.size();
        std::uint32_t bv = R.len();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::uint32_t v = R.valuation(rows[r][col]);
            if (v < bv) {
                bv = v;
                best = r;
            }
        }
        if (best == rows.size()) continue;
        Vec piv = std::move(rows[best]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        scale(R, piv, R.inverse(R.div_pi(piv[col], bv)));
        for (auto& r : rows) axpy_sub(R, r, R.div_pi(r[col], bv), piv);
        if (bv > 0) {
            Vec extra = piv;
            scale(R, extra, R.pi_pow(R.len() - bv));
            rows.push_back(std::move(extra));
        }
        std::erase_if(rows, is_zero_vec);
        hb.rows_.push_back(std::move(piv));
        hb.pivot_col_.push_back(col);
        hb.pivot_val_.push_back(bv);
    }
    // Reduce entries above each pivot pi^e to their low e digits.
    for (std::size_t j = 0; j < hb.rows_.size(); ++j) {
        std::size_t c = hb.pivot_col_[j];
        std::uint32_t e = hb.pivot_val_[j];
        for (std::size_t i = 0; i < j; ++i) {
            std::uint64_t x = hb.rows_[i][c];
            std::uint64_t quo = R.div_pi(R.sub(x, R.low(x, e)), e);
            axpy_sub(R, hb.rows_[i], quo, hb.rows_[j]);
        }
    }
    return hb;
}

bool HowellBasis::contains(std::span<const std::uint64_t> v) const
{
    if (v.size() != width_) fail(Errc::BadParams, "vector width mismatch");
    Vec w(v.begin(), v.end());
    std::size_t next = 0;
    for (std::size_t col = 0; col < width_; ++col) {
        if (next < rows_.size() && pivot_col_[next] == col) {
            std::uint32_t e = pivot_val_[next];
            if (ctx_.valuation(w[col]) < e) return false;
            axpy_sub(ctx_, w, ctx_.div_pi(w[col], e), rows_[next]);
            ++next;
        } else if (w[col] != 0) {
            return false;
        }
    }
    return true;
}

std::uint64_t HowellBasis::log_card() const noexcept
{
    std::uint64_t s = 0;
    for (auto e : pivot_val_) s += ctx_.len() - e;
    return s;
}

BigInt HowellBasis::cardinality() const
{
    return ipow(BigInt(ctx_.q()), log_card());
}

HowellBasis kernel(const RingCtx& R, std::size_t cols, const std::vector<Vec>& m)
{
    const std::size_t rows = m.size();
    for (const auto& r : m)
        if (r.size() != cols) fail(Errc::BadParams, "ragged linear map");
    // Howell form of [M^T | I]; rows with vanishing left block span the kernel.
    std::vector<Vec> aug(cols, Vec(rows + cols, 0));
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) aug[j][i] = m[i][j];
        aug[j][rows + j] = R.from_int(1);
    }
    HowellBasis full = HowellBasis::echelonize(R, rows + cols, std::move(aug));
    std::vector<Vec> ker;
    for (std::size_t i = 0; i < full.rows().size(); ++i) {
        if (full.pivot_col(i) < rows) continue;
        const Vec& r = full.rows()[i];
        ker.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(rows), r.end());
    }
    return HowellBasis::echelonize(R, cols, std::move(ker));
}

bool IntertwinerModule::contains(const Mat& x) const
{
    return basis.contains(to_vec(x));
}

IntertwinerModule intertwiner(const Mat& a1, const Mat& a2)
{
    require_same(a1.ctx(), a2.ctx());
    if (a1.n() != a2.n()) fail(Errc::BadParams, "matrix size mismatch");
    const RingCtx& R = a1.ctx();
    const int n = a1.n();
    const std::size_t nn = static_cast<std::size_t>(n * n);
    auto idx = [n](int i, int j) { return static_cast<std::size_t>(i + n * j); };
    std::vector<Vec> sys(nn, Vec(nn, 0));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Vec& eq = sys[idx(r, c)];
            for (int i = 0; i < n; ++i) eq[idx(i, c)] = R.add(eq[idx(i, c)], a1.raw(r, i));
            for (int j = 0; j < n; ++j) eq[idx(r, j)] = R.sub(eq[idx(r, j)], a2.raw(j, c));
        }
    HowellBasis hb = kernel(R, nn, sys);
    std::vector<Mat> gens;
    for (const Vec& v : hb.rows()) gens.push_back(from_vec(R, n, v));
    return {R, n, std::move(gens), std::move(hb)};
}

std::optional<Mat> find_unit_element(const IntertwinerModule& s, const SearchOptions& opts)
{
    ResidueSpan rs = residue_span(s);
    check_budget(rs.p, rs.res.size(), opts.cap);
    std::optional<std::vector<std::uint64_t>> hit;
    enumerate_residues(rs, [&](const std::vector<std::uint64_t>& coeff, const std::vector<std::uint64_t>& cur) {
        if (fp_det(cur, rs.n, rs.p) == 0) return false;
        hit = coeff;
        return true;
    });
    if (!hit) return std::nullopt;
    const RingCtx& R = s.ctx;
    Mat x(R, s.n);
    for (std::size_t i = 0; i < hit->size(); ++i)
        if ((*hit)[i]) x += RingElem(R, (*hit)[i]) * rs.lifts[i];
    return x;
}

Similarity is_similar(const Mat& a1, const Mat& a2, const SimilarityOptions& opts)
{
    require_same(a1.ctx(), a2.ctx());
    if (a1.n() != a2.n()) fail(Errc::BadParams, "matrix size mismatch");
    if (opts.invariant_filter) {
        std::uint32_t j1 = scalar_level(a1), j2 = scalar_level(a2);
        if (j1 != j2) return {};
        if (a1.ctx().low(a1.raw(0, 0), j1) != a2.ctx().low(a2.raw(0, 0), j2)) return {};
        if (charpoly(a1) != charpoly(a2)) return {};
    }
    auto x = find_unit_element(intertwiner(a1, a2), opts.search);
    if (!x) return {};
    if (!(a1 * *x == *x * a2) || !is_unit(*x)) fail(Errc::Internal, "similarity witness failed verification");
    return {true, std::move(x)};
}

BigInt centralizer_order(const Mat& a, const SearchOptions& opts)
{
    IntertwinerModule s = intertwiner(a, a);
    ResidueSpan rs = residue_span(s);
    check_budget(rs.p, rs.res.size(), opts.cap);
    std::uint64_t units = 0;
    enumerate_residues(rs, [&](const std::vector<std::uint64_t>&, const std::vector<std::uint64_t>& cur) {
        if (fp_det(cur, rs.n, rs.p) != 0) ++units;
        return false;
    });
    std::uint64_t fiber = s.basis.log_card() - rs.res.size();
    return BigInt(units) * ipow(BigInt(s.ctx.q()), fiber);
}

} // namespace simclass
