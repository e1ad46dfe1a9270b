#include "simclass/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <thread>
#include <unordered_set>

#include "simclass/census.hpp"
#include "simclass/error.hpp"
#include "simclass/json_io.hpp"

namespace simclass {

namespace {

constexpr int kCacheVersion = 1;

std::uint64_t checked_states(std::uint64_t card, int n, std::uint64_t budget)
{
    unsigned __int128 s = 1;
    for (int i = 0; i < n * n; ++i) {
        s *= card;
        if (s > budget) fail(Errc::BudgetExceeded, "state space exceeds budget of " + std::to_string(budget));
    }
    return static_cast<std::uint64_t>(s);
}

std::uint64_t primitive_root(std::uint64_t p)
{
    if (p == 2) return 1;
    std::vector<std::uint64_t> factors;
    std::uint64_t m = p - 1;
    for (std::uint64_t f = 2; f * f <= m; ++f) {
        if (m % f) continue;
        factors.push_back(f);
        while (m % f == 0) m /= f;
    }
    if (m > 1) factors.push_back(m);
    RingCtx fp(Flavor::Zadic, p, 1);
    auto pw = [&](std::uint64_t g, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = fp.mul(r, g);
            g = fp.mul(g, g);
            e >>= 1;
        }
        return r;
    };
    for (std::uint64_t g = 2;; ++g) {
        bool ok = true;
        for (auto f : factors) ok = ok && pw(g, (p - 1) / f) != 1;
        if (ok) return g;
    }
}

/// Generators of the unit group of the ring.
std::vector<std::uint64_t> unit_generators(const RingCtx& R)
{
    const std::uint64_t p = R.p();
    const std::uint32_t len = R.len();
    std::vector<std::uint64_t> gens;
    if (R.flavor() == Flavor::Zadic) {
        if (p == 2) {
            if (len == 2) gens.push_back(3);
            if (len >= 3) gens = {R.card() - 1, 5};
            return gens;
        }
        std::uint64_t g = primitive_root(p);
        if (len >= 2) {
            RingCtx p2(Flavor::Zadic, p, 2);
            std::uint64_t x = 1;
            for (std::uint64_t i = 0; i < p - 1; ++i) x = p2.mul(x, g);
            if (x == 1) g += p;
        }
        gens.push_back(g % R.card());
        return gens;
    }
    if (p > 2) gens.push_back(primitive_root(p));
    for (std::uint32_t j = 1; j < len; ++j) gens.push_back(1 + R.radix(j));
    return gens;
}

using Bitmap = std::vector<std::uint64_t>;

template <bool Atomic>
bool test_and_set(Bitmap& bm, std::uint64_t s)
{
    const std::uint64_t m = std::uint64_t{1} << (s & 63);
    std::uint64_t& w = bm[s >> 6];
    if constexpr (Atomic) {
        std::atomic_ref<std::uint64_t> a(w);
        if (a.load(std::memory_order_relaxed) & m) return true;
        return a.fetch_or(m, std::memory_order_relaxed) & m;
    } else {
        if (w & m) return true;
        w |= m;
        return false;
    }
}

template <bool Atomic>
bool test_bit(Bitmap& bm, std::uint64_t s)
{
    const std::uint64_t m = std::uint64_t{1} << (s & 63);
    if constexpr (Atomic) return std::atomic_ref<std::uint64_t>(bm[s >> 6]).load(std::memory_order_relaxed) & m;
    return bm[s >> 6] & m;
}

/// Entrywise engine: decodes a state into entries and applies generator conjugations.
class EntryEngine {
public:
    EntryEngine(const RingCtx& ctx, int n) : R_(ctx), n_(n), units_(unit_generators(ctx))
    {
        for (auto u : units_) inv_.push_back(R_.inverse(u));
    }

    int max_neighbors() const { return n_ * (n_ - 1) + static_cast<int>(units_.size()); }

    void decode(std::uint64_t s, std::uint64_t* e) const
    {
        for (int k = n_ * n_; k-- > 0;) {
            e[k] = s % R_.card();
            s /= R_.card();
        }
    }

    std::uint64_t encode(const std::uint64_t* e) const
    {
        std::uint64_t s = 0;
        for (int k = 0; k < n_ * n_; ++k) s = s * R_.card() + e[k];
        return s;
    }

    int neighbors(std::uint64_t s, std::uint64_t* out) const
    {
        std::uint64_t e[9], f[9];
        decode(s, e);
        int c = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                if (i == j) continue;
                std::copy(e, e + n_ * n_, f);
                for (int k = 0; k < n_; ++k) f[i * n_ + k] = R_.add(f[i * n_ + k], f[j * n_ + k]);
                for (int r = 0; r < n_; ++r) f[r * n_ + j] = R_.sub(f[r * n_ + j], f[r * n_ + i]);
                out[c++] = encode(f);
            }
        for (std::size_t u = 0; u < units_.size(); ++u) {
            std::copy(e, e + n_ * n_, f);
            for (int k = 0; k < n_; ++k) f[k] = R_.mul(f[k], units_[u]);
            for (int r = 0; r < n_; ++r) f[r * n_] = R_.mul(f[r * n_], inv_[u]);
            out[c++] = encode(f);
        }
        return c;
    }

    Mat matrix(std::uint64_t s) const
    {
        std::uint64_t e[9];
        decode(s, e);
        Mat m(R_, n_);
        for (int k = 0; k < n_ * n_; ++k) m.set_raw(k / n_, k % n_, e[k]);
        return m;
    }

    bool is_unit(std::uint64_t s) const
    {
        Mat m = matrix(s);
        return simclass::is_unit(m);
    }

    /// A conjugation invariant used to split seeds between workers.
    std::uint64_t key(std::uint64_t s) const
    {
        Mat m = matrix(s);
        return trace(m).repr() * 1000003u + det(m).repr();
    }

private:
    RingCtx R_;
    int n_;
    std::vector<std::uint64_t> units_, inv_;
};

/// Table engine: rows are single symbols, row/column operations are lookups.
class RowEngine {
public:
    static constexpr std::uint64_t kMaxRows = 4096;

    RowEngine(const RingCtx& ctx, int n) : base_(ctx, n), R_(ctx), n_(n)
    {
        rows_ = 1;
        for (int i = 0; i < n; ++i) rows_ *= ctx.card();
        std::vector<std::uint64_t> a(n), b(n);
        auto dec = [&](std::uint64_t r, std::vector<std::uint64_t>& x) {
            for (int k = n; k-- > 0;) {
                x[k] = r % ctx.card();
                r /= ctx.card();
            }
        };
        auto enc = [&](const std::vector<std::uint64_t>& x) {
            std::uint64_t r = 0;
            for (int k = 0; k < n; ++k) r = r * ctx.card() + x[k];
            return static_cast<std::uint16_t>(r);
        };
        radd_.resize(rows_ * rows_);
        for (std::uint64_t x = 0; x < rows_; ++x) {
            dec(x, a);
            for (std::uint64_t y = 0; y < rows_; ++y) {
                dec(y, b);
                for (int k = 0; k < n; ++k) b[k] = ctx.add(a[k], b[k]);
                radd_[x * rows_ + y] = enc(b);
            }
        }
        colsub_.assign(static_cast<std::size_t>(n * n), {});
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                auto& t = colsub_[i * n + j];
                t.resize(rows_);
                for (std::uint64_t x = 0; x < rows_; ++x) {
                    dec(x, a);
                    a[j] = ctx.sub(a[j], a[i]);
                    t[x] = enc(a);
                }
            }
        for (auto u : unit_generators(ctx)) {
            std::uint64_t ui = ctx.inverse(u);
            std::vector<std::uint16_t> rs(rows_), cs(rows_);
            for (std::uint64_t x = 0; x < rows_; ++x) {
                dec(x, a);
                for (auto& v : a) v = ctx.mul(v, u);
                rs[x] = enc(a);
                dec(x, a);
                a[0] = ctx.mul(a[0], ui);
                cs[x] = enc(a);
            }
            rscale_.push_back(std::move(rs));
            cscale_.push_back(std::move(cs));
        }
    }

    static bool fits(const RingCtx& ctx, int n)
    {
        std::uint64_t r = 1;
        for (int i = 0; i < n; ++i) {
            r *= ctx.card();
            if (r > kMaxRows) return false;
        }
        return true;
    }

    int max_neighbors() const { return base_.max_neighbors(); }

    int neighbors(std::uint64_t s, std::uint64_t* out) const
    {
        std::uint32_t r[3];
        for (int k = n_; k-- > 0;) {
            r[k] = static_cast<std::uint32_t>(s % rows_);
            s /= rows_;
        }
        int c = 0;
        auto encode = [&](const std::uint32_t* q) {
            std::uint64_t v = 0;
            for (int k = 0; k < n_; ++k) v = v * rows_ + q[k];
            return v;
        };
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                if (i == j) continue;
                std::uint32_t q[3] = {r[0], r[1], n_ == 3 ? r[2] : 0};
                q[i] = radd_[q[i] * rows_ + q[j]];
                const auto& cs = colsub_[i * n_ + j];
                for (int k = 0; k < n_; ++k) q[k] = cs[q[k]];
                out[c++] = encode(q);
            }
        for (std::size_t u = 0; u < rscale_.size(); ++u) {
            std::uint32_t q[3] = {rscale_[u][r[0]], r[1], n_ == 3 ? r[2] : 0};
            for (int k = 0; k < n_; ++k) q[k] = cscale_[u][q[k]];
            out[c++] = encode(q);
        }
        return c;
    }

    bool is_unit(std::uint64_t s) const { return base_.is_unit(s); }
    std::uint64_t key(std::uint64_t s) const { return base_.key(s); }

private:
    EntryEngine base_;
    RingCtx R_;
    int n_;
    std::uint64_t rows_ = 1;
    std::vector<std::uint16_t> radd_;
    std::vector<std::vector<std::uint16_t>> colsub_, rscale_, cscale_;
};

struct Orbit {
    std::uint64_t min_rep;
    std::uint64_t size;
};

template <bool Atomic, class Engine, class OnVisit>
std::uint64_t flood(const Engine& eng, Bitmap& vis, std::uint64_t seed, std::vector<std::uint64_t>& stack,
                    OnVisit&& on_visit)
{
    // Expand states in batches so bitmap prefetches have time to land.
    constexpr int kBatch = 64;
    std::vector<std::uint64_t> nb(static_cast<std::size_t>(kBatch * eng.max_neighbors()));
    std::uint64_t size = 1;
    on_visit(seed);
    stack.clear();
    stack.push_back(seed);
    while (!stack.empty()) {
        int total = 0;
        for (int b = 0; b < kBatch && !stack.empty(); ++b) {
            total += eng.neighbors(stack.back(), nb.data() + total);
            stack.pop_back();
        }
        for (int k = 0; k < total; ++k) __builtin_prefetch(&vis[nb[k] >> 6]);
        for (int k = 0; k < total; ++k) {
            if (test_and_set<Atomic>(vis, nb[k])) continue;
            ++size;
            on_visit(nb[k]);
            stack.push_back(nb[k]);
        }
    }
    return size;
}

template <class Engine>
std::vector<Orbit> run_census(const Engine& eng, std::uint64_t states, Group group, unsigned jobs)
{
    Bitmap vis((states + 63) / 64, 0);
    auto noop = [](std::uint64_t) {};
    if (jobs <= 1) {
        std::vector<Orbit> out;
        std::vector<std::uint64_t> stack;
        for (std::uint64_t s = 0; s < states; ++s) {
            if (test_bit<false>(vis, s)) continue;
            if (group == Group::GL && !eng.is_unit(s)) continue;
            test_and_set<false>(vis, s);
            out.push_back({s, flood<false>(eng, vis, s, stack, noop)});
        }
        return out;
    }
    // Each worker owns the orbits whose invariant key falls in its residue class,
    // so the ascending scan still meets every orbit at its minimum.
    std::vector<std::vector<Orbit>> parts(jobs);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            std::vector<std::uint64_t> stack;
            for (std::uint64_t s = 0; s < states; ++s) {
                if (test_bit<true>(vis, s)) continue;
                if (eng.key(s) % jobs != w) continue;
                if (group == Group::GL && !eng.is_unit(s)) continue;
                if (test_and_set<true>(vis, s)) continue;
                parts[w].push_back({s, flood<true>(eng, vis, s, stack, noop)});
            }
        });
    }
    for (auto& t : pool) t.join();
    std::vector<Orbit> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end(), [](const Orbit& a, const Orbit& b) { return a.min_rep < b.min_rep; });
    return out;
}

Json generators_json(const RingCtx& ctx, int n)
{
    Json g = Json::array();
    for (const Mat& m : gl_generators(ctx, n)) g.push_back(rows_json(m));
    return g;
}

std::filesystem::path cache_path(const std::string& dir, const RingCtx& ctx, int n, Group group)
{
    std::string name = ctx.descriptor();
    std::replace(name.begin(), name.end(), ':', '_');
    name += "_n" + std::to_string(n) + (group == Group::M ? "_m" : "_gl") + ".orbits";
    return std::filesystem::path(dir) / name;
}

Json cache_header(const RingCtx& ctx, int n, Group group)
{
    Json h;
    h["format"] = "simclass-orbits";
    h["version"] = kCacheVersion;
    h["ring"] = ctx.descriptor();
    h["n"] = n;
    h["group"] = group == Group::M ? "M" : "GL";
    h["generators"] = generators_json(ctx, n);
    return h;
}

std::optional<OrbitCensus> load_cache(const std::filesystem::path& path, const RingCtx& ctx, int n, Group group)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    Json h;
    try {
        h = Json::parse(line);
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    Json want = cache_header(ctx, n, group);
    if (!h.contains("orbits")) return std::nullopt;
    std::uint64_t count = h["orbits"].get<std::uint64_t>();
    h.erase("orbits");
    if (h != want) return std::nullopt;
    OrbitCensus c{ctx.descriptor(), n, group, {}, {}, true};
    c.min_reps.resize(count);
    c.sizes.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        unsigned char buf[16];
        if (!in.read(reinterpret_cast<char*>(buf), 16)) return std::nullopt;
        std::uint64_t a = 0, b = 0;
        for (int k = 7; k >= 0; --k) {
            a = a << 8 | buf[k];
            b = b << 8 | buf[8 + k];
        }
        c.min_reps[i] = a;
        c.sizes[i] = b;
    }
    return c;
}

void store_cache(const std::filesystem::path& path, const OrbitCensus& c, const RingCtx& ctx)
{
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    Json h = cache_header(ctx, c.n, c.group);
    h["orbits"] = c.min_reps.size();
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(Errc::Io, "cannot write cache file " + tmp.string());
        out << h.dump() << '\n';
        for (std::size_t i = 0; i < c.min_reps.size(); ++i) {
            unsigned char buf[16];
            for (int k = 0; k < 8; ++k) {
                buf[k] = static_cast<unsigned char>(c.min_reps[i] >> (8 * k));
                buf[8 + k] = static_cast<unsigned char>(c.sizes[i] >> (8 * k));
            }
            out.write(reinterpret_cast<const char*>(buf), 16);
        }
        if (!out) fail(Errc::Io, "failed writing cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(Errc::Io, "cannot move cache file into place: " + ec.message());
}

std::mt19937_64& rng_for_verify()
{
    static thread_local std::mt19937_64 rng(0x5eed);
    return rng;
}

Mat random_unit(const RingCtx& ctx, int n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint64_t> dist(0, ctx.card() - 1);
    for (;;) {
        Mat x(ctx, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x.set_raw(i, j, dist(rng));
        if (is_unit(x)) return x;
    }
}

std::string canon_key(const Mat& a)
{
    if (a.n() == 2) return form_json(canon2(a).form).dump();
    return form_json(canon3(a).form).dump();
}

} // namespace

std::uint64_t pack(const Mat& a)
{
    std::uint64_t s = 0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) {
            unsigned __int128 t = static_cast<unsigned __int128>(s) * a.ctx().card() + a.raw(i, j);
            if (t >> 64) fail(Errc::BudgetExceeded, "matrix index does not fit in 64 bits");
            s = static_cast<std::uint64_t>(t);
        }
    return s;
}

Mat unpack(const RingCtx& ctx, int n, std::uint64_t index)
{
    Mat m(ctx, n);
    for (int k = n * n; k-- > 0;) {
        m.set_raw(k / n, k % n, index % ctx.card());
        index /= ctx.card();
    }
    if (index != 0) fail(Errc::BadParams, "state index out of range");
    return m;
}

std::vector<Mat> gl_generators(const RingCtx& ctx, int n)
{
    std::vector<Mat> gens;
    RingElem one = RingElem::one(ctx);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) gens.push_back(elementary(ctx, n, i, j, one));
    for (auto u : unit_generators(ctx)) {
        Mat d = Mat::identity(ctx, n);
        d.set_raw(0, 0, u);
        gens.push_back(d);
    }
    return gens;
}

BigInt group_order(const RingCtx& ctx, int n)
{
    const BigInt P(ctx.p());
    BigInt r = ipow(P, static_cast<std::uint64_t>(ctx.len() - 1) * n * n);
    for (int k = 0; k < n; ++k) r *= ipow(P, n) - ipow(P, k);
    return r;
}

OrbitCensus orbit_census(const RingCtx& ctx, int n, Group group, const OracleOptions& opts)
{
    if (n != 2 && n != 3) fail(Errc::BadParams, "n must be 2 or 3");
    const std::uint64_t states = checked_states(ctx.card(), n, opts.state_budget);
    std::filesystem::path path;
    if (!opts.cache_dir.empty()) {
        path = cache_path(opts.cache_dir, ctx, n, group);
        if (auto c = load_cache(path, ctx, n, group)) return *c;
    }
    const unsigned jobs = std::max(1u, opts.jobs);
    std::vector<Orbit> orbits = RowEngine::fits(ctx, n) ? run_census(RowEngine(ctx, n), states, group, jobs)
                                                        : run_census(EntryEngine(ctx, n), states, group, jobs);
    OrbitCensus c{ctx.descriptor(), n, group, {}, {}, false};
    for (const Orbit& o : orbits) {
        c.min_reps.push_back(o.min_rep);
        c.sizes.push_back(o.size);
    }
    if (!path.empty()) store_cache(path, c, ctx);
    return c;
}

std::vector<std::uint32_t> orbit_labels(const RingCtx& ctx, int n, std::uint64_t budget)
{
    const std::uint64_t states = checked_states(ctx.card(), n, budget);
    EntryEngine eng(ctx, n);
    Bitmap vis((states + 63) / 64, 0);
    std::vector<std::uint32_t> label(states, 0);
    std::vector<std::uint64_t> stack;
    std::uint32_t next = 0;
    for (std::uint64_t s = 0; s < states; ++s) {
        if (test_and_set<false>(vis, s)) continue;
        flood<false>(eng, vis, s, stack, [&](std::uint64_t x) { label[x] = next; });
        ++next;
    }
    return label;
}

OrbitInfo orbit_of(const Mat& a, std::uint64_t budget)
{
    EntryEngine eng(a.ctx(), a.n());
    std::uint64_t start = pack(a);
    std::unordered_set<std::uint64_t> seen{start};
    std::vector<std::uint64_t> stack{start};
    std::vector<std::uint64_t> nb(static_cast<std::size_t>(eng.max_neighbors()));
    std::uint64_t best = start;
    while (!stack.empty()) {
        std::uint64_t x = stack.back();
        stack.pop_back();
        int c = eng.neighbors(x, nb.data());
        for (int k = 0; k < c; ++k) {
            if (!seen.insert(nb[k]).second) continue;
            if (seen.size() > budget) fail(Errc::BudgetExceeded, "orbit exceeds budget of " + std::to_string(budget));
            best = std::min(best, nb[k]);
            stack.push_back(nb[k]);
        }
    }
    return {BigInt(seen.size()), unpack(a.ctx(), a.n(), best)};
}

VerifyReport verify_counts(const RingCtx& ctx, int n, const OracleOptions& opts)
{
    VerifyReport rep;
    rep.ring = ctx.descriptor();
    rep.n = n;
    OrbitCensus cm = orbit_census(ctx, n, Group::M, opts);
    OrbitCensus cg = orbit_census(ctx, n, Group::GL, opts);
    rep.oracle_m = cm.class_count();
    rep.oracle_gl = cg.class_count();
    if (n == 2) {
        rep.formula_m = count2(ctx.q(), ctx.len(), Group::M);
        rep.formula_gl = count2(ctx.q(), ctx.len(), Group::GL);
        rep.enumerate_m = enumerate2(ctx, Group::M, opts.state_budget).size();
        rep.enumerate_gl = enumerate2(ctx, Group::GL, opts.state_budget).size();
    } else {
        rep.formula_m = count3(ctx.q(), ctx.len(), Group::M);
        rep.formula_gl = count3(ctx.q(), ctx.len(), Group::GL);
        rep.enumerate_m = enumerate3(ctx, Group::M, opts.state_budget).size();
        rep.enumerate_gl = enumerate3(ctx, Group::GL, opts.state_budget).size();
    }
    auto check = [&](const std::string& what, const BigInt& a, const BigInt& b) {
        if (a != b) rep.mismatches.push_back(what + ": " + a.str() + " != " + b.str());
    };
    check("oracle vs formula (M)", rep.oracle_m, rep.formula_m);
    check("oracle vs formula (GL)", rep.oracle_gl, rep.formula_gl);
    check("oracle vs enumeration (M)", rep.oracle_m, rep.enumerate_m);
    check("oracle vs enumeration (GL)", rep.oracle_gl, rep.enumerate_gl);

    // Canonical forms must separate orbits and be constant on each orbit.
    std::set<std::string> keys;
    std::vector<std::string> orbit_key(cm.class_count());
    for (std::size_t i = 0; i < cm.class_count(); ++i) {
        orbit_key[i] = canon_key(unpack(ctx, n, cm.min_reps[i]));
        keys.insert(orbit_key[i]);
    }
    rep.distinct_canon = keys.size();
    check("distinct canonical forms vs orbits", rep.distinct_canon, rep.oracle_m);
    auto& rng = rng_for_verify();
    const std::size_t stride = std::max<std::size_t>(1, cm.class_count() / 200);
    for (std::size_t i = 0; i < cm.class_count(); i += stride) {
        ++rep.orbits_sampled;
        Mat rep_mat = unpack(ctx, n, cm.min_reps[i]);
        for (int t = 0; t < 3; ++t) {
            Mat member = conjugate(rep_mat, random_unit(ctx, n, rng));
            ++rep.members_checked;
            if (canon_key(member) != orbit_key[i]) {
                rep.mismatches.push_back("orbit of state " + std::to_string(cm.min_reps[i]) +
                                         " has members with different canonical forms");
                break;
            }
        }
    }
    return rep;
}

} // namespace simclass
