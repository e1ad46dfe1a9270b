#include "simclass/simclass.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "simclass/canon2.hpp"
#include "simclass/canon3.hpp"
#include "simclass/census.hpp"
#include "simclass/error.hpp"
#include "simclass/json_io.hpp"
#include "simclass/modsolve.hpp"
#include "simclass/oracle.hpp"

struct simclass_ring {
    simclass::RingCtx ctx;
};

struct simclass_mat {
    simclass::Mat mat;
};

namespace {

using namespace simclass;

thread_local std::string g_last_error;

simclass_status to_status(Errc c)
{
    switch (c) {
    case Errc::NonUnit: return SIMCLASS_ERR_NON_UNIT;
    case Errc::DigitOutOfRange: return SIMCLASS_ERR_DIGIT_OUT_OF_RANGE;
    case Errc::BadLevel: return SIMCLASS_ERR_BAD_LEVEL;
    case Errc::CtxMismatch: return SIMCLASS_ERR_CTX_MISMATCH;
    case Errc::NotInvertible: return SIMCLASS_ERR_NOT_INVERTIBLE;
    case Errc::BadParams: return SIMCLASS_ERR_BAD_PARAMS;
    case Errc::SearchBudgetExceeded: return SIMCLASS_ERR_SEARCH_BUDGET;
    case Errc::BudgetExceeded: return SIMCLASS_ERR_BUDGET;
    case Errc::WrongResidueType: return SIMCLASS_ERR_WRONG_RESIDUE_TYPE;
    case Errc::NotHardCase: return SIMCLASS_ERR_NOT_HARD_CASE;
    case Errc::NonIntegralDivision: return SIMCLASS_ERR_NON_INTEGRAL;
    case Errc::Parse: return SIMCLASS_ERR_PARSE;
    case Errc::Io: return SIMCLASS_ERR_IO;
    case Errc::Internal: return SIMCLASS_ERR_INTERNAL;
    }
    return SIMCLASS_ERR_INTERNAL;
}

template <class F>
simclass_status guarded(F&& f)
{
    try {
        f();
        g_last_error.clear();
        return SIMCLASS_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return SIMCLASS_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SIMCLASS_ERR_BUDGET;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SIMCLASS_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what)
{
    if (!p) fail(Errc::BadParams, std::string(what) + " is null");
}

char* dup_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Group to_group(simclass_group g)
{
    if (g == SIMCLASS_GROUP_M) return Group::M;
    if (g == SIMCLASS_GROUP_GL) return Group::GL;
    fail(Errc::BadParams, "unknown group");
}

OracleOptions to_options(const simclass_oracle_options* o)
{
    OracleOptions r;
    if (!o) return r;
    r.state_budget = o->state_budget;
    r.jobs = o->jobs;
    if (o->cache_dir) r.cache_dir = o->cache_dir;
    return r;
}

Json canon_json(const Mat& a)
{
    Json j;
    j["ring"] = a.ctx().descriptor();
    j["n"] = a.n();
    if (a.n() == 2) {
        Canon2Result r = canon2(a);
        j["form"] = form_json(r.form);
        j["witness"] = rows_json(r.witness);
        j["canonical"] = rows_json(canonical_matrix(a.ctx(), r.form));
    } else {
        Canon3Result r = canon3(a);
        j["form"] = form_json(r.form);
        j["witness"] = rows_json(r.witness);
        j["canonical"] = rows_json(canonical_matrix(a.ctx(), r.form));
    }
    return j;
}

} // namespace

extern "C" {

const char* simclass_last_error(void) { return g_last_error.c_str(); }

const char* simclass_status_string(simclass_status s)
{
    switch (s) {
    case SIMCLASS_OK: return "ok";
    case SIMCLASS_ERR_NON_UNIT: return "non-unit";
    case SIMCLASS_ERR_DIGIT_OUT_OF_RANGE: return "digit out of range";
    case SIMCLASS_ERR_BAD_LEVEL: return "bad level";
    case SIMCLASS_ERR_CTX_MISMATCH: return "ring mismatch";
    case SIMCLASS_ERR_NOT_INVERTIBLE: return "not invertible";
    case SIMCLASS_ERR_BAD_PARAMS: return "bad parameters";
    case SIMCLASS_ERR_SEARCH_BUDGET: return "search budget exceeded";
    case SIMCLASS_ERR_BUDGET: return "budget exceeded";
    case SIMCLASS_ERR_WRONG_RESIDUE_TYPE: return "wrong residue type";
    case SIMCLASS_ERR_NOT_HARD_CASE: return "not a hard case";
    case SIMCLASS_ERR_NON_INTEGRAL: return "non-integral division";
    case SIMCLASS_ERR_PARSE: return "parse error";
    case SIMCLASS_ERR_IO: return "i/o error";
    case SIMCLASS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void simclass_string_free(char* s) { std::free(s); }

simclass_status simclass_ring_parse(const char* descriptor, simclass_ring** out)
{
    return guarded([&] {
        require(descriptor, "descriptor");
        require(out, "out");
        *out = new simclass_ring{RingCtx::parse(descriptor)};
    });
}

void simclass_ring_free(simclass_ring* ring) { delete ring; }

simclass_status simclass_ring_descriptor(const simclass_ring* ring, char** out)
{
    return guarded([&] {
        require(ring, "ring");
        require(out, "out");
        *out = dup_string(ring->ctx.descriptor());
    });
}

simclass_status simclass_mat_parse(const char* json, const simclass_ring* ring, simclass_mat** out)
{
    return guarded([&] {
        require(json, "json");
        require(out, "out");
        std::optional<RingCtx> ctx;
        if (ring) ctx = ring->ctx;
        *out = new simclass_mat{mat_from_text(json, ctx)};
    });
}

simclass_status simclass_mat_create(const simclass_ring* ring, int n, const uint64_t* entries, simclass_mat** out)
{
    return guarded([&] {
        require(ring, "ring");
        require(entries, "entries");
        require(out, "out");
        if (n != 2 && n != 3) fail(Errc::BadParams, "n must be 2 or 3");
        Mat m(ring->ctx, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.set(i, j, RingElem(ring->ctx, entries[i * n + j]));
        *out = new simclass_mat{std::move(m)};
    });
}

simclass_status simclass_mat_to_json(const simclass_mat* mat, char** out)
{
    return guarded([&] {
        require(mat, "mat");
        require(out, "out");
        *out = dup_string(mat_json(mat->mat).dump());
    });
}

void simclass_mat_free(simclass_mat* mat) { delete mat; }

simclass_status simclass_canon(const simclass_mat* a, char** out_json)
{
    return guarded([&] {
        require(a, "matrix");
        require(out_json, "out");
        *out_json = dup_string(canon_json(a->mat).dump());
    });
}

simclass_status simclass_is_similar(const simclass_mat* a, const simclass_mat* b, int* similar, char** out_json)
{
    return guarded([&] {
        require(a, "first matrix");
        require(b, "second matrix");
        require(similar, "similar");
        Similarity s = is_similar(a->mat, b->mat);
        if (s.similar && !(a->mat * *s.witness == *s.witness * b->mat && is_unit(*s.witness)))
            fail(Errc::Internal, "similarity witness failed verification");
        *similar = s.similar ? 1 : 0;
        if (out_json) {
            Json j;
            j["similar"] = s.similar;
            j["witness"] = s.witness ? rows_json(*s.witness) : Json(nullptr);
            *out_json = dup_string(j.dump());
        }
    });
}

simclass_status simclass_centralizer_order(const simclass_mat* a, char** out_decimal)
{
    return guarded([&] {
        require(a, "matrix");
        require(out_decimal, "out");
        *out_decimal = dup_string(centralizer_order(a->mat).str());
    });
}

simclass_status simclass_count(int n, simclass_group group, uint64_t q, uint32_t level, char** out_decimal)
{
    return guarded([&] {
        require(out_decimal, "out");
        Group g = to_group(group);
        BigInt c;
        if (n == 2) c = count2(q, level, g);
        else if (n == 3) c = count3(q, level, g);
        else fail(Errc::BadParams, "n must be 2 or 3");
        *out_decimal = dup_string(c.str());
    });
}

simclass_status simclass_gf(int n, simclass_group group, uint64_t q, uint32_t terms, char** out_lines)
{
    return guarded([&] {
        require(out_lines, "out");
        std::string s;
        for (const BigInt& c : gf_coeffs(q, to_group(group), terms, n)) s += c.str() + "\n";
        *out_lines = dup_string(s);
    });
}

simclass_status simclass_enumerate(const simclass_ring* ring, int n, simclass_group group, uint64_t budget,
                                   simclass_line_cb cb, void* user)
{
    return guarded([&] {
        require(ring, "ring");
        require(reinterpret_cast<const void*>(cb), "callback");
        const RingCtx& ctx = ring->ctx;
        Group g = to_group(group);
        if (n == 2) {
            for (const CanonicalForm2& f : enumerate2(ctx, g, budget)) {
                Json j;
                j["form"] = form_json(f);
                j["matrix"] = rows_json(canonical_matrix(ctx, f));
                if (cb(j.dump().c_str(), user)) return;
            }
        } else if (n == 3) {
            for (const Representative& r : enumerate3(ctx, g, budget)) {
                Json j;
                j["form"] = form_json(r.form);
                j["matrix"] = rows_json(r.matrix);
                if (cb(j.dump().c_str(), user)) return;
            }
        } else {
            fail(Errc::BadParams, "n must be 2 or 3");
        }
    });
}

simclass_status simclass_histogram(const simclass_ring* ring, simclass_group group, uint64_t budget, char** out_json)
{
    return guarded([&] {
        require(ring, "ring");
        require(out_json, "out");
        Group g = to_group(group);
        std::vector<CountVector> levels = type_histogram(ring->ctx, g, budget);
        Json h = Json::array();
        for (const CountVector& v : levels) h.push_back(count_vector_json(v));
        Json j;
        j["ring"] = ring->ctx.descriptor();
        j["group"] = g == Group::M ? "M" : "GL";
        j["count"] = levels.back().total().str();
        j["histogram"] = std::move(h);
        *out_json = dup_string(j.dump());
    });
}

void simclass_oracle_options_default(simclass_oracle_options* opts)
{
    if (!opts) return;
    OracleOptions d;
    opts->state_budget = d.state_budget;
    opts->jobs = d.jobs;
    opts->cache_dir = nullptr;
}

simclass_status simclass_oracle_census(const simclass_ring* ring, int n, simclass_group group,
                                       const simclass_oracle_options* opts, int include_orbits, char** out_json)
{
    return guarded([&] {
        require(ring, "ring");
        require(out_json, "out");
        OrbitCensus c = orbit_census(ring->ctx, n, to_group(group), to_options(opts));
        Json j;
        j["ring"] = c.ring;
        j["n"] = c.n;
        j["group"] = c.group == Group::M ? "M" : "GL";
        j["classes"] = c.class_count();
        j["from_cache"] = c.from_cache;
        if (include_orbits) {
            Json o = Json::array();
            for (std::size_t i = 0; i < c.class_count(); ++i)
                o.push_back({{"min_rep", rows_json(unpack(ring->ctx, n, c.min_reps[i]))}, {"size", c.sizes[i]}});
            j["orbits"] = std::move(o);
        }
        *out_json = dup_string(j.dump());
    });
}

simclass_status simclass_verify(const simclass_ring* ring, int n, const simclass_oracle_options* opts, int* ok,
                                char** out_json)
{
    return guarded([&] {
        require(ring, "ring");
        require(ok, "ok");
        VerifyReport r = verify_counts(ring->ctx, n, to_options(opts));
        *ok = r.ok() ? 1 : 0;
        if (out_json) {
            Json j;
            j["ring"] = r.ring;
            j["n"] = r.n;
            j["oracle"] = {{"M", r.oracle_m}, {"GL", r.oracle_gl}};
            j["formula"] = {{"M", r.formula_m.str()}, {"GL", r.formula_gl.str()}};
            j["enumerate"] = {{"M", r.enumerate_m}, {"GL", r.enumerate_gl}};
            j["distinct_canonical_forms"] = r.distinct_canon;
            j["orbits_sampled"] = r.orbits_sampled;
            j["members_checked"] = r.members_checked;
            j["mismatches"] = r.mismatches;
            j["ok"] = r.ok();
            *out_json = dup_string(j.dump());
        }
    });
}

} // extern "C"
