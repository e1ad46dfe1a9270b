#include <doctest.h>

#include "simclass/error.hpp"
#include "simclass/modsolve.hpp"
#include "support.hpp"

using namespace simclass;

namespace {

bool next_vec(Vec& v, std::uint64_t card)
{
    for (auto& x : v) {
        if (++x < card) return true;
        x = 0;
    }
    return false;
}

} // namespace

TEST_CASE("kernel agrees with brute-force enumeration")
{
    std::mt19937_64 rng(21);
    for (const RingCtx& R : {RingCtx(Flavor::Zadic, 2, 2), RingCtx(Flavor::Zadic, 3, 2), RingCtx(Flavor::Poly, 2, 2),
                             RingCtx(Flavor::Zadic, 2, 3)}) {
        ref::Ring r = ref::from_ctx(R);
        std::uniform_int_distribution<std::uint64_t> d(0, R.card() - 1);
        std::uniform_int_distribution<int> biased(0, 3);
        for (int t = 0; t < 60; ++t) {
            const std::size_t rows = 1 + t % 3, cols = 2 + t % 2 + (R.card() <= 4 ? 1 : 0);
            std::vector<Vec> m(rows, Vec(cols));
            for (auto& row : m)
                for (auto& x : row) x = biased(rng) == 0 ? R.mul_pi(d(rng), 1) : d(rng);
            HowellBasis k = kernel(R, cols, m);
            std::uint64_t members = 0;
            Vec v(cols, 0);
            do {
                bool zero = true;
                for (const Vec& row : m) {
                    std::uint64_t s = 0;
                    for (std::size_t c = 0; c < cols; ++c) s = r.add(s, r.mul(row[c], v[c]));
                    zero = zero && s == 0;
                }
                members += zero;
                CHECK(k.contains(v) == zero);
            } while (next_vec(v, R.card()));
            CHECK(k.cardinality() == BigInt(members));
        }
    }
}

TEST_CASE("Howell basis closure of a module")
{
    RingCtx R(Flavor::Zadic, 2, 3);
    // span of (2, 1): contains (4, 2) and (0, 4) = 4*(2,1) - (0,... ) is not automatic; enumerate
    std::vector<Vec> gens{{2, 1}, {4, 6}};
    HowellBasis h = HowellBasis::echelonize(R, 2, gens);
    std::set<Vec> span;
    for (std::uint64_t a = 0; a < 8; ++a)
        for (std::uint64_t b = 0; b < 8; ++b)
            span.insert({R.add(R.mul(a, 2), R.mul(b, 4)), R.add(R.mul(a, 1), R.mul(b, 6))});
    CHECK(h.cardinality() == BigInt(span.size()));
    Vec v(2, 0);
    do {
        CHECK(h.contains(v) == (span.count(v) == 1));
    } while (next_vec(v, 8));
}

TEST_CASE("centralizer order agrees with brute force")
{
    struct Case {
        RingCtx R;
        int n;
    };
    for (const Case& c : {Case{RingCtx(Flavor::Zadic, 2, 2), 2}, Case{RingCtx(Flavor::Poly, 2, 2), 2},
                          Case{RingCtx(Flavor::Zadic, 2, 1), 3}, Case{RingCtx(Flavor::Zadic, 3, 1), 2},
                          Case{RingCtx(Flavor::Zadic, 2, 3), 2}}) {
        CAPTURE(c.R.descriptor());
        ref::Ring r = ref::from_ctx(c.R);
        const std::uint64_t states = ref::state_count(r, c.n);
        std::mt19937_64 rng(22);
        for (std::uint64_t s = 0; s < states; s += (states > 600 ? 1 + rng() % 23 : 1)) {
            Mat a = unpack_test(c.R, c.n, s);
            CHECK(centralizer_order(a) == BigInt(ref::centralizer_brute(r, c.n, ref::from_mat(a))));
        }
    }
}

TEST_CASE("is_similar agrees with brute-force orbits and ships verified witnesses")
{
    struct Case {
        RingCtx R;
        int n;
    };
    std::mt19937_64 rng(23);
    for (const Case& c : {Case{RingCtx(Flavor::Zadic, 2, 2), 2}, Case{RingCtx(Flavor::Poly, 3, 2), 2},
                          Case{RingCtx(Flavor::Zadic, 2, 1), 3}, Case{RingCtx(Flavor::Zadic, 2, 3), 2}}) {
        CAPTURE(c.R.descriptor());
        ref::Ring r = ref::from_ctx(c.R);
        auto label = ref::brute_orbits(r, c.n);
        std::uniform_int_distribution<std::uint64_t> st(0, label.size() - 1);
        for (int t = 0; t < 600; ++t) {
            Mat a = unpack_test(c.R, c.n, st(rng));
            Mat b = t % 2 ? conjugate(a, testutil::random_unit(c.R, c.n, rng)) : unpack_test(c.R, c.n, st(rng));
            for (bool filter : {true, false}) {
                SimilarityOptions o;
                o.invariant_filter = filter;
                Similarity s = is_similar(a, b, o);
                CHECK(s.similar == (label[ref::pack(r, ref::from_mat(a))] == label[ref::pack(r, ref::from_mat(b))]));
                if (s.similar) {
                    REQUIRE(s.witness);
                    CHECK(is_unit(*s.witness));
                    CHECK(a * *s.witness == *s.witness * b);
                }
            }
        }
    }
}

TEST_CASE("intertwiner module membership")
{
    std::mt19937_64 rng(24);
    RingCtx R(Flavor::Zadic, 3, 2);
    for (int t = 0; t < 50; ++t) {
        Mat a = testutil::random_mat(R, 3, rng);
        Mat b = conjugate(a, testutil::random_unit(R, 3, rng));
        IntertwinerModule s = intertwiner(a, b);
        for (const Mat& g : s.generators) CHECK(a * g == g * b);
        Mat x = testutil::random_mat(R, 3, rng);
        CHECK(s.contains(x) == (a * x == x * b));
    }
}

TEST_CASE("search budget is enforced")
{
    RingCtx R(Flavor::Zadic, 2, 2);
    Mat zero(R, 3);
    IntertwinerModule s = intertwiner(zero, zero);
    SearchOptions o;
    o.cap = 1;
    CHECK_THROWS_AS(find_unit_element(s, o), Error);
}
