#include <doctest.h>

#include <filesystem>
#include <unordered_set>

#include <unistd.h>

#include "simclass/census.hpp"
#include "simclass/error.hpp"
#include "simclass/oracle.hpp"
#include "support.hpp"

using namespace simclass;

TEST_CASE("pack and unpack are inverse and match the reference index")
{
    std::mt19937_64 rng(41);
    RingCtx R(Flavor::Poly, 3, 2);
    ref::Ring r = ref::from_ctx(R);
    for (int t = 0; t < 200; ++t) {
        Mat a = testutil::random_mat(R, 3, rng);
        CHECK(pack(a) == ref::pack(r, ref::from_mat(a)));
        CHECK(unpack(R, 3, pack(a)) == a);
    }
}

TEST_CASE("orbit census agrees with conjugation by every group element")
{
    struct Case {
        RingCtx R;
        int n;
    };
    for (const Case& c : {Case{RingCtx(Flavor::Zadic, 2, 1), 3}, Case{RingCtx(Flavor::Zadic, 2, 2), 2},
                          Case{RingCtx(Flavor::Poly, 2, 2), 2}, Case{RingCtx(Flavor::Zadic, 3, 2), 2},
                          Case{RingCtx(Flavor::Zadic, 2, 3), 2}, Case{RingCtx(Flavor::Zadic, 5, 1), 2}}) {
        CAPTURE(c.R.descriptor());
        ref::Ring r = ref::from_ctx(c.R);
        std::uint32_t orbits = 0;
        auto label = ref::brute_orbits(r, c.n, &orbits);
        OrbitCensus m = orbit_census(c.R, c.n, Group::M);
        REQUIRE(m.class_count() == orbits);
        // min reps are the smallest state of each orbit; sizes add up
        std::vector<std::uint64_t> first(orbits, ~std::uint64_t{0}), size(orbits, 0);
        for (std::uint64_t s = 0; s < label.size(); ++s) {
            first[label[s]] = std::min(first[label[s]], s);
            ++size[label[s]];
        }
        std::vector<std::pair<std::uint64_t, std::uint64_t>> want;
        for (std::uint32_t o = 0; o < orbits; ++o) want.emplace_back(first[o], size[o]);
        std::sort(want.begin(), want.end());
        for (std::size_t i = 0; i < want.size(); ++i) {
            CHECK(m.min_reps[i] == want[i].first);
            CHECK(m.sizes[i] == want[i].second);
        }
        std::uint64_t unit_orbits = 0;
        for (auto [rep, sz] : want) unit_orbits += r.unit(ref::det(r, c.n, ref::unpack(r, c.n, rep)));
        CHECK(orbit_census(c.R, c.n, Group::GL).class_count() == unit_orbits);
        auto labels = orbit_labels(c.R, c.n);
        for (std::uint64_t s = 0; s < label.size(); ++s)
            CHECK(m.min_reps[labels[s]] == first[label[s]]);
    }
}

TEST_CASE("generators generate a group of the predicted order")
{
    struct Case {
        RingCtx R;
        int n;
    };
    for (const Case& c : {Case{RingCtx(Flavor::Zadic, 2, 2), 3}, Case{RingCtx(Flavor::Zadic, 2, 3), 2},
                          Case{RingCtx(Flavor::Zadic, 2, 4), 2}, Case{RingCtx(Flavor::Zadic, 3, 2), 2},
                          Case{RingCtx(Flavor::Poly, 2, 3), 2}, Case{RingCtx(Flavor::Poly, 3, 2), 2},
                          Case{RingCtx(Flavor::Zadic, 3, 1), 3}, Case{RingCtx(Flavor::Poly, 5, 2), 2},
                          Case{RingCtx(Flavor::Zadic, 5, 2), 2}}) {
        CAPTURE(c.R.descriptor());
        std::vector<Mat> gens = gl_generators(c.R, c.n);
        std::unordered_set<std::uint64_t> seen{pack(Mat::identity(c.R, c.n))};
        std::vector<Mat> frontier{Mat::identity(c.R, c.n)};
        while (!frontier.empty()) {
            Mat x = frontier.back();
            frontier.pop_back();
            for (const Mat& g : gens) {
                Mat y = g * x;
                if (seen.insert(pack(y)).second) frontier.push_back(y);
            }
        }
        CHECK(BigInt(seen.size()) == group_order(c.R, c.n));
        CHECK(BigInt(ref::all_units(ref::from_ctx(c.R), c.n).size()) == group_order(c.R, c.n));
    }
}

TEST_CASE("orbit-stabilizer: orbit size times centralizer is the group order")
{
    RingCtx R(Flavor::Zadic, 2, 2);
    OrbitCensus c = orbit_census(R, 3, Group::M);
    for (std::size_t i = 0; i < c.class_count(); i += 7) {
        Mat a = unpack(R, 3, c.min_reps[i]);
        CHECK(BigInt(c.sizes[i]) * centralizer_order(a) == group_order(R, 3));
        OrbitInfo o = orbit_of(conjugate(a, elementary(R, 3, 2, 0, RingElem::one(R))));
        CHECK(o.size == BigInt(c.sizes[i]));
        CHECK(o.min_rep == a);
    }
}

TEST_CASE("census cache round trip")
{
    auto dir = std::filesystem::temp_directory_path() / ("simclass-cache-test-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    RingCtx R(Flavor::Zadic, 3, 2);
    OracleOptions o;
    o.cache_dir = dir.string();
    OrbitCensus first = orbit_census(R, 2, Group::GL, o);
    CHECK_FALSE(first.from_cache);
    OrbitCensus second = orbit_census(R, 2, Group::GL, o);
    CHECK(second.from_cache);
    CHECK(second.min_reps == first.min_reps);
    CHECK(second.sizes == first.sizes);
    // a damaged file is ignored and rewritten
    for (auto& e : std::filesystem::directory_iterator(dir)) std::filesystem::resize_file(e.path(), 40);
    OrbitCensus third = orbit_census(R, 2, Group::GL, o);
    CHECK_FALSE(third.from_cache);
    CHECK(third.min_reps == first.min_reps);
    std::filesystem::remove_all(dir);
}

TEST_CASE("census is identical for any number of jobs")
{
    for (Group g : {Group::M, Group::GL}) {
        RingCtx R(Flavor::Zadic, 2, 2);
        OracleOptions one, four;
        four.jobs = 4;
        OrbitCensus a = orbit_census(R, 3, g, one), b = orbit_census(R, 3, g, four);
        CHECK(a.min_reps == b.min_reps);
        CHECK(a.sizes == b.sizes);
    }
}

TEST_CASE("state budget is enforced")
{
    OracleOptions o;
    o.state_budget = 1000;
    CHECK_THROWS_AS(orbit_census(RingCtx(Flavor::Zadic, 2, 2), 3, Group::M, o), Error);
    RingCtx R(Flavor::Zadic, 2, 2);
    CHECK_THROWS_AS(orbit_of(elementary(R, 3, 0, 1, RingElem::one(R)), 10), Error);
}

TEST_CASE("verification report on small rings")
{
    for (const RingCtx& R : {RingCtx(Flavor::Zadic, 2, 2), RingCtx(Flavor::Poly, 2, 2), RingCtx(Flavor::Zadic, 3, 1)}) {
        for (int n : {2, 3}) {
            VerifyReport r = verify_counts(R, n);
            CHECK(r.ok());
            CHECK(r.distinct_canon == r.oracle_m);
            CHECK(r.members_checked > 0);
        }
    }
}
