#include <doctest.h>

#include <set>

#include "simclass/canon2.hpp"
#include "simclass/canon3.hpp"
#include "simclass/census.hpp"
#include "simclass/error.hpp"
#include "simclass/json_io.hpp"
#include "support.hpp"

using namespace simclass;

namespace {

std::vector<RingCtx> rings()
{
    return {RingCtx(Flavor::Zadic, 2, 1), RingCtx(Flavor::Zadic, 3, 1), RingCtx(Flavor::Zadic, 2, 2),
            RingCtx(Flavor::Poly, 2, 2), RingCtx(Flavor::Zadic, 3, 2), RingCtx(Flavor::Zadic, 2, 3),
            RingCtx(Flavor::Poly, 3, 2)};
}

} // namespace

TEST_CASE("canon2 witness rebuilds the canonical matrix and the form is a class invariant")
{
    std::mt19937_64 rng(31);
    for (const RingCtx& R : rings()) {
        CAPTURE(R.descriptor());
        for (int t = 0; t < 300; ++t) {
            Mat a = testutil::random_mat(R, 2, rng);
            Canon2Result r = canon2(a);
            CHECK(conjugate(a, r.witness) == canonical_matrix(R, r.form));
            Mat b = conjugate(a, testutil::random_unit(R, 2, rng));
            CHECK(canon2(b).form == r.form);
        }
    }
}

TEST_CASE("canon2 separates brute-force orbits")
{
    for (const RingCtx& R : {RingCtx(Flavor::Zadic, 2, 2), RingCtx(Flavor::Zadic, 3, 2), RingCtx(Flavor::Poly, 2, 3)}) {
        ref::Ring r = ref::from_ctx(R);
        std::uint32_t orbits = 0;
        auto label = ref::brute_orbits(r, 2, &orbits);
        std::map<std::string, std::uint32_t> seen;
        for (std::uint64_t s = 0; s < label.size(); ++s) {
            std::string key = form_json(canon2(unpack_test(R, 2, s)).form).dump();
            auto [it, fresh] = seen.emplace(key, label[s]);
            CHECK(it->second == label[s]);
        }
        CHECK(seen.size() == orbits);
        CHECK(enumerate2(R, Group::M).size() == orbits);
        CHECK(count2(R.q(), R.len(), Group::M) == BigInt(orbits));
    }
}

TEST_CASE("count2 closed form equals recursion")
{
    for (std::uint64_t q : {2, 3, 4, 5, 7, 9})
        for (std::uint32_t l = 0; l <= 8; ++l)
            for (Group g : {Group::M, Group::GL})
                CHECK(count2(q, l, g, CountMode::ClosedForm) == count2(q, l, g, CountMode::Recursion));
    CHECK(count2(3, 1, Group::GL) == 8);
    CHECK(count2(2, 2, Group::M) == 28);
}

TEST_CASE("residue types over the residue field")
{
    RingCtx F2(Flavor::Zadic, 2, 1);
    CHECK(residue_type(Mat::identity(F2, 3)).tag == ResidueTag::Scalar);
    RingElem zero = RingElem::zero(F2), one = RingElem::one(F2);
    Mat j = j_matrix(zero, zero);
    CHECK(residue_type(j).tag == ResidueTag::JType);
    std::vector<RingElem> co{one, zero, zero};
    CHECK(residue_type(companion(co)).tag == ResidueTag::Cyclic);
    std::vector<RingElem> ds{one, zero, zero};
    ResidueType sd = residue_type(diagonal(ds));
    CHECK(sd.tag == ResidueTag::SplitDiag);
    CHECK(sd.a == 1);
    CHECK(sd.b == 0);
}

TEST_CASE("canon3 witness rebuilds the canonical matrix bit-exactly")
{
    std::mt19937_64 rng(32);
    for (const RingCtx& R : rings()) {
        CAPTURE(R.descriptor());
        for (int t = 0; t < 200; ++t) {
            Mat a = testutil::random_mat(R, 3, rng);
            if (t % 3 == 1) a = Mat::scalar(RingElem(R, rng() % R.card()), 3) + RingElem::pi_pow(R, 1) * a;
            Canon3Result r = canon3(a);
            CHECK(is_unit(r.witness));
            CHECK(conjugate(a, r.witness) == canonical_matrix(R, r.form));
            Mat b = conjugate(a, testutil::random_unit(R, 3, rng));
            if (R.len() <= 2) CHECK(canon3(b).form == r.form);
        }
    }
}

TEST_CASE("canon3 separates brute-force orbits over small rings")
{
    for (const RingCtx& R : {RingCtx(Flavor::Zadic, 2, 1), RingCtx(Flavor::Zadic, 3, 1)}) {
        ref::Ring r = ref::from_ctx(R);
        std::uint32_t orbits = 0;
        auto label = ref::brute_orbits(r, 3, &orbits);
        std::map<std::string, std::uint32_t> seen;
        for (std::uint64_t s = 0; s < label.size(); ++s) {
            auto [it, fresh] = seen.emplace(form_json(canon3(unpack_test(R, 3, s)).form).dump(), label[s]);
            CHECK(it->second == label[s]);
        }
        CHECK(seen.size() == orbits);
    }
}

TEST_CASE("Hensel block split")
{
    std::mt19937_64 rng(33);
    RingCtx R(Flavor::Zadic, 3, 3);
    int done = 0;
    while (done < 100) {
        Mat b = testutil::random_mat(R, 3, rng);
        if (residue_type(b.residue()).tag != ResidueTag::SplitDiag) continue;
        BlockSplit s = hensel_block_split(b);
        CHECK(conjugate(b, s.witness) == block_diag(s.a, s.block));
        ++done;
    }
}

TEST_CASE("E-form reduction of J-type matrices")
{
    std::mt19937_64 rng(34);
    for (const RingCtx& R : {RingCtx(Flavor::Zadic, 2, 3), RingCtx(Flavor::Poly, 3, 3), RingCtx(Flavor::Zadic, 5, 2)}) {
        int done = 0;
        while (done < 60) {
            Mat b = testutil::random_mat(R, 3, rng);
            if (residue_type(b.residue()).tag != ResidueTag::JType) continue;
            EReduction e = reduce_to_e_form(b);
            CHECK(conjugate(b, e.witness) == e_matrix(e.params));
            ++done;
        }
        CHECK_THROWS_AS(reduce_to_e_form(Mat::identity(R, 3)), Error);
    }
}

TEST_CASE("hard classes are fixed points of canon3 and pairwise distinct")
{
    for (const RingCtx& R : {RingCtx(Flavor::Zadic, 2, 2), RingCtx(Flavor::Zadic, 3, 2), RingCtx(Flavor::Zadic, 2, 3)}) {
        CAPTURE(R.descriptor());
        std::vector<HardForm> hard = hard_classes(R);
        std::set<std::string> keys;
        for (const HardForm& h : hard) {
            Mat m = e_matrix(h.params);
            Canon3Result r = canon3(m);
            const auto* body = std::get_if<HardBody>(&r.form.body);
            REQUIRE(body);
            CHECK(body->form == h);
            keys.insert(form_json(h).dump());
        }
        CHECK(keys.size() == hard.size());
        CHECK_THROWS_AS(classify_hard({1, RingElem::one(R), RingElem::zero(R), RingElem::zero(R), RingElem::zero(R)}),
                        Error);
    }
}

TEST_CASE("centralizer shape matches the computed centralizer")
{
    for (const RingCtx& R : {RingCtx(Flavor::Zadic, 2, 1), RingCtx(Flavor::Zadic, 2, 2), RingCtx(Flavor::Zadic, 3, 2)}) {
        for (const HardForm& h : hard_classes(R)) CHECK(centralizer_shape(h.params).order() == centralizer_order(e_matrix(h.params)));
    }
}
