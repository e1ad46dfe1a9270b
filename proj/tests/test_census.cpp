#include <doctest.h>

#include "simclass/census.hpp"
#include "simclass/error.hpp"
#include "simclass/modsolve.hpp"

using namespace simclass;

TEST_CASE("transfer matrix powers: iteration equals closed form")
{
    for (std::uint64_t q : {2, 3, 4, 5, 7})
        for (std::uint32_t l = 0; l <= 6; ++l)
            CHECK(transfer_power(q, l, PowerMode::Iterate) == transfer_power(q, l, PowerMode::ClosedForm));
}

TEST_CASE("count3: recursion equals closed form")
{
    for (std::uint64_t q : {2, 3, 4, 5, 7})
        for (std::uint32_t l = 0; l <= 10; ++l)
            for (Group g : {Group::M, Group::GL})
                CHECK(count3(q, l, g, CountMode::Recursion) == count3(q, l, g, CountMode::ClosedForm));
}

TEST_CASE("generating function coefficients equal counts")
{
    for (std::uint64_t q : {2, 3, 5})
        for (Group g : {Group::M, Group::GL}) {
            auto c3 = gf_coeffs(q, g, 11, 3);
            auto c2 = gf_coeffs(q, g, 11, 2);
            CHECK(c3[0] == 1);
            CHECK(c2[0] == 1);
            for (std::uint32_t l = 1; l <= 10; ++l) {
                CHECK(c3[l] == count3(q, l, g));
                CHECK(c2[l] == count2(q, l, g));
            }
        }
    CHECK_THROWS_AS(gf_coeffs(1, Group::M, 3), Error);
    CHECK_THROWS_AS(gf_coeffs(2, Group::M, 0), Error);
}

TEST_CASE("enumerate3 lengths equal count3")
{
    for (const RingCtx& R : {RingCtx(Flavor::Zadic, 2, 1), RingCtx(Flavor::Zadic, 3, 1), RingCtx(Flavor::Zadic, 5, 1),
                             RingCtx(Flavor::Zadic, 2, 2), RingCtx(Flavor::Poly, 2, 2), RingCtx(Flavor::Zadic, 3, 2),
                             RingCtx(Flavor::Poly, 3, 2), RingCtx(Flavor::Zadic, 2, 3)}) {
        CAPTURE(R.descriptor());
        for (Group g : {Group::M, Group::GL}) {
            auto reps = enumerate3(R, g);
            CHECK(BigInt(reps.size()) == count3(R.q(), R.len(), g));
            for (const auto& r : reps) {
                CHECK(canonical_matrix(R, r.form) == r.matrix);
                if (g == Group::GL) CHECK(is_unit(r.matrix));
            }
        }
    }
    CHECK_THROWS_AS(enumerate3(RingCtx(Flavor::Zadic, 3, 2), Group::M, 100), Error);
}

TEST_CASE("type histogram satisfies the transfer recursion")
{
    for (const RingCtx& R : {RingCtx(Flavor::Zadic, 2, 3), RingCtx(Flavor::Zadic, 3, 2)}) {
        for (Group g : {Group::M, Group::GL}) {
            auto h = type_histogram(R, g);
            REQUIRE(h.size() == R.len());
            CHECK(h[0] == initial_vector(R.q(), g));
            for (std::size_t l = 0; l + 1 < h.size(); ++l) {
                CHECK(h[l + 1].total() == count3(R.q(), static_cast<std::uint32_t>(l + 2), g));
                CHECK(apply_transfer(transfer_matrix(R.q()), h[l]) == h[l + 1]);
            }
        }
    }
}

TEST_CASE("exact division guard")
{
    CHECK(exact_div(BigInt(12), BigInt(4)) == 3);
    CHECK_THROWS_AS(exact_div(BigInt(13), BigInt(4)), Error);
}
