#include <doctest.h>

#include "simclass/error.hpp"
#include "simclass/ring.hpp"
#include "support.hpp"

using namespace simclass;

namespace {

std::vector<RingCtx> small_rings()
{
    return {RingCtx(Flavor::Zadic, 2, 1), RingCtx(Flavor::Zadic, 2, 3), RingCtx(Flavor::Zadic, 3, 2),
            RingCtx(Flavor::Zadic, 5, 2), RingCtx(Flavor::Poly, 2, 3), RingCtx(Flavor::Poly, 3, 2),
            RingCtx(Flavor::Poly, 5, 2), RingCtx(Flavor::Poly, 2, 4)};
}

} // namespace

TEST_CASE("ring arithmetic matches reference arithmetic exhaustively")
{
    for (const RingCtx& R : small_rings()) {
        CAPTURE(R.descriptor());
        ref::Ring r = ref::from_ctx(R);
        for (std::uint64_t a = 0; a < R.card(); ++a)
            for (std::uint64_t b = 0; b < R.card(); ++b) {
                REQUIRE(R.add(a, b) == r.add(a, b));
                REQUIRE(R.sub(a, b) == r.sub(a, b));
                REQUIRE(R.mul(a, b) == r.mul(a, b));
            }
    }
}

TEST_CASE("ring axioms hold on random triples of a larger ring")
{
    std::mt19937_64 rng(7);
    for (const RingCtx& R : {RingCtx(Flavor::Zadic, 7, 5), RingCtx(Flavor::Poly, 7, 5), RingCtx(Flavor::Poly, 2, 20)}) {
        std::uniform_int_distribution<std::uint64_t> d(0, R.card() - 1);
        ref::Ring r = ref::from_ctx(R);
        for (int t = 0; t < 2000; ++t) {
            RingElem a(R, d(rng)), b(R, d(rng)), c(R, d(rng));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == RingElem::zero(R));
            CHECK((a * b).repr() == r.mul(a.repr(), b.repr()));
        }
    }
}

TEST_CASE("units, inverses and valuations")
{
    for (const RingCtx& R : small_rings()) {
        CAPTURE(R.descriptor());
        ref::Ring r = ref::from_ctx(R);
        for (std::uint64_t a = 0; a < R.card(); ++a) {
            RingElem x(R, a);
            // unit iff some product equals one
            bool has_inverse = false;
            for (std::uint64_t b = 0; b < R.card() && !has_inverse; ++b) has_inverse = r.mul(a, b) == 1;
            CHECK(x.is_unit() == has_inverse);
            if (has_inverse) CHECK(x * x.inverse() == RingElem::one(R));
            else CHECK_THROWS_AS(x.inverse(), Error);
            // valuation: largest k with x in pi^k A
            std::uint32_t v = 0;
            for (std::uint32_t k = 0; k < R.len(); ++k) {
                bool divisible = false;
                for (std::uint64_t y = 0; y < R.card() && !divisible; ++y)
                    divisible = r.mul(y, R.pi_pow(k)) == a;
                if (!divisible) break;
                v = k;
            }
            if (a != 0) CHECK(x.valuation() == v);
            auto [t, u] = valuation_split(x);
            CHECK(u.is_unit());
            CHECK(u.mul_pi(t) == x);
        }
    }
}

TEST_CASE("pi-adic digits, sections, truncation and lift")
{
    for (const RingCtx& R : small_rings()) {
        for (std::uint64_t a = 0; a < R.card(); ++a) {
            RingElem x(R, a);
            auto ds = digits(x);
            REQUIRE(ds.size() == R.len());
            // x = sum of digit sections times powers of pi
            RingElem acc = RingElem::zero(R);
            for (std::uint32_t k = 0; k < R.len(); ++k) acc += RingElem(R, ds[k]).mul_pi(k);
            CHECK(acc == x);
            for (std::uint32_t j = 0; j <= R.len(); ++j) {
                Section s = section_of(x, j);
                CHECK((x - s.value).valuation() >= j);
                if (j >= 1) {
                    RingElem t = truncate(x, j);
                    CHECK(t.ctx().len() == j);
                    CHECK(truncate(lift(t, R), j) == t);
                }
            }
            if (x.valuation() >= 1) CHECK(x.div_pi(1).mul_pi(1) == x);
        }
    }
}

TEST_CASE("ring descriptors")
{
    CHECK(RingCtx::parse("z:3:2") == RingCtx(Flavor::Zadic, 3, 2));
    CHECK(RingCtx::parse("t:2:4").descriptor() == "t:2:4");
    CHECK_THROWS_AS(RingCtx::parse("z:4:2"), Error);
    CHECK_THROWS_AS(RingCtx::parse("q:2:2"), Error);
    CHECK_THROWS_AS(RingCtx::parse("z:2"), Error);
    CHECK_THROWS_AS(RingCtx::parse("z:2:0"), Error);
    CHECK_THROWS_AS(RingCtx::parse("z:2:80"), Error);
    CHECK_THROWS_AS(RingElem(RingCtx(Flavor::Zadic, 2, 2), 4), Error);
    CHECK_THROWS_AS(RingElem::one(RingCtx(Flavor::Zadic, 2, 2)) + RingElem::one(RingCtx(Flavor::Zadic, 2, 3)), Error);
}
