#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "simclass/bigint.hpp"
#include "simclass/canon2.hpp"
#include "simclass/canon3.hpp"

namespace simclass {

/// Class counts by type: scalar, dI + pi^j D(a,b,b), dI + pi^j J(c,d), rest.
struct CountVector {
    std::array<BigInt, 4> eta{};
    BigInt total() const { return eta[0] + eta[1] + eta[2] + eta[3]; }
    bool operator==(const CountVector&) const = default;
};

using TransferMatrix = std::array<std::array<BigInt, 4>, 4>;

enum class PowerMode { Iterate, ClosedForm };

TransferMatrix transfer_matrix(std::uint64_t q);
TransferMatrix transfer_power(std::uint64_t q, std::uint32_t level, PowerMode mode = PowerMode::Iterate);
CountVector apply_transfer(const TransferMatrix& t, const CountVector& v);
/// Level-1 count vector (the field case).
CountVector initial_vector(std::uint64_t q, Group group);

BigInt count3(std::uint64_t q, std::uint32_t level, Group group, CountMode mode = CountMode::ClosedForm);

/// Coefficients 0..terms-1 of the class-count generating function (n = 2 or 3).
std::vector<BigInt> gf_coeffs(std::uint64_t q, Group group, std::uint32_t terms, int n = 3);

struct Representative {
    CanonicalForm3 form;
    Mat matrix;
};

std::vector<Representative> enumerate3(const RingCtx& ctx, Group group, std::uint64_t budget = 1'000'000,
                                       const SearchOptions& opts = {});

/// Type index 0..3 of a canonical form.
int type_index(const CanonicalForm3& f);

/// Count vectors of levels 1..len, classified from enumerated representatives.
std::vector<CountVector> type_histogram(const RingCtx& ctx, Group group, std::uint64_t budget = 1'000'000);

} // namespace simclass
