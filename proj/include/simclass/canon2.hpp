#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "simclass/bigint.hpp"
#include "simclass/matrix.hpp"

namespace simclass {

enum class Group { M, GL };

/// a = lift(d) I + pi^level lift(beta), level maximal.
struct ScalarSplit {
    std::uint32_t level;
    Section d;
    /// Over A_{len - level}; empty when a is scalar.
    std::optional<Mat> beta;
};

ScalarSplit split_scalar(const Mat& a);
Mat rebuild(const ScalarSplit& s, int n);

struct CanonicalForm2 {
    std::uint32_t j;
    Section d;
    /// -det(beta) and tr(beta) over A_{len - j}; empty when j = len.
    std::optional<RingElem> c;
    std::optional<RingElem> e;

    bool operator==(const CanonicalForm2&) const = default;
};

struct Canon2Result {
    CanonicalForm2 form;
    /// conjugate(a, witness) == canonical_matrix(form).
    Mat witness;
};

Canon2Result canon2(const Mat& a);
Mat canonical_matrix(const RingCtx& ctx, const CanonicalForm2& f);

/// First row vector w (standard basis first, then lexicographic) whose residue
/// makes {w, w b, ..., w b^(n-1)} a basis; returns the invertible matrix of those rows.
Mat cyclic_basis(const Mat& b);

std::vector<CanonicalForm2> enumerate2(const RingCtx& ctx, Group group, std::uint64_t budget = 1'000'000);

enum class CountMode { ClosedForm, Recursion };

BigInt count2(std::uint64_t q, std::uint32_t level, Group group, CountMode mode = CountMode::ClosedForm);

} // namespace simclass
