#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "simclass/bigint.hpp"
#include "simclass/canon2.hpp"
#include "simclass/matrix.hpp"
#include "simclass/modsolve.hpp"

namespace simclass {

enum class ResidueTag { Scalar, SplitDiag, JType, Cyclic };

/// Similarity type of a 3x3 matrix over the residue field. SplitDiag carries
/// the simple eigenvalue a and the double one b; JType the eigenvalue d.
struct ResidueType {
    ResidueTag tag;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t d = 0;
    bool operator==(const ResidueType&) const = default;
};

ResidueType residue_type(const Mat& b);

/// Parameters of E(m, a, b, c, d); m in [1, len] with m = len meaning a zero (1,2) entry.
struct EParams {
    std::uint32_t m;
    RingElem a, b, c, d;
    bool operator==(const EParams&) const = default;
};

Mat e_matrix(const EParams& e);
/// Reads the parameters of a matrix that already has E-form shape.
std::optional<EParams> read_e_form(const Mat& x);

struct BlockSplit {
    RingElem a;
    Mat block;
    /// conjugate(b, witness) == block_diag(a, block).
    Mat witness;
};

BlockSplit hensel_block_split(const Mat& b);

struct EReduction {
    EParams params;
    /// conjugate(b, witness) == e_matrix(params).
    Mat witness;
};

EReduction reduce_to_e_form(const Mat& b);

enum class HardTag { TypeI, TypeII, TypeIII0, TypeIII1 };

const char* hard_tag_name(HardTag t) noexcept;

/**
 * Normal form of a J-type class. depth is the level at which the class
 * leaves the type I family (equal to the ring length for type I).
 */
struct HardForm {
    HardTag tag;
    std::uint32_t depth;
    EParams params;
    bool operator==(const HardForm&) const = default;
};

struct HardResult {
    HardForm form;
    /// conjugate(e_matrix(input), witness) == e_matrix(form.params).
    Mat witness;
};

HardResult classify_hard(const EParams& e, const SearchOptions& opts = {});

struct CentralizerShape {
    int unit_rank;
    std::uint64_t affine_dim;
    BigInt order() const;
    std::uint64_t q;
};

CentralizerShape centralizer_shape(const EParams& e);

struct ScalarBody {
    bool operator==(const ScalarBody&) const = default;
};
struct CyclicBody {
    std::array<RingElem, 3> coeffs;
    bool operator==(const CyclicBody&) const = default;
};
struct SplitBody {
    RingElem a;
    CanonicalForm2 inner;
    bool operator==(const SplitBody&) const = default;
};
struct HardBody {
    HardForm form;
    bool operator==(const HardBody&) const = default;
};

using Body = std::variant<ScalarBody, CyclicBody, SplitBody, HardBody>;

struct CanonicalForm3 {
    std::uint32_t j;
    Section d;
    /// Body lives over A_{len - j}.
    Body body;
    bool operator==(const CanonicalForm3&) const = default;
};

struct Canon3Result {
    CanonicalForm3 form;
    /// conjugate(a, witness) == canonical_matrix(form).
    Mat witness;
};

Canon3Result canon3(const Mat& a, const SearchOptions& opts = {});
Mat canonical_matrix(const RingCtx& ctx, const CanonicalForm3& f);
/// The matrix over A_{len - j} represented by a body.
Mat body_matrix(const Body& body);

/**
 * All hard (J-type) classes over ctx as normal forms, in a fixed order:
 * the type I grid, then for each departure depth k the branching-level
 * representatives over each type I class at level k, extended to full length
 * by candidate lifts deduplicated with is_similar.
 */
std::vector<HardForm> hard_classes(const RingCtx& ctx, const SearchOptions& opts = {});

} // namespace simclass
