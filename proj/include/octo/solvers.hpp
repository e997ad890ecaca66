#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "octo/octonion.hpp"
#include "octo/orbit.hpp"

namespace octo {

struct SolveOptions {
    int max_degree = kDefaultMaxDegree;
    std::uint64_t search_cap = kDefaultSearchCap;
};

struct TraceEntry {
    std::string name;
    FieldElement value;
};

/// A solved instance: X, Y with A1 X^{k1} + A2 Y^{k2} equal to the target,
/// re-verified by substitution, plus the intermediate scalar choices.
struct SolveCertificate {
    Octonion X, Y;
    std::vector<TraceEntry> trace;
    int max_tower_degree = 1;
    bool verified = false;
};

enum class SlotKind { Free, Zero, Linked };

struct MaskSlot {
    SlotKind kind = SlotKind::Free;
    int anchor = -1;       // slot index this one is tied to (Linked)
    FieldElement coeff;    // this slot == coeff * anchor slot
};

/// Linear constraints satisfied by every value of A1 P + A2 Q, slot by slot.
/// Sound for the substitution image since powers are particular P, Q.
struct ObstructionMask {
    std::array<MaskSlot, 8> slots;

    bool admits(const Octonion& A, std::vector<std::string>* violations = nullptr) const;
    bool restricts() const;  // at least one slot is Zero or Linked
    std::array<std::string, 8> render() const;
};

ObstructionMask compute_mask(const Octonion& A1, const Octonion& A2);

/// Proof that a target lies outside the image: the family index (1-8), the
/// image mask, and the coordinate constraints the target violates.
struct ObstructionWitness {
    int family = 0;
    ObstructionMask mask;
    std::vector<std::string> violated;
};

struct Verdict {
    bool surjective = true;
    int family = 0;                        // 1-8 when non-surjective
    std::optional<ObstructionMask> mask;   // populated when non-surjective
    bool matched_swapped = false;          // matched in the (A2, A1) order
};

struct ProblemInstance {
    Octonion A1, A2;
    std::int64_t k1 = 2, k2 = 2;
    Octonion target;

    static ProblemInstance from_rep(const OrbitRepresentative& rep, std::int64_t k1,
                                    std::int64_t k2, Octonion target);
};

using SolveResult = std::variant<SolveCertificate, ObstructionWitness>;

/// A = alpha1 X^{k1} for A = (a, b; c, d) with a != d, <b, c> = 0, alpha1 != 0.
/// Returns a certificate carrying X only (Y is zero).
SolveCertificate solve_scalar_power(const Octonion& A, const FieldElement& alpha1,
                                    std::int64_t k1, const SolveOptions& opt = {});

/// One reduction step of the invertible-coefficient pipeline: picks Y so that
/// the residual A - A2 Y^{k2} is conjugate-reducible against A1. `case_no`
/// selects among the six coefficient shapes (1: diag/diag, 2: diag/upper,
/// 3: diag/mixed, 4: k1/diag, 5: k1/upper, 6: k1/lower).
std::pair<Octonion, Octonion> reduce_invertible_case(int case_no, const Octonion& A,
                                                     const Octonion& A1, const Octonion& A2,
                                                     std::int64_t k2,
                                                     const SolveOptions& opt = {});

/// A1 X^{k1} = residual for invertible A1, through conj(A1) (residual) =
/// N(A1) X^{k1} and the scalar-power solver.
SolveCertificate apply_conjugate_reduction(const Octonion& residual, const Octonion& A1,
                                           std::int64_t k1, const SolveOptions& opt = {});

/// Full solve when N(A1) != 0 or N(A2) != 0. Always succeeds (up to tower
/// bounds); the certificate is substitution-verified.
SolveCertificate solve_invertible(const ProblemInstance& inst, const SolveOptions& opt = {});

/// Full solve when both coefficients are singular: a verified certificate
/// when the target lies in the image, an obstruction witness otherwise.
SolveResult solve_noninvertible(const ProblemInstance& inst, const SolveOptions& opt = {});

/// Dispatcher over the two cases above by N(A1), N(A2) and family shape.
SolveResult solve(const ProblemInstance& inst, const SolveOptions& opt = {});

/// Surjectivity verdict for a representative pair, checking both orders.
/// Throws NotARepresentative if the pair matches no catalog family.
Verdict classify(const Octonion& A1, const Octonion& A2);

/// Internal-but-tested helpers: the last-mile power solvers of the singular
/// pipeline. Shapes: upper (a, b; 0, 0) against diag(a1, 0); lower
/// (0, 0; c, d) against diag(0, a8); nilpotent (a, (b1,0,0); (0,c2,c3), 0)
/// against (0, e1; 0, 0).
Octonion solve_upper_shape(const Octonion& A, const FieldElement& a1, std::int64_t k,
                           const SolveOptions& opt, std::vector<TraceEntry>* trace);
Octonion solve_lower_shape(const Octonion& A, const FieldElement& a8, std::int64_t k,
                           const SolveOptions& opt, std::vector<TraceEntry>* trace);
Octonion solve_e_shape(const Octonion& A, std::int64_t k, const SolveOptions& opt,
                       std::vector<TraceEntry>* trace);

}  // namespace octo
