#pragma once

#include <boost/container/small_vector.hpp>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "octo/errors.hpp"

namespace octo {

// Default bound on the size of a field the canonical-order element
// choosers will enumerate. Root finding is algebraic and unaffected.
inline constexpr std::uint64_t kDefaultSearchCap = 1u << 18;

// Default bound on tower extension degrees.
inline constexpr int kDefaultMaxDegree = 24;

// Hard ceiling on levels reachable through lcm-lifting of intermediates.
inline constexpr int kHardDegreeLimit = 64;

// Relative tolerance used by the approximate complex backend.
inline constexpr double kComplexTolerance = 1e-9;

/// Description of the canonical field F_{p^m}: the lexicographically
/// smallest monic irreducible of degree m over F_p, coefficients compared
/// from the constant term upward.
struct TowerLevel {
    std::int64_t p = 0;
    int m = 0;
    // Non-leading coefficients c_0..c_{m-1} of x^m + c_{m-1} x^{m-1} + ... + c_0.
    std::vector<std::int64_t> modulus;
};

/// Memoized lookup of the canonical tower level for (p, m). Thread-safe.
const TowerLevel& tower_level(std::int64_t p, int m);

/// Element of F_{p^m} in the canonical tower, or an approximate complex
/// number. Immutable after construction; all operations return new values.
class FieldElement {
  public:
    using Coeffs = boost::container::small_vector<std::int64_t, 4>;

    FieldElement();  // zero of F_2

    static FieldElement finite(std::int64_t p, int m, std::vector<std::int64_t> coeffs);
    static FieldElement integer(std::int64_t p, std::int64_t value);  // element of F_p
    static FieldElement complex_num(double re, double im);

    bool is_finite() const { return finite_; }
    bool is_complex() const { return !finite_; }
    std::int64_t characteristic() const { return p_; }  // 0 for complex
    int degree() const { return m_; }
    const Coeffs& coeffs() const { return c_; }
    std::int64_t coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    std::complex<double> value() const { return z_; }

    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator/(const FieldElement& rhs) const;
    FieldElement operator-() const;
    bool operator==(const FieldElement& rhs) const;
    bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

    FieldElement inv() const;
    FieldElement pow(std::int64_t e) const;

    /// Embed into the level-M field of the same tower (degree() | M).
    FieldElement lifted(int M) const;

    /// Position in the canonical enumeration of F_{p^m} (finite backend).
    std::uint64_t canonical_index() const;
    static FieldElement from_index(std::int64_t p, int m, std::uint64_t index);

    /// Compact rendering, e.g. "3" or "t^2+2t+1" / "1.5+0.25i".
    std::string str() const;

    FieldElement zero_like() const;
    FieldElement one_like() const;
    FieldElement from_int(std::int64_t v) const;  // v * 1 in this element's field

  private:
    bool finite_ = true;
    std::int64_t p_ = 2;
    int m_ = 1;
    Coeffs c_{0};  // length m_, entries in [0, p)
    std::complex<double> z_{0.0, 0.0};

    friend std::pair<FieldElement, FieldElement> lift_common(const FieldElement&,
                                                             const FieldElement&);
};

/// Lift two finite elements to their common tower level (lcm of degrees).
std::pair<FieldElement, FieldElement> lift_common(const FieldElement& a, const FieldElement& b);

/// All p^m elements in canonical order. Throws CapExceeded past `cap`.
std::vector<FieldElement> enumerate_field(std::int64_t p, int m, std::uint64_t cap);

/// Number of elements of F_{p^m} as uint64 (throws on overflow).
std::uint64_t field_size(std::int64_t p, int m);

struct KthRootResult {
    FieldElement root;
    int degree;  // tower level the root lives in
};

/// Deterministic k-th root in the tower closure: the first root in canonical
/// enumeration order of the smallest admissible level. Exact: root^k == a.
KthRootResult kth_root_closure(const FieldElement& a, std::int64_t k,
                               int max_degree = kDefaultMaxDegree);

/// Dense univariate polynomial over FieldElement, constant term first.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<FieldElement> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
    const std::vector<FieldElement>& coeffs() const { return c_; }
    FieldElement eval(const FieldElement& x) const;
    bool is_zero() const { return c_.empty(); }

  private:
    std::vector<FieldElement> c_;  // normalized: leading coefficient nonzero
};

/// First root of `poly` (canonical order, smallest admissible tower level)
/// that is not in `forbidden`. Throws NoAdmissibleRoot / ClosureBoundExceeded.
FieldElement poly_root_avoiding(const Poly& poly, const std::vector<FieldElement>& forbidden,
                                int max_degree = kDefaultMaxDegree);

/// First element of the tower over F_{p^m} satisfying `pred`, scanning
/// canonical enumeration order and climbing levels m, 2m, 3m, ... as needed.
FieldElement first_element_where(std::int64_t p, int m,
                                 const std::function<bool(const FieldElement&)>& pred,
                                 int max_degree = kDefaultMaxDegree,
                                 std::uint64_t search_cap = kDefaultSearchCap);

}  // namespace octo
