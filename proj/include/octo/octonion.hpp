#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "octo/field.hpp"

namespace octo {

/// Three-vector over a field, the off-diagonal entry type of a Zorn matrix.
class Vec3 {
  public:
    Vec3() = default;
    Vec3(FieldElement a, FieldElement b, FieldElement c);
    static Vec3 zero(const FieldElement& like);
    // e_i: 1 in slot i (1-based), 0 elsewhere
    static Vec3 unit(const FieldElement& like, int i);

    const FieldElement& operator[](int i) const { return v_[i]; }  // 0-based
    FieldElement& operator[](int i) { return v_[i]; }

    Vec3 operator+(const Vec3& r) const;
    Vec3 operator-(const Vec3& r) const;
    Vec3 operator-() const;
    Vec3 scaled(const FieldElement& s) const;
    bool operator==(const Vec3& r) const;
    bool is_zero() const;

    FieldElement dot(const Vec3& r) const;
    /// Standard cross product; <a x b, c> = det(a, b, c).
    Vec3 cross(const Vec3& r) const;

  private:
    std::array<FieldElement, 3> v_;
};

/// Split octonion as a Zorn vector matrix (eta, x; y, zeta): scalars on the
/// diagonal, three-vectors off it. All eight scalar slots are kept at one
/// tower level (mixed-level construction lifts automatically).
class Octonion {
  public:
    Octonion();
    Octonion(FieldElement eta, Vec3 x, Vec3 y, FieldElement zeta);

    static Octonion zero(const FieldElement& like);
    static Octonion unit(const FieldElement& like);
    static Octonion diag(const FieldElement& eta, const FieldElement& zeta);

    const FieldElement& eta() const { return eta_; }
    const FieldElement& zeta() const { return zeta_; }
    const Vec3& x() const { return x_; }
    const Vec3& y() const { return y_; }

    /// Slot access in the fixed coordinate order
    /// (eta, x1, x2, x3, y1, y2, y3, zeta).
    const FieldElement& slot(int i) const;

    Octonion operator+(const Octonion& r) const;
    Octonion operator-(const Octonion& r) const;
    Octonion operator-() const;
    Octonion operator*(const Octonion& r) const;
    Octonion scaled(const FieldElement& s) const;
    bool operator==(const Octonion& r) const;
    bool operator!=(const Octonion& r) const { return !(*this == r); }
    bool is_zero() const;

    Octonion conj() const;
    FieldElement norm() const;   // N(A) = eta*zeta - <x, y>
    FieldElement trace() const;  // T(A) = eta + zeta
    Octonion inverse() const;    // N(A)^{-1} conj(A); throws SingularElement

    /// A^l by repeated left multiplication (well-defined by power
    /// associativity); l >= 0.
    Octonion pow_iter(std::int64_t l) const;
    /// Closed form (eta^l, f x; f y, zeta^l) with f = f_poly(eta, zeta, l);
    /// requires <x, y> = 0.
    Octonion pow_orthogonal(std::int64_t l) const;
    /// General power through the quadratic relation A^2 = T(A) A - N(A) 1.
    Octonion pow_ch(std::int64_t l) const;

    std::string str() const;

  private:
    FieldElement eta_, zeta_;
    Vec3 x_, y_;
    void normalize_levels();
};

/// f(alpha, delta, l) = sum_{i=0}^{l-1} alpha^i delta^{l-1-i}; the
/// off-diagonal scale factor of an orthogonal-type power.
FieldElement f_poly(const FieldElement& alpha, const FieldElement& delta, std::int64_t l);

/// The data of a closed-form power of an orthogonal-type element: diagonal
/// entries, exponent, and the resulting off-diagonal factor.
struct PowerClosedForm {
    FieldElement alpha, delta;
    std::int64_t ell = 1;
    FieldElement f_value;

    static PowerClosedForm make(FieldElement alpha, FieldElement delta, std::int64_t ell);
};

/// Coordinate slot names in the order used by `Octonion::slot`.
inline constexpr std::array<const char*, 8> kSlotNames = {"eta", "x1", "x2", "x3",
                                                          "y1",  "y2", "y3", "zeta"};

}  // namespace octo
