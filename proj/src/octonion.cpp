#include "octo/octonion.hpp"

#include <numeric>
#include <sstream>

namespace octo {

Vec3::Vec3(FieldElement a, FieldElement b, FieldElement c) : v_{std::move(a), std::move(b), std::move(c)} {}

Vec3 Vec3::zero(const FieldElement& like) {
    auto z = like.zero_like();
    return Vec3(z, z, z);
}

Vec3 Vec3::unit(const FieldElement& like, int i) {
    Vec3 out = zero(like);
    out.v_[i - 1] = like.one_like();
    return out;
}

Vec3 Vec3::operator+(const Vec3& r) const { return Vec3(v_[0] + r.v_[0], v_[1] + r.v_[1], v_[2] + r.v_[2]); }
Vec3 Vec3::operator-(const Vec3& r) const { return Vec3(v_[0] - r.v_[0], v_[1] - r.v_[1], v_[2] - r.v_[2]); }
Vec3 Vec3::operator-() const { return Vec3(-v_[0], -v_[1], -v_[2]); }
Vec3 Vec3::scaled(const FieldElement& s) const { return Vec3(v_[0] * s, v_[1] * s, v_[2] * s); }

bool Vec3::operator==(const Vec3& r) const {
    return v_[0] == r.v_[0] && v_[1] == r.v_[1] && v_[2] == r.v_[2];
}

bool Vec3::is_zero() const { return v_[0].is_zero() && v_[1].is_zero() && v_[2].is_zero(); }

FieldElement Vec3::dot(const Vec3& r) const {
    return v_[0] * r.v_[0] + v_[1] * r.v_[1] + v_[2] * r.v_[2];
}

Vec3 Vec3::cross(const Vec3& r) const {
    return Vec3(v_[1] * r.v_[2] - v_[2] * r.v_[1],
                v_[2] * r.v_[0] - v_[0] * r.v_[2],
                v_[0] * r.v_[1] - v_[1] * r.v_[0]);
}

Octonion::Octonion()
    : eta_(), zeta_(), x_(Vec3::zero(FieldElement())), y_(Vec3::zero(FieldElement())) {}

void Octonion::normalize_levels() {
    if (eta_.is_complex()) return;
    int M = eta_.degree();
    auto consider = [&](const FieldElement& e) { M = static_cast<int>(std::lcm(M, e.degree())); };
    for (int i = 0; i < 3; ++i) {
        consider(x_[i]);
        consider(y_[i]);
    }
    consider(zeta_);
    if (M > kHardDegreeLimit)
        throw ClosureBoundExceeded("octonion slots need common level " + std::to_string(M));
    eta_ = eta_.lifted(M);
    zeta_ = zeta_.lifted(M);
    for (int i = 0; i < 3; ++i) {
        x_[i] = x_[i].lifted(M);
        y_[i] = y_[i].lifted(M);
    }
}

Octonion::Octonion(FieldElement eta, Vec3 x, Vec3 y, FieldElement zeta)
    : eta_(std::move(eta)), zeta_(std::move(zeta)), x_(std::move(x)), y_(std::move(y)) {
    normalize_levels();
}

Octonion Octonion::zero(const FieldElement& like) {
    auto z = like.zero_like();
    return Octonion(z, Vec3::zero(z), Vec3::zero(z), z);
}

Octonion Octonion::unit(const FieldElement& like) {
    auto z = like.zero_like();
    return Octonion(like.one_like(), Vec3::zero(z), Vec3::zero(z), like.one_like());
}

Octonion Octonion::diag(const FieldElement& eta, const FieldElement& zeta) {
    return Octonion(eta, Vec3::zero(eta), Vec3::zero(eta), zeta);
}

const FieldElement& Octonion::slot(int i) const {
    switch (i) {
        case 0: return eta_;
        case 1: return x_[0];
        case 2: return x_[1];
        case 3: return x_[2];
        case 4: return y_[0];
        case 5: return y_[1];
        case 6: return y_[2];
        default: return zeta_;
    }
}

Octonion Octonion::operator+(const Octonion& r) const {
    return Octonion(eta_ + r.eta_, x_ + r.x_, y_ + r.y_, zeta_ + r.zeta_);
}

Octonion Octonion::operator-(const Octonion& r) const {
    return Octonion(eta_ - r.eta_, x_ - r.x_, y_ - r.y_, zeta_ - r.zeta_);
}

Octonion Octonion::operator-() const { return Octonion(-eta_, -x_, -y_, -zeta_); }

// Zorn multiplication. The wedge terms carry the composition-algebra signs:
// minus on the top-right, plus on the bottom-left; this is the convention for
// which N(AB) = N(A) N(B) holds identically.
Octonion Octonion::operator*(const Octonion& r) const {
    FieldElement eta = eta_ * r.eta_ + x_.dot(r.y_);
    Vec3 x = r.x_.scaled(eta_) + x_.scaled(r.zeta_) - y_.cross(r.y_);
    Vec3 y = r.y_.scaled(zeta_) + y_.scaled(r.eta_) + x_.cross(r.x_);
    FieldElement zeta = zeta_ * r.zeta_ + y_.dot(r.x_);
    return Octonion(std::move(eta), std::move(x), std::move(y), std::move(zeta));
}

Octonion Octonion::scaled(const FieldElement& s) const {
    return Octonion(eta_ * s, x_.scaled(s), y_.scaled(s), zeta_ * s);
}

bool Octonion::operator==(const Octonion& r) const {
    return eta_ == r.eta_ && zeta_ == r.zeta_ && x_ == r.x_ && y_ == r.y_;
}

bool Octonion::is_zero() const {
    return eta_.is_zero() && zeta_.is_zero() && x_.is_zero() && y_.is_zero();
}

Octonion Octonion::conj() const { return Octonion(zeta_, -x_, -y_, eta_); }

FieldElement Octonion::norm() const { return eta_ * zeta_ - x_.dot(y_); }

FieldElement Octonion::trace() const { return eta_ + zeta_; }

Octonion Octonion::inverse() const {
    FieldElement n = norm();
    if (n.is_zero()) throw SingularElement();
    return conj().scaled(n.inv());
}

Octonion Octonion::pow_iter(std::int64_t l) const {
    if (l < 0) throw PreconditionViolated("negative power");
    Octonion acc = unit(eta_);
    for (std::int64_t i = 0; i < l; ++i) acc = *this * acc;
    return acc;
}

FieldElement f_poly(const FieldElement& alpha, const FieldElement& delta, std::int64_t l) {
    if (l < 1) throw PreconditionViolated("f_poly needs l >= 1");
    FieldElement acc = alpha.zero_like();
    std::vector<FieldElement> apow(l);
    apow[0] = alpha.one_like();
    for (std::int64_t i = 1; i < l; ++i) apow[i] = apow[i - 1] * alpha;
    FieldElement dpow = delta.one_like();
    for (std::int64_t i = l - 1; i >= 0; --i) {
        acc = acc + apow[i] * dpow;
        if (i > 0) dpow = dpow * delta;
    }
    return acc;
}

PowerClosedForm PowerClosedForm::make(FieldElement alpha, FieldElement delta, std::int64_t ell) {
    PowerClosedForm out{std::move(alpha), std::move(delta), ell, FieldElement()};
    out.f_value = f_poly(out.alpha, out.delta, ell);
    return out;
}

Octonion Octonion::pow_orthogonal(std::int64_t l) const {
    if (l < 1) throw PreconditionViolated("pow_orthogonal needs l >= 1");
    if (!x_.dot(y_).is_zero())
        throw PreconditionViolated("pow_orthogonal requires <x, y> = 0");
    PowerClosedForm cf = PowerClosedForm::make(eta_, zeta_, l);
    return Octonion(cf.alpha.pow(l), x_.scaled(cf.f_value), y_.scaled(cf.f_value),
                    cf.delta.pow(l));
}

Octonion Octonion::pow_ch(std::int64_t l) const {
    if (l < 0) throw PreconditionViolated("negative power");
    if (l == 0) return unit(eta_);
    // A^l = s_l A + t_l 1 with s_1 = 1, t_1 = 0,
    // s_{l+1} = T s_l + t_l, t_{l+1} = -N s_l.
    FieldElement T = trace(), N = norm();
    FieldElement s = eta_.one_like(), t = eta_.zero_like();
    for (std::int64_t i = 1; i < l; ++i) {
        FieldElement s_next = T * s + t;
        t = -(N * s);
        s = s_next;
    }
    return scaled(s) + unit(eta_).scaled(t);
}

std::string Octonion::str() const {
    std::ostringstream os;
    os << "(" << eta_.str() << ", [" << x_[0].str() << "," << x_[1].str() << "," << x_[2].str()
       << "]; [" << y_[0].str() << "," << y_[1].str() << "," << y_[2].str() << "], "
       << zeta_.str() << ")";
    return os.str();
}

}  // namespace octo
