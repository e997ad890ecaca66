#include "octo/solvers.hpp"

#include <algorithm>
#include <functional>

namespace octo {

namespace {

using i64 = std::int64_t;

struct Ctx {
    const SolveOptions& opt;
    std::vector<TraceEntry>* trace;

    void tr(const std::string& name, const FieldElement& v) {
        if (trace) trace->push_back({name, v});
    }
};

FieldElement choose_scalar(const FieldElement& like,
                           const std::function<bool(const FieldElement&)>& pred, Ctx& ctx,
                           const std::string& name) {
    if (like.is_complex()) {
        for (int v = 0; v < 4096; ++v) {
            FieldElement cand = FieldElement::complex_num(v, 0);
            if (pred(cand)) {
                ctx.tr(name, cand);
                return cand;
            }
        }
        throw NoAdmissibleRoot("no admissible complex scalar");
    }
    FieldElement out = first_element_where(like.characteristic(), like.degree(), pred,
                                           ctx.opt.max_degree, ctx.opt.search_cap);
    ctx.tr(name, out);
    return out;
}

FieldElement kroot(const FieldElement& a, i64 k, Ctx& ctx, const std::string& name) {
    FieldElement r = kth_root_closure(a, k, ctx.opt.max_degree).root;
    ctx.tr(name, r);
    return r;
}

// Root of f(alpha, _, k) = v in the second argument. Monic of degree k-1.
FieldElement f_solve_delta(const FieldElement& alpha, i64 k, const FieldElement& v, Ctx& ctx,
                           const std::string& name) {
    std::vector<FieldElement> c(k);
    FieldElement ap = alpha.one_like();
    for (i64 j = k - 1; j >= 0; --j) {
        c[j] = ap;  // coefficient of delta^j is alpha^{k-1-j}
        if (j > 0) ap = ap * alpha;
    }
    c[0] = c[0] - v;
    FieldElement r = poly_root_avoiding(Poly(std::move(c)), {}, ctx.opt.max_degree);
    ctx.tr(name, r);
    return r;
}

// Root of f(_, delta, k) = v in the first argument.
FieldElement f_solve_alpha(const FieldElement& delta, i64 k, const FieldElement& v, Ctx& ctx,
                           const std::string& name) {
    std::vector<FieldElement> c(k);
    FieldElement dp = delta.one_like();
    for (i64 j = k - 1; j >= 0; --j) {
        c[j] = dp;  // coefficient of alpha^j is delta^{k-1-j}
        if (j > 0) dp = dp * delta;
    }
    c[0] = c[0] - v;
    FieldElement r = poly_root_avoiding(Poly(std::move(c)), {}, ctx.opt.max_degree);
    ctx.tr(name, r);
    return r;
}

Vec3 e1_of(const FieldElement& like) { return Vec3::unit(like.one_like(), 1); }
Vec3 e2_of(const FieldElement& like) { return Vec3::unit(like.one_like(), 2); }

int max_level(const Octonion& A) {
    int m = 1;
    for (int i = 0; i < 8; ++i) m = std::max(m, A.slot(i).degree());
    return m;
}

// s X^k = A for <A.x, A.y> = 0; the workhorse behind every conjugate
// reduction. Requires distinct diagonal unless A is a scalar multiple of
// the unit.
Octonion scaled_power_X(const Octonion& A, const FieldElement& s, i64 k, Ctx& ctx) {
    if (s.is_zero()) throw PreconditionViolated("scalar-power solver needs a nonzero scalar");
    if (!A.x().dot(A.y()).is_zero())
        throw PreconditionViolated("scalar-power solver needs orthogonal off-diagonal vectors");
    if (A.eta() == A.zeta()) {
        if (!A.x().is_zero() || !A.y().is_zero())
            throw PreconditionViolated("scalar-power solver needs distinct diagonal entries");
        FieldElement r = kroot(A.eta() / s, k, ctx, "alpha_X");
        return Octonion::diag(r, r);
    }
    FieldElement alpha_x = kroot(A.eta() / s, k, ctx, "alpha_X");
    FieldElement delta_x = kroot(A.zeta() / s, k, ctx, "delta_X");
    // alpha_x^k != delta_x^k, so f != 0
    FieldElement f = f_poly(alpha_x, delta_x, k);
    FieldElement tau = (s * f).inv();
    ctx.tr("tau1", tau);
    ctx.tr("tau2", tau);
    Octonion X(alpha_x, A.x().scaled(tau), A.y().scaled(tau), delta_x);
    if (!(X.pow_ch(k).scaled(s) == A)) throw Error("internal: scalar-power recipe failed");
    return X;
}

// A1 X^k = R via conj(A1) R = N(A1) X^k. The residual recipes arrange the
// two scalar-power preconditions on conj(A1) R.
Octonion conj_reduce_X(const Octonion& R, const Octonion& A1, i64 k, Ctx& ctx) {
    FieldElement n = A1.norm();
    if (n.is_zero()) throw PreconditionViolated("conjugate reduction needs an invertible coefficient");
    Octonion reduced = A1.conj() * R;
    if (!reduced.x().dot(reduced.y()).is_zero())
        throw Error("internal: conjugate-reduced residual is not orthogonal");
    return scaled_power_X(reduced, n, k, ctx);
}

// ---------------------------------------------------------------------------
// Invertible-coefficient pipeline: residual builders.
//
// Each builder picks Y so that R = A - A2 Y^{k2} satisfies the two
// conjugate-reduction preconditions against the given A1:
//   C1: (conj(A1) R).eta != (conj(A1) R).zeta
//   C2: <(conj(A1) R).x, (conj(A1) R).y> = 0
// The avoidance choices below are exactly C1; the slot choices are C2.
// ---------------------------------------------------------------------------

// Case 1: A1 = diag(a1, a8) invertible, A2 = diag(b1, b8) != 0.
Octonion y_case1(const Octonion& A, const Octonion& A1, const Octonion& A2, i64 k2, Ctx& ctx) {
    const FieldElement a1 = A1.eta(), a8 = A1.zeta();
    const FieldElement b1 = A2.eta(), b8 = A2.zeta();
    const Vec3 z = Vec3::zero(a1.zero_like());
    if (!b1.is_zero()) {
        FieldElement alpha_y = choose_scalar(
            A.eta(),
            [&](const FieldElement& c) {
                return !c.is_zero() && a8 * (A.eta() - b1 * c.pow(k2)) != a1 * A.zeta();
            },
            ctx, "alpha_Y");
        FieldElement f = alpha_y.pow(k2 - 1);
        FieldElement tau = (b1 * f).inv();
        ctx.tr("tau", tau);
        return Octonion(alpha_y, A.x().scaled(tau), z, a1.zero_like());
    }
    FieldElement delta_y = choose_scalar(
        A.eta(),
        [&](const FieldElement& c) {
            return !c.is_zero() && a8 * A.eta() != a1 * (A.zeta() - b8 * c.pow(k2));
        },
        ctx, "delta_Y");
    FieldElement f = delta_y.pow(k2 - 1);
    FieldElement tau = (b8 * f).inv();
    ctx.tr("tau", tau);
    return Octonion(a1.zero_like(), z, A.y().scaled(tau), delta_y);
}

// Case 2: A1 = diag(a1, a8) invertible, A2 = (b1, e1; 0, b8).
Octonion y_case2(const Octonion& A, const Octonion& A1, const Octonion& A2, i64 k2, Ctx& ctx) {
    const FieldElement a1 = A1.eta(), a8 = A1.zeta();
    const FieldElement b1 = A2.eta(), b8 = A2.zeta();
    const FieldElement zero = a1.zero_like();
    const Vec3 z = Vec3::zero(zero);
    if (!b1.is_zero()) {
        FieldElement alpha_y = choose_scalar(
            A.eta(),
            [&](const FieldElement& c) {
                return !c.is_zero() && a8 * (A.eta() - b1 * c.pow(k2)) != a1 * A.zeta();
            },
            ctx, "alpha_Y");
        FieldElement f = alpha_y.pow(k2 - 1);
        Vec3 b_y = A.x().scaled((b1 * f).inv());
        ctx.tr("b_Y1", b_y[0]);
        ctx.tr("b_Y2", b_y[1]);
        ctx.tr("b_Y3", b_y[2]);
        return Octonion(alpha_y, b_y, z, zero);
    }
    FieldElement delta_y = kroot(A.x()[0], k2, ctx, "delta_Y");
    FieldElement alpha_y = f_solve_alpha(delta_y, k2, delta_y.one_like(), ctx, "alpha_Y");
    Vec3 b_y(zero, A.y()[2], -A.y()[1]);
    FieldElement r_zeta = A.zeta() - b8 * A.x()[0];
    FieldElement t = choose_scalar(
        A.eta(), [&](const FieldElement& c) { return a8 * (A.eta() - c) != a1 * r_zeta; }, ctx,
        "tau");
    return Octonion(alpha_y, b_y, Vec3(t, zero, zero), delta_y);
}

// Case 3: A1 = diag(a1, a8) invertible, A2 = (b1, e1; (b5, b6, 0), b8) with
// b5 != 0, b6 = 0 or b6 != 0, b5 = 0.
Octonion y_case3(const Octonion& A, const Octonion& A1, const Octonion& A2, i64 k2, Ctx& ctx) {
    const FieldElement a1 = A1.eta(), a8 = A1.zeta();
    const FieldElement b1 = A2.eta(), b8 = A2.zeta();
    const FieldElement b5 = A2.y()[0], b6 = A2.y()[1];
    const FieldElement zero = a1.zero_like();
    FieldElement delta_y = kroot(A.x()[0], k2, ctx, "delta_Y");
    FieldElement alpha_y = f_solve_alpha(delta_y, k2, delta_y.one_like(), ctx, "alpha_Y");
    Vec3 b_y = b5.is_zero()
                   ? Vec3(zero, A.y()[2], b6 * alpha_y.pow(k2) - A.y()[1])
                   : Vec3(zero, A.y()[2], -A.y()[1]);
    FieldElement r_zeta = b5.is_zero() ? A.zeta() - b8 * A.x()[0] - b6 * A.y()[2]
                                       : A.zeta() - b8 * A.x()[0];
    FieldElement head = A.eta() - b1 * alpha_y.pow(k2);
    FieldElement t = choose_scalar(
        A.eta(), [&](const FieldElement& c) { return a8 * (head - c) != a1 * r_zeta; }, ctx,
        "tau");
    return Octonion(alpha_y, b_y, Vec3(t, zero, zero), delta_y);
}

// Case 4: A1 = (a, kappa e1; 0, a) invertible, A2 = diag(b1, b8) with
// b1 b8 = 0 (the invertible-diagonal case swaps roles instead).
Octonion y_case4(const Octonion& A, const Octonion& A1, const Octonion& A2, i64 k2, Ctx& ctx) {
    const FieldElement a = A1.eta(), kappa = A1.x()[0];
    const FieldElement b1 = A2.eta(), b8 = A2.zeta();
    const FieldElement zero = a.zero_like();
    const Vec3 z = Vec3::zero(zero);
    if (!b1.is_zero()) {
        FieldElement alpha_y = choose_scalar(
            A.eta(),
            [&](const FieldElement& c) {
                return !c.is_zero() &&
                       a * (A.eta() - b1 * c.pow(k2)) - kappa * A.y()[0] != a * A.zeta();
            },
            ctx, "alpha_Y");
        FieldElement f = alpha_y.pow(k2 - 1);
        Vec3 target_x = e1_of(a).scaled(kappa * A.zeta() / a);
        Vec3 b_y = (A.x() - target_x).scaled((b1 * f).inv());
        return Octonion(alpha_y, b_y, z, zero);
    }
    FieldElement delta_y = choose_scalar(
        A.eta(),
        [&](const FieldElement& c) {
            return !c.is_zero() && a * A.eta() != a * (A.zeta() - b8 * c.pow(k2));
        },
        ctx, "delta_Y");
    FieldElement f = delta_y.pow(k2 - 1);
    Vec3 c_y = (A.y() - e1_of(a).cross(A.x())).scaled((b8 * f).inv());
    return Octonion(zero, z, c_y, delta_y);
}

// Case 5: A1 = (a, kappa e1; 0, a) invertible, A2 in {(b1, b2 e1; 0, b1)
// with b2 != 0, (b1, e2; 0, b8)}.
Octonion y_case5_line(const Octonion& A, const Octonion& A1, const Octonion& A2, i64 k2,
                      Ctx& ctx) {
    const FieldElement a = A1.eta(), kappa = A1.x()[0];
    const FieldElement b1 = A2.eta(), b2 = A2.x()[0];
    const FieldElement zero = a.zero_like();
    if (!b1.is_zero()) {
        FieldElement alpha_y = choose_scalar(
            A.eta(),
            [&](const FieldElement& c) {
                return !c.is_zero() &&
                       a * (A.eta() - b1 * c.pow(k2)) - kappa * A.y()[0] != a * A.zeta();
            },
            ctx, "alpha_Y");
        FieldElement f = alpha_y.pow(k2 - 1);
        Vec3 target_x = e1_of(a).scaled(kappa * A.zeta() / a);
        Vec3 b_y = (A.x() - target_x).scaled((b1 * f).inv());
        return Octonion(alpha_y, b_y, Vec3::zero(zero), zero);
    }
    // A2 = b2 (0, e1; 0, 0)
    FieldElement d_target = A.y()[0].is_zero()
                                ? A.x()[0] / b2
                                : (A.x()[0] - kappa * A.zeta() / a) / b2;
    FieldElement delta_y = kroot(d_target, k2, ctx, "delta_Y");
    FieldElement alpha_y = f_solve_alpha(delta_y, k2, delta_y.one_like(), ctx, "alpha_Y");
    Vec3 b_y(zero, A.y()[2] / b2, -(A.y()[1] / b2));
    FieldElement t = choose_scalar(
        A.eta(),
        [&](const FieldElement& c) {
            return a * (A.eta() - b2 * c) - kappa * A.y()[0] != a * A.zeta();
        },
        ctx, "tau");
    return Octonion(alpha_y, b_y, Vec3(t, zero, zero), delta_y);
}

Octonion y_case5_e2(const Octonion& A, const Octonion& A1, const Octonion& A2, i64 k2, Ctx& ctx) {
    const FieldElement a = A1.eta();
    const FieldElement b1 = A2.eta(), b8 = A2.zeta();
    const FieldElement zero = a.zero_like();
    FieldElement delta_y = kroot(A.x()[1], k2, ctx, "delta_Y");
    FieldElement alpha_y = f_solve_alpha(delta_y, k2, delta_y.one_like(), ctx, "alpha_Y");
    Vec3 b_y(-A.y()[2], zero, A.y()[0]);
    FieldElement r_zeta = A.zeta() - b8 * A.x()[1];
    FieldElement head = A.eta() - b1 * alpha_y.pow(k2);
    FieldElement s = choose_scalar(
        A.eta(), [&](const FieldElement& c) { return a * (head - c) != a * r_zeta; }, ctx, "tau");
    return Octonion(alpha_y, b_y, Vec3(zero, s, zero), delta_y);
}

// Case 6: A1 = (a, kappa e1; 0, a) invertible, A2 = (b1, 0; (b5, b6, 0), b8)
// with b5 != 0, b6 = 0 or b6 != 0, b5 = 0.
Octonion y_case6_b5(const Octonion& A, const Octonion& A1, const Octonion& A2, i64 k2, Ctx& ctx) {
    const FieldElement a = A1.eta();
    const FieldElement b1 = A2.eta(), b5 = A2.y()[0], b8 = A2.zeta();
    const FieldElement zero = a.zero_like();
    FieldElement alpha_y = kroot(A.y()[0] / b5, k2, ctx, "alpha_Y");
    FieldElement delta_y = f_solve_delta(alpha_y, k2, alpha_y.one_like(), ctx, "delta_Y");
    Vec3 c_y(zero, -(A.x()[2] / b5), A.x()[1] / b5);
    FieldElement head = A.eta() - b1 * alpha_y.pow(k2);
    FieldElement tail = A.zeta() - b8 * delta_y.pow(k2);
    FieldElement t = choose_scalar(
        A.eta(), [&](const FieldElement& c) { return a * head != a * (tail - b5 * c); }, ctx,
        "tau");
    return Octonion(alpha_y, Vec3(t, zero, zero), c_y, delta_y);
}

Octonion y_case6_b6(const Octonion& A, const Octonion& A1, const Octonion& A2, i64 k2, Ctx& ctx) {
    const FieldElement a = A1.eta(), kappa = A1.x()[0];
    const FieldElement b1 = A2.eta(), b6 = A2.y()[1], b8 = A2.zeta();
    const FieldElement zero = a.zero_like();
    FieldElement alpha_y = kroot(A.y()[1] / b6, k2, ctx, "alpha_Y");
    FieldElement delta_y = f_solve_delta(alpha_y, k2, alpha_y.one_like(), ctx, "delta_Y");
    FieldElement D = delta_y.pow(k2);
    FieldElement p = A.x()[2] / b6;
    FieldElement yhat1 = A.y()[0] - b8 * p;
    FieldElement head = A.eta() - b1 * alpha_y.pow(k2);
    FieldElement s = choose_scalar(
        A.eta(),
        [&](const FieldElement& c) {
            return a * head - kappa * yhat1 != a * (A.zeta() - b8 * D - b6 * c);
        },
        ctx, "tau1");
    FieldElement r_zeta = A.zeta() - b8 * D - b6 * s;
    FieldElement q = (kappa * r_zeta - a * A.x()[0]) / (a * b6);
    ctx.tr("tau2", q);
    return Octonion(alpha_y, Vec3(zero, s, zero), Vec3(p, zero, q), delta_y);
}

// ---------------------------------------------------------------------------
// Swapped-order builders: the second coefficient of the catalog pair is
// invertible, the first is a singular diagonal or the nilpotent (0,e1;0,0).
// Here B1 is the invertible element that will absorb the conjugate
// reduction; W multiplies the singular B2.
// ---------------------------------------------------------------------------

// B2 = diag(a1, 0): R = (h, xv; A.y, A.zeta).
Octonion w_diag_upper(const Octonion& A, const FieldElement& a1, i64 l2, const FieldElement& h,
                      const Vec3& xv, Ctx& ctx) {
    FieldElement alpha_w = kroot((A.eta() - h) / a1, l2, ctx, "alpha_Y");
    FieldElement delta_w = f_solve_delta(alpha_w, l2, alpha_w.one_like(), ctx, "delta_Y");
    Vec3 b_w = (A.x() - xv).scaled(a1.inv());
    return Octonion(alpha_w, b_w, Vec3::zero(a1.zero_like()), delta_w);
}

// B2 = diag(0, a8): R = (A.eta, A.x; yv, z).
Octonion w_diag_lower(const Octonion& A, const FieldElement& a8, i64 l2, const FieldElement& z,
                      const Vec3& yv, Ctx& ctx) {
    FieldElement delta_w = kroot((A.zeta() - z) / a8, l2, ctx, "delta_Y");
    FieldElement alpha_w = f_solve_alpha(delta_w, l2, delta_w.one_like(), ctx, "alpha_Y");
    Vec3 c_w = (A.y() - yv).scaled(a8.inv());
    return Octonion(alpha_w, Vec3::zero(a8.zero_like()), c_w, delta_w);
}

// B2 = (0, e1; 0, 0): R = (h, (xi, A.x2, A.x3); (A.y1, y2, y3), A.zeta).
Octonion w_nilpotent(const Octonion& A, i64 l2, const FieldElement& h, const FieldElement& xi,
                     const FieldElement& y2, const FieldElement& y3, Ctx& ctx) {
    const FieldElement zero = h.zero_like();
    FieldElement delta_w = kroot(A.x()[0] - xi, l2, ctx, "delta_Y");
    FieldElement alpha_w = f_solve_alpha(delta_w, l2, delta_w.one_like(), ctx, "alpha_Y");
    Vec3 b_w(zero, A.y()[2] - y3, -(A.y()[1] - y2));
    Vec3 c_w(A.eta() - h, zero, zero);
    return Octonion(alpha_w, b_w, c_w, delta_w);
}

// B1 = (b1, e1; 0, b8), b1 b8 != 0; B2 a singular diagonal.
Octonion w_fk(const Octonion& A, const Octonion& B1, const Octonion& B2, i64 l2, Ctx& ctx) {
    const FieldElement b1 = B1.eta(), b8 = B1.zeta();
    const FieldElement zero = b1.zero_like();
    if (!B2.eta().is_zero()) {
        // C2: b8 <x, A.y> = A.zeta A.y1
        Vec3 xv = Vec3::zero(zero);
        for (int i = 0; i < 3; ++i) {
            if (!A.y()[i].is_zero()) {
                xv[i] = A.zeta() * A.y()[0] / (b8 * A.y()[i]);
                break;
            }
        }
        FieldElement h = choose_scalar(
            A.eta(),
            [&](const FieldElement& c) { return b8 * c - A.y()[0] != b1 * A.zeta(); }, ctx,
            "alpha_Y");
        return w_diag_upper(A, B2.eta(), l2, h, xv, ctx);
    }
    FieldElement z = choose_scalar(
        A.eta(), [&](const FieldElement& c) { return b8 * A.eta() != b1 * c; }, ctx, "delta_Y");
    return w_diag_lower(A, B2.zeta(), l2, z, Vec3::zero(zero), ctx);
}

// B1 = (b1, e1; (b5, 0, 0), b8) with b5 != 0, N(B1) = b1 b8 - b5 != 0.
Octonion w_fn(const Octonion& A, const Octonion& B1, const Octonion& B2, i64 l2, Ctx& ctx) {
    const FieldElement b1 = B1.eta(), b5 = B1.y()[0], b8 = B1.zeta();
    const FieldElement zero = b1.zero_like();
    if (!B2.eta().is_zero()) {
        FieldElement h = b1 * A.y()[0] / b5;
        FieldElement x1 = choose_scalar(
            A.eta(),
            [&](const FieldElement& c) {
                return b8 * h - A.y()[0] != b1 * A.zeta() - b5 * c;
            },
            ctx, "tau");
        return w_diag_upper(A, B2.eta(), l2, h, Vec3(x1, zero, zero), ctx);
    }
    if (!b1.is_zero()) {
        FieldElement y1 = b5 * A.eta() / b1;
        ctx.tr("c_Y1", y1);
        FieldElement z = choose_scalar(
            A.eta(),
            [&](const FieldElement& c) {
                return b8 * A.eta() - y1 != b1 * c - b5 * A.x()[0];
            },
            ctx, "delta_Y");
        return w_diag_lower(A, B2.zeta(), l2, z, Vec3(y1, zero, zero), ctx);
    }
    FieldElement z = b8 * A.x()[0];
    ctx.tr("delta'", z);
    FieldElement y1 = choose_scalar(
        A.eta(),
        [&](const FieldElement& c) { return b8 * A.eta() - c != -(b5 * A.x()[0]); }, ctx,
        "c_Y1");
    return w_diag_lower(A, B2.zeta(), l2, z, Vec3(y1, zero, zero), ctx);
}

// B1 = (b1, e1; (0, 1, 0), b8), N(B1) = b1 b8 != 0.
Octonion w_fp(const Octonion& A, const Octonion& B1, const Octonion& B2, i64 l2, Ctx& ctx) {
    const FieldElement b1 = B1.eta(), b8 = B1.zeta();
    const FieldElement zero = b1.zero_like();
    if (!B2.eta().is_zero()) {
        if ((A.zeta() * A.y()[0]).is_zero()) {
            FieldElement h = choose_scalar(
                A.eta(),
                [&](const FieldElement& c) { return b8 * c - A.y()[0] != b1 * A.zeta(); }, ctx,
                "alpha_Y");
            return w_diag_upper(A, B2.eta(), l2, h, Vec3::zero(zero), ctx);
        }
        FieldElement x2;
        FieldElement h = choose_scalar(
            A.eta(),
            [&](const FieldElement& c) {
                FieldElement K = b1 * b8 * A.y()[1] - b8 * c + A.y()[0];
                if (K.is_zero()) return false;
                FieldElement cand_x2 = b1 * A.zeta() * A.y()[0] / K;
                return b8 * c - A.y()[0] != b1 * A.zeta() - cand_x2;
            },
            ctx, "alpha_Y");
        FieldElement K = b1 * b8 * A.y()[1] - b8 * h + A.y()[0];
        x2 = b1 * A.zeta() * A.y()[0] / K;
        ctx.tr("b_Y2", x2);
        return w_diag_upper(A, B2.eta(), l2, h, Vec3(zero, x2, zero), ctx);
    }
    if ((A.eta() * A.x()[1]).is_zero()) {
        FieldElement z = choose_scalar(
            A.eta(),
            [&](const FieldElement& c) { return b8 * A.eta() != b1 * c - A.x()[1]; }, ctx,
            "delta_Y");
        return w_diag_lower(A, B2.zeta(), l2, z, Vec3::zero(zero), ctx);
    }
    FieldElement z = choose_scalar(
        A.eta(),
        [&](const FieldElement& c) {
            FieldElement K = b1 * b8 * A.x()[0] - b1 * c + A.x()[1];
            if (K.is_zero()) return false;
            FieldElement cand_y1 = b8 * A.eta() * A.x()[1] / K;
            return b8 * A.eta() - cand_y1 != b1 * c - A.x()[1];
        },
        ctx, "delta_Y");
    FieldElement K = b1 * b8 * A.x()[0] - b1 * z + A.x()[1];
    FieldElement y1 = b8 * A.eta() * A.x()[1] / K;
    ctx.tr("c_Y1", y1);
    return w_diag_lower(A, B2.zeta(), l2, z, Vec3(y1, zero, zero), ctx);
}

// B1 = (b1, 0; (b5, 0, 0), b8) with b1 b8 != 0, b5 != 0; B2 = (0, e1; 0, 0).
Octonion w_k1lt(const Octonion& A, const Octonion& B1, i64 l2, Ctx& ctx) {
    const FieldElement b1 = B1.eta(), b8 = B1.zeta();
    const FieldElement zero = b1.zero_like();
    FieldElement h = choose_scalar(
        A.eta(), [&](const FieldElement& c) { return b8 * c != b1 * A.zeta(); }, ctx, "tau");
    return w_nilpotent(A, l2, h, zero, zero, zero, ctx);
}

// B1 = (b1, b2 e1; 0, b1) with b1 != 0, b2 != 0; B2 = (0, e1; 0, 0).
Octonion w_k1l1(const Octonion& A, const Octonion& B1, i64 l2, Ctx& ctx) {
    const FieldElement b1 = B1.eta(), b2 = B1.x()[0];
    const FieldElement zero = b1.zero_like();
    FieldElement xi = A.y()[0].is_zero() ? zero : b2 * A.zeta() / b1;
    ctx.tr("b_Y1", xi);
    FieldElement h = choose_scalar(
        A.eta(),
        [&](const FieldElement& c) { return b1 * c - b2 * A.y()[0] != b1 * A.zeta(); }, ctx,
        "tau");
    return w_nilpotent(A, l2, h, xi, zero, zero, ctx);
}

// B1 = (b1, e2; 0, b8) with b1 b8 != 0; B2 = (0, e1; 0, 0).
Octonion w_k1m(const Octonion& A, const Octonion& B1, i64 l2, Ctx& ctx) {
    const FieldElement b1 = B1.eta(), b8 = B1.zeta();
    const FieldElement zero = b1.zero_like();
    FieldElement h = choose_scalar(
        A.eta(), [&](const FieldElement& c) { return b8 * c != b1 * A.zeta(); }, ctx, "tau");
    return w_nilpotent(A, l2, h, zero, zero, zero, ctx);
}

// B1 = (b1, 0; (0, 1, 0), b1) with b1 != 0; B2 = (0, e1; 0, 0).
Octonion w_k1m1t(const Octonion& A, const Octonion& B1, i64 l2, Ctx& ctx) {
    const FieldElement b1 = B1.eta();
    const FieldElement zero = b1.zero_like();
    FieldElement h = choose_scalar(
        A.eta(), [&](const FieldElement& c) { return b1 * c != b1 * A.zeta() - A.x()[1]; }, ctx,
        "tau");
    FieldElement y2 = h / b1;
    ctx.tr("c_Y2", y2);
    return w_nilpotent(A, l2, h, zero, y2, zero, ctx);
}

// ---------------------------------------------------------------------------
// Shape tests used by the dispatcher.
// ---------------------------------------------------------------------------

bool shape_diag(const Octonion& A) { return A.x().is_zero() && A.y().is_zero(); }

// (c, kappa e1; 0, c), kappa != 0
bool shape_k1gen(const Octonion& A) {
    return A.y().is_zero() && !A.x()[0].is_zero() && A.x()[1].is_zero() && A.x()[2].is_zero() &&
           A.eta() == A.zeta();
}

bool shape_upper_e1(const Octonion& A) {  // (b1, kappa e1; 0, b8)
    return A.y().is_zero() && !A.x()[0].is_zero() && A.x()[1].is_zero() && A.x()[2].is_zero();
}

bool shape_e2_upper(const Octonion& A) {  // (b1, e2; 0, b8)
    return A.y().is_zero() && A.x()[0].is_zero() && A.x()[1].is_one() && A.x()[2].is_zero();
}

bool shape_lower_e1(const Octonion& A) {  // (b1, 0; (b5,0,0), b8), b5 != 0
    return A.x().is_zero() && !A.y()[0].is_zero() && A.y()[1].is_zero() && A.y()[2].is_zero();
}

bool shape_lower_e2(const Octonion& A) {  // (b1, 0; e2, b8)
    return A.x().is_zero() && A.y()[0].is_zero() && A.y()[1].is_one() && A.y()[2].is_zero();
}

bool shape_fn_like(const Octonion& A) {  // (b1, e1; (b5,0,0), b8), b5 != 0
    return A.x()[0].is_one() && A.x()[1].is_zero() && A.x()[2].is_zero() &&
           !A.y()[0].is_zero() && A.y()[1].is_zero() && A.y()[2].is_zero();
}

bool shape_fp_like(const Octonion& A) {  // (b1, e1; (0,b6,0), b8), b6 != 0
    return A.x()[0].is_one() && A.x()[1].is_zero() && A.x()[2].is_zero() &&
           A.y()[0].is_zero() && !A.y()[1].is_zero() && A.y()[2].is_zero();
}

bool is_nilpotent_e1(const Octonion& A) {  // (0, e1; 0, 0)
    return A.eta().is_zero() && A.zeta().is_zero() && A.y().is_zero() && A.x()[0].is_one() &&
           A.x()[1].is_zero() && A.x()[2].is_zero();
}

SolveCertificate finish(const ProblemInstance& inst, Octonion X, Octonion Y,
                        std::vector<TraceEntry> trace) {
    SolveCertificate cert;
    cert.X = std::move(X);
    cert.Y = std::move(Y);
    cert.trace = std::move(trace);
    Octonion lhs = inst.A1 * cert.X.pow_ch(inst.k1) + inst.A2 * cert.Y.pow_ch(inst.k2);
    cert.verified = (lhs == inst.target);
    if (!cert.verified) throw Error("internal: certificate failed substitution check");
    int m = std::max(max_level(cert.X), max_level(cert.Y));
    for (const auto& e : cert.trace) m = std::max(m, e.value.degree());
    cert.max_tower_degree = m;
    return cert;
}

SolveCertificate swap_cert(SolveCertificate cert) {
    std::swap(cert.X, cert.Y);
    return cert;
}

ProblemInstance swapped_instance(const ProblemInstance& inst) {
    return ProblemInstance{inst.A2, inst.A1, inst.k2, inst.k1, inst.target};
}

// Raised when a pair fits none of the coefficient-shape configurations in
// its given orientation; the caller may retry with the swapped pair.
struct NoShapeMatch : PreconditionViolated {
    NoShapeMatch() : PreconditionViolated("coefficient pair matches no invertible-case shape") {}
};

// Pre: N(A1) != 0 and the pair in its given order is one of the shape
// configurations reachable from the catalog (directly or through the swap).
SolveCertificate solve_invertible_shaped(const ProblemInstance& inst, const SolveOptions& opt) {
    std::vector<TraceEntry> trace;
    Ctx ctx{opt, &trace};
    const Octonion& A1 = inst.A1;
    const Octonion& A2 = inst.A2;
    const Octonion& A = inst.target;

    // Pick Y against A2 (invertible or singular), then absorb the residual
    // through the conjugate reduction against the invertible A1.
    auto via = [&](Octonion Y) {
        Octonion R = A - A2 * Y.pow_ch(inst.k2);
        Octonion X = conj_reduce_X(R, A1, inst.k1, ctx);
        return finish(inst, std::move(X), std::move(Y), std::move(trace));
    };

    if (shape_diag(A1)) {
        if (shape_diag(A2)) return via(y_case1(A, A1, A2, inst.k2, ctx));
        if (shape_upper_e1(A2) && A2.x()[0].is_one())
            return via(y_case2(A, A1, A2, inst.k2, ctx));
        if (shape_fn_like(A2) || shape_fp_like(A2))
            return via(y_case3(A, A1, A2, inst.k2, ctx));
        throw NoShapeMatch();
    }
    if (shape_k1gen(A1)) {
        if (shape_diag(A2)) {
            if (!A2.eta().is_zero() && !A2.zeta().is_zero())
                return swap_cert(solve_invertible_shaped(swapped_instance(inst), opt));
            return via(y_case4(A, A1, A2, inst.k2, ctx));
        }
        if (shape_upper_e1(A2)) {
            if (A2.eta() == A2.zeta()) return via(y_case5_line(A, A1, A2, inst.k2, ctx));
            // distinct diagonal with e1 slot: only reachable invertibly, swap
            return swap_cert(solve_invertible_shaped(swapped_instance(inst), opt));
        }
        if (shape_e2_upper(A2)) return via(y_case5_e2(A, A1, A2, inst.k2, ctx));
        if (shape_lower_e1(A2)) return via(y_case6_b5(A, A1, A2, inst.k2, ctx));
        if (shape_lower_e2(A2)) return via(y_case6_b6(A, A1, A2, inst.k2, ctx));
        throw NoShapeMatch();
    }
    // Swapped-order configurations: invertible non-diagonal, non-k1 first,
    // with a singular partner. An invertible diagonal partner reads better
    // the other way around, through the direct pipeline.
    const bool diag_partner_singular =
        shape_diag(A2) && (A2.eta().is_zero() || A2.zeta().is_zero());
    if (shape_upper_e1(A1) && A1.x()[0].is_one() && shape_diag(A2)) {
        if (!diag_partner_singular) throw NoShapeMatch();
        return via(w_fk(A, A1, A2, inst.k2, ctx));
    }
    if (shape_fn_like(A1) && shape_diag(A2)) {
        if (!diag_partner_singular) throw NoShapeMatch();
        return via(w_fn(A, A1, A2, inst.k2, ctx));
    }
    if (shape_fp_like(A1) && A1.y()[1].is_one() && shape_diag(A2)) {
        if (!diag_partner_singular) throw NoShapeMatch();
        return via(w_fp(A, A1, A2, inst.k2, ctx));
    }
    if (shape_upper_e1(A1) && is_nilpotent_e1(A2))
        return via(w_k1l1(A, A1, inst.k2, ctx));
    if (shape_lower_e1(A1) && is_nilpotent_e1(A2)) return via(w_k1lt(A, A1, inst.k2, ctx));
    if (shape_e2_upper(A1) && is_nilpotent_e1(A2)) return via(w_k1m(A, A1, inst.k2, ctx));
    if (shape_lower_e2(A1) && is_nilpotent_e1(A2)) return via(w_k1m1t(A, A1, inst.k2, ctx));
    throw NoShapeMatch();
}

}  // namespace

// ---------------------------------------------------------------------------
// Masks.
// ---------------------------------------------------------------------------

namespace {

Octonion slot_basis(const FieldElement& like, int i) {
    const FieldElement zero = like.zero_like(), one = like.one_like();
    FieldElement s[8] = {zero, zero, zero, zero, zero, zero, zero, zero};
    s[i] = one;
    return Octonion(s[0], Vec3(s[1], s[2], s[3]), Vec3(s[4], s[5], s[6]), s[7]);
}

}  // namespace

ObstructionMask compute_mask(const Octonion& A1, const Octonion& A2) {
    const FieldElement like = A1.eta().one_like();
    // rows[i]: the output slot i of A1 P + A2 Q as a linear form in the
    // sixteen input slots.
    std::array<std::array<FieldElement, 16>, 8> rows;
    for (int j = 0; j < 8; ++j) {
        Octonion B = slot_basis(like, j);
        Octonion C1 = A1 * B, C2 = A2 * B;
        for (int i = 0; i < 8; ++i) {
            rows[i][j] = C1.slot(i);
            rows[i][8 + j] = C2.slot(i);
        }
    }
    auto row_zero = [&](int i) {
        for (int j = 0; j < 16; ++j)
            if (!rows[i][j].is_zero()) return false;
        return true;
    };
    // slot i == lambda * slot a identically?
    auto proportional = [&](int i, int a, FieldElement* lambda) {
        int pivot = -1;
        for (int j = 0; j < 16; ++j)
            if (!rows[a][j].is_zero()) {
                pivot = j;
                break;
            }
        FieldElement lam = rows[i][pivot] / rows[a][pivot];
        for (int j = 0; j < 16; ++j)
            if (!(rows[i][j] == lam * rows[a][j])) return false;
        *lambda = lam;
        return true;
    };

    ObstructionMask mask;
    for (int i = 0; i < 8; ++i) {
        if (row_zero(i)) {
            mask.slots[i].kind = SlotKind::Zero;
            continue;
        }
        mask.slots[i].kind = SlotKind::Free;
        for (int a = 0; a < i; ++a) {
            if (mask.slots[a].kind != SlotKind::Free) continue;
            FieldElement lam;
            if (proportional(i, a, &lam)) {
                mask.slots[i].kind = SlotKind::Linked;
                mask.slots[i].anchor = a;
                mask.slots[i].coeff = lam;
                break;
            }
        }
    }
    return mask;
}

bool ObstructionMask::admits(const Octonion& A, std::vector<std::string>* violations) const {
    bool ok = true;
    for (int i = 0; i < 8; ++i) {
        const MaskSlot& s = slots[i];
        if (s.kind == SlotKind::Zero && !A.slot(i).is_zero()) {
            ok = false;
            if (violations)
                violations->push_back(std::string(kSlotNames[i]) + " must be zero");
        } else if (s.kind == SlotKind::Linked && !(A.slot(i) == s.coeff * A.slot(s.anchor))) {
            ok = false;
            if (violations)
                violations->push_back(std::string(kSlotNames[i]) + " must equal " +
                                      s.coeff.str() + "*" + kSlotNames[s.anchor]);
        }
    }
    return ok;
}

bool ObstructionMask::restricts() const {
    return std::any_of(slots.begin(), slots.end(),
                       [](const MaskSlot& s) { return s.kind != SlotKind::Free; });
}

std::array<std::string, 8> ObstructionMask::render() const {
    std::array<std::string, 8> out;
    for (int i = 0; i < 8; ++i) {
        switch (slots[i].kind) {
            case SlotKind::Free: out[i] = "free"; break;
            case SlotKind::Zero: out[i] = "zero"; break;
            case SlotKind::Linked:
                out[i] = "linked:" + slots[i].coeff.str() + "*" + kSlotNames[slots[i].anchor];
                break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Public last-mile solvers.
// ---------------------------------------------------------------------------

Octonion solve_upper_shape(const Octonion& A, const FieldElement& a1, i64 k,
                           const SolveOptions& opt, std::vector<TraceEntry>* trace) {
    if (!A.y().is_zero() || !A.zeta().is_zero())
        throw PreconditionViolated("upper-shape solver needs a zero bottom row");
    if (a1.is_zero()) throw PreconditionViolated("upper-shape solver needs a1 != 0");
    Ctx ctx{opt, trace};
    FieldElement alpha_x = kroot(A.eta() / a1, k, ctx, "alpha_X");
    FieldElement delta_x = f_solve_delta(alpha_x, k, a1.inv(), ctx, "delta_X");
    Octonion X(alpha_x, A.x(), Vec3::zero(a1.zero_like()), delta_x);
    return X;
}

Octonion solve_lower_shape(const Octonion& A, const FieldElement& a8, i64 k,
                           const SolveOptions& opt, std::vector<TraceEntry>* trace) {
    if (!A.x().is_zero() || !A.eta().is_zero())
        throw PreconditionViolated("lower-shape solver needs a zero top row");
    if (a8.is_zero()) throw PreconditionViolated("lower-shape solver needs a8 != 0");
    Ctx ctx{opt, trace};
    FieldElement delta_x = kroot(A.zeta() / a8, k, ctx, "delta_X");
    FieldElement alpha_x = f_solve_alpha(delta_x, k, a8.inv(), ctx, "alpha_X");
    Octonion X(alpha_x, Vec3::zero(a8.zero_like()), A.y(), delta_x);
    return X;
}

Octonion solve_e_shape(const Octonion& A, i64 k, const SolveOptions& opt,
                       std::vector<TraceEntry>* trace) {
    if (!A.x()[1].is_zero() || !A.x()[2].is_zero() || !A.y()[0].is_zero() ||
        !A.zeta().is_zero())
        throw PreconditionViolated("nilpotent-shape solver needs (a,(b1,0,0);(0,c2,c3),0)");
    Ctx ctx{opt, trace};
    const FieldElement zero = A.eta().zero_like();
    FieldElement delta_x = kroot(A.x()[0], k, ctx, "delta_X");
    FieldElement alpha_x = f_solve_alpha(delta_x, k, delta_x.one_like(), ctx, "alpha_X");
    Octonion X(alpha_x, Vec3(zero, A.y()[2], -A.y()[1]), Vec3(A.eta(), zero, zero), delta_x);
    return X;
}

// ---------------------------------------------------------------------------
// Public operations: scalar-power solver and the two reduction steps.
// ---------------------------------------------------------------------------

SolveCertificate solve_scalar_power(const Octonion& A, const FieldElement& alpha1, i64 k1,
                                    const SolveOptions& opt) {
    if (alpha1.is_zero()) throw PreconditionViolated("alpha1 must be nonzero");
    if (A.eta() == A.zeta())
        throw PreconditionViolated("scalar-power solver needs distinct diagonal entries");
    if (!A.x().dot(A.y()).is_zero())
        throw PreconditionViolated("scalar-power solver needs <b, c> = 0");
    SolveCertificate cert;
    Ctx ctx{opt, &cert.trace};
    cert.X = scaled_power_X(A, alpha1, k1, ctx);
    cert.Y = Octonion::zero(A.eta());
    cert.verified = (cert.X.pow_ch(k1).scaled(alpha1) == A);
    if (!cert.verified) throw Error("internal: scalar-power certificate failed");
    cert.max_tower_degree = max_level(cert.X);
    return cert;
}

std::pair<Octonion, Octonion> reduce_invertible_case(int case_no, const Octonion& A,
                                                     const Octonion& A1, const Octonion& A2,
                                                     i64 k2, const SolveOptions& opt) {
    std::vector<TraceEntry> trace;
    Ctx ctx{opt, &trace};
    Octonion Y = [&] {
        switch (case_no) {
            case 1: return y_case1(A, A1, A2, k2, ctx);
            case 2: return y_case2(A, A1, A2, k2, ctx);
            case 3: return y_case3(A, A1, A2, k2, ctx);
            case 4: return y_case4(A, A1, A2, k2, ctx);
            case 5:
                return shape_e2_upper(A2) ? y_case5_e2(A, A1, A2, k2, ctx)
                                          : y_case5_line(A, A1, A2, k2, ctx);
            case 6:
                return shape_lower_e1(A2) ? y_case6_b5(A, A1, A2, k2, ctx)
                                          : y_case6_b6(A, A1, A2, k2, ctx);
            default: throw PreconditionViolated("case number must be 1..6");
        }
    }();
    Octonion residual = A - A2 * Y.pow_ch(k2);
    return {Y, residual};
}

SolveCertificate apply_conjugate_reduction(const Octonion& residual, const Octonion& A1, i64 k1,
                                           const SolveOptions& opt) {
    SolveCertificate cert;
    Ctx ctx{opt, &cert.trace};
    cert.X = conj_reduce_X(residual, A1, k1, ctx);
    cert.Y = Octonion::zero(residual.eta());
    cert.verified = (A1 * cert.X.pow_ch(k1) == residual);
    if (!cert.verified) throw Error("internal: conjugate reduction failed");
    cert.max_tower_degree = max_level(cert.X);
    return cert;
}

// ---------------------------------------------------------------------------
// Singular-pair pipeline.
// ---------------------------------------------------------------------------

namespace {

// Obstructed-family analysis of a both-singular catalog pair, in the pair's
// given order. family == 0 means the pair is in the surjective part of the
// singular locus.
struct SingularRoute {
    enum class Kind {
        DDSplit,      // diag(a1,0) + diag(0,b8)
        DDSplitRev,   // diag(0,a8) + diag(b1,0)
        P44,          // diag(a1,0) + (0,e1;0,b8)
        P45,          // diag(0,a8) + (b1,e1;0,0)
        B5Upper,      // diag(a1,0) + singular FN shape
        B5Lower,      // diag(0,a8) + singular FN shape
        FPUpper,      // diag(a1,0) + (0,e1;e2,b8)
        FPLower,      // diag(0,a8) + (b1,e1;e2,0)
        P49,          // (0,e1;0,0) + (b1,0;(b5,0,0),b8)
        Fam,          // one of the eight non-surjective families
    } kind = Kind::Fam;
    int family = 0;
    bool swapped = false;  // interpret the pair in (A2, A1) order
};

SingularRoute resolve_singular(const OrbitRepresentative& rep) {
    SingularRoute r;
    using K = SingularRoute::Kind;
    auto z = [&](const char* n) { return rep.param(n).is_zero(); };
    switch (rep.family) {
        case Family::DD: {
            bool a_up = !z("a1");  // diag(a1, 0) vs diag(0, a8)
            bool b_up = !z("b1");
            if (a_up && !b_up) r.kind = K::DDSplit;
            else if (!a_up && b_up) r.kind = K::DDSplitRev;
            else if (a_up && b_up) r.kind = K::Fam, r.family = 1;
            else r.kind = K::Fam, r.family = 2;
            return r;
        }
        case Family::EK1:
        case Family::K1E:
            throw PreconditionViolated("scalar-unit coefficients are never singular");
        case Family::FK: {
            bool a_up = !z("a1");
            if (a_up) {
                if (!z("b8")) r.kind = K::P44;
                else r.kind = K::Fam, r.family = 3;
            } else {
                if (!z("b1")) r.kind = K::P45;
                else r.kind = K::Fam, r.family = 4;
            }
            return r;
        }
        case Family::FN:
            r.kind = z("a1") ? K::B5Lower : K::B5Upper;
            return r;
        case Family::FP: {
            bool a_up = !z("a1");
            if (a_up) {
                if (!z("b8")) r.kind = K::FPUpper;
                else r.kind = K::Fam, r.family = 3;
            } else {
                if (!z("b1")) r.kind = K::FPLower;
                else r.kind = K::Fam, r.family = 4;
            }
            return r;
        }
        case Family::K1F: {
            // (0,e1;0,0) with a singular diagonal: family 3 or 4 in the
            // swapped order.
            r.kind = K::Fam;
            r.swapped = true;
            r.family = z("b1") ? 4 : 3;
            return r;
        }
        case Family::K1L1:
            r.kind = K::Fam;
            r.family = 5;
            return r;
        case Family::K1LT:
            r.kind = K::P49;
            return r;
        case Family::K1M:
            r.kind = K::Fam;
            r.family = z("b1") ? (z("b8") ? 6 : 7) : 6;
            return r;
        default:  // K1M1T
            r.kind = K::Fam;
            r.family = 8;
            return r;
    }
}

// In-image certificate construction for the eight non-surjective families,
// with the pair already in family orientation. Pre: mask admits the target.
std::pair<Octonion, Octonion> solve_family_in_image(int family, const ProblemInstance& inst,
                                                    Ctx& ctx) {
    const Octonion& A = inst.target;
    const Octonion& A1 = inst.A1;
    const Octonion& A2 = inst.A2;
    const FieldElement zero = A.eta().zero_like();
    const FieldElement one = A.eta().one_like();
    const Vec3 z3 = Vec3::zero(zero);
    const Octonion Yzero = Octonion::zero(zero);
    switch (family) {
        case 1: {
            Octonion top(A.eta(), A.x(), z3, zero);
            return {solve_upper_shape(top, A1.eta(), inst.k1, ctx.opt, ctx.trace), Yzero};
        }
        case 2: {
            Octonion bot(zero, z3, A.y(), A.zeta());
            return {solve_lower_shape(bot, A1.zeta(), inst.k1, ctx.opt, ctx.trace), Yzero};
        }
        case 3: {
            const FieldElement b6 = A2.y()[1];
            Vec3 b_y(zero, A.y()[2], b6 - A.y()[1]);
            Octonion Y(one, b_y, z3, zero);
            Octonion R = A - A2 * Y.pow_ch(inst.k2);
            return {solve_upper_shape(R, A1.eta(), inst.k1, ctx.opt, ctx.trace), Y};
        }
        case 4: {
            FieldElement delta_y = kroot(A.x()[0], inst.k2, ctx, "delta_Y");
            FieldElement alpha_y =
                f_solve_alpha(delta_y, inst.k2, one, ctx, "alpha_Y");
            Octonion Y(alpha_y, z3, Vec3(A.eta(), zero, zero), delta_y);
            Octonion R = A - A2 * Y.pow_ch(inst.k2);
            return {solve_lower_shape(R, A1.zeta(), inst.k1, ctx.opt, ctx.trace), Y};
        }
        case 5:
            return {solve_e_shape(A, inst.k1, ctx.opt, ctx.trace), Yzero};
        case 6: {
            const FieldElement b1 = A2.eta();
            Octonion Y = Yzero;
            if (!b1.is_zero()) {
                Y = Octonion(one, Vec3(zero, A.x()[1] / b1, A.y()[0]), z3, zero);
            } else {
                FieldElement delta_y = kroot(A.x()[1], inst.k2, ctx, "delta_Y");
                FieldElement alpha_y = f_solve_alpha(delta_y, inst.k2, one, ctx, "alpha_Y");
                Y = Octonion(alpha_y, Vec3(zero, zero, A.y()[0]), z3, delta_y);
            }
            Octonion R = A - A2 * Y.pow_ch(inst.k2);
            return {solve_e_shape(R, inst.k1, ctx.opt, ctx.trace), Y};
        }
        case 7: {
            const FieldElement b8 = A2.zeta();
            FieldElement delta_y = kroot(A.zeta() / b8, inst.k2, ctx, "delta_Y");
            FieldElement alpha_y = f_solve_alpha(delta_y, inst.k2, one, ctx, "alpha_Y");
            Octonion Y(alpha_y, z3, A.y().scaled(b8.inv()), delta_y);
            Octonion R = A - A2 * Y.pow_ch(inst.k2);
            return {solve_e_shape(R, inst.k1, ctx.opt, ctx.trace), Y};
        }
        default: {  // family 8
            Octonion Y(zero, Vec3(zero, A.zeta(), zero), Vec3(A.x()[2], zero, zero), one);
            Octonion R = A - A2 * Y.pow_ch(inst.k2);
            return {solve_e_shape(R, inst.k1, ctx.opt, ctx.trace), Y};
        }
    }
}

}  // namespace

SolveResult solve_noninvertible(const ProblemInstance& inst, const SolveOptions& opt) {
    if (!inst.A1.norm().is_zero() || !inst.A2.norm().is_zero())
        throw PreconditionViolated("singular pipeline needs both coefficients singular");

    bool order_swapped = false;
    auto rep = match_representative(inst.A1, inst.A2);
    if (!rep) {
        rep = match_representative(inst.A2, inst.A1);
        order_swapped = true;
    }
    if (!rep) throw NotARepresentative("pair matches no catalog family");

    ProblemInstance work = order_swapped ? swapped_instance(inst) : inst;
    SingularRoute route = resolve_singular(*rep);
    if (route.swapped) {
        work = swapped_instance(work);
        order_swapped = !order_swapped;
    }

    std::vector<TraceEntry> trace;
    Ctx ctx{opt, &trace};
    const Octonion& A = work.target;
    const FieldElement zero = A.eta().zero_like();
    const FieldElement one = A.eta().one_like();
    const Vec3 z3 = Vec3::zero(zero);

    auto done = [&](Octonion X, Octonion Y) {
        SolveCertificate cert = finish(work, std::move(X), std::move(Y), std::move(trace));
        return SolveResult{order_swapped ? swap_cert(std::move(cert)) : std::move(cert)};
    };

    using K = SingularRoute::Kind;
    switch (route.kind) {
        case K::DDSplit: {
            Octonion top(A.eta(), A.x(), z3, zero), bot(zero, z3, A.y(), A.zeta());
            return done(solve_upper_shape(top, work.A1.eta(), work.k1, opt, &trace),
                        solve_lower_shape(bot, work.A2.zeta(), work.k2, opt, &trace));
        }
        case K::DDSplitRev: {
            Octonion top(A.eta(), A.x(), z3, zero), bot(zero, z3, A.y(), A.zeta());
            return done(solve_lower_shape(bot, work.A1.zeta(), work.k1, opt, &trace),
                        solve_upper_shape(top, work.A2.eta(), work.k2, opt, &trace));
        }
        case K::P44: {
            const FieldElement b8 = work.A2.zeta();
            FieldElement delta_y = kroot(A.zeta() / b8, work.k2, ctx, "delta_Y");
            FieldElement alpha_y = f_solve_alpha(delta_y, work.k2, one, ctx, "alpha_Y");
            Octonion Y(alpha_y, z3, A.y().scaled(b8.inv()), delta_y);
            Octonion R = A - work.A2 * Y.pow_ch(work.k2);
            return done(solve_upper_shape(R, work.A1.eta(), work.k1, opt, &trace), Y);
        }
        case K::P45: {
            const FieldElement b1 = work.A2.eta();
            FieldElement alpha_y = kroot(A.eta() / b1, work.k2, ctx, "alpha_Y");
            FieldElement delta_y = f_solve_delta(alpha_y, work.k2, one, ctx, "delta_Y");
            Vec3 b_y = (A.x() - e1_of(one).scaled(delta_y.pow(work.k2))).scaled(b1.inv());
            Octonion Y(alpha_y, b_y, z3, delta_y);
            Octonion R = A - work.A2 * Y.pow_ch(work.k2);
            return done(solve_lower_shape(R, work.A1.zeta(), work.k1, opt, &trace), Y);
        }
        case K::B5Upper: {
            const FieldElement b5 = work.A2.y()[0], b8 = work.A2.zeta();
            FieldElement delta_y = kroot(A.zeta() / b8, work.k2, ctx, "delta_Y");
            FieldElement alpha_y = f_solve_alpha(delta_y, work.k2, one, ctx, "alpha_Y");
            Vec3 c_y = (A.y() - e1_of(one).scaled(b5 * alpha_y.pow(work.k2))).scaled(b8.inv());
            Octonion Y(alpha_y, z3, c_y, delta_y);
            Octonion R = A - work.A2 * Y.pow_ch(work.k2);
            return done(solve_upper_shape(R, work.A1.eta(), work.k1, opt, &trace), Y);
        }
        case K::B5Lower: {
            const FieldElement b1 = work.A2.eta();
            FieldElement alpha_y = kroot(A.eta() / b1, work.k2, ctx, "alpha_Y");
            FieldElement delta_y = f_solve_delta(alpha_y, work.k2, one, ctx, "delta_Y");
            Vec3 b_y = (A.x() - e1_of(one).scaled(delta_y.pow(work.k2))).scaled(b1.inv());
            Octonion Y(alpha_y, b_y, z3, delta_y);
            Octonion R = A - work.A2 * Y.pow_ch(work.k2);
            return done(solve_lower_shape(R, work.A1.zeta(), work.k1, opt, &trace), Y);
        }
        case K::FPUpper: {
            const FieldElement b8 = work.A2.zeta();
            FieldElement delta_y = kroot(A.zeta() / b8, work.k2, ctx, "delta_Y");
            FieldElement alpha_y = f_solve_alpha(delta_y, work.k2, one, ctx, "alpha_Y");
            Vec3 c_y = (A.y() - e2_of(one).scaled(alpha_y.pow(work.k2))).scaled(b8.inv());
            Octonion Y(alpha_y, z3, c_y, delta_y);
            Octonion R = A - work.A2 * Y.pow_ch(work.k2);
            return done(solve_upper_shape(R, work.A1.eta(), work.k1, opt, &trace), Y);
        }
        case K::FPLower: {
            const FieldElement b1 = work.A2.eta();
            FieldElement alpha_y = kroot(A.eta() / b1, work.k2, ctx, "alpha_Y");
            FieldElement delta_y = f_solve_delta(alpha_y, work.k2, one, ctx, "delta_Y");
            Vec3 b_y = (A.x() - e1_of(one).scaled(delta_y.pow(work.k2))).scaled(b1.inv());
            Octonion Y(alpha_y, b_y, z3, delta_y);
            Octonion R = A - work.A2 * Y.pow_ch(work.k2);
            return done(solve_lower_shape(R, work.A1.zeta(), work.k1, opt, &trace), Y);
        }
        case K::P49: {
            const FieldElement b1 = work.A2.eta(), b5 = work.A2.y()[0], b8 = work.A2.zeta();
            (void)b1;
            FieldElement alpha_y = kroot(A.y()[0] / b5, work.k2, ctx, "alpha_Y");
            FieldElement delta_y = f_solve_delta(alpha_y, work.k2, one, ctx, "delta_Y");
            Vec3 c_y(zero, -(A.x()[2] / b5), A.x()[1] / b5);
            FieldElement t = (A.zeta() - b8 * delta_y.pow(work.k2)) / b5;
            ctx.tr("tau", t);
            Octonion Y(alpha_y, Vec3(t, zero, zero), c_y, delta_y);
            Octonion R = A - work.A2 * Y.pow_ch(work.k2);
            return done(solve_e_shape(R, work.k1, opt, &trace), Y);
        }
        case K::Fam: {
            ObstructionMask mask = compute_mask(work.A1, work.A2);
            std::vector<std::string> violations;
            if (!mask.admits(A, &violations)) {
                ObstructionWitness w;
                w.family = route.family;
                w.mask = mask;
                w.violated = std::move(violations);
                return SolveResult{std::move(w)};
            }
            auto [X, Y] = solve_family_in_image(route.family, work, ctx);
            return done(std::move(X), std::move(Y));
        }
    }
    throw Error("internal: unreachable singular route");
}

SolveCertificate solve_invertible(const ProblemInstance& inst, const SolveOptions& opt) {
    const bool n1 = !inst.A1.norm().is_zero();
    const bool n2 = !inst.A2.norm().is_zero();
    if (!n1 && !n2)
        throw PreconditionViolated("invertible pipeline needs an invertible coefficient");
    if (n1) {
        try {
            return solve_invertible_shaped(inst, opt);
        } catch (const NoShapeMatch&) {
            // the pair may be presented in the reversed catalog orientation
            if (!n2) throw;
            return swap_cert(solve_invertible_shaped(swapped_instance(inst), opt));
        }
    }
    return swap_cert(solve_invertible(swapped_instance(inst), opt));
}

SolveResult solve(const ProblemInstance& inst, const SolveOptions& opt) {
    if (inst.k1 < 2 || inst.k2 < 2) throw PreconditionViolated("exponents must be at least 2");
    if (inst.A1.is_zero() || inst.A2.is_zero())
        throw PreconditionViolated("coefficients must be nonzero");
    if (!match_representative(inst.A1, inst.A2) && !match_representative(inst.A2, inst.A1))
        throw NotARepresentative("coefficient pair matches no catalog family");
    if (!inst.A1.norm().is_zero() || !inst.A2.norm().is_zero())
        return SolveResult{solve_invertible(inst, opt)};
    return solve_noninvertible(inst, opt);
}

Verdict classify(const Octonion& A1, const Octonion& A2) {
    bool order_swapped = false;
    auto rep = match_representative(A1, A2);
    if (!rep) {
        rep = match_representative(A2, A1);
        order_swapped = true;
    }
    if (!rep) throw NotARepresentative("pair matches no catalog family");

    Verdict v;
    if (!A1.norm().is_zero() || !A2.norm().is_zero()) {
        v.surjective = true;
        return v;
    }
    SingularRoute route = resolve_singular(*rep);
    if (route.kind != SingularRoute::Kind::Fam) {
        v.surjective = true;
        return v;
    }
    v.surjective = false;
    v.family = route.family;
    v.matched_swapped = order_swapped != route.swapped;
    v.mask = compute_mask(A1, A2);
    return v;
}

ProblemInstance ProblemInstance::from_rep(const OrbitRepresentative& rep, i64 k1, i64 k2,
                                          Octonion target) {
    auto [A1, A2] = rep.realize();
    return ProblemInstance{std::move(A1), std::move(A2), k1, k2, std::move(target)};
}

}  // namespace octo
