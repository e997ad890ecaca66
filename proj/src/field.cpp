#include "octo/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace octo {

namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using ModPoly = std::vector<i64>;  // dense, constant term first, coefficients in [0, p)

i64 mod_pos(i64 a, i64 p) {
    i64 r = a % p;
    return r < 0 ? r + p : r;
}

i64 mod_inv_int(i64 a, i64 p) {
    i64 t = 0, new_t = 1, r = p, new_r = mod_pos(a, p);
    while (new_r != 0) {
        i64 q = r / new_r;
        i64 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw DivisionByZero();
    return mod_pos(t, p);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

ModPoly poly_mul(const ModPoly& a, const ModPoly& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    trim(out);
    return out;
}

// Reduce f modulo the monic polynomial x^m + mod[m-1] x^{m-1} + ... + mod[0].
void poly_reduce(ModPoly& f, const std::vector<i64>& mod, i64 p) {
    const int m = static_cast<int>(mod.size());
    for (int i = deg(f); i >= m; --i) {
        i64 lead = f[i];
        if (lead == 0) continue;
        f[i] = 0;
        for (int j = 0; j < m; ++j) f[i - m + j] = mod_pos(f[i - m + j] - lead * mod[j], p);
    }
    trim(f);
}

ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const std::vector<i64>& mod, i64 p) {
    ModPoly out = poly_mul(a, b, p);
    poly_reduce(out, mod, p);
    return out;
}

ModPoly poly_powmod(ModPoly base, u64 e, const std::vector<i64>& mod, i64 p) {
    ModPoly result{1};
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return result;
}

// a mod b, in place on a; b nonzero
void poly_rem(ModPoly& a, const ModPoly& b, i64 p) {
    int db = deg(b);
    i64 lead_inv = mod_inv_int(b[db], p);
    while (deg(a) >= db) {
        i64 c = (a[deg(a)] * lead_inv) % p;
        int shift = deg(a) - db;
        for (int j = 0; j <= db; ++j) a[shift + j] = mod_pos(a[shift + j] - c * b[j], p);
        trim(a);
        if (a.empty()) break;
    }
}

ModPoly poly_gcd(ModPoly a, ModPoly b, i64 p) {
    while (!b.empty()) {
        poly_rem(a, b, p);
        std::swap(a, b);
    }
    return a;
}

// Inverse of a modulo monic f (extended Euclid over F_p[x]); a nonzero mod f.
ModPoly poly_invmod(ModPoly a, const std::vector<i64>& mod, i64 p) {
    ModPoly f(mod);
    f.push_back(1);
    ModPoly r0 = f, r1 = std::move(a);
    trim(r1);
    ModPoly s0{}, s1{1};
    while (!r1.empty()) {
        // quotient of r0 by r1
        ModPoly q;
        {
            ModPoly rem = r0;
            int d1 = deg(r1);
            i64 lead_inv = mod_inv_int(r1[d1], p);
            q.assign(std::max(0, deg(rem) - d1 + 1), 0);
            while (deg(rem) >= d1) {
                i64 c = (rem[deg(rem)] * lead_inv) % p;
                int shift = deg(rem) - d1;
                q[shift] = c;
                for (int j = 0; j <= d1; ++j)
                    rem[shift + j] = mod_pos(rem[shift + j] - c * r1[j], p);
                trim(rem);
                if (rem.empty()) break;
            }
            trim(q);
            r0 = std::move(rem);
        }
        std::swap(r0, r1);
        // s0, s1 = s1, s0 - q*s1
        ModPoly qs = poly_mul(q, s1, p);
        ModPoly s2(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < s2.size(); ++i) {
            i64 v = (i < s0.size() ? s0[i] : 0) - (i < qs.size() ? qs[i] : 0);
            s2[i] = mod_pos(v, p);
        }
        trim(s2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (deg(r0) != 0) throw DivisionByZero();
    i64 scale = mod_inv_int(r0[0], p);
    for (auto& c : s0) c = (c * scale) % p;
    poly_reduce(s0, mod, p);
    return s0;
}

bool has_root_in_prime_field(const std::vector<i64>& mod, i64 p) {
    const int m = static_cast<int>(mod.size());
    for (i64 a = 0; a < p; ++a) {
        i64 acc = 1;  // monic leading term
        for (int i = m - 1; i >= 0; --i) acc = (acc * a + mod[i]) % p;
        if (acc == 0) return true;
    }
    return false;
}

// Rabin irreducibility test for monic f of degree m (given by its m
// non-leading coefficients) over F_p.
bool is_irreducible(const std::vector<i64>& mod, i64 p) {
    const int m = static_cast<int>(mod.size());
    if (m == 1) return true;
    if (mod[0] == 0) return false;  // divisible by x
    if (p <= 64 && has_root_in_prime_field(mod, p)) return false;
    if (m == 2 || m == 3) return p > 64 ? !has_root_in_prime_field(mod, p) : true;

    ModPoly x{0, 1};
    std::vector<ModPoly> frob(m + 1);
    frob[1] = poly_powmod(x, static_cast<u64>(p), mod, p);
    for (int j = 2; j <= m; ++j) frob[j] = poly_powmod(frob[j - 1], static_cast<u64>(p), mod, p);
    if (frob[m] != x) return false;

    ModPoly f_full(mod);
    f_full.push_back(1);
    int mm = m;
    auto check_divisor = [&](int r) {
        ModPoly d = frob[m / r];
        if (d.size() < 2) d.resize(2, 0);
        d[1] = mod_pos(d[1] - 1, p);
        trim(d);
        if (d.empty()) return false;  // x^{p^{m/r}} == x: proper subfield splits f
        return deg(poly_gcd(f_full, d, p)) == 0;
    };
    for (int r = 2; r * r <= mm; ++r) {
        if (mm % r != 0) continue;
        while (mm % r == 0) mm /= r;
        if (!check_divisor(r)) return false;
    }
    if (mm > 1 && !check_divisor(mm)) return false;
    return true;
}

u64 checked_pow_u64(i64 p, int m) {
    u64 r = 1;
    for (int i = 0; i < m; ++i) {
        if (r > (~0ull) / static_cast<u64>(p)) throw CapExceeded("field size overflows uint64");
        r *= static_cast<u64>(p);
    }
    return r;
}

// Decode enumeration index into coefficients, constant term most significant.
void index_to_coeffs(u64 idx, i64 p, int m, i64* out) {
    for (int i = m - 1; i >= 0; --i) {
        out[i] = static_cast<i64>(idx % static_cast<u64>(p));
        idx /= static_cast<u64>(p);
    }
}

u64 coeffs_to_index(const i64* c, i64 p, int m) {
    u64 idx = 0;
    for (int i = 0; i < m; ++i) idx = idx * static_cast<u64>(p) + static_cast<u64>(c[i]);
    return idx;
}

std::mutex& levels_mutex() {
    static std::mutex mu;
    return mu;
}

std::map<std::pair<i64, int>, TowerLevel>& levels_map() {
    static std::map<std::pair<i64, int>, TowerLevel> m;
    return m;
}

const TowerLevel& build_tower_level(i64 p, int m) {
    if (!is_prime(p)) throw Error("characteristic must be prime, got " + std::to_string(p));
    if (m < 1 || m > kHardDegreeLimit)
        throw ClosureBoundExceeded("tower degree " + std::to_string(m) + " out of range");

    TowerLevel lvl;
    lvl.p = p;
    lvl.m = m;
    if (m > 1) {
        // Lex-smallest candidates have c_0 = 1 and sparse low-order digits;
        // the first irreducible shows up within a few hundred candidates.
        u64 block = 1;
        for (int i = 1; i < m; ++i) block *= static_cast<u64>(p);
        std::vector<i64> c(m);
        bool found = false;
        for (u64 idx = block; idx < block * static_cast<u64>(p); ++idx) {
            index_to_coeffs(idx, p, m, c.data());
            if (is_irreducible(c, p)) {
                lvl.modulus = c;
                found = true;
                break;
            }
        }
        if (!found) throw Error("no irreducible polynomial found (unreachable)");
    }
    std::lock_guard<std::mutex> lock(levels_mutex());
    return levels_map().emplace(std::make_pair(p, m), std::move(lvl)).first->second;
}

}  // namespace

const TowerLevel& tower_level(i64 p, int m) {
    // Map nodes are stable once inserted, so a thread-local memo of the last
    // few lookups is safe and keeps the hot path lock-free.
    struct Memo {
        i64 p = -1;
        int m = -1;
        const TowerLevel* lvl = nullptr;
    };
    static thread_local Memo memo[4];
    for (const auto& e : memo)
        if (e.p == p && e.m == m) return *e.lvl;

    const TowerLevel* found = nullptr;
    {
        std::lock_guard<std::mutex> lock(levels_mutex());
        auto it = levels_map().find(std::make_pair(p, m));
        if (it != levels_map().end()) found = &it->second;
    }
    if (!found) found = &build_tower_level(p, m);
    for (int i = 3; i > 0; --i) memo[i] = memo[i - 1];
    memo[0] = {p, m, found};
    return *found;
}

namespace {

// Arithmetic on raw coefficient vectors at a fixed level.
ModPoly raw_mul(const ModPoly& a, const ModPoly& b, const TowerLevel& lvl) {
    if (lvl.m == 1) return {(a[0] * b[0]) % lvl.p};
    ModPoly out = poly_mul(a, b, lvl.p);
    poly_reduce(out, lvl.modulus, lvl.p);
    out.resize(lvl.m, 0);
    return out;
}

ModPoly raw_pow(ModPoly base, u64 e, const TowerLevel& lvl) {
    ModPoly result(lvl.m, 0);
    result[0] = 1;
    while (e > 0) {
        if (e & 1) result = raw_mul(result, base, lvl);
        base = raw_mul(base, base, lvl);
        e >>= 1;
    }
    return result;
}


// Evaluate a polynomial with F_p coefficients at a point of F_{p^M} (Horner).
ModPoly raw_eval_fp_poly(const std::vector<i64>& coeffs_const_first, const ModPoly& point,
                         const TowerLevel& lvl) {
    ModPoly acc(lvl.m, 0);
    for (int i = static_cast<int>(coeffs_const_first.size()) - 1; i >= 0; --i) {
        acc = raw_mul(acc, point, lvl);
        acc.resize(lvl.m, 0);
        acc[0] = mod_pos(acc[0] + coeffs_const_first[i], lvl.p);
    }
    return acc;
}

using u128 = unsigned __int128;

u128 checked_pow_u128(i64 p, int m) {
    u128 r = 1;
    const u128 limit = (u128(1) << 126);
    for (int i = 0; i < m; ++i) {
        if (r > limit / static_cast<u128>(p))
            throw ClosureBoundExceeded("field size exceeds 126 bits");
        r *= static_cast<u128>(p);
    }
    return r;
}

// Canonical enumeration order: coefficient tuples compared constant term
// first. (The numeric index can overflow uint64 for deep towers, so compare
// coefficient vectors directly.)
bool canonical_less(const FieldElement& a, const FieldElement& b) {
    for (int i = 0; i < a.degree(); ++i) {
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    }
    return false;
}

}  // namespace

namespace {

// Dense polynomials with FieldElement coefficients at one tower level,
// constant term first. Used by the root machinery for fields too large to
// enumerate.
using FEPoly = std::vector<FieldElement>;

void fe_trim(FEPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int fe_deg(const FEPoly& f) { return static_cast<int>(f.size()) - 1; }

FEPoly fe_mul(const FEPoly& a, const FEPoly& b) {
    if (a.empty() || b.empty()) return {};
    FEPoly out(a.size() + b.size() - 1, a[0].zero_like());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    }
    fe_trim(out);
    return out;
}

// a mod b in place; b nonzero
void fe_rem(FEPoly& a, const FEPoly& b) {
    int db = fe_deg(b);
    FieldElement lead_inv = b[db].inv();
    while (fe_deg(a) >= db) {
        FieldElement c = a.back() * lead_inv;
        int shift = fe_deg(a) - db;
        for (int j = 0; j <= db; ++j) a[shift + j] = a[shift + j] - c * b[j];
        fe_trim(a);
        if (a.empty()) break;
    }
}

FEPoly fe_mulmod(const FEPoly& a, const FEPoly& b, const FEPoly& mod) {
    FEPoly out = fe_mul(a, b);
    fe_rem(out, mod);
    return out;
}

FEPoly fe_powmod(FEPoly base, u128 e, const FEPoly& mod) {
    fe_rem(base, mod);
    FEPoly result{mod[0].one_like()};
    while (e > 0) {
        if (e & 1) result = fe_mulmod(result, base, mod);
        base = fe_mulmod(base, base, mod);
        e >>= 1;
    }
    return result;
}

FEPoly fe_gcd(FEPoly a, FEPoly b) {
    while (!b.empty()) {
        fe_rem(a, b);
        std::swap(a, b);
    }
    if (!a.empty()) {
        FieldElement inv = a.back().inv();
        for (auto& c : a) c = c * inv;
    }
    return a;
}

FEPoly fe_divexact(const FEPoly& a, const FEPoly& b) {
    FEPoly rem = a, q(std::max<size_t>(1, a.size() - b.size() + 1), a[0].zero_like());
    int db = fe_deg(b);
    FieldElement lead_inv = b[db].inv();
    while (fe_deg(rem) >= db) {
        FieldElement c = rem.back() * lead_inv;
        int shift = fe_deg(rem) - db;
        q[shift] = c;
        for (int j = 0; j <= db; ++j) rem[shift + j] = rem[shift + j] - c * b[j];
        fe_trim(rem);
        if (rem.empty()) break;
    }
    fe_trim(q);
    return q;
}

FEPoly fe_sub_z(const FEPoly& a) {  // a(z) - z
    FEPoly out = a;
    if (out.size() < 2) out.resize(2, out.empty() ? FieldElement() : out[0].zero_like());
    out[1] = out[1] - out[1].one_like();
    fe_trim(out);
    return out;
}

// Deterministic split of a monic squarefree product of linear factors over
// F_{p^M}; appends every root. Shift candidates run through the canonical
// field enumeration, so the output set is reproducible.
void fe_split_roots(const FEPoly& g, i64 p, int M, std::vector<FieldElement>& out) {
    if (g.empty() || fe_deg(g) == 0) return;
    if (fe_deg(g) == 1) {
        out.push_back(-g[0]);
        return;
    }
    u128 q = checked_pow_u128(p, M);
    for (u64 shift_idx = 0;; ++shift_idx) {
        if (shift_idx > 1u << 20) throw Error("internal: root splitting failed to separate");
        FEPoly d;
        if (p == 2) {
            // trace map of theta * z: distinct roots are separated by some
            // multiplier because the trace form is nondegenerate
            FieldElement theta = FieldElement::from_index(p, M, shift_idx + 1);
            FEPoly base{theta.zero_like(), theta};
            fe_rem(base, g);
            FEPoly acc = base, term = base;
            for (int i = 1; i < M; ++i) {
                term = fe_mulmod(term, term, g);
                for (size_t j = 0; j < term.size(); ++j) {
                    if (j < acc.size()) acc[j] = acc[j] + term[j];
                    else acc.push_back(term[j]);
                }
                fe_trim(acc);
            }
            d = fe_gcd(g, acc);
        } else {
            FieldElement c = FieldElement::from_index(p, M, shift_idx);
            FEPoly base{-c, c.one_like()};  // z - c
            FEPoly w = fe_powmod(base, (q - 1) / 2, g);
            if (w.empty()) w.push_back(c.zero_like());
            w[0] = w[0] - c.one_like();
            fe_trim(w);
            d = fe_gcd(g, w);
        }
        if (fe_deg(d) > 0 && fe_deg(d) < fe_deg(g)) {
            fe_split_roots(d, p, M, out);
            fe_split_roots(fe_divexact(g, d), p, M, out);
            return;
        }
    }
}

// All roots of `coeffs` (any coefficient levels, same tower) in F_{p^M},
// sorted in canonical enumeration order.
std::vector<FieldElement> roots_at_level(const std::vector<FieldElement>& coeffs, i64 p, int M) {
    FEPoly g;
    g.reserve(coeffs.size());
    for (const auto& c : coeffs) g.push_back(c.lifted(M));
    fe_trim(g);
    if (fe_deg(g) < 1) return {};
    {
        FieldElement inv = g.back().inv();
        for (auto& c : g) c = c * inv;
    }
    u128 q = checked_pow_u128(p, M);
    // the linear-factor part: gcd(z^q - z, g), squarefree by construction
    FEPoly z{g[0].zero_like(), g[0].one_like()};
    FEPoly frob = fe_powmod(z, q, g);
    FEPoly lin = fe_gcd(g, fe_sub_z(frob));
    std::vector<FieldElement> roots;
    fe_split_roots(lin, p, M, roots);
    std::sort(roots.begin(), roots.end(), canonical_less);
    return roots;
}

// Embedded image of the canonical level-m generator inside F_{p^M}: the first
// root (canonical enumeration order) of the level-m modulus.
const ModPoly& embedding_image(i64 p, int m, int M) {
    static std::mutex mu;
    static std::map<std::tuple<i64, int, int>, ModPoly> images;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, m, M);
    auto it = images.find(key);
    if (it != images.end()) return it->second;

    const TowerLevel& small = tower_level(p, m);
    (void)tower_level(p, M);
    std::vector<FieldElement> f;
    f.reserve(m + 1);
    for (int i = 0; i < m; ++i) f.push_back(FieldElement::integer(p, small.modulus[i]).lifted(M));
    f.push_back(FieldElement::integer(p, 1).lifted(M));
    std::vector<FieldElement> roots = roots_at_level(f, p, M);
    if (roots.empty()) throw Error("minimal polynomial has no root in extension (unreachable)");
    ModPoly img(roots.front().coeffs().begin(), roots.front().coeffs().end());
    img.resize(M, 0);
    return images.emplace(key, std::move(img)).first->second;
}

}  // namespace

FieldElement::FieldElement() = default;

FieldElement FieldElement::finite(i64 p, int m, std::vector<i64> coeffs) {
    (void)tower_level(p, m);
    FieldElement e;
    e.finite_ = true;
    e.p_ = p;
    e.m_ = m;
    e.c_.assign(m, 0);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (static_cast<int>(i) >= m) {
            if (mod_pos(coeffs[i], p) != 0)
                throw Error("coefficient vector longer than extension degree");
            continue;
        }
        e.c_[i] = mod_pos(coeffs[i], p);
    }
    return e;
}

FieldElement FieldElement::integer(i64 p, i64 value) { return finite(p, 1, {value}); }

FieldElement FieldElement::complex_num(double re, double im) {
    FieldElement e;
    e.finite_ = false;
    e.p_ = 0;
    e.m_ = 1;
    e.c_.clear();
    e.z_ = {re, im};
    return e;
}

bool FieldElement::is_zero() const {
    if (finite_) return std::all_of(c_.begin(), c_.end(), [](i64 v) { return v == 0; });
    return std::abs(z_) <= kComplexTolerance;
}

bool FieldElement::is_one() const {
    if (finite_) {
        if (c_[0] != 1) return false;
        return std::all_of(c_.begin() + 1, c_.end(), [](i64 v) { return v == 0; });
    }
    return std::abs(z_ - std::complex<double>(1.0, 0.0)) <= kComplexTolerance;
}

namespace {

void check_same_backend(const FieldElement& a, const FieldElement& b) {
    if (a.is_finite() != b.is_finite())
        throw IncompatibleTower("cannot mix finite and complex backends");
    if (a.is_finite() && a.characteristic() != b.characteristic())
        throw IncompatibleTower("cannot mix characteristics " +
                                std::to_string(a.characteristic()) + " and " +
                                std::to_string(b.characteristic()));
}

}  // namespace

FieldElement FieldElement::lifted(int M) const {
    if (!finite_) return *this;
    if (M == m_) return *this;
    if (M % m_ != 0)
        throw IncompatibleTower("no embedding of degree " + std::to_string(m_) + " into degree " +
                                std::to_string(M));
    FieldElement out;
    out.finite_ = true;
    out.p_ = p_;
    out.m_ = M;
    out.c_.assign(M, 0);
    if (m_ == 1) {
        out.c_[0] = c_[0];  // prime subfield embeds as constants
        (void)tower_level(p_, M);
        return out;
    }
    const TowerLevel& big = tower_level(p_, M);
    const ModPoly& gen = embedding_image(p_, m_, M);
    std::vector<i64> mine(c_.begin(), c_.end());
    ModPoly img = raw_eval_fp_poly(mine, gen, big);
    img.resize(M, 0);
    out.c_.assign(img.begin(), img.end());
    return out;
}

std::pair<FieldElement, FieldElement> lift_common(const FieldElement& a, const FieldElement& b) {
    check_same_backend(a, b);
    if (!a.is_finite()) return {a, b};
    if (a.m_ == b.m_) return {a, b};
    int M = static_cast<int>(std::lcm(a.m_, b.m_));
    if (M > kHardDegreeLimit)
        throw ClosureBoundExceeded("common tower level " + std::to_string(M) + " too large");
    return {a.lifted(M), b.lifted(M)};
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    auto [a, b] = lift_common(*this, rhs);
    if (!a.finite_) return complex_num((a.z_ + b.z_).real(), (a.z_ + b.z_).imag());
    FieldElement out = std::move(a);
    for (int i = 0; i < out.m_; ++i) out.c_[i] = mod_pos(out.c_[i] + b.c_[i], out.p_);
    return out;
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
    auto [a, b] = lift_common(*this, rhs);
    if (!a.finite_) return complex_num((a.z_ - b.z_).real(), (a.z_ - b.z_).imag());
    FieldElement out = std::move(a);
    for (int i = 0; i < out.m_; ++i) out.c_[i] = mod_pos(out.c_[i] - b.c_[i], out.p_);
    return out;
}

FieldElement FieldElement::operator-() const {
    if (!finite_) return complex_num(-z_.real(), -z_.imag());
    FieldElement out = *this;
    for (int i = 0; i < m_; ++i) out.c_[i] = mod_pos(-c_[i], p_);
    return out;
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    auto [a, b] = lift_common(*this, rhs);
    if (!a.finite_) {
        auto z = a.z_ * b.z_;
        return complex_num(z.real(), z.imag());
    }
    if (a.m_ == 1) {
        FieldElement out = std::move(a);
        out.c_[0] = (out.c_[0] * b.c_[0]) % out.p_;
        return out;
    }
    const TowerLevel& lvl = tower_level(a.p_, a.m_);
    ModPoly pa(a.c_.begin(), a.c_.end()), pb(b.c_.begin(), b.c_.end());
    ModPoly prod = raw_mul(pa, pb, lvl);
    prod.resize(a.m_, 0);
    FieldElement out = std::move(a);
    out.c_.assign(prod.begin(), prod.end());
    return out;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw DivisionByZero();
    if (!finite_) {
        auto z = 1.0 / z_;
        return complex_num(z.real(), z.imag());
    }
    FieldElement out = *this;
    if (m_ == 1) {
        out.c_[0] = mod_inv_int(c_[0], p_);
        return out;
    }
    const TowerLevel& lvl = tower_level(p_, m_);
    ModPoly a(c_.begin(), c_.end());
    trim(a);
    ModPoly r = poly_invmod(std::move(a), lvl.modulus, p_);
    r.resize(m_, 0);
    out.c_.assign(r.begin(), r.end());
    return out;
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const { return *this * rhs.inv(); }

FieldElement FieldElement::pow(i64 e) const {
    if (!finite_) {
        if (e < 0) return inv().pow(-e);
        std::complex<double> acc{1.0, 0.0}, base = z_;
        u64 ee = static_cast<u64>(e);
        while (ee > 0) {
            if (ee & 1) acc *= base;
            base *= base;
            ee >>= 1;
        }
        return complex_num(acc.real(), acc.imag());
    }
    if (e < 0) return inv().pow(-e);
    const TowerLevel& lvl = tower_level(p_, m_);
    ModPoly base(c_.begin(), c_.end());
    ModPoly r = raw_pow(std::move(base), static_cast<u64>(e), lvl);
    r.resize(m_, 0);
    FieldElement out = *this;
    out.c_.assign(r.begin(), r.end());
    return out;
}

bool FieldElement::operator==(const FieldElement& rhs) const {
    auto [a, b] = lift_common(*this, rhs);
    if (!a.finite_) {
        double scale = std::max({1.0, std::abs(a.z_), std::abs(b.z_)});
        return std::abs(a.z_ - b.z_) <= kComplexTolerance * scale;
    }
    return a.c_ == b.c_;
}

std::uint64_t FieldElement::canonical_index() const {
    if (!finite_) throw Error("complex backend is not enumerable");
    std::vector<i64> tmp(c_.begin(), c_.end());
    return coeffs_to_index(tmp.data(), p_, m_);
}

FieldElement FieldElement::from_index(i64 p, int m, u64 index) {
    std::vector<i64> c(m);
    index_to_coeffs(index, p, m, c.data());
    return finite(p, m, std::move(c));
}

std::string FieldElement::str() const {
    if (!finite_) {
        std::ostringstream os;
        os << z_.real();
        if (z_.imag() != 0.0) os << (z_.imag() > 0 ? "+" : "") << z_.imag() << "i";
        return os.str();
    }
    if (m_ == 1) return std::to_string(c_[0]);
    std::ostringstream os;
    bool first = true;
    for (int i = m_ - 1; i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i >= 1) {
            if (c_[i] != 1) os << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

FieldElement FieldElement::zero_like() const {
    if (!finite_) return complex_num(0, 0);
    return finite(p_, m_, {});
}

FieldElement FieldElement::one_like() const {
    if (!finite_) return complex_num(1, 0);
    return finite(p_, m_, {1});
}

FieldElement FieldElement::from_int(i64 v) const {
    if (!finite_) return complex_num(static_cast<double>(v), 0);
    return finite(p_, m_, {v});
}

u64 field_size(i64 p, int m) { return checked_pow_u64(p, m); }

std::vector<FieldElement> enumerate_field(i64 p, int m, u64 cap) {
    u64 q = checked_pow_u64(p, m);
    if (q > cap)
        throw CapExceeded("field of size " + std::to_string(q) + " exceeds cap " +
                          std::to_string(cap));
    std::vector<FieldElement> out;
    out.reserve(q);
    for (u64 i = 0; i < q; ++i) out.push_back(FieldElement::from_index(p, m, i));
    return out;
}

namespace {

// x^k == a is solvable in F_{p^M} iff a^{(Q-1)/gcd(k, Q-1)} == 1, testable
// inside a's own field by reducing the exponent mod (q-1).
bool root_exists_in(const FieldElement& a, i64 k, i64 p, int m, int M) {
    u64 q_small = checked_pow_u64(p, m);
    u128 q_big = checked_pow_u128(p, M);
    u128 g = static_cast<u128>(k), n = q_big - 1;
    while (n != 0) {
        u128 t = g % n;
        g = n;
        n = t;
    }
    u128 e = (q_big - 1) / g;
    u64 e_red = static_cast<u64>(e % (q_small - 1));
    if (e_red == 0) e_red = q_small - 1;
    return a.pow(static_cast<i64>(e_red)).is_one();
}

}  // namespace

KthRootResult kth_root_closure(const FieldElement& a, i64 k, int max_degree) {
    if (k < 1) throw PreconditionViolated("k-th root needs k >= 1");
    if (a.is_complex()) {
        auto z = std::pow(a.value(), 1.0 / static_cast<double>(k));
        return {FieldElement::complex_num(z.real(), z.imag()), 1};
    }
    const i64 p = a.characteristic();
    const int m = a.degree();
    if (a.is_zero()) return {a, m};

    // Peel off the p-part of k with the inverse Frobenius x -> x^{q/p},
    // which is unique and stays in the same field.
    i64 kp = k;
    int e = 0;
    while (kp % p == 0) {
        kp /= p;
        ++e;
    }
    FieldElement target = a;
    if (e > 0) {
        u64 q = checked_pow_u64(p, m);
        for (int i = 0; i < e; ++i) target = target.pow(static_cast<i64>(q / p));
    }
    if (kp == 1) return {target, m};

    for (int j = 1; m * j <= max_degree; ++j) {
        const int M = m * j;
        if (!root_exists_in(target, kp, p, m, M)) continue;
        // z^kp - target
        std::vector<FieldElement> poly(kp + 1, target.zero_like());
        poly[0] = -target;
        poly[kp] = target.one_like();
        std::vector<FieldElement> roots = roots_at_level(poly, p, M);
        if (roots.empty())
            throw Error("root existence test disagreed with extraction (unreachable)");
        return {roots.front(), M};
    }
    throw ClosureBoundExceeded("no " + std::to_string(k) + "-th root within degree bound " +
                               std::to_string(max_degree));
}

Poly::Poly(std::vector<FieldElement> coeffs) : c_(std::move(coeffs)) {
    for (size_t i = 1; i < c_.size(); ++i) {
        auto [x, y] = lift_common(c_[0], c_[i]);
        c_[0] = x;
        c_[i] = y;
    }
    for (auto& ci : c_) ci = ci + c_[0].zero_like();
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement Poly::eval(const FieldElement& x) const {
    if (c_.empty()) return x.zero_like();
    FieldElement acc = x.zero_like();
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

namespace {

bool in_forbidden(const FieldElement& x, const std::vector<FieldElement>& forbidden) {
    for (const auto& f : forbidden) {
        if (f.is_finite() != x.is_finite()) continue;
        if (x.is_finite()) {
            if (f.characteristic() != x.characteristic()) continue;
            int M = static_cast<int>(std::lcm(f.degree(), x.degree()));
            if (M > kHardDegreeLimit) continue;
            if (f.lifted(M) == x.lifted(M)) return true;
        } else if (f == x) {
            return true;
        }
    }
    return false;
}

// Durand-Kerner with fixed seeds; roots reported in (re, im) lex order.
std::vector<std::complex<double>> complex_roots(const Poly& poly) {
    int n = poly.degree();
    std::vector<std::complex<double>> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = poly.coeffs()[i].value();
    for (int i = 0; i < n; ++i) c[i] /= c[n];
    c[n] = 1.0;
    std::vector<std::complex<double>> r(n);
    std::complex<double> seed{0.4, 0.9};
    std::complex<double> acc{1.0, 0.0};
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        r[i] = acc;
    }
    for (int iter = 0; iter < 1000; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> num = 1.0, den = 1.0;
            for (int j = n - 1; j >= 0; --j) num = num * r[i] + c[j];
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (r[i] - r[j]);
            auto delta = num / den;
            r[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-13) break;
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) {
        if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return r;
}

}  // namespace

FieldElement poly_root_avoiding(const Poly& poly, const std::vector<FieldElement>& forbidden,
                                int max_degree) {
    if (poly.degree() < 1)
        throw PreconditionViolated("root finding needs a nonconstant polynomial");

    const FieldElement& lead = poly.coeffs().back();
    if (lead.is_complex()) {
        for (const auto& z : complex_roots(poly)) {
            FieldElement cand = FieldElement::complex_num(z.real(), z.imag());
            if (!in_forbidden(cand, forbidden)) return cand;
        }
        throw NoAdmissibleRoot("all complex roots forbidden");
    }

    const i64 p = lead.characteristic();
    const int m = lead.degree();

    if (poly.degree() == 1) {
        FieldElement root = -(poly.coeffs()[0] / poly.coeffs()[1]);
        if (in_forbidden(root, forbidden)) throw NoAdmissibleRoot("unique root is forbidden");
        return root;
    }

    bool saw_root = false;
    for (int j = 1; m * j <= max_degree; ++j) {
        const int M = m * j;
        for (const auto& cand : roots_at_level(poly.coeffs(), p, M)) {
            saw_root = true;
            if (!in_forbidden(cand, forbidden)) return cand;
        }
    }
    if (saw_root) throw NoAdmissibleRoot("every root within the degree bound is forbidden");
    throw ClosureBoundExceeded("no root within degree bound " + std::to_string(max_degree));
}

FieldElement first_element_where(i64 p, int m, const std::function<bool(const FieldElement&)>& pred,
                                 int max_degree, u64 search_cap) {
    for (int j = 1; m * j <= max_degree; ++j) {
        const int M = m * j;
        u64 q = checked_pow_u64(p, M);
        if (q > search_cap)
            throw ClosureBoundExceeded("element search would enumerate a field of size " +
                                       std::to_string(q));
        for (u64 idx = 0; idx < q; ++idx) {
            FieldElement cand = FieldElement::from_index(p, M, idx);
            if (pred(cand)) return cand;
        }
    }
    throw NoAdmissibleRoot("no element satisfying the constraint within the degree bound");
}

}  // namespace octo
