#include "octo/census.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#ifdef OCTO_HAVE_OPENMP
#include <omp.h>
#endif

namespace octo {

namespace {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Index-based arithmetic tables for one small field; kept consistent with
// the exact backend by construction.
struct PackedField {
    u32 q = 0;
    std::vector<u16> add, sub, mul;

    PackedField(i64 p, int m, u64 cap) {
        u64 qq = field_size(p, m);
        u64 total = 1;
        for (int i = 0; i < 8; ++i) {
            total *= qq;
            if (total > cap)
                throw CapExceeded("census over q = " + std::to_string(qq) +
                                  " needs q^8 > cap " + std::to_string(cap));
        }
        q = static_cast<u32>(qq);
        add.resize(q * q);
        sub.resize(q * q);
        mul.resize(q * q);
        std::vector<FieldElement> elems = enumerate_field(p, m, qq);
        for (u32 i = 0; i < q; ++i) {
            for (u32 j = 0; j < q; ++j) {
                add[i * q + j] = static_cast<u16>((elems[i] + elems[j]).canonical_index());
                sub[i * q + j] = static_cast<u16>((elems[i] - elems[j]).canonical_index());
                mul[i * q + j] = static_cast<u16>((elems[i] * elems[j]).canonical_index());
            }
        }
    }

    u16 a(u16 x, u16 y) const { return add[x * q + y]; }
    u16 s(u16 x, u16 y) const { return sub[x * q + y]; }
    u16 m(u16 x, u16 y) const { return mul[x * q + y]; }
};

using Digits = std::array<u16, 8>;  // slot order (eta, x1, x2, x3, y1, y2, y3, zeta)

u32 pack(const PackedField& F, const Digits& d) {
    u32 code = 0;
    for (int i = 7; i >= 0; --i) code = code * F.q + d[i];
    return code;
}

Digits unpack(const PackedField& F, u32 code) {
    Digits d;
    for (int i = 0; i < 8; ++i) {
        d[i] = static_cast<u16>(code % F.q);
        code /= F.q;
    }
    return d;
}

Digits to_digits(const Octonion& A) {
    Digits d;
    for (int i = 0; i < 8; ++i) d[i] = static_cast<u16>(A.slot(i).canonical_index());
    return d;
}

Octonion from_digits(const Digits& d, i64 p, int m) {
    auto fe = [&](int i) { return FieldElement::from_index(p, m, d[i]); };
    return Octonion(fe(0), Vec3(fe(1), fe(2), fe(3)), Vec3(fe(4), fe(5), fe(6)), fe(7));
}

Digits mul_digits(const PackedField& F, const Digits& a, const Digits& b) {
    auto dot = [&](int ax, int bx) {
        u16 acc = F.m(a[ax], b[bx]);
        acc = F.a(acc, F.m(a[ax + 1], b[bx + 1]));
        return F.a(acc, F.m(a[ax + 2], b[bx + 2]));
    };
    // cross(u, v) with u = a[au..], v = b[bv..]
    auto cross = [&](const Digits& u, int au, const Digits& v, int bv, int i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        return F.s(F.m(u[au + j], v[bv + k]), F.m(u[au + k], v[bv + j]));
    };
    Digits out;
    out[0] = F.a(F.m(a[0], b[0]), dot(1, 4));
    out[7] = F.a(F.m(a[7], b[7]), dot(4, 1));
    for (int i = 0; i < 3; ++i) {
        // x: eta*x' + zeta'*x - y x y'
        u16 v = F.a(F.m(a[0], b[1 + i]), F.m(b[7], a[1 + i]));
        out[1 + i] = F.s(v, cross(a, 4, b, 4, i));
        // y: zeta*y' + eta'*y + x x x'
        u16 w = F.a(F.m(a[7], b[4 + i]), F.m(b[0], a[4 + i]));
        out[4 + i] = F.a(w, cross(a, 1, b, 1, i));
    }
    return out;
}

Digits pow_digits(const PackedField& F, const Digits& a, i64 k) {
    Digits acc{};  // unit
    acc.fill(0);
    acc[0] = 1 % F.q;
    acc[7] = 1 % F.q;
    for (i64 i = 0; i < k; ++i) acc = mul_digits(F, a, acc);
    return acc;
}

Digits add_digits(const PackedField& F, const Digits& a, const Digits& b) {
    Digits out;
    for (int i = 0; i < 8; ++i) out[i] = F.a(a[i], b[i]);
    return out;
}

// Deduplicated { coeff * T^k : T over all octonions }, as packed codes.
std::vector<u32> power_image(const PackedField& F, const Digits& coeff, i64 k, u64 total) {
    std::vector<u8> seen(total, 0);
    Digits t;
    for (u64 code = 0; code < total; ++code) {
        u32 c = static_cast<u32>(code);
        t = unpack(F, c);
        Digits v = mul_digits(F, coeff, pow_digits(F, t, k));
        seen[pack(F, v)] = 1;
    }
    std::vector<u32> out;
    for (u64 i = 0; i < total; ++i)
        if (seen[i]) out.push_back(static_cast<u32>(i));
    return out;
}

void sum_kernel_serial(const PackedField& F, const std::vector<u32>& s1,
                       const std::vector<u32>& s2, std::vector<u8>& mark) {
    std::vector<Digits> d2(s2.size());
    for (size_t j = 0; j < s2.size(); ++j) d2[j] = unpack(F, s2[j]);
    for (u32 c1 : s1) {
        Digits a = unpack(F, c1);
        for (const Digits& b : d2) mark[pack(F, add_digits(F, a, b))] = 1;
    }
}

void sum_kernel_omp(const PackedField& F, const std::vector<u32>& s1,
                    const std::vector<u32>& s2, std::vector<u8>& mark, int workers) {
#ifdef OCTO_HAVE_OPENMP
    std::vector<Digits> d2(s2.size());
    for (size_t j = 0; j < s2.size(); ++j) d2[j] = unpack(F, s2[j]);
    const std::int64_t n1 = static_cast<std::int64_t>(s1.size());
    const u64 total = mark.size();
    int nthreads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
    {
        // each worker marks a private bitmap over its slice of s1; the merge
        // below is a plain associative union
        std::vector<u8> local(total, 0);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n1; ++i) {
            Digits a = unpack(F, s1[i]);
            for (const Digits& b : d2) local[pack(F, add_digits(F, a, b))] = 1;
        }
#pragma omp critical
        {
            for (u64 j = 0; j < total; ++j) mark[j] |= local[j];
        }
    }
#else
    (void)workers;
    sum_kernel_serial(F, s1, s2, mark);
#endif
}

std::array<std::string, 8> observe_mask(const std::vector<u32>& image, const PackedField& F,
                                        i64 p, int m) {
    // Same slot analysis as compute_mask, but empirical: constraints that
    // hold on every enumerated image point.
    std::vector<Octonion> pts;
    pts.reserve(image.size());
    for (u32 c : image) pts.push_back(from_digits(unpack(F, c), p, m));
    std::array<std::string, 8> out;
    std::array<int, 8> kind;  // 0 free, 1 zero, 2 linked
    std::array<int, 8> anchor;
    std::array<FieldElement, 8> lam;
    for (int i = 0; i < 8; ++i) {
        bool all_zero = std::all_of(pts.begin(), pts.end(),
                                    [&](const Octonion& A) { return A.slot(i).is_zero(); });
        if (all_zero) {
            kind[i] = 1;
            continue;
        }
        kind[i] = 0;
        for (int a = 0; a < i && kind[i] == 0; ++a) {
            if (kind[a] != 0) continue;
            // candidate ratio from the first point with a nonzero anchor
            FieldElement ratio;
            bool have = false, ok = true;
            for (const Octonion& A : pts) {
                if (A.slot(a).is_zero()) {
                    if (!A.slot(i).is_zero()) {
                        ok = false;
                        break;
                    }
                    continue;
                }
                FieldElement r = A.slot(i) / A.slot(a);
                if (!have) {
                    ratio = r;
                    have = true;
                } else if (!(r == ratio)) {
                    ok = false;
                    break;
                }
            }
            if (ok && have) {
                kind[i] = 2;
                anchor[i] = a;
                lam[i] = ratio;
            }
        }
    }
    for (int i = 0; i < 8; ++i) {
        if (kind[i] == 1) out[i] = "zero";
        else if (kind[i] == 2) out[i] = "linked:" + lam[i].str() + "*" + kSlotNames[anchor[i]];
        else out[i] = "free";
    }
    return out;
}

}  // namespace

std::vector<Octonion> enumerate_octonions(i64 p, int m, u64 cap) {
    u64 q = field_size(p, m);
    u64 total = 1;
    for (int i = 0; i < 8; ++i) {
        total *= q;
        if (total > cap)
            throw CapExceeded("octonion enumeration needs q^8 = " + std::to_string(q) +
                              "^8 > cap " + std::to_string(cap));
    }
    PackedField F(p, m, cap);
    std::vector<Octonion> out;
    out.reserve(total);
    for (u64 c = 0; c < total; ++c)
        out.push_back(from_digits(unpack(F, static_cast<u32>(c)), p, m));
    return out;
}

std::vector<u8> image_census_bitmap(const Octonion& A1, const Octonion& A2, i64 k1, i64 k2,
                                    i64 p, int m, bool parallel, const CensusOptions& opt) {
    PackedField F(p, m, opt.cap);
    u64 total = 1;
    for (int i = 0; i < 8; ++i) total *= F.q;
    std::vector<u32> s1 = power_image(F, to_digits(A1), k1, total);
    std::vector<u32> s2 = power_image(F, to_digits(A2), k2, total);
    std::vector<u8> mark(total, 0);
    if (parallel)
        sum_kernel_omp(F, s1, s2, mark, opt.workers);
    else
        sum_kernel_serial(F, s1, s2, mark);
    return mark;
}

std::vector<u8> image_census_naive(const Octonion& A1, const Octonion& A2, i64 k1, i64 k2,
                                   i64 p, int m, const CensusOptions& opt) {
    PackedField F(p, m, opt.cap);
    u64 total = 1;
    for (int i = 0; i < 8; ++i) total *= F.q;
    Digits a1 = to_digits(A1), a2 = to_digits(A2);
    std::vector<u8> mark(total, 0);
    for (u64 cx = 0; cx < total; ++cx) {
        Digits lhs = mul_digits(F, a1, pow_digits(F, unpack(F, static_cast<u32>(cx)), k1));
        for (u64 cy = 0; cy < total; ++cy) {
            Digits rhs = mul_digits(F, a2, pow_digits(F, unpack(F, static_cast<u32>(cy)), k2));
            mark[pack(F, add_digits(F, lhs, rhs))] = 1;
        }
    }
    return mark;
}

CensusReport image_census(const Octonion& A1, const Octonion& A2, i64 k1, i64 k2, i64 p, int m,
                          const CensusOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    PackedField F(p, m, opt.cap);
    u64 total = 1;
    for (int i = 0; i < 8; ++i) total *= F.q;

    std::vector<u8> mark = image_census_bitmap(A1, A2, k1, k2, p, m, true, opt);

    CensusReport r;
    r.q = F.q;
    r.k1 = k1;
    r.k2 = k2;
    r.pair_desc = A1.str() + " , " + A2.str();
    r.total = total;
    std::vector<u32> image;
    for (u64 i = 0; i < total; ++i) {
        if (mark[i]) {
            ++r.image_size;
            image.push_back(static_cast<u32>(i));
        } else if (r.non_image_samples.size() < 16) {
            r.non_image_samples.push_back(from_digits(unpack(F, static_cast<u32>(i)), p, m));
        }
    }
    r.proper_subset = r.image_size < total;
    r.observed_mask = observe_mask(image, F, p, m);
    r.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<bool> nonsurjective_family_param_nonzero(int family) {
    switch (family) {
        case 1: return {true, true};
        case 2: return {true, true};
        case 3: return {true, false, false};
        case 4: return {true, false, false};
        case 5: return {};
        case 6: return {false};
        case 7: return {false};
        default: return {};
    }
}

std::pair<Octonion, Octonion> nonsurjective_family_pair(int family,
                                                  const std::vector<FieldElement>& v, i64 p,
                                                  int m) {
    FieldElement zero = FieldElement::finite(p, m, {});
    FieldElement one = zero.one_like();
    Vec3 z3 = Vec3::zero(zero);
    Vec3 e1 = Vec3::unit(one, 1);
    Vec3 e2 = Vec3::unit(one, 2);
    Octonion E(zero, e1, z3, zero);
    switch (family) {
        case 1: return {Octonion::diag(v[0], zero), Octonion::diag(v[1], zero)};
        case 2: return {Octonion::diag(zero, v[0]), Octonion::diag(zero, v[1])};
        case 3:
            return {Octonion::diag(v[0], zero),
                    Octonion(v[1], e1, Vec3(zero, v[2], zero), zero)};
        case 4:
            return {Octonion::diag(zero, v[0]),
                    Octonion(zero, e1, Vec3(zero, v[1], zero), v[2])};
        case 5: return {E, E};
        case 6: return {E, Octonion(v[0], e2, z3, zero)};
        case 7: return {E, Octonion(zero, e2, z3, v[0])};
        default: return {E, Octonion(zero, z3, e2, zero)};
    }
}

std::vector<FamilyCensusRow> census_nonsurjective_families(i64 p, int m, i64 k1, i64 k2,
                                                     const CensusOptions& opt) {
    std::vector<FamilyCensusRow> rows;
    u64 q = field_size(p, m);
    for (int fam = 1; fam <= 8; ++fam) {
        std::vector<bool> nz = nonsurjective_family_param_nonzero(fam);
        size_t nparams = nz.size();
        std::vector<u64> idx(nparams, 0);
        bool done = false;
        while (!done) {
            bool admissible = true;
            std::vector<FieldElement> vals;
            for (size_t i = 0; i < nparams; ++i) {
                FieldElement v = FieldElement::from_index(p, m, idx[i]);
                if (nz[i] && v.is_zero()) admissible = false;
                vals.push_back(v);
            }
            if (admissible) {
                auto [A1, A2] = nonsurjective_family_pair(fam, vals, p, m);
                PackedField F(p, m, opt.cap);
                std::vector<u8> mark = image_census_bitmap(A1, A2, k1, k2, p, m, true, opt);
                FamilyCensusRow row;
                row.family = fam;
                {
                    std::ostringstream os;
                    for (size_t i = 0; i < vals.size(); ++i)
                        os << (i ? "," : "") << vals[i].str();
                    row.params = os.str();
                }
                row.total = mark.size();
                ObstructionMask mask = compute_mask(A1, A2);
                row.mask_respected = true;
                for (u64 c = 0; c < mark.size(); ++c) {
                    if (!mark[c]) continue;
                    ++row.image_size;
                    if (row.mask_respected &&
                        !mask.admits(from_digits(unpack(F, static_cast<u32>(c)), p, m)))
                        row.mask_respected = false;
                }
                row.proper_subset = row.image_size < row.total;
                rows.push_back(std::move(row));
            }
            // next parameter tuple
            done = nparams == 0;
            for (size_t i = 0; i < nparams; ++i) {
                if (++idx[i] < q) break;
                idx[i] = 0;
                if (i + 1 == nparams) done = true;
            }
            if (nparams == 0) done = true;
        }
    }
    return rows;
}

}  // namespace octo
