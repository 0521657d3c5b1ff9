#include "naive_ec.hpp"
#include "oracle_testkit.hpp"

#include "g2uds/surface.hpp"

#ifdef G2UDS_HAVE_OPENMP
#include <omp.h>
#endif

namespace g2uds::oracle {

namespace {

using namespace g2uds;

void require_countable(const FieldTower& T) {
    Int total = int_pow(T.params().p + 1, 4);
    if (total > (Int(1) << 26)) fail(Err::TooLarge, "group too large to enumerate");
}

// Solutions y of y^2 = v: 1 for v = 0, 2 for a square, else 0.
template <class K>
std::uint64_t sqrt_count(const K& v) {
    if (v.is_zero()) return 1;
    return fq_is_square(v) ? 2 : 0;
}

// #E(F_{p^2}) by scanning every x.
std::uint64_t count_elliptic(const EllipticCurve& E, bool parallel) {
    const FieldTower& T = *E.T;
    long pl = static_cast<long>(T.params().p);
    std::uint64_t total = 1; // infinity
#ifdef G2UDS_HAVE_OPENMP
#pragma omp parallel for reduction(+ : total) schedule(static) if (parallel)
#endif
    for (long c0 = 0; c0 < pl; ++c0) {
        std::uint64_t row = 0;
        for (long c1 = 0; c1 < pl; ++c1) {
            Fp2 x = T.make(c0, c1);
            row += sqrt_count(x * x * x + E.a * x + E.b);
        }
        total += row;
    }
    (void)parallel;
    return total;
}

// Machine-word tower element for the counting scans: c[0] + c[1] w over the
// base piece, plus (c[2] + c[3] w) s, with w^2 = q2 in F_p and s^2 = the
// F_{p^2} nonresidue (n0, n1). Big-integer field elements cost microseconds
// apiece, which a 12M-point scan cannot afford.
struct W4 {
    std::uint64_t c[4];
};

struct WCtx {
    std::uint64_t p, q2, n0, n1;

    // (a0 + a1 w)(b0 + b1 w)
    void mul2(std::uint64_t a0, std::uint64_t a1, std::uint64_t b0, std::uint64_t b1,
              std::uint64_t& r0, std::uint64_t& r1) const {
        r0 = (a0 * b0 + a1 * b1 % p * q2) % p;
        r1 = (a0 * b1 + a1 * b0) % p;
    }

    W4 mul4(const W4& x, const W4& y) const {
        std::uint64_t u0, u1, v0, v1, m0, m1, t0, t1;
        mul2(x.c[0], x.c[1], y.c[0], y.c[1], u0, u1);              // xu * yu
        mul2(x.c[2], x.c[3], y.c[2], y.c[3], v0, v1);              // xv * yv
        mul2(v0, v1, n0, n1, m0, m1);                              // (xv yv) s^2
        std::uint64_t a0, a1, b0, b1;
        mul2(x.c[0], x.c[1], y.c[2], y.c[3], a0, a1);              // xu * yv
        mul2(x.c[2], x.c[3], y.c[0], y.c[1], b0, b1);              // xv * yu
        t0 = (a0 + b0) % p;
        t1 = (a1 + b1) % p;
        return {{(u0 + m0) % p, (u1 + m1) % p, t0, t1}};
    }

    W4 add4(const W4& x, const W4& y) const {
        return {{(x.c[0] + y.c[0]) % p, (x.c[1] + y.c[1]) % p, (x.c[2] + y.c[2]) % p,
                 (x.c[3] + y.c[3]) % p}};
    }

    bool zero4(const W4& x) const { return !x.c[0] && !x.c[1] && !x.c[2] && !x.c[3]; }

    std::size_t index4(const W4& x) const {
        return static_cast<std::size_t>(((x.c[0] * p + x.c[1]) * p + x.c[2]) * p + x.c[3]);
    }

    W4 at4(std::uint64_t k) const {
        W4 x;
        x.c[3] = k % p;
        x.c[2] = (k / p) % p;
        x.c[1] = (k / (p * p)) % p;
        x.c[0] = k / (p * p * p);
        return x;
    }
};

// Genus-2 curve point counts over F_{p^2} and F_{p^4}; the jacobian order is
// the zeta-function expression (N1^2 + N2)/2 - p^2.
std::uint64_t count_jacobian(const Genus2Curve& H, bool parallel) {
    const FieldTower& T = *H.T;
    long pl = static_cast<long>(T.params().p);
    std::vector<Fp2> coef(H.f.begin(), H.f.end());
    // points at infinity: 1 on a degree-5 model, 2 on degree 6
    std::uint64_t at_inf = H.degree == 5 ? 1 : sqrt_count(coef[6]) == 0 ? 0 : 2;

    WCtx F;
    F.p = static_cast<std::uint64_t>(pl);
    F.q2 = static_cast<std::uint64_t>(T.fp2()->nr.v);
    F.n0 = static_cast<std::uint64_t>(T.fp4()->nr.a.v);
    F.n1 = static_cast<std::uint64_t>(T.fp4()->nr.b.v);
    W4 cw[7];
    for (int i = 0; i < 7; ++i)
        cw[i] = {{static_cast<std::uint64_t>(coef[i].a.v),
                  static_cast<std::uint64_t>(coef[i].b.v), 0, 0}};
    auto eval = [&](const W4& x) {
        W4 r = cw[6];
        for (int i = 5; i >= 0; --i) r = F.add4(F.mul4(r, x), cw[i]);
        return r;
    };

    // mark the image of the squaring map once, then scan with O(1) lookups
    std::uint64_t p2 = F.p * F.p, p4 = p2 * p2;
    std::vector<std::uint8_t> is_sq(static_cast<std::size_t>(p4), 0);
#ifdef G2UDS_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long k = 0; k < static_cast<long>(p4); ++k) {
        W4 z = F.at4(static_cast<std::uint64_t>(k));
        is_sq[F.index4(F.mul4(z, z))] = 1;
    }

    std::uint64_t n2 = at_inf;
#ifdef G2UDS_HAVE_OPENMP
#pragma omp parallel for reduction(+ : n2) schedule(static) if (parallel)
#endif
    for (long k = 0; k < static_cast<long>(p4); ++k) {
        W4 v = eval(F.at4(static_cast<std::uint64_t>(k)));
        n2 += F.zero4(v) ? 1 : is_sq[F.index4(v)] ? 2 : 0;
    }

    // F_{p^2} needs its own square table: every F_{p^2} element is a square
    // one level up, so the big table cannot answer for the subfield
    std::vector<std::uint8_t> is_sq2(static_cast<std::size_t>(p2), 0);
    for (std::uint64_t a = 0; a < F.p; ++a)
        for (std::uint64_t b = 0; b < F.p; ++b) {
            std::uint64_t r0, r1;
            F.mul2(a, b, a, b, r0, r1);
            is_sq2[static_cast<std::size_t>(r0 * F.p + r1)] = 1;
        }
    std::uint64_t n1 = at_inf;
    for (std::uint64_t k = 0; k < p2; ++k) {
        W4 v = eval(W4{{k / F.p, k % F.p, 0, 0}});
        n1 += F.zero4(v) ? 1 : is_sq2[static_cast<std::size_t>(v.c[0] * F.p + v.c[1])] ? 2 : 0;
    }

    (void)parallel;
    return (n1 * n1 + n2) / 2 - p2;
}

std::uint64_t count_surface(const Surface& A, bool parallel) {
    require_countable(A.tower());
    if (A.is_jacobian()) return count_jacobian(A.jacobian(), parallel);
    return count_elliptic(A.product().E1, parallel) * count_elliptic(A.product().E2, parallel);
}

} // namespace

std::uint64_t enumerate_group(const Surface& A) { return count_surface(A, true); }

std::uint64_t enumerate_group_serial(const Surface& A) { return count_surface(A, false); }

std::vector<SurfacePoint> enumerate_torsion(const Surface& A, unsigned m) {
    const FieldTower& T = A.tower();
    require_countable(T);
    if (!A.is_jacobian()) {
        auto factor_torsion = [&](const EllipticCurve& F) {
            NCurve E{&T, F.a, F.b};
            std::vector<NPt> out{NPt{}};
            for (const Fp2& x : all_fp2(T))
                for (const NPt& P : n_points_at(E, x))
                    if (n_mul(E, m, P).inf) out.push_back(P);
            return out;
        };
        std::vector<NPt> t1 = factor_torsion(A.product().E1);
        std::vector<NPt> t2 = factor_torsion(A.product().E2);
        std::vector<SurfacePoint> out;
        for (const NPt& P : t1)
            for (const NPt& Q : t2)
                out.push_back(SurfacePoint{
                    ProductPoint{ECPoint{P.inf, P.x, P.y}, ECPoint{Q.inf, Q.x, Q.y}}});
        return out;
    }
    if (m != 2) fail(Err::TooLarge, "jacobian torsion enumeration only supports m = 2");
    const Genus2Curve& H = A.jacobian();
    if (H.degree != 5) fail(Err::TooLarge, "jacobian 2-torsion needs an odd model");
    std::vector<Fp2> roots;
    Poly<Fp2> f = H.poly();
    for (const Fp2& x : all_fp2(T))
        if (f.eval(x).is_zero()) roots.push_back(x);

    std::vector<SurfacePoint> out;
    out.push_back(SurfacePoint{divisor_identity(T.one())});
    for (const Fp2& r : roots)
        out.push_back(SurfacePoint{Divisor<Fp2>{Poly<Fp2>({-r, T.one()}), Poly<Fp2>{}}});
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            out.push_back(SurfacePoint{Divisor<Fp2>{
                Poly<Fp2>({roots[i] * roots[j], -(roots[i] + roots[j]), T.one()}),
                Poly<Fp2>{}}});
    return out;
}

} // namespace g2uds::oracle
