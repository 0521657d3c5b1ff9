#include "g2uds/mumford.hpp"

#include <map>
#include <optional>

namespace g2uds {
namespace {

const Poly<Fp2> odd_model_poly(const Genus2Curve& H) {
    if (H.degree != 5)
        fail(Err::BadShape, "jacobian arithmetic needs a degree-5 model");
    return H.poly();
}

void check_same_curve(const MumfordDivisor& a, const MumfordDivisor& b) {
    if (!(*a.H == *b.H)) fail(Err::CurveMismatch, "divisors on different curves");
}

} // namespace

MumfordDivisor jac_identity(const Genus2Curve& H) {
    return {&H, divisor_identity(H.T->one())};
}

bool on_jacobian(const MumfordDivisor& D) {
    return divisor_on(odd_model_poly(*D.H), D.d);
}

MumfordDivisor jac_add(const MumfordDivisor& D1, const MumfordDivisor& D2) {
    check_same_curve(D1, D2);
    return {D1.H, cantor_add(odd_model_poly(*D1.H), D1.d, D2.d)};
}

MumfordDivisor jac_neg(const MumfordDivisor& D) {
    return {D.H, divisor_neg(D.d)};
}

MumfordDivisor jac_mul(const Int& n, const MumfordDivisor& D) {
    return {D.H, cantor_mul(odd_model_poly(*D.H), n, D.d)};
}

MumfordDivisor random_divisor(const Genus2Curve& H, Rng& rng) {
    const FieldTower& T = *H.T;
    Poly<Fp2> f = odd_model_poly(H);
    const Int& p = T.params().p;
    auto sample_point = [&]() -> std::pair<Fp2, Fp2> {
        for (;;) {
            Fp2 x = T.make(rng.below(p), rng.below(p));
            auto y = fq_sqrt(f.eval(x));
            if (!y) continue;
            return {x, rng.coin() ? *y : -*y};
        }
    };
    for (;;) {
        auto [x1, y1] = sample_point();
        auto [x2, y2] = sample_point();
        if (x1 == x2) continue;
        Poly<Fp2> u = Poly<Fp2>({-x1, T.one()}) * Poly<Fp2>({-x2, T.one()});
        Fp2 slope = (y2 - y1) * fq_inv(x2 - x1);
        Poly<Fp2> v({y1 - slope * x1, slope});
        return {&H, Divisor<Fp2>{u, v}};
    }
}

std::vector<std::uint8_t> divisor_encode(const MumfordDivisor& D) {
    const FieldTower& T = *D.H->T;
    std::vector<std::uint8_t> out;
    int du = D.d.u.deg();
    out.push_back(static_cast<std::uint8_t>(du));
    Fp2 zero = T.zero();
    for (int i = 0; i < du; ++i) T.encode(D.d.u.coeff_or_zero(i, zero), out);
    for (int i = 0; i < du; ++i) T.encode(D.d.v.coeff_or_zero(i, zero), out);
    return out;
}

// ---------------------------------------------------------------------------
// Weil pairing
// ---------------------------------------------------------------------------

namespace {

// degree-zero representative A - B, both affine effective of weight 2
struct DegZeroRep {
    Divisor<Fp2> A, B;
};

std::optional<DegZeroRep> make_rep(const MumfordDivisor& D, Rng& rng) {
    for (int tries = 0; tries < 64; ++tries) {
        MumfordDivisor R = random_divisor(*D.H, rng);
        if (R.d.u.deg() != 2) continue;
        MumfordDivisor A = jac_add(D, R);
        if (A.d.u.deg() != 2) continue;
        return DegZeroRep{A.d, R.d};
    }
    return std::nullopt;
}

bool disjoint_supports(const DegZeroRep& E1, const DegZeroRep& E2) {
    const Poly<Fp2>* us[4] = {&E1.A.u, &E1.B.u, &E2.A.u, &E2.B.u};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (poly_gcd(*us[i], *us[j]).deg() > 0) return false;
    return true;
}

// product of the piece over the points of an effective divisor (u, v)
std::optional<Fp2> eval_piece(const MillerPiece<Fp2>& piece, const Divisor<Fp2>& E,
                              const Fp2& one) {
    Poly<Fp2> g = piece.is_line ? E.v - piece.g : piece.g;
    if (g.is_zero()) return std::nullopt;
    Fp2 r = poly_resultant(E.u, g, one);
    if (r.is_zero()) return std::nullopt;
    return r;
}

// f_{m,E1} evaluated at E2, where div(f_{m,E1}) = m*(A1 - B1)
std::optional<Fp2> miller(const Poly<Fp2>& f, const DegZeroRep& E1, const DegZeroRep& E2,
                          const Int& m) {
    Fp2 one = fq_one_like(f.lead());
    bool bad = false;
    Fp2 acc = one;
    auto emit = [&](const MillerPiece<Fp2>& piece) {
        if (bad) return;
        auto a = eval_piece(piece, E2.A, one);
        auto b = eval_piece(piece, E2.B, one);
        if (!a || !b) {
            bad = true;
            return;
        }
        Fp2 r = *a * fq_inv(*b);
        acc = acc * (piece.num ? r : fq_inv(r));
    };

    using Pair = std::pair<Divisor<Fp2>, Fp2>;
    auto add_pairs = [&](const Pair& x, const Pair& y) -> Pair {
        acc = one;
        Divisor<Fp2> Dc = cantor_add_emit(f, x.first, y.first, emit);
        return {Dc, x.second * y.second * acc};
    };

    // base: class(A1 - B1) with function pieces; A1 - B1 = A1 + invol(B1) - div(u_B1)
    acc = one;
    emit(MillerPiece<Fp2>{false, E1.B.u, false});
    Fp2 corr = acc;
    acc = one;
    Divisor<Fp2> D1 = cantor_add_emit(f, E1.A, divisor_neg(E1.B), emit);
    Pair base{D1, corr * acc};
    if (bad) return std::nullopt;

    Pair res{divisor_identity(one), one};
    Pair q = base;
    Int k = m;
    bool first = true;
    while (k > 0) {
        if (bit_test(k, 0)) {
            res = first ? q : add_pairs(res, q);
            first = false;
        }
        k >>= 1;
        if (k > 0) q = add_pairs(q, q);
        if (bad) return std::nullopt;
    }
    if (!res.first.is_identity())
        fail(Err::NotTorsion, "representative not killed by m");
    return res.second;
}

} // namespace

Fp2 weil_pairing(const MumfordDivisor& D1, const MumfordDivisor& D2, const Int& m, Rng& rng) {
    check_same_curve(D1, D2);
    const FieldTower& T = *D1.H->T;
    Poly<Fp2> f = odd_model_poly(*D1.H);
    if (!jac_mul(m, D1).is_identity() || !jac_mul(m, D2).is_identity())
        fail(Err::NotTorsion, "arguments are not m-torsion");
    if (D1.is_identity() || D2.is_identity()) return T.one();

    for (int tries = 0; tries < 256; ++tries) {
        auto E1 = make_rep(D1, rng);
        auto E2 = make_rep(D2, rng);
        if (!E1 || !E2 || !disjoint_supports(*E1, *E2)) continue;
        auto a = miller(f, *E1, *E2, m);
        auto b = miller(f, *E2, *E1, m);
        if (!a || !b) continue;
        return *a * fq_inv(*b);
    }
    fail(Err::Timeout, "no usable pairing representatives found");
}

// ---------------------------------------------------------------------------
// Torsion bases and kernels
// ---------------------------------------------------------------------------

namespace {

// discrete log of x in the cyclic group generated by zeta (tiny orders)
std::optional<Int> tiny_dlog(const Fp2& zeta, const Fp2& x, const Int& bound) {
    Fp2 acc = fq_one_like(zeta);
    for (Int k = 0; k < bound; ++k) {
        if (acc == x) return k;
        acc = acc * zeta;
    }
    return std::nullopt;
}

Int mult_order(const Fp2& x, const Int& bound) {
    Fp2 acc = x;
    Fp2 one = fq_one_like(x);
    for (Int k = 1; k <= bound; ++k) {
        if (acc == one) return k;
        acc = acc * x;
    }
    return 0;
}

} // namespace

TorsionBasis torsion_basis(const Genus2Curve& H, unsigned l, unsigned e, Rng& rng) {
    const FieldTower& T = *H.T;
    Int le = int_pow(l, e);
    Int p1 = T.params().p + 1;
    if (p1 % le != 0) fail(Err::TorsionNotRational, "l^e does not divide p+1");
    // group exponent is p+1 on the superspecial surfaces the scheme works with
    Int cof = p1 / le;

    auto sample = [&]() -> std::optional<MumfordDivisor> {
        MumfordDivisor P = jac_mul(cof, random_divisor(H, rng));
        if (!jac_mul(le, P).is_identity()) fail(Err::TorsionNotRational, "group order mismatch");
        if (jac_mul(le / l, P).is_identity()) return std::nullopt; // order below l^e
        return P;
    };

    for (int round = 0; round < 64; ++round) {
        std::array<MumfordDivisor, 4> pts{jac_identity(H), jac_identity(H), jac_identity(H),
                                          jac_identity(H)};
        bool got = true;
        for (auto& pt : pts) {
            std::optional<MumfordDivisor> s;
            for (int t = 0; t < 32 && !s; ++t) s = sample();
            if (!s) {
                got = false;
                break;
            }
            pt = *s;
        }
        if (!got) fail(Err::Timeout, "could not sample points of exact order");

        // Gram matrix of pairing exponents; independence iff the Pfaffian is a
        // unit mod l.
        Fp2 pair[4][4];
        Fp2 zeta = T.one();
        Int zord = 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                pair[i][j] = weil_pairing(pts[i], pts[j], le, rng);
                Int o = mult_order(pair[i][j], le);
                if (o > zord) {
                    zord = o;
                    zeta = pair[i][j];
                }
            }
        if (zord != le) continue; // cannot even see a primitive root: not independent
        Int x12 = *tiny_dlog(zeta, pair[0][1], le), x34 = *tiny_dlog(zeta, pair[2][3], le);
        Int x13 = *tiny_dlog(zeta, pair[0][2], le), x24 = *tiny_dlog(zeta, pair[1][3], le);
        Int x14 = *tiny_dlog(zeta, pair[0][3], le), x23 = *tiny_dlog(zeta, pair[1][2], le);
        Int pf = mod_reduce(x12 * x34 - x13 * x24 + x14 * x23, le);
        if (pf % l == 0) continue;
        return {pts, l, e};
    }
    fail(Err::Timeout, "no independent torsion basis found");
}

std::vector<MumfordDivisor> span_of(const std::vector<MumfordDivisor>& gens,
                                    const Int& gen_order) {
    if (gens.empty()) return {};
    std::vector<MumfordDivisor> acc{jac_identity(*gens[0].H)};
    for (const auto& g : gens) {
        std::vector<MumfordDivisor> next;
        MumfordDivisor step = jac_identity(*g.H);
        for (Int k = 0; k < gen_order; ++k) {
            for (const auto& base : acc) next.push_back(jac_add(base, step));
            step = jac_add(step, g);
        }
        std::map<std::vector<std::uint8_t>, MumfordDivisor> dedup;
        for (const auto& d : next) dedup.emplace(divisor_encode(d), d);
        acc.clear();
        for (auto& kv : dedup) acc.push_back(kv.second);
    }
    return acc;
}

KernelSpec kernel_from_scalars(const std::array<Int, 12>& scalars, const TorsionBasis& basis,
                               Rng& rng) {
    const Genus2Curve& H = *basis.points[0].H;
    Int le = basis.order();
    KernelSpec K;
    K.scalars = scalars;
    K.basis = basis;
    K.l = basis.l;
    K.e = basis.e;
    for (int g = 0; g < 3; ++g) {
        MumfordDivisor acc = jac_identity(H);
        for (int i = 0; i < 4; ++i)
            acc = jac_add(acc, jac_mul(mod_reduce(scalars[4 * g + i], le), basis.points[i]));
        K.generators[g] = acc;
    }
    bool all_trivial = true;
    for (const auto& g : K.generators) all_trivial = all_trivial && g.is_identity();
    if (all_trivial) fail(Err::TrivialKernel, "all kernel generators are the identity");

    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (weil_pairing(K.generators[a], K.generators[b], le, rng) != H.T->one())
                fail(Err::NotMaximalIsotropic, "kernel generators do not pair trivially");

    std::vector<MumfordDivisor> gens(K.generators.begin(), K.generators.end());
    Int want = le * le;
    if (Int(span_of(gens, le).size()) != want)
        fail(Err::NotMaximalIsotropic, "kernel subgroup order is not l^(2e)");
    return K;
}

} // namespace g2uds
