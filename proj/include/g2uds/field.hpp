#pragma once

// Arithmetic in F_p and its quadratic extension tower, for a runtime prime of
// smooth-plus-cofactor shape. Values are immutable; every operation returns a
// canonically reduced element. The tower F_p -> F_{p^2} -> F_{p^4} is built
// from deterministic nonresidue scans so parameters are reproducible.

#include "g2uds/bigint.hpp"
#include "g2uds/errors.hpp"

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

namespace g2uds {

// ---------------------------------------------------------------------------
// Parameters: p = lA^eA * lM^eM * lC^eC * f + sign
// ---------------------------------------------------------------------------

struct FieldParams {
    Int p;
    unsigned lA = 0, eA = 0, lM = 0, eM = 0, lC = 0, eC = 0;
    Int f = 1;
    int sign = -1;

    Int smooth_order() const { return p - sign; } // lA^eA * lM^eM * lC^eC * f
};

bool is_prime(const Int& n);

FieldParams make_params(unsigned lA, unsigned eA, unsigned lM, unsigned eM, unsigned lC,
                        unsigned eC, const Int& f, int sign);

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

struct PrimeField {
    Int p;
    std::size_t width; // canonical encoding width in bytes

    explicit PrimeField(Int prime) : p(std::move(prime)), width(byte_width(p)) {}

    mutable Int tonelli_z = 0; // cached nonresidue for square roots
};

struct Fp {
    const PrimeField* F = nullptr;
    Int v;

    Fp() = default;
    Fp(const PrimeField* f, Int val) : F(f), v(mod_reduce(std::move(val), f->p)) {}

    bool is_zero() const { return v == 0; }

    friend Fp operator+(const Fp& x, const Fp& y) {
        assert(x.F == y.F);
        Int r = x.v + y.v;
        if (r >= x.F->p) r -= x.F->p;
        return Fp::raw(x.F, std::move(r));
    }
    friend Fp operator-(const Fp& x, const Fp& y) {
        assert(x.F == y.F);
        Int r = x.v - y.v;
        if (r < 0) r += x.F->p;
        return Fp::raw(x.F, std::move(r));
    }
    friend Fp operator*(const Fp& x, const Fp& y) {
        assert(x.F == y.F);
        return Fp::raw(x.F, x.v * y.v % x.F->p);
    }
    Fp operator-() const {
        return v == 0 ? *this : Fp::raw(F, F->p - v);
    }
    friend bool operator==(const Fp& x, const Fp& y) { return x.v == y.v; }
    friend bool operator!=(const Fp& x, const Fp& y) { return x.v != y.v; }

    static Fp raw(const PrimeField* f, Int val) {
        Fp r;
        r.F = f;
        r.v = std::move(val);
        return r;
    }
};

inline Fp fq_zero(const PrimeField* F) { return Fp::raw(F, 0); }
inline Fp fq_one(const PrimeField* F) { return Fp::raw(F, 1); }
inline Fp fq_inv(const Fp& x) {
    if (x.is_zero()) fail(Err::DivisionByZero, "inverse of zero in F_p");
    return Fp::raw(x.F, mod_inv(x.v, x.F->p));
}
inline Int field_order(const Fp& x) { return x.F->p; }
inline bool lex_less(const Fp& x, const Fp& y) { return x.v < y.v; }
// k-th element in the deterministic scan order of the field.
inline Fp kth_element(const PrimeField* F, const Int& k) { return Fp(F, k); }

// ---------------------------------------------------------------------------
// Quadratic extension of an arbitrary base field
// ---------------------------------------------------------------------------

template <class B> struct QuadExt;

template <class B>
struct QuadCtx {
    B nr;      // w^2 = nr, a nonresidue of the base field
    Int order; // cardinality of the extension

    mutable std::optional<QuadExt<B>> tonelli_z;
};

// a + b*w with w^2 = F->nr.
template <class B>
struct QuadExt {
    const QuadCtx<B>* F = nullptr;
    B a, b;

    QuadExt() = default;
    QuadExt(const QuadCtx<B>* f, B a0, B b0) : F(f), a(std::move(a0)), b(std::move(b0)) {}

    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        assert(x.F == y.F);
        return {x.F, x.a + y.a, x.b + y.b};
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        assert(x.F == y.F);
        return {x.F, x.a - y.a, x.b - y.b};
    }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        assert(x.F == y.F);
        B t0 = x.a * y.a;
        B t1 = x.b * y.b;
        B t2 = (x.a + x.b) * (y.a + y.b);
        return {x.F, t0 + x.F->nr * t1, t2 - t0 - t1};
    }
    QuadExt operator-() const { return {F, -a, -b}; }
    friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }
};

template <class B>
QuadExt<B> fq_zero(const QuadCtx<B>* F) {
    const auto* base = F->nr.F;
    return {F, fq_zero(base), fq_zero(base)};
}

template <class B>
QuadExt<B> fq_one(const QuadCtx<B>* F) {
    const auto* base = F->nr.F;
    return {F, fq_one(base), fq_zero(base)};
}

inline Fp fq_one_like(const Fp& x) { return fq_one(x.F); }
template <class B>
QuadExt<B> fq_one_like(const QuadExt<B>& x) {
    return fq_one(x.F);
}

template <class B>
QuadExt<B> fq_inv(const QuadExt<B>& x) {
    if (x.is_zero()) fail(Err::DivisionByZero, "inverse of zero in extension field");
    // 1/(a + bw) = (a - bw) / (a^2 - nr b^2)
    B n = x.a * x.a - x.F->nr * (x.b * x.b);
    B ni = fq_inv(n);
    return {x.F, x.a * ni, -(x.b * ni)};
}

template <class B>
Int field_order(const QuadExt<B>& x) {
    return x.F->order;
}

template <class B>
bool lex_less(const QuadExt<B>& x, const QuadExt<B>& y) {
    if (x.a != y.a) return lex_less(x.a, y.a);
    return lex_less(x.b, y.b);
}

template <class B>
QuadExt<B> kth_element(const QuadCtx<B>* F, const Int& k) {
    Int base_order = sqrt(F->order); // order is a perfect square by construction
    const auto* base_ctx = F->nr.F;
    return {F, kth_element(base_ctx, k % base_order), kth_element(base_ctx, k / base_order)};
}

// ---------------------------------------------------------------------------
// Generic exponentiation / square root
// ---------------------------------------------------------------------------

template <class K>
K fq_pow(K base, Int exp) {
    if (base.is_zero()) {
        if (exp < 0) fail(Err::DivisionByZero, "0^negative");
        if (exp == 0) fail(Err::InternalError, "0^0");
        return base;
    }
    K r = fq_one_like(base);
    if (exp < 0) {
        base = fq_inv(base);
        exp = -exp;
    }
    while (exp > 0) {
        if (bit_test(exp, 0)) r = r * base;
        base = base * base;
        exp >>= 1;
    }
    return r;
}

template <class K>
bool fq_is_square(const K& x) {
    if (x.is_zero()) return true;
    Int q = field_order(x);
    return fq_pow(x, (q - 1) / 2) == fq_one_like(x);
}

namespace detail {

inline Fp tonelli_nonresidue(const Fp& sample) {
    const PrimeField* F = sample.F;
    if (F->tonelli_z == 0) {
        for (Int k = 2;; ++k) {
            Fp c = kth_element(F, k);
            if (!c.is_zero() && !fq_is_square(c)) {
                F->tonelli_z = c.v;
                break;
            }
        }
    }
    return Fp(F, F->tonelli_z);
}

template <class B>
QuadExt<B> tonelli_nonresidue(const QuadExt<B>& sample) {
    const QuadCtx<B>* F = sample.F;
    if (!F->tonelli_z) {
        for (Int k = 1;; ++k) {
            QuadExt<B> c = kth_element(F, k);
            if (!c.is_zero() && !fq_is_square(c)) {
                F->tonelli_z = c;
                break;
            }
        }
    }
    return *F->tonelli_z;
}

} // namespace detail

// Tonelli-Shanks over any finite field in the tower. Returns the canonical
// root: the lexicographically smaller of {r, -r}.
template <class K>
std::optional<K> fq_sqrt(const K& x) {
    if (x.is_zero()) return x;
    K one = fq_one_like(x);
    Int q = field_order(x);
    if (fq_pow(x, (q - 1) / 2) != one) return std::nullopt;

    Int t = q - 1;
    unsigned s = 0;
    while (bit_test(t, 0) == false) {
        t >>= 1;
        ++s;
    }
    K z = detail::tonelli_nonresidue(x);
    K c = fq_pow(z, t);
    K r = fq_pow(x, (t + 1) / 2);
    K u = fq_pow(x, t);
    unsigned m = s;
    while (u != one) {
        unsigned i = 0;
        K e = u;
        while (e != one) {
            e = e * e;
            ++i;
        }
        K bpow = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) bpow = bpow * bpow;
        r = r * bpow;
        c = bpow * bpow;
        u = u * c;
        m = i;
    }
    K neg = -r;
    return lex_less(neg, r) ? neg : r;
}

// ---------------------------------------------------------------------------
// The concrete tower used by the scheme
// ---------------------------------------------------------------------------

using Fp2 = QuadExt<Fp>;
using Fp4 = QuadExt<Fp2>;

// Owns the contexts for F_p, F_{p^2} and F_{p^4}. The F_{p^2} generator is
// w^2 = q with q the smallest positive nonsquare mod p; the F_{p^4} generator
// squares to the first nonsquare of F_{p^2} in scan order.
class FieldTower {
  public:
    explicit FieldTower(const FieldParams& params);

    // Field elements hold pointers into the tower's contexts.
    FieldTower(const FieldTower&) = delete;
    FieldTower& operator=(const FieldTower&) = delete;

    const FieldParams& params() const { return params_; }
    const PrimeField* fp() const { return &fp_; }
    const QuadCtx<Fp>* fp2() const { return &fp2_; }
    const QuadCtx<Fp2>* fp4() const { return &fp4_; }

    Fp2 zero() const { return fq_zero(&fp2_); }
    Fp2 one() const { return fq_one(&fp2_); }
    Fp2 from_int(const Int& c0) const { return {&fp2_, Fp(&fp_, c0), fq_zero(&fp_)}; }
    Fp2 make(const Int& c0, const Int& c1) const { return {&fp2_, Fp(&fp_, c0), Fp(&fp_, c1)}; }
    Fp2 omega() const { return {&fp2_, fq_zero(&fp_), fq_one(&fp_)}; }

    Fp4 embed(const Fp2& x) const { return {&fp4_, x, fq_zero(&fp2_)}; }
    // Descend an F_{p^4} value known to lie in F_{p^2}.
    Fp2 descend(const Fp4& x) const {
        if (!x.b.is_zero()) fail(Err::InternalError, "value does not descend to F_p^2");
        return x.a;
    }

    // Canonical encoding: fixed-width big-endian c0 then c1.
    void encode(const Fp2& x, std::vector<std::uint8_t>& out) const;
    Fp2 decode(const std::uint8_t* data, std::size_t len, std::size_t* consumed) const;
    std::size_t element_size() const { return 2 * fp_.width; }

  private:
    FieldParams params_;
    PrimeField fp_;
    QuadCtx<Fp> fp2_;
    QuadCtx<Fp2> fp4_;
};

} // namespace g2uds
