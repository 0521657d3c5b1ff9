#include "g2uds/field.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <boost/random/mersenne_twister.hpp>

namespace g2uds {

bool is_prime(const Int& n) {
    if (n < 2) return false;
    // Deterministic trial division for small moduli, probabilistic above.
    if (n < (Int(1) << 32)) {
        for (Int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }
    boost::mt19937 gen(0xc0ffee);
    return boost::multiprecision::miller_rabin_test(n, 64, gen);
}

namespace {

Int pow_int(unsigned base, unsigned exp) {
    Int r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace

FieldParams make_params(unsigned lA, unsigned eA, unsigned lM, unsigned eM, unsigned lC,
                        unsigned eC, const Int& f, int sign) {
    if (lA == 0 || lM == 0 || lC == 0 || eA == 0 || eM == 0 || eC == 0 || f <= 0)
        fail(Err::BadShape, "all parameters must be positive");
    if (sign != 1 && sign != -1) fail(Err::BadShape, "sign must be +1 or -1");
    if (!is_prime(lA) || !is_prime(lM) || !is_prime(lC))
        fail(Err::BadShape, "l_A, l_M, l_C must be prime");
    if (lA == lM || lA == lC || lM == lC) fail(Err::BadShape, "l_A, l_M, l_C must be distinct");
    if (f % lA == 0 || f % lM == 0 || f % lC == 0)
        fail(Err::BadShape, "cofactor f must be coprime to l_A, l_M, l_C");

    FieldParams params;
    params.lA = lA;
    params.eA = eA;
    params.lM = lM;
    params.eM = eM;
    params.lC = lC;
    params.eC = eC;
    params.f = f;
    params.sign = sign;
    params.p = pow_int(lA, eA) * pow_int(lM, eM) * pow_int(lC, eC) * f + sign;
    if (!is_prime(params.p)) fail(Err::NotPrime, "p of the requested shape is not prime");
    return params;
}

namespace {

Int smallest_prime_nonresidue(const Int& p) {
    for (Int q = 2; q < p; ++q)
        if (mod_pow(q, (p - 1) / 2, p) != 1) return q;
    fail(Err::InternalError, "no nonresidue found");
}

} // namespace

FieldTower::FieldTower(const FieldParams& params) : params_(params), fp_(params.p) {
    if (params_.p <= 5) fail(Err::BadShape, "characteristic must exceed 5");
    fp2_.nr = Fp(&fp_, smallest_prime_nonresidue(params_.p));
    fp2_.order = params_.p * params_.p;
    // First nonsquare of F_{p^2} in scan order seeds the second extension.
    for (Int k = 1;; ++k) {
        Fp2 c = kth_element(&fp2_, k);
        if (!c.is_zero() && !fq_is_square(c)) {
            fp4_.nr = c;
            break;
        }
    }
    fp4_.order = fp2_.order * fp2_.order;
}

void FieldTower::encode(const Fp2& x, std::vector<std::uint8_t>& out) const {
    int_to_bytes(x.a.v, fp_.width, out);
    int_to_bytes(x.b.v, fp_.width, out);
}

Fp2 FieldTower::decode(const std::uint8_t* data, std::size_t len, std::size_t* consumed) const {
    if (len < element_size()) fail(Err::TruncatedPayload, "field element truncated");
    Int c0 = int_from_bytes(data, fp_.width);
    Int c1 = int_from_bytes(data + fp_.width, fp_.width);
    if (c0 >= fp_.p || c1 >= fp_.p) fail(Err::TruncatedPayload, "field element not reduced");
    if (consumed) *consumed = element_size();
    return make(c0, c1);
}

} // namespace g2uds
