#include "oracle_igusa.hpp"

#include "g2uds/errors.hpp"

#include <algorithm>
#include <array>

namespace g2uds::oracle {
namespace {

using Pairing = std::array<std::array<int, 2>, 3>;
using Split = std::array<std::array<int, 3>, 2>;

// All 15 ways to split {0..5} into three unordered pairs.
std::vector<Pairing> all_pairings() {
    std::vector<Pairing> out;
    std::vector<int> rem{0, 1, 2, 3, 4, 5};
    Pairing cur{};
    auto rec = [&](auto&& self, std::vector<int> r, int depth) -> void {
        if (r.empty()) {
            out.push_back(cur);
            return;
        }
        int a = r[0];
        for (std::size_t k = 1; k < r.size(); ++k) {
            cur[depth] = {a, r[k]};
            std::vector<int> next;
            for (std::size_t j = 1; j < r.size(); ++j)
                if (j != k) next.push_back(r[j]);
            self(self, next, depth + 1);
        }
    };
    rec(rec, rem, 0);
    return out;
}

// All 10 unordered splits of {0..5} into two triples.
std::vector<Split> all_splits() {
    std::vector<Split> out;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c) {
                if (a != 0) continue; // fix 0 in the first triple to avoid duplicates
                std::array<int, 3> t1{a, b, c}, t2{};
                int k = 0;
                for (int x = 0; x < 6; ++x)
                    if (x != a && x != b && x != c) t2[k++] = x;
                out.push_back({t1, t2});
            }
    return out;
}

Fp2 sq(const Fp2& x) { return x * x; }

} // namespace

IclValues icl_from_sextic_roots(const FieldTower& T, const std::vector<Fp2>& roots,
                                const Fp2& lead) {
    if (roots.size() != 6) fail(Err::InternalError, "need six roots");
    auto d = [&](int i, int j) { return roots[i] - roots[j]; };
    Fp2 lead2 = lead * lead;

    Fp2 I2 = T.zero();
    for (const auto& pr : all_pairings()) {
        Fp2 t = T.one();
        for (const auto& [a, b] : pr) t = t * sq(d(a, b));
        I2 = I2 + t;
    }
    I2 = I2 * lead2;

    auto splits = all_splits();
    auto within = [&](const Split& s) {
        Fp2 t = T.one();
        for (const auto& tri : s)
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) t = t * sq(d(tri[i], tri[j]));
        return t;
    };

    Fp2 I4 = T.zero();
    for (const auto& s : splits) I4 = I4 + within(s);
    I4 = I4 * lead2 * lead2;

    Fp2 I6 = T.zero();
    for (const auto& s : splits) {
        Fp2 base = within(s);
        std::array<int, 3> perm = s[1];
        std::sort(perm.begin(), perm.end());
        do {
            Fp2 t = base;
            for (int i = 0; i < 3; ++i) t = t * sq(d(s[0][i], perm[i]));
            I6 = I6 + t;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    I6 = I6 * lead2 * lead2 * lead2;

    Fp2 I10 = T.one();
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) I10 = I10 * sq(d(i, j));
    for (int k = 0; k < 5; ++k) I10 = I10 * lead2;

    return {I2, I4, I6, I10};
}

IclValues icl_from_quintic_roots(const FieldTower& T, const std::vector<Fp2>& roots,
                                 const Fp2& lead) {
    if (roots.size() != 5) fail(Err::InternalError, "need five roots");
    // Substitute (X, Z) -> (tX + (t-1)Z, X + Z), determinant 1. The binary
    // form lead * Z * prod(X - r_i Z) becomes
    //   lead * (X + Z) * prod((t - r_i) X + (t - 1 - r_i) Z),
    // so the six finite roots are -1 and (r_i - t + 1)/(t - r_i), with
    // leading coefficient lead * prod(t - r_i). Pick t avoiding the roots.
    Fp2 t = T.zero();
    for (Int k = 2;; ++k) {
        t = T.from_int(k);
        bool ok = true;
        for (const auto& r : roots) ok = ok && t != r;
        if (ok) break;
    }
    std::vector<Fp2> nroots{-T.one()};
    Fp2 nlead = lead;
    for (const auto& r : roots) {
        nroots.push_back((r - t + T.one()) * fq_inv(t - r));
        nlead = nlead * (t - r);
    }
    return icl_from_sextic_roots(T, nroots, nlead);
}

} // namespace g2uds::oracle
