#pragma once

#include <mu4/field.hpp>
#include <mu4/grouplaw.hpp>
#include <mu4/kummer.hpp>
#include <mu4/model.hpp>
#include <mu4/registry.hpp>
#include <mu4/weierstrass.hpp>

namespace mu4::test {

inline const Gf2m& gf2_3() {
    static const Gf2m f(3, {3, 1, 0});
    return f;
}
inline const Gf2m& gf2_5() {
    static const Gf2m f(5, {5, 2, 0});
    return f;
}
inline const Gf2m& gf2_233() {
    static const Gf2m f(233, {233, 74, 0});
    return f;
}
inline const PrimeField& p13() {
    static const PrimeField f(13);
    return f;
}

inline Gf2mElt g(const Gf2m& f, uint64_t v) { return f.element(v); }
inline PrimeElt n13(int64_t v) { return p13().from_int(v); }

// The twisted test curve over GF(2^5): generic form, (b, a) = (1, 1).
inline Curve<Gf2m> t5_generic() { return Curve<Gf2m>(gf2_5(), Form::Generic, gf2_5().one(), gf2_5().one()); }

// Twisted split curve over GF(13) with c = 2, a = 1 (D = 5).
inline Curve<PrimeField> p13_split_twisted() { return Curve<PrimeField>(p13(), Form::Split, n13(2), n13(1)); }
inline Curve<PrimeField> p13_split() { return Curve<PrimeField>(p13(), Form::Split, n13(2), n13(0)); }

// Oracle transport for binary curves of any form.
struct BinaryOracle {
    Curve<Gf2m> C;
    WeierstrassCurve<Gf2m> W;
    explicit BinaryOracle(const Curve<Gf2m>& c) : C(c), W(weierstrass_of(c)) {}
    AffinePointW<Gf2m> to_w(const Point4<Gf2m>& P) const { return from_mu4_any(P, C); }
    Point4<Gf2m> from_w(const AffinePointW<Gf2m>& P) const {
        auto G = generic_companion(C);
        return hierarchy_map(to_mu4(P, W, G), G, C);
    }
};

// Odd characteristic: split form -> generic (r = 1/c^8) -> long Weierstrass form.
template <class F>
struct OddOracle {
    Curve<F> C, G;
    WeierstrassCurve<F> W;
    explicit OddOracle(const Curve<F>& c)
        : C(c),
          G(c.field(), Form::Generic, c.effective_r(), c.a()),
          W(general_weierstrass_curve(G)) {}
    AffinePointW<F> to_w(const Point4<F>& P) const { return to_weierstrass_general(hierarchy_map(P, C, G), G); }
};

template <class F>
bool same(const Curve<F>& C, const Point4<F>& P, const Point4<F>& Q) {
    return C.eq(P, Q);
}

}  // namespace mu4::test
