#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "model.hpp"
#include "scalar.hpp"

namespace mu4 {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, affine chord-tangent arithmetic.
// Deliberately independent of the group-law code.
template <class F>
struct WeierstrassCurve {
    using Elt = typename F::Elt;
    const F* f;
    Elt a1, a2, a3, a4, a6;
};

template <class F>
struct AffinePointW {
    bool inf = true;
    typename F::Elt x{}, y{};
    static AffinePointW infinity() { return {}; }
    static AffinePointW at(typename F::Elt x, typename F::Elt y) { return {false, x, y}; }
};

template <class F>
bool w_eq(const AffinePointW<F>& P, const AffinePointW<F>& Q) {
    if (P.inf || Q.inf) return P.inf && Q.inf;
    return P.x == Q.x && P.y == Q.y;
}

template <class F>
WeierstrassCurve<F> binary_weierstrass(const F& f, const typename F::Elt& a, const typename F::Elt& b) {
    static_assert(F::kChar2, "y^2 + xy = x^3 + ax^2 + b is the binary model");
    if (f.is_zero(b)) throw std::domain_error("singular binary curve: b = 0");
    return {&f, f.one(), a, f.zero(), f.zero(), b};
}

template <class F>
bool w_on_curve(const WeierstrassCurve<F>& W, const AffinePointW<F>& P) {
    if (P.inf) return true;
    const F& f = *W.f;
    auto lhs = f.add(f.sqr(P.y), f.add(f.mul(W.a1, f.mul(P.x, P.y)), f.mul(W.a3, P.y)));
    auto x2 = f.sqr(P.x);
    auto rhs = f.add(f.add(f.mul(x2, P.x), f.mul(W.a2, x2)), f.add(f.mul(W.a4, P.x), W.a6));
    return lhs == rhs;
}

template <class F>
AffinePointW<F> oracle_neg(const WeierstrassCurve<F>& W, const AffinePointW<F>& P) {
    if (P.inf) return P;
    const F& f = *W.f;
    return AffinePointW<F>::at(P.x, f.sub(f.neg(P.y), f.add(f.mul(W.a1, P.x), W.a3)));
}

template <class F>
AffinePointW<F> oracle_add(const WeierstrassCurve<F>& W, const AffinePointW<F>& P, const AffinePointW<F>& Q) {
    const F& f = *W.f;
    if (P.inf) return Q;
    if (Q.inf) return P;
    typename F::Elt lam, nu;
    if (P.x == Q.x) {
        if (w_eq(Q, oracle_neg(W, P))) return AffinePointW<F>::infinity();
        // Tangent: lam = (3x^2 + 2a2 x + a4 - a1 y) / (2y + a1 x + a3)
        auto den = f.add(f.add(f.add(P.y, P.y), f.mul(W.a1, P.x)), W.a3);
        auto x2 = f.sqr(P.x);
        auto num = f.sub(f.add(f.add(f.add(x2, f.add(x2, x2)), f.mul(f.add(W.a2, W.a2), P.x)), W.a4),
                         f.mul(W.a1, P.y));
        lam = f.mul(num, f.inv(den));
    } else {
        lam = f.mul(f.sub(Q.y, P.y), f.inv(f.sub(Q.x, P.x)));
    }
    nu = f.sub(P.y, f.mul(lam, P.x));
    auto x3 = f.sub(f.sub(f.sub(f.add(f.sqr(lam), f.mul(W.a1, lam)), W.a2), P.x), Q.x);
    auto y3 = f.sub(f.sub(f.neg(f.mul(f.add(lam, W.a1), x3)), nu), W.a3);
    return AffinePointW<F>::at(x3, y3);
}

template <class F>
AffinePointW<F> oracle_mul(const WeierstrassCurve<F>& W, const Scalar& k, const AffinePointW<F>& P) {
    if (k < 0) return oracle_neg(W, oracle_mul(W, Scalar(-k), P));
    AffinePointW<F> R = AffinePointW<F>::infinity();
    for (int i = scalar_bits(k) - 1; i >= 0; --i) {
        R = oracle_add(W, R, R);
        if (scalar_bit(k, i)) R = oracle_add(W, R, P);
    }
    return R;
}

// z with z^2 + z = c, if one exists.
inline std::optional<Gf2mElt> solve_artin_schreier(const Gf2m& f, const Gf2mElt& c) {
    if (f.trace(c)) return std::nullopt;
    if (f.degree() % 2) return f.half_trace(c);
    uint64_t q = f.size_if_small();
    if (!q || q > (uint64_t(1) << 20)) throw std::domain_error("z^2 + z = c solver needs odd m or a small field");
    for (uint64_t i = 0; i < q; ++i) {
        auto z = f.element(i);
        if (f.add(f.sqr(z), z) == c) return z;
    }
    return std::nullopt;
}

// Both points with abscissa x on y^2 + xy = x^3 + a x^2 + b (empty if none).
inline std::vector<AffinePointW<Gf2m>> binary_lift_x(const WeierstrassCurve<Gf2m>& W, const Gf2mElt& x) {
    const Gf2m& f = *W.f;
    std::vector<AffinePointW<Gf2m>> out;
    if (f.is_zero(x)) {
        out.push_back(AffinePointW<Gf2m>::at(x, f.sqrt(W.a6)));
        return out;
    }
    auto rhs = f.add(f.add(f.mul(f.sqr(x), x), f.mul(W.a2, f.sqr(x))), W.a6);
    auto z = solve_artin_schreier(f, f.mul(rhs, f.inv(f.sqr(x))));
    if (!z) return out;
    auto y = f.mul(x, *z);
    out.push_back(AffinePointW<Gf2m>::at(x, y));
    out.push_back(AffinePointW<Gf2m>::at(x, f.add(y, x)));
    return out;
}

inline AffinePointW<Gf2m> binary_random_point(const WeierstrassCurve<Gf2m>& W, std::mt19937_64& rng) {
    const Gf2m& f = *W.f;
    for (;;) {
        auto pts = binary_lift_x(W, f.random(rng));
        if (!pts.empty()) return pts[rng() % pts.size()];
    }
}

template <class F>
std::vector<AffinePointW<F>> enumerate_weierstrass(const WeierstrassCurve<F>& W) {
    const F& f = *W.f;
    uint64_t q = f.size_if_small();
    if (!q || q > 4096) throw std::domain_error("Weierstrass enumeration needs a field with at most 4096 elements");
    std::vector<AffinePointW<F>> out{AffinePointW<F>::infinity()};
    for (uint64_t i = 0; i < q; ++i)
        for (uint64_t j = 0; j < q; ++j) {
            auto P = AffinePointW<F>::at(f.element(i), f.element(j));
            if (w_on_curve(W, P)) out.push_back(P);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Binary Weierstrass <-> generic twisted mu4 with (r, a) = (b, a).

inline void check_binary_pair(const WeierstrassCurve<Gf2m>& W, const Curve<Gf2m>& C) {
    if (C.form() != Form::Generic || C.param() != W.a6 || C.a() != W.a2 || !W.f->is_one(W.a1) ||
        !W.f->is_zero(W.a3) || !W.f->is_zero(W.a4))
        throw std::domain_error("mu4 curve parameters do not match the Weierstrass curve (need generic r=b, same a)");
}

inline Point4<Gf2m> to_mu4(const AffinePointW<Gf2m>& P, const WeierstrassCurve<Gf2m>& W, const Curve<Gf2m>& C) {
    check_binary_pair(W, C);
    const Gf2m& f = *W.f;
    if (P.inf) return C.identity();
    auto x2 = f.sqr(P.x);
    auto x2y = f.add(x2, P.y);
    return Point4<Gf2m>{{x2, x2y, f.one(), f.add(x2y, P.x)}};
}

inline AffinePointW<Gf2m> from_mu4(const Point4<Gf2m>& Q, const Curve<Gf2m>& C) {
    const Gf2m& f = C.field();
    if (C.form() != Form::Generic) throw std::domain_error("from_mu4 needs the generic form");
    if (f.is_zero(Q[2])) return AffinePointW<Gf2m>::infinity();
    auto zi = f.inv(Q[2]);
    return AffinePointW<Gf2m>::at(f.mul(f.add(Q[1], Q[3]), zi), f.mul(f.add(Q[0], Q[1]), zi));
}

// Any form: route through the generic companion.
inline AffinePointW<Gf2m> from_mu4_any(const Point4<Gf2m>& Q, const Curve<Gf2m>& C) {
    auto G = generic_companion(C);
    return from_mu4(hierarchy_map(Q, C, G), G);
}

inline WeierstrassCurve<Gf2m> weierstrass_of(const Curve<Gf2m>& C) {
    auto G = generic_companion(C);
    return binary_weierstrass(C.field(), G.a(), G.param());
}

// ---------------------------------------------------------------------------
// Generic twisted mu4 (r, a) over any field -> long Weierstrass form.

template <class F>
WeierstrassCurve<F> general_weierstrass_curve(const Curve<F>& C) {
    const F& f = C.field();
    if (C.form() != Form::Generic) throw std::domain_error("general Weierstrass model needs the generic form");
    auto r = C.param(), D = C.D(), a = C.a();
    auto D2 = f.sqr(D), D3 = f.mul(D2, D);
    auto a2 = f.sub(a, f.mul(f.from_int(8), f.mul(D, r)));
    auto a4 = f.mul(f.mul(f.from_int(2), D2), f.mul(r, f.sub(f.mul(f.from_int(8), r), f.from_int(3))));
    auto a6 = f.neg(f.mul(D3, f.mul(r, f.sub(f.one(), f.mul(f.from_int(4), r)))));
    return {&f, f.one(), a2, f.zero(), a4, a6};
}

template <class F>
AffinePointW<F> to_weierstrass_general(const Point4<F>& Q, const Curve<F>& C) {
    const F& f = C.field();
    if (C.form() != Form::Generic) throw std::domain_error("general Weierstrass map needs the generic form");
    if constexpr (F::kChar2) {
        throw std::domain_error("general Weierstrass map is for odd characteristic; use from_mu4");
    } else {
        auto r = C.param(), D = C.D();
        auto U0 = f.sub(Q[1], Q[3]), U1 = f.add(Q[0], Q[3]), U2 = Q[2];
        auto two = f.from_int(2);
        auto x = f.mul(D, f.sub(U0, f.mul(f.mul(f.from_int(4), r), f.add(f.mul(two, U0), U2))));
        auto y = f.mul(D, f.sub(U1, f.mul(f.mul(two, r),
                                          f.sub(f.add(f.mul(f.from_int(8), U1), f.mul(two, U0)), U2))));
        auto z = f.sub(U2, f.mul(two, U0));
        if (f.is_zero(x) && f.is_zero(y) && f.is_zero(z)) {
            // Centre of the projection, the 2-torsion point (1:-1:0:-1).
            return AffinePointW<F>::at(f.neg(f.mul(D, f.inv(f.from_int(4)))), f.mul(D, f.inv(f.from_int(8))));
        }
        if (f.is_zero(z)) return AffinePointW<F>::infinity();
        auto zi = f.inv(z);
        return AffinePointW<F>::at(f.mul(x, zi), f.mul(y, zi));
    }
}

// ---------------------------------------------------------------------------
// Generic twisted mu4 (r, a) <-> twisted Edwards -D X1^2 + X2^2 = X0^2 - 16 D r X3^2, X0 X3 = X1 X2.

template <class F>
void require_odd(const char* what) {
    if (F::kChar2) throw std::domain_error(std::string(what) + " needs 2 to be invertible");
}

template <class F>
Point4<F> to_edwards(const Point4<F>& Q, const Curve<F>& C) {
    require_odd<F>("Edwards map");
    if (C.form() != Form::Generic) throw std::domain_error("Edwards map needs the generic form");
    const F& f = C.field();
    auto two = f.from_int(2);
    return Point4<F>{{f.mul(f.from_int(4), Q[0]), f.mul(two, f.sub(Q[1], Q[3])), f.mul(two, f.add(Q[1], Q[3])), Q[2]}};
}

template <class F>
Point4<F> from_edwards(const Point4<F>& E, const Curve<F>& C) {
    require_odd<F>("Edwards map");
    if (C.form() != Form::Generic) throw std::domain_error("Edwards map needs the generic form");
    const F& f = C.field();
    return Point4<F>{{E[0], f.add(E[1], E[2]), f.mul(f.from_int(4), E[3]), f.sub(E[2], E[1])}};
}

template <class F>
bool edwards_on_curve(const Point4<F>& E, const Curve<F>& C) {
    const F& f = C.field();
    if (is_zero_tuple(f, E)) return false;
    auto ea = f.neg(C.D());
    auto ed = f.neg(f.mul(f.from_int(16), f.mul(C.D(), C.param())));
    auto lhs = f.add(f.mul(ea, f.sqr(E[1])), f.sqr(E[2]));
    auto rhs = f.add(f.sqr(E[0]), f.mul(ed, f.sqr(E[3])));
    return lhs == rhs && f.mul(E[0], E[3]) == f.mul(E[1], E[2]);
}

}  // namespace mu4
