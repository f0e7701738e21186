#pragma once

#include <stdexcept>

#include "counters.hpp"
#include "model.hpp"
#include "scalar.hpp"

namespace mu4 {

// Which ring assumptions a schedule may use. Auto picks TwoInvertible away from char 2.
enum class RingVariant { Auto, AnyRing, TwoInvertible };

namespace detail {

template <class F>
RingVariant resolve(RingVariant v) {
    if (v == RingVariant::Auto) return F::kChar2 ? RingVariant::AnyRing : RingVariant::TwoInvertible;
    if (v == RingVariant::TwoInvertible && F::kChar2) throw std::domain_error("2 is not invertible in characteristic 2");
    return v;
}

template <class F>
void require_split(const Curve<F>& C, const char* what) {
    if (C.form() != Form::Split) throw std::domain_error(std::string(what) + " needs the split form");
}

template <class F>
void require_char2(const char* what) {
    if (!F::kChar2) throw std::domain_error(std::string(what) + " needs a binary field");
}

template <class F>
Point4<F> out(typename F::Elt z0, typename F::Elt z1, typename F::Elt z2, typename F::Elt z3) {
    return Point4<F>{{std::move(z0), std::move(z1), std::move(z2), std::move(z3)}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Split form, untwisted: the basis s0..s3, evaluated as printed.

template <class F>
Point4<F> add_law_split_raw(const Arith<F>& ar, const Curve<F>& C, int l, const Point4<F>& X, const Point4<F>& Y) {
    detail::require_split(C, "addition law basis");
    if (C.twisted()) throw std::domain_error("the s0..s3 basis is stated for the untwisted split form");
    const auto& kc = C.k_param();
    auto U = [&](int j, int k) { return ar.mul(X[j], Y[k]); };
    switch (l & 3) {
        case 0: {
            auto u13 = U(1, 3), u31 = U(3, 1), u20 = U(2, 0), u02 = U(0, 2);
            return detail::out<F>(ar.sub(ar.sqr(u13), ar.sqr(u31)),
                                  ar.mulc(kc, ar.sub(ar.mul(u13, u20), ar.mul(u31, u02))),
                                  ar.sub(ar.sqr(u20), ar.sqr(u02)),
                                  ar.mulc(kc, ar.sub(ar.mul(u20, u31), ar.mul(u13, u02))));
        }
        case 1: {
            auto u03 = U(0, 3), u10 = U(1, 0), u21 = U(2, 1), u32 = U(3, 2);
            return detail::out<F>(ar.mulc(kc, ar.add(ar.mul(u03, u10), ar.mul(u21, u32))),
                                  ar.sub(ar.sqr(u10), ar.sqr(u32)),
                                  ar.mulc(kc, ar.add(ar.mul(u03, u32), ar.mul(u10, u21))),
                                  ar.sub(ar.sqr(u03), ar.sqr(u21)));
        }
        case 2: {
            auto u00 = U(0, 0), u11 = U(1, 1), u22 = U(2, 2), u33 = U(3, 3);
            return detail::out<F>(ar.sub(ar.sqr(u00), ar.sqr(u22)),
                                  ar.mulc(kc, ar.sub(ar.mul(u00, u11), ar.mul(u22, u33))),
                                  ar.sub(ar.sqr(u11), ar.sqr(u33)),
                                  ar.mulc(kc, ar.sub(ar.mul(u00, u33), ar.mul(u11, u22))));
        }
        default: {
            auto u01 = U(0, 1), u12 = U(1, 2), u23 = U(2, 3), u30 = U(3, 0);
            return detail::out<F>(ar.mulc(kc, ar.add(ar.mul(u01, u30), ar.mul(u12, u23))),
                                  ar.sub(ar.sqr(u01), ar.sqr(u23)),
                                  ar.mulc(kc, ar.add(ar.mul(u01, u12), ar.mul(u23, u30))),
                                  ar.sub(ar.sqr(u30), ar.sqr(u12)));
        }
    }
}

// s2 on the untwisted split form with the cheap schedules:
// 9M+2m (any ring), 8M+2m (2 invertible), 7M+2S+2m (characteristic 2).
template <class F>
Point4<F> add_split_s2(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& X, const Point4<F>& Y,
                       RingVariant variant = RingVariant::Auto) {
    detail::require_split(C, "s2 schedule");
    if (C.twisted()) throw std::domain_error("untwisted s2 schedule used on a twisted curve");
    const auto& kc = C.k_param();
    auto u00 = ar.mul(X[0], Y[0]), u11 = ar.mul(X[1], Y[1]), u22 = ar.mul(X[2], Y[2]), u33 = ar.mul(X[3], Y[3]);
    if constexpr (F::kChar2) {
        (void)variant;
        auto e = ar.add(u00, u22), g = ar.add(u11, u33);
        auto z1 = ar.mulc(kc, ar.add(ar.mul(u00, u11), ar.mul(u22, u33)));
        auto A = ar.mulc(kc, ar.mul(e, g));
        return detail::out<F>(ar.sqr(e), z1, ar.sqr(g), ar.add(A, z1));
    } else {
        auto dm = ar.sub(u00, u22), dp = ar.add(u00, u22), gm = ar.sub(u11, u33), gp = ar.add(u11, u33);
        auto z0 = ar.mul(dm, dp), z2 = ar.mul(gm, gp);
        auto A = ar.mulc(kc, ar.mul(dm, gp));
        if (detail::resolve<F>(variant) == RingVariant::TwoInvertible) {
            auto B = ar.mulc(kc, ar.mul(dp, gm));
            return detail::out<F>(ar.mul_small(2, z0), ar.add(A, B), ar.mul_small(2, z2), ar.sub(A, B));
        }
        auto z1 = ar.mulc(kc, ar.sub(ar.mul(u00, u11), ar.mul(u22, u33)));
        return detail::out<F>(z0, z1, z2, ar.sub(A, z1));
    }
}

// s_l on the untwisted split form; l = 2 goes through the counted schedule.
template <class F>
Point4<F> add_law_split_generic(const Arith<F>& ar, int l, const Point4<F>& X, const Point4<F>& Y, const Curve<F>& C) {
    if ((l & 3) == 2) return add_split_s2(ar, C, X, Y);
    return add_law_split_raw(ar, C, l, X, Y);
}

// ---------------------------------------------------------------------------
// Twisted split form over any field: the (s2,s3) and (s0,s1) pairs.

// (s2,s3): 9M+2m with 2 invertible, 11M+2m over any ring. Zero on P-Q in {R, R+Q}.
template <class F>
Point4<F> add_generic_twisted(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& X, const Point4<F>& Y,
                              RingVariant variant = RingVariant::Auto) {
    detail::require_split(C, "twisted addition");
    const auto& kc = C.k_param();
    const auto &ka = C.k_a(), &kD = C.k_D();
    auto u00 = ar.mul(X[0], Y[0]), u11 = ar.mul(X[1], Y[1]), u22 = ar.mul(X[2], Y[2]), u33 = ar.mul(X[3], Y[3]);
    auto v = ar.mul(ar.sub(X[1], X[3]), ar.sub(Y[1], Y[3]));
    auto du22 = ar.mulc(kD, u22);
    auto em = ar.sub(u00, du22);
    auto av2 = ar.mul_small(2, ar.mulc(ka, v));
    if (detail::resolve<F>(variant) == RingVariant::TwoInvertible) {
        auto ep = ar.add(u00, du22);
        auto h = ar.add(ar.add(u11, u33), av2), gm = ar.sub(u11, u33);
        auto z0 = ar.mul(ep, em), z2 = ar.mul(h, gm);
        auto A = ar.mulc(kc, ar.mul(h, em)), B = ar.mulc(kc, ar.mul(ep, gm));
        return detail::out<F>(ar.mul_small(2, z0), ar.add(A, B), ar.mul_small(2, z2), ar.sub(A, B));
    }
    auto z0 = ar.mul(ar.add(u00, du22), em);
    auto z2 = ar.mul(ar.add(ar.add(u11, u33), av2), ar.sub(u11, u33));
    auto K = ar.mul(v, em);
    auto L = ar.mul(em, ar.add(u11, u33));
    auto z1 = ar.mulc(kc, ar.add(ar.sub(ar.mul(u00, u11), ar.mulc(kD, ar.mul(u22, u33))), ar.mulc(ka, K)));
    auto S = ar.mulc(kc, ar.add(L, ar.mul_small(2, ar.mulc(ka, K))));
    return detail::out<F>(z0, z1, z2, ar.sub(S, z1));
}

// (s0,s1) over any ring. Zero on P-Q in {O, Q}.
template <class F>
Point4<F> add_generic_twisted_01(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& X, const Point4<F>& Y) {
    detail::require_split(C, "twisted addition");
    const auto& kc = C.k_param();
    const auto& ka = C.k_a();
    auto u13 = ar.mul(X[1], Y[3]), u31 = ar.mul(X[3], Y[1]), u02 = ar.mul(X[0], Y[2]), u20 = ar.mul(X[2], Y[0]);
    auto v = ar.mul(ar.sub(X[1], X[3]), ar.sub(Y[1], Y[3]));
    auto d20 = ar.sub(u20, u02);
    auto z0 = ar.mul(ar.sub(u13, u31), ar.sub(ar.add(u13, u31), ar.mul_small(2, ar.mulc(ka, v))));
    auto z2 = ar.mul(d20, ar.add(u20, u02));
    auto aw = ar.mulc(ka, ar.mul(v, d20));
    auto z1 = ar.mulc(kc, ar.sub(ar.sub(ar.mul(u13, u20), ar.mul(u31, u02)), aw));
    auto z3 = ar.mulc(kc, ar.sub(ar.sub(ar.mul(u31, u20), ar.mul(u13, u02)), aw));
    return detail::out<F>(z0, z1, z2, z3);
}

// ---------------------------------------------------------------------------
// Binary fields: the s0/s2 pair on every form of the hierarchy.

namespace detail {

// s0: exceptional exactly on the diagonal. a_term=false drops V and F (valid only when a = 0).
template <class F>
Point4<F> binary_s0(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& X, const Point4<F>& Y, bool a_term) {
    auto u02 = ar.mul(X[0], Y[2]), u20 = ar.mul(X[2], Y[0]), u13 = ar.mul(X[1], Y[3]), u31 = ar.mul(X[3], Y[1]);
    auto t = ar.add(u13, u31), v = ar.add(u02, u20);
    auto z0 = ar.sqr(t), z2 = ar.sqr(v);
    auto z1 = ar.add(ar.mul(u02, u31), ar.mul(u20, u13));
    if (a_term) {
        auto V = ar.mul(ar.add(X[1], X[3]), ar.add(Y[1], Y[3]));
        z1 = ar.add(z1, ar.mulc(C.k_a(), ar.mul(V, v)));
    }
    auto z3 = ar.add(z1, ar.mul(v, t));
    switch (C.form()) {
        case Form::Generic: break;
        case Form::Semisplit: z0 = ar.mulc(C.k_w(), z0); break;
        case Form::Split:
            z1 = ar.mulc(C.k_param(), z1);
            z3 = ar.mulc(C.k_param(), z3);
            break;
    }
    return out<F>(z0, z1, z2, z3);
}

// s2: exceptional exactly when P - Q is the rational 2-torsion point with X0 = 0 fixed by negation.
template <class F>
Point4<F> binary_s2(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& X, const Point4<F>& Y, bool a_term) {
    auto u00 = ar.mul(X[0], Y[0]), u11 = ar.mul(X[1], Y[1]), u22 = ar.mul(X[2], Y[2]), u33 = ar.mul(X[3], Y[3]);
    if (C.form() == Form::Generic) u22 = ar.mulc(C.k_param(), u22);
    auto e = ar.add(u00, u22), g = ar.add(u11, u33);
    auto z0 = ar.sqr(e), z2 = ar.sqr(g);
    auto z1 = ar.add(ar.mul(u00, u11), ar.mul(u22, u33));
    if (a_term) {
        auto V = ar.mul(ar.add(X[1], X[3]), ar.add(Y[1], Y[3]));
        z1 = ar.add(z1, ar.mulc(C.k_a(), ar.mul(V, e)));
    }
    auto z3 = ar.add(z1, ar.mul(e, g));
    switch (C.form()) {
        case Form::Generic: break;
        case Form::Semisplit: z2 = ar.mulc(C.k_w(), z2); break;
        case Form::Split:
            z1 = ar.mulc(C.k_param(), z1);
            z3 = ar.mulc(C.k_param(), z3);
            break;
    }
    return out<F>(z0, z1, z2, z3);
}

}  // namespace detail

// 9M+2S on generic, +1m semisplit, +2m split. Always evaluates the twisted law.
template <class F>
Point4<F> add_binary_twisted(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& P, const Point4<F>& Q) {
    detail::require_char2<F>("binary addition");
    return detail::binary_s0(ar, C, P, Q, true);
}

template <class F>
Point4<F> add_binary_twisted_s2(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& P, const Point4<F>& Q) {
    detail::require_char2<F>("binary addition");
    return detail::binary_s2(ar, C, P, Q, true);
}

// a = 0 only: the s0 law without the a-term, 7M+2S on generic.
template <class F>
Point4<F> add_binary_untwisted(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& P, const Point4<F>& Q) {
    detail::require_char2<F>("binary addition");
    if (C.twisted()) throw std::domain_error("untwisted addition used on a twisted curve");
    return detail::binary_s0(ar, C, P, Q, false);
}

// ---------------------------------------------------------------------------
// Doubling.

// Binary, any form: 2M+5S+2m on generic/semisplit, 2M+5S+3m on split.
template <class F>
Point4<F> double_binary(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& P) {
    detail::require_char2<F>("binary doubling");
    const auto &ka = C.k_a(), &ka2 = C.k_a2();
    auto X0 = P[0], X2 = P[2];
    if (C.form() == Form::Generic) X2 = ar.mulc(C.k_q(), X2);
    auto s1 = ar.sqr(ar.add(X0, X2)), s3 = ar.sqr(ar.add(P[1], P[3]));
    auto s1s = ar.sqr(s1), s3s = ar.sqr(s3);
    auto m1 = ar.mul(ar.add(X0, P[3]), ar.add(P[1], X2));
    auto m2s = ar.mul(s1, s3);
    auto e2 = ar.add(ar.sqr(m1), ar.mulc(ka2, s3s));
    switch (C.form()) {
        case Form::Generic: e2 = ar.add(e2, ar.add(ar.mulc(C.k_param(), s3s), s1s)); break;
        case Form::Semisplit: e2 = ar.add(e2, ar.add(ar.mulc(C.k_w2(), s3s), s1s)); break;
        case Form::Split: e2 = ar.add(e2, ar.mulc(C.k_u4(), ar.add(s1s, s3s))); break;
    }
    auto lo = ar.add(e2, ar.mulc(ka, m2s));  // E^2 + a M2^2
    auto hi = ar.add(lo, m2s);                // E^2 + (1+a) M2^2
    switch (C.form()) {
        case Form::Generic: return detail::out<F>(s1s, lo, s3s, hi);
        case Form::Semisplit: return detail::out<F>(s1s, lo, ar.mulc(C.k_w(), s3s), hi);
        case Form::Split: break;
    }
    return detail::out<F>(ar.mulc(C.k_u(), s1s), lo, ar.mulc(C.k_u(), s3s), hi);
}

// Split form over any field. Untwisted: 4M+4S+2m (2 invertible) / 5M+4S+2m.
// Twisted: 4M+5S+2m / 6M+5S+2m.
template <class F>
Point4<F> double_generic(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& P,
                         RingVariant variant = RingVariant::Auto) {
    detail::require_split(C, "doubling");
    const auto& kc = C.k_param();
    bool two_inv = detail::resolve<F>(variant) == RingVariant::TwoInvertible;
    auto x0 = ar.sqr(P[0]), x1 = ar.sqr(P[1]), x2 = ar.sqr(P[2]), x3 = ar.sqr(P[3]);
    if (!C.twisted()) {
        auto dm = ar.sub(x0, x2), dp = ar.add(x0, x2), gm = ar.sub(x1, x3), gp = ar.add(x1, x3);
        auto z0 = ar.mul(dm, dp), z2 = ar.mul(gm, gp);
        auto A = ar.mulc(kc, ar.mul(dm, gp));
        if (two_inv) {
            auto B = ar.mulc(kc, ar.mul(dp, gm));
            return detail::out<F>(ar.mul_small(2, z0), ar.add(A, B), ar.mul_small(2, z2), ar.sub(A, B));
        }
        auto z1 = ar.mulc(kc, ar.sub(ar.mul(x0, x1), ar.mul(x2, x3)));
        return detail::out<F>(z0, z1, z2, ar.sub(A, z1));
    }
    const auto &ka = C.k_a(), &kD = C.k_D();
    auto v = ar.sqr(ar.sub(P[1], P[3]));
    auto dx2 = ar.mulc(kD, x2);
    auto em = ar.sub(x0, dx2);
    auto av2 = ar.mul_small(2, ar.mulc(ka, v));
    if (two_inv) {
        auto ep = ar.add(x0, dx2);
        auto h = ar.add(ar.add(x1, x3), av2), gm = ar.sub(x1, x3);
        auto z0 = ar.mul(ep, em), z2 = ar.mul(h, gm);
        auto A = ar.mulc(kc, ar.mul(h, em)), B = ar.mulc(kc, ar.mul(ep, gm));
        return detail::out<F>(ar.mul_small(2, z0), ar.add(A, B), ar.mul_small(2, z2), ar.sub(A, B));
    }
    auto z0 = ar.mul(ar.add(x0, dx2), em);
    auto z2 = ar.mul(ar.add(ar.add(x1, x3), av2), ar.sub(x1, x3));
    auto K = ar.mul(v, em);
    auto L = ar.mul(em, ar.add(x1, x3));
    auto z1 = ar.mulc(kc, ar.add(ar.sub(ar.mul(x0, x1), ar.mulc(kD, ar.mul(x2, x3))), ar.mulc(ka, K)));
    auto S = ar.mulc(kc, ar.add(L, ar.mul_small(2, ar.mulc(ka, K))));
    return detail::out<F>(z0, z1, z2, ar.sub(S, z1));
}

template <class F>
Point4<F> double_point(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& P) {
    if constexpr (F::kChar2) return double_binary(ar, C, P);
    else return double_generic(ar, C, P);
}

// ---------------------------------------------------------------------------
// Complete addition.

template <class F>
Point4<F> add_complete(const Arith<F>& ar, const Curve<F>& C, const Point4<F>& P, const Point4<F>& Q) {
    const F& f = C.field();
    Point4<F> Z;
    if constexpr (F::kChar2) {
        bool tw = C.twisted();
        Z = detail::binary_s0(ar, C, P, Q, tw);
        if (is_zero_tuple(f, Z)) Z = detail::binary_s2(ar, C, P, Q, tw);
    } else {
        detail::require_split(C, "complete addition outside characteristic 2");
        if (C.twisted()) {
            Z = add_generic_twisted_01(ar, C, P, Q);
            if (is_zero_tuple(f, Z)) Z = add_generic_twisted(ar, C, P, Q);
        } else {
            Z = add_law_split_raw(ar, C, 0, P, Q);
            if (is_zero_tuple(f, Z)) Z = add_split_s2(ar, C, P, Q);
        }
    }
    if (is_zero_tuple(f, Z)) throw std::domain_error("both addition laws vanish: inputs are not on the curve");
    return Z;
}

template <class F>
Point4<F> add_complete(const Curve<F>& C, const Point4<F>& P, const Point4<F>& Q) {
    return add_complete(Arith<F>(C.field()), C, P, Q);
}

template <class F>
Point4<F> double_point(const Curve<F>& C, const Point4<F>& P) {
    return double_point(Arith<F>(C.field()), C, P);
}

// Left-to-right double-and-add through the complete pair.
template <class F>
Point4<F> scalar_mul_double_add(const Arith<F>& ar, const Curve<F>& C, const Scalar& k, const Point4<F>& P) {
    if (k < 0) return C.negate(scalar_mul_double_add(ar, C, Scalar(-k), P));
    Point4<F> R = C.identity();
    for (int i = scalar_bits(k) - 1; i >= 0; --i) {
        R = double_point(ar, C, R);
        if (scalar_bit(k, i)) R = add_complete(ar, C, R, P);
    }
    return R;
}

template <class F>
Point4<F> scalar_mul_double_add(const Curve<F>& C, const Scalar& k, const Point4<F>& P) {
    return scalar_mul_double_add(Arith<F>(C.field()), C, k, P);
}

}  // namespace mu4
