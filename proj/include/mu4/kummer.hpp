#pragma once

#include <stdexcept>
#include <utility>

#include "counters.hpp"
#include "grouplaw.hpp"
#include "model.hpp"
#include "scalar.hpp"

namespace mu4 {

template <class F>
struct KummerPoint {
    typename F::Elt U0, U1;
};

template <class F>
bool kummer_eq(const F& f, const KummerPoint<F>& a, const KummerPoint<F>& b) {
    return f.mul(a.U0, b.U1) == f.mul(a.U1, b.U0);
}

template <class F>
std::string serialize_kummer(const F& f, const KummerPoint<F>& k) {
    typename F::Elt u0 = k.U0, u1 = k.U1;
    if (!f.is_zero(u0)) {
        u1 = f.mul(u1, f.inv(u0));
        u0 = f.one();
    } else {
        u1 = f.one();
    }
    return "(" + f.to_hex(u0) + ":" + f.to_hex(u1) + ")";
}

// pi(X) = (cX0 : X1+X3) = (X1-X3 : cX2) on the split form.
template <class F>
KummerPoint<F> project_kummer(const Curve<F>& C, const Point4<F>& P) {
    const F& f = C.field();
    if (C.form() != Form::Split) throw std::domain_error("Kummer projection needs the split form");
    KummerPoint<F> k{f.mul(C.c(), P[0]), f.add(P[1], P[3])};
    if (f.is_zero(k.U0) && f.is_zero(k.U1)) k = {f.sub(P[1], P[3]), f.mul(C.c(), P[2])};
    if (f.is_zero(k.U0) && f.is_zero(k.U1)) throw std::domain_error("point is not on the curve");
    return k;
}

enum class LadderVariant {
    FourSquare,  // 4M + 4S + 1m_t + 2m_c
    FiveSquare,  // 4M + 5S + 1m_t + 1m_c
};

// (pi((n+1)P), pi(nP)).
template <class F>
struct LadderState {
    KummerPoint<F> R0, R1;
};

// Base-point data for the ladder on K(Delta_P), with t = pi(P) normalized to t1 = 1.
template <class F>
class MontContext {
public:
    using Elt = typename F::Elt;

    MontContext(const Curve<F>& C, const Point4<F>& P, LadderVariant variant = LadderVariant::FourSquare)
        : C_(C), s_(P), variant_(variant) {
        static_assert(F::kChar2, "the Kummer ladder is implemented for binary fields");
        const F& f = C.field();
        if (C.form() != Form::Split) throw std::domain_error("ladder context needs the split form");
        C.check_on_curve(P, "base point");
        if (f.add(P[1], P[3]) == f.zero()) throw std::domain_error("ladder base point is O or 2-torsion");
        KummerPoint<F> t = project_kummer(C, P);
        t0_ = f.mul(t.U0, f.inv(t.U1));
        kt0_ = {t0_, CostClass::Ladder, "t0"};
        kc_ = C.k_param();
        kc2_ = C.k_c2();
    }

    const Curve<F>& curve() const { return C_; }
    const Point4<F>& base() const { return s_; }
    LadderVariant variant() const { return variant_; }
    KummerPoint<F> t() const { return {t0_, C_.field().one()}; }
    const Const<Elt>& k_t0() const { return kt0_; }

    // t0^2 (U0V1+U1V0)^2 + (U0V0+U1V1)^2 = c^2 t0 U0U1V0V1
    bool on_kdelta(const KummerPoint<F>& U, const KummerPoint<F>& V) const {
        const F& f = C_.field();
        Elt B = f.add(f.mul(U.U0, V.U1), f.mul(U.U1, V.U0));
        Elt A = f.add(f.mul(U.U0, V.U0), f.mul(U.U1, V.U1));
        Elt lhs = f.add(f.mul(f.sqr(t0_), f.sqr(B)), f.sqr(A));
        Elt rhs = f.mul(f.mul(C_.c2(), t0_), f.mul(f.mul(U.U0, U.U1), f.mul(V.U0, V.U1)));
        return lhs == rhs;
    }

    KummerPoint<F> dbl(const Arith<F>& ar, const KummerPoint<F>& U) const {
        auto w = ar.mul(U.U0, U.U1);
        auto z = ar.sqr(ar.add(U.U0, U.U1));
        if (variant_ == LadderVariant::FourSquare) return {ar.sqr(z), ar.mulc(kc2_, ar.sqr(w))};
        return {ar.sqr(z), ar.sqr(ar.mulc(kc_, w))};
    }

    // pi(U+V) from pi(U), pi(V) with U - V = +-P.
    KummerPoint<F> diffadd(const Arith<F>& ar, const KummerPoint<F>& U, const KummerPoint<F>& V) const {
        auto p = ar.mul(U.U0, V.U1), q = ar.mul(U.U1, V.U0);
        auto B = ar.add(p, q);
        if (variant_ == LadderVariant::FourSquare) {
            auto b2 = ar.sqr(B);
            return {ar.add(ar.mulc(kt0_, b2), ar.mulc(kc2_, ar.mul(p, q))), b2};
        }
        auto A = ar.add(ar.mul(ar.add(U.U0, U.U1), ar.add(V.U0, V.U1)), B);
        return {ar.sqr(A), ar.mulc(kt0_, ar.sqr(B))};
    }

private:
    Curve<F> C_;
    Point4<F> s_;
    LadderVariant variant_;
    Elt t0_{};
    Const<Elt> kt0_, kc_, kc2_;
};

template <class F>
LadderState<F> ladder_start(const MontContext<F>& ctx) {
    const F& f = ctx.curve().field();
    return {ctx.t(), {f.one(), f.zero()}};
}

template <class F>
LadderState<F> mont_step(const Arith<F>& ar, const LadderState<F>& st, int bit, const MontContext<F>& ctx) {
    if (bit) return {ctx.dbl(ar, st.R0), ctx.diffadd(ar, st.R0, st.R1)};
    return {ctx.diffadd(ar, st.R1, st.R0), ctx.dbl(ar, st.R1)};
}

// MSB-first; returns (pi((k+1)P), pi(kP)).
template <class F>
LadderState<F> ladder(const Arith<F>& ar, const Scalar& k, const MontContext<F>& ctx) {
    if (k < 0) throw std::domain_error("ladder scalar must be non-negative");
    LadderState<F> st = ladder_start(ctx);
    for (int i = scalar_bits(k) - 1; i >= 0; --i) st = mont_step(ar, st, scalar_bit(k, i) ? 1 : 0, ctx);
    return st;
}

template <class F>
LadderState<F> ladder(const Scalar& k, const MontContext<F>& ctx) {
    return ladder(Arith<F>(ctx.curve().field()), k, ctx);
}

// Inverse of lambda, both branches. With U = pi(Q) and V = pi(Q+P) the result is -Q.
template <class F>
std::pair<Point4<F>, Point4<F>> lambda_inverse_branches(const MontContext<F>& ctx, const KummerPoint<F>& U,
                                                         const KummerPoint<F>& V) {
    const F& f = ctx.curve().field();
    const auto& s = ctx.base();
    const auto& c = ctx.curve().c();
    auto s13 = f.add(s[1], s[3]);
    auto u00 = f.sqr(U.U0), u11 = f.sqr(U.U1), u01 = f.mul(U.U0, U.U1);
    auto cu01 = f.mul(c, u01);
    auto e1 = f.add(f.mul(s[0], u00), f.mul(s[2], u11));
    Point4<F> b1{{f.mul(s13, f.mul(u00, V.U0)), f.add(f.mul(e1, V.U1), f.mul(s[1], f.mul(cu01, V.U0))),
                  f.mul(s13, f.mul(u11, V.U0)), f.add(f.mul(e1, V.U1), f.mul(s[3], f.mul(cu01, V.U0)))}};
    auto e2 = f.add(f.mul(s[2], u00), f.mul(s[0], u11));
    Point4<F> b2{{f.mul(s13, f.mul(u00, V.U1)), f.add(f.mul(e2, V.U0), f.mul(s[3], f.mul(cu01, V.U1))),
                  f.mul(s13, f.mul(u11, V.U1)), f.add(f.mul(e2, V.U0), f.mul(s[1], f.mul(cu01, V.U1)))}};
    return {b1, b2};
}

// kP from the ladder state (pi((k+1)P), pi(kP)).
template <class F>
Point4<F> recover_point(const LadderState<F>& st, const MontContext<F>& ctx) {
    const F& f = ctx.curve().field();
    auto [b1, b2] = lambda_inverse_branches(ctx, st.R1, st.R0);
    const Point4<F>& r = is_zero_tuple(f, b1) ? b2 : b1;
    if (is_zero_tuple(f, r)) throw std::domain_error("ladder state is not on K(Delta_P)");
    return ctx.curve().negate(r);
}

// kP: ladder plus recovery in characteristic 2 (through the split companion),
// double-and-add for torsion bases and odd characteristic.
template <class F>
Point4<F> scalar_mul(const Scalar& k, const Point4<F>& P, const Curve<F>& C,
                     LadderVariant variant = LadderVariant::FourSquare) {
    C.check_on_curve(P, "input point");
    if (k < 0) return C.negate(scalar_mul(Scalar(-k), P, C, variant));
    if constexpr (F::kChar2) {
        const F& f = C.field();
        Curve<F> S = split_companion(C);
        Point4<F> Ps = hierarchy_map(P, C, S);
        if (f.add(Ps[1], Ps[3]) == f.zero()) return scalar_mul_double_add(C, k, P);
        MontContext<F> ctx(S, Ps, variant);
        return hierarchy_map(recover_point(ladder(k, ctx), ctx), S, C);
    } else {
        (void)variant;
        return scalar_mul_double_add(C, k, P);
    }
}

}  // namespace mu4
