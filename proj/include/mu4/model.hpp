#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "counters.hpp"
#include "field.hpp"

namespace mu4 {

enum class Form { Generic, Semisplit, Split };

inline const char* form_name(Form f) {
    switch (f) {
        case Form::Generic: return "generic";
        case Form::Semisplit: return "semisplit";
        case Form::Split: return "split";
    }
    return "?";
}

template <class F>
struct Point4 {
    using Elt = typename F::Elt;
    std::array<Elt, 4> X;
    const Elt& operator[](int i) const { return X[size_t(i)]; }
    Elt& operator[](int i) { return X[size_t(i)]; }
};

template <class F>
bool is_zero_tuple(const F& f, const Point4<F>& P) {
    for (int i = 0; i < 4; ++i)
        if (!f.is_zero(P[i])) return false;
    return true;
}

template <class F>
Point4<F> normalize(const F& f, const Point4<F>& P) {
    for (int i = 0; i < 4; ++i)
        if (!f.is_zero(P[i])) {
            auto s = f.inv(P[i]);
            Point4<F> r;
            for (int j = 0; j < 4; ++j) r[j] = f.mul(s, P[j]);
            return r;
        }
    return P;
}

// Projective equality via 2x2 minors; zero tuples equal only each other.
template <class F>
bool proj_eq(const F& f, const Point4<F>& P, const Point4<F>& Q) {
    bool zp = is_zero_tuple(f, P), zq = is_zero_tuple(f, Q);
    if (zp || zq) return zp && zq;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (f.mul(P[i], Q[j]) != f.mul(P[j], Q[i])) return false;
    return true;
}

template <class F>
Point4<F> scale(const F& f, const typename F::Elt& k, const Point4<F>& P) {
    Point4<F> r;
    for (int i = 0; i < 4; ++i) r[i] = f.mul(k, P[i]);
    return r;
}

template <class F>
std::string serialize_point(const F& f, const Point4<F>& P) {
    Point4<F> n = normalize(f, P);
    std::string s = "(";
    for (int i = 0; i < 4; ++i) s += f.to_hex(n[i]) + (i < 3 ? ":" : ")");
    return s;
}

template <class F>
Point4<F> parse_point(const F& f, const std::string& text) {
    std::string t = text;
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw std::invalid_argument("point must look like (h0:h1:h2:h3)");
    t = t.substr(1, t.size() - 2);
    std::vector<std::string> parts;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4) throw std::invalid_argument("point needs four coordinates");
    Point4<F> P;
    for (int i = 0; i < 4; ++i) P[i] = f.from_hex(parts[size_t(i)]);
    if (is_zero_tuple(f, P)) throw std::invalid_argument("point coordinates are all zero");
    return P;
}

// Square roots where the field offers them.
inline bool try_sqrt(const Gf2m& f, const Gf2mElt& x, Gf2mElt& out) {
    out = f.sqrt(x);
    return true;
}
inline bool try_sqrt(const PrimeField& f, const PrimeElt& x, PrimeElt& out) { return f.sqrt(x, out); }
template <class B>
bool try_sqrt(const QuadExt<B>& f, const QuadElt<B>& x, QuadElt<B>& out) {
    uint64_t n = f.size_if_small();
    for (uint64_t i = 0; i < n; ++i) {
        auto y = f.element(i);
        if (f.sqr(y) == x) {
            out = y;
            return true;
        }
    }
    return false;
}

// Curve in (twisted) mu4-normal form. Parameter is r (generic), s (semisplit) or c (split).
template <class F>
class Curve {
public:
    using Elt = typename F::Elt;
    using P4 = Point4<F>;
    using K = Const<Elt>;

    Curve(const F& f, Form form, const Elt& param, const Elt& a) : f_(&f), form_(form), param_(param), a_(a) {
        if (f.is_zero(param)) throw std::domain_error(std::string("degenerate ") + form_name(form) + " parameter (zero)");
        D_ = f.add(f.one(), f.mul(f.from_int(4), a));
        if (f.is_zero(D_)) throw std::domain_error("degenerate twist: D = 1 + 4a vanishes");
        if (!F::kChar2) {
            // Smoothness away from char 2: r != 1/16 (Edwards parameters must differ).
            Elt r = effective_r();
            if (f.mul(f.from_int(16), r) == f.one()) throw std::domain_error("singular curve: 16r = 1");
        }
        bool small_a = f.is_zero(a) || f.is_one(a);
        ka_ = {a_, small_a ? CostClass::Free : CostClass::Const, "a"};
        kD_ = {D_, small_a ? CostClass::Free : CostClass::Const, "D"};
        ka2_ = {f.sqr(a_), small_a ? CostClass::Free : CostClass::Const, "a^2"};
        kp_ = {param_, CostClass::Const, form == Form::Generic ? "r" : form == Form::Semisplit ? "s" : "c"};
        if (form == Form::Split) {
            u_ = f.inv(param_);
            c2_ = f.sqr(param_);
            ku_ = {u_, CostClass::Const, "u"};
            kc2_ = {c2_, CostClass::Const, "c^2"};
            ku4_ = {f.sqr(f.sqr(u_)), CostClass::Const, "u^4"};
            identity_ = P4{{param_, f.one(), f.zero(), f.one()}};
        } else {
            identity_ = P4{{f.one(), f.one(), f.zero(), f.one()}};
        }
        if constexpr (F::kChar2) {
            if (form == Form::Generic) {
                Elt q;
                try_sqrt(f, param_, q);
                kq_ = {q, CostClass::Const, "sqrt(b)"};
            } else if (form == Form::Semisplit) {
                Elt w = f.inv(param_);
                kw_ = {w, CostClass::Const, "1/s"};
                kw2_ = {f.sqr(w), CostClass::Const, "1/s^2"};
            }
        }
    }

    const F& field() const { return *f_; }
    Form form() const { return form_; }
    const Elt& param() const { return param_; }
    const Elt& a() const { return a_; }
    const Elt& D() const { return D_; }
    bool twisted() const { return !f_->is_zero(a_); }
    const P4& identity() const { return identity_; }

    const Elt& c() const {
        require(Form::Split, "c");
        return param_;
    }
    const Elt& u() const {
        require(Form::Split, "u");
        return u_;
    }
    const Elt& c2() const {
        require(Form::Split, "c^2");
        return c2_;
    }

    // The r of the generic model reached through the hierarchy maps.
    Elt effective_r() const {
        const F& f = *f_;
        switch (form_) {
            case Form::Generic: return param_;
            case Form::Semisplit: return f.inv(f.sqr(param_));
            case Form::Split: return f.inv(f.sqr(f.sqr(f.sqr(param_))));
        }
        return param_;
    }

    // Cost-classified constants.
    const K& k_param() const { return kp_; }
    const K& k_a() const { return ka_; }
    const K& k_D() const { return kD_; }
    const K& k_a2() const { return ka2_; }
    const K& k_u() const { return ku_; }
    const K& k_c2() const { return kc2_; }
    const K& k_u4() const { return ku4_; }
    const K& k_q() const { return kq_; }
    const K& k_w() const { return kw_; }
    const K& k_w2() const { return kw2_; }

    bool on_curve(const P4& P) const {
        const F& f = *f_;
        if (is_zero_tuple(f, P)) return false;
        const Elt &X0 = P[0], &X1 = P[1], &X2 = P[2], &X3 = P[3];
        Elt d13 = f.sub(X1, X3);
        Elt rhs1 = f.sub(f.mul(X1, X3), f.mul(a_, f.sqr(d13)));
        Elt lhs1, e2;
        Elt q2 = f.sub(f.sqr(X1), f.sqr(X3));
        switch (form_) {
            case Form::Generic:
                lhs1 = f.sub(f.sqr(X0), f.mul(f.mul(D_, param_), f.sqr(X2)));
                e2 = f.sub(q2, f.mul(X0, X2));
                break;
            case Form::Semisplit:
                lhs1 = f.sub(f.sqr(X0), f.mul(D_, f.sqr(X2)));
                e2 = f.sub(q2, f.mul(param_, f.mul(X0, X2)));
                break;
            case Form::Split:
                lhs1 = f.sub(f.sqr(X0), f.mul(D_, f.sqr(X2)));
                rhs1 = f.mul(c2_, rhs1);
                e2 = f.sub(q2, f.mul(c2_, f.mul(X0, X2)));
                break;
        }
        return f.is_zero(f.sub(lhs1, rhs1)) && f.is_zero(e2);
    }

    void check_on_curve(const P4& P, const char* what = "point") const {
        if (!on_curve(P)) throw std::domain_error(std::string(what) + " is not on the curve");
    }

    P4 negate(const P4& P) const { return P4{{P[0], P[3], f_->neg(P[2]), P[1]}}; }

    bool eq(const P4& P, const P4& Q) const { return proj_eq(*f_, P, Q); }

    std::string describe() const {
        const F& f = *f_;
        std::string key = form_ == Form::Generic ? (F::kChar2 ? "b" : "r") : form_ == Form::Semisplit ? "s" : "c";
        return std::string("form=") + form_name(form_) + " " + key + "=" + f.to_hex(param_) + " a=" + f.to_hex(a_);
    }

private:
    void require(Form f, const char* what) const {
        if (form_ != f) throw std::domain_error(std::string(what) + " is only defined on the split form");
    }

    const F* f_;
    Form form_;
    Elt param_, a_, D_{}, u_{}, c2_{};
    P4 identity_;
    K ka_, kD_, ka2_, kp_, ku_, kc2_, ku4_, kq_, kw_, kw2_;
};

template <class F>
Curve<F> make_curve(const F& f, Form form, const typename F::Elt& param, const typename F::Elt& a) {
    return Curve<F>(f, form, param, a);
}

// ---------------------------------------------------------------------------
// Translations on the split form (untwisted).

template <class F>
Point4<F> translate_tau(const Curve<F>& C, const Point4<F>& P) {
    if (C.form() != Form::Split || C.twisted())
        throw std::domain_error("tau translation needs the untwisted split form");
    return Point4<F>{{P[3], P[0], P[1], C.field().neg(P[2])}};
}

template <class F>
Point4<F> translate_sigma(const Curve<F>& C, const Point4<F>& P, const typename F::Elt& i) {
    const F& f = C.field();
    if (C.form() != Form::Split || C.twisted())
        throw std::domain_error("sigma translation needs the untwisted split form");
    if (f.sqr(i) != f.neg(f.one())) throw std::domain_error("sigma needs i with i^2 = -1");
    return Point4<F>{{P[0], f.mul(i, P[1]), f.neg(P[2]), f.neg(f.mul(i, P[3]))}};
}

template <class F>
std::optional<typename F::Elt> sqrt_minus_one(const F& f) {
    typename F::Elt r;
    if (try_sqrt(f, f.neg(f.one()), r)) return r;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Torsion.

template <class F>
struct TorsionTable {
    std::vector<Point4<F>> two_torsion;
    std::optional<Point4<F>> four_torsion_T;
};

template <class F>
TorsionTable<F> torsion_table(const Curve<F>& C) {
    const F& f = C.field();
    using P4 = Point4<F>;
    auto z = f.zero(), o = f.one(), mo = f.neg(f.one());
    std::vector<P4> cand;
    switch (C.form()) {
        case Form::Split: {
            auto c = C.c();
            cand = {P4{{f.neg(c), o, z, o}}, P4{{z, mo, c, o}}, P4{{z, mo, f.neg(c), o}}};
            break;
        }
        case Form::Semisplit:
            cand = {P4{{o, mo, z, mo}}, P4{{z, o, o, mo}}, P4{{z, o, mo, mo}}, P4{{z, o, o, o}}};
            break;
        case Form::Generic: {
            cand = {P4{{o, mo, z, mo}}};
            typename F::Elt x;
            auto ri = f.inv(C.param());
            if (try_sqrt(f, ri, x)) {
                cand.push_back(P4{{z, o, x, mo}});
                cand.push_back(P4{{z, o, f.neg(x), mo}});
            }
            auto t = f.neg(f.inv(f.mul(C.D(), C.param())));
            if (try_sqrt(f, t, x)) {
                cand.push_back(P4{{z, o, x, o}});
                cand.push_back(P4{{z, o, f.neg(x), o}});
            }
            break;
        }
    }
    TorsionTable<F> T;
    for (const auto& P : cand) {
        if (!C.on_curve(P) || C.eq(P, C.identity())) continue;
        bool dup = false;
        for (const auto& Q : T.two_torsion) dup = dup || C.eq(P, Q);
        if (!dup) T.two_torsion.push_back(P);
    }
    if (C.form() == Form::Split && !C.twisted()) T.four_torsion_T = P4{{o, C.c(), o, z}};
    return T;
}

// ---------------------------------------------------------------------------
// Hierarchy maps: split(c) -> semisplit(s = c^4) -> generic(r = 1/s^2).

template <class F>
Point4<F> split_to_semisplit(const F& f, const Point4<F>& P, const typename F::Elt& c) {
    return Point4<F>{{P[0], f.mul(c, P[1]), P[2], f.mul(c, P[3])}};
}
template <class F>
Point4<F> semisplit_to_split(const F& f, const Point4<F>& P, const typename F::Elt& c) {
    return Point4<F>{{f.mul(c, P[0]), P[1], f.mul(c, P[2]), P[3]}};
}
template <class F>
Point4<F> semisplit_to_generic(const F& f, const Point4<F>& P, const typename F::Elt& s) {
    return Point4<F>{{P[0], P[1], f.mul(s, P[2]), P[3]}};
}
template <class F>
Point4<F> generic_to_semisplit(const F& f, const Point4<F>& P, const typename F::Elt& s) {
    return Point4<F>{{f.mul(s, P[0]), f.mul(s, P[1]), P[2], f.mul(s, P[3])}};
}

template <class F>
Point4<F> hierarchy_map(const Point4<F>& P, const Curve<F>& from, const Curve<F>& to) {
    const F& f = from.field();
    if (from.a() != to.a()) throw std::domain_error("hierarchy map needs equal twist parameters");
    auto rank = [](Form x) { return x == Form::Split ? 0 : x == Form::Semisplit ? 1 : 2; };
    int rf = rank(from.form()), rt = rank(to.form());
    auto bad = [] { throw std::domain_error("incompatible hierarchy parameters"); };
    if (rf == rt) {
        if (from.param() != to.param()) bad();
        return P;
    }
    // Walk down (split -> generic) or up, checking the parameter relation at each edge.
    if (rf < rt) {
        Point4<F> Q = P;
        typename F::Elt s;
        if (rf == 0) {
            s = f.sqr(f.sqr(from.c()));
            if (rt == 1 && s != to.param()) bad();
            Q = split_to_semisplit(f, Q, from.c());
        } else {
            s = from.param();
        }
        if (rt == 2) {
            if (f.mul(to.param(), f.sqr(s)) != f.one()) bad();
            Q = semisplit_to_generic(f, Q, s);
        }
        return Q;
    }
    Point4<F> Q = P;
    typename F::Elt s;
    if (rt == 0) {
        s = f.sqr(f.sqr(to.c()));
        if (rf == 1 && s != from.param()) bad();
    } else {
        s = to.param();
    }
    if (rf == 2) {
        if (f.mul(from.param(), f.sqr(s)) != f.one()) bad();
        Q = generic_to_semisplit(f, Q, s);
    }
    if (rt == 0) Q = semisplit_to_split(f, Q, to.c());
    return Q;
}

// Companion curves in the hierarchy (binary fields, where the roots always exist).
inline Curve<Gf2m> semisplit_companion(const Curve<Gf2m>& C) {
    const Gf2m& f = C.field();
    switch (C.form()) {
        case Form::Semisplit: return C;
        case Form::Split: return Curve<Gf2m>(f, Form::Semisplit, f.sqr(f.sqr(C.c())), C.a());
        case Form::Generic: return Curve<Gf2m>(f, Form::Semisplit, f.inv(f.sqrt(C.param())), C.a());
    }
    return C;
}
inline Curve<Gf2m> split_companion(const Curve<Gf2m>& C) {
    const Gf2m& f = C.field();
    if (C.form() == Form::Split) return C;
    auto S = semisplit_companion(C);
    return Curve<Gf2m>(f, Form::Split, f.sqrt(f.sqrt(S.param())), C.a());
}
inline Curve<Gf2m> generic_companion(const Curve<Gf2m>& C) {
    const Gf2m& f = C.field();
    if (C.form() == Form::Generic) return C;
    auto S = semisplit_companion(C);
    return Curve<Gf2m>(f, Form::Generic, f.inv(f.sqr(S.param())), C.a());
}

// ---------------------------------------------------------------------------
// Quadratic twist by k[w], w^2 - w = a. Points live over the extension.

template <class E>
struct TwistConstants {
    typename E::Elt omega, omega_bar, delta;
};

template <class E>
TwistConstants<E> twist_constants(const E& f, const typename E::Elt& omega, const typename E::Elt& a) {
    if (f.sub(f.sub(f.sqr(omega), omega), a) != f.zero()) throw std::domain_error("omega does not satisfy w^2 - w = a");
    TwistConstants<E> t;
    t.omega = omega;
    t.omega_bar = f.sub(f.one(), omega);
    t.delta = f.sub(omega, t.omega_bar);
    return t;
}

template <class E>
Point4<E> twist_map(const Curve<E>& C, const Curve<E>& Ct, const Point4<E>& P, const typename E::Elt& omega) {
    const E& f = C.field();
    if (C.twisted() || C.form() != Ct.form() || C.param() != Ct.param())
        throw std::domain_error("twist map needs an untwisted curve and its twist with the same parameter");
    auto t = twist_constants(f, omega, Ct.a());
    return Point4<E>{{f.mul(t.delta, P[0]), f.sub(f.mul(t.omega, P[1]), f.mul(t.omega_bar, P[3])), P[2],
                      f.sub(f.mul(t.omega, P[3]), f.mul(t.omega_bar, P[1]))}};
}

template <class E>
Point4<E> twist_map_inverse(const Curve<E>& C, const Curve<E>& Ct, const Point4<E>& P, const typename E::Elt& omega) {
    const E& f = C.field();
    if (C.twisted() || C.form() != Ct.form() || C.param() != Ct.param())
        throw std::domain_error("twist map needs an untwisted curve and its twist with the same parameter");
    auto t = twist_constants(f, omega, Ct.a());
    return Point4<E>{{P[0], f.add(f.mul(t.omega, P[1]), f.mul(t.omega_bar, P[3])), f.mul(t.delta, P[2]),
                      f.add(f.mul(t.omega_bar, P[1]), f.mul(t.omega, P[3]))}};
}

// Coordinatewise conjugation w -> 1 - w.
template <class B>
Point4<QuadExt<B>> conjugate(const QuadExt<B>& f, const Point4<QuadExt<B>>& P) {
    Point4<QuadExt<B>> r;
    for (int i = 0; i < 4; ++i) r[i] = f.conj(P[i]);
    return r;
}

template <class B>
Curve<QuadExt<B>> lift_curve(const QuadExt<B>& E, const Curve<B>& C) {
    return Curve<QuadExt<B>>(E, C.form(), E.lift(C.param()), E.lift(C.a()));
}

template <class B>
Point4<QuadExt<B>> lift_point(const QuadExt<B>& E, const Point4<B>& P) {
    Point4<QuadExt<B>> r;
    for (int i = 0; i < 4; ++i) r[i] = E.lift(P[i]);
    return r;
}

// ---------------------------------------------------------------------------
// Enumeration of rational points (small fields only).

template <class F>
std::vector<Point4<F>> enumerate_points(const Curve<F>& C) {
    const F& f = C.field();
    uint64_t q = f.size_if_small();
    if (!q || q > 256) throw std::domain_error("point enumeration needs a field with at most 256 elements");
    std::vector<Point4<F>> out;
    // Normalized tuples: leading coordinate 1 at position lead.
    for (int lead = 0; lead < 4; ++lead) {
        int free = 3 - lead;
        uint64_t total = 1;
        for (int i = 0; i < free; ++i) total *= q;
        for (uint64_t idx = 0; idx < total; ++idx) {
            Point4<F> P;
            for (int i = 0; i < lead; ++i) P[i] = f.zero();
            P[lead] = f.one();
            uint64_t t = idx;
            for (int i = lead + 1; i < 4; ++i) {
                P[i] = f.element(t % q);
                t /= q;
            }
            if (C.on_curve(P)) out.push_back(P);
        }
    }
    return out;
}

}  // namespace mu4
