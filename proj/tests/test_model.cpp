#include <doctest.h>

#include "support.hpp"

using namespace mu4;
using namespace mu4::test;

TEST_SUITE("model") {
    TEST_CASE("construction and identity") {
        const Gf2m& f = gf2_5();
        auto T = t5_generic();
        CHECK(T.on_curve(T.identity()));
        CHECK(T.on_curve(Point4<Gf2m>{{f.zero(), f.one(), f.one(), f.one()}}));
        CHECK_FALSE(T.on_curve(Point4<Gf2m>{{f.one(), f.zero(), f.zero(), f.zero()}}));
        CHECK(T.D() == f.one());
        Curve<Gf2m> S(f, Form::Split, g(f, 6), f.zero());
        CHECK(S.eq(S.identity(), Point4<Gf2m>{{g(f, 6), f.one(), f.zero(), f.one()}}));
        CHECK(S.on_curve(S.identity()));
        Curve<PrimeField> P(p13(), Form::Generic, n13(2), n13(0));
        CHECK(P.on_curve(P.identity()));
        CHECK_THROWS_AS(Curve<Gf2m>(f, Form::Generic, f.zero(), f.one()), std::domain_error);
        CHECK_THROWS_AS(Curve<Gf2m>(f, Form::Split, f.zero(), f.one()), std::domain_error);
        CHECK_THROWS_AS(Curve<PrimeField>(p13(), Form::Generic, p13().inv(n13(16)), n13(0)), std::domain_error);
        CHECK_THROWS_AS(Curve<PrimeField>(p13(), Form::Generic, n13(2), n13(3)), std::domain_error);  // D = 13
    }

    TEST_CASE("on_curve is invariant under scaling; negation is an involution") {
        auto T = t5_generic();
        const Gf2m& f = T.field();
        for (const auto& P : enumerate_points(T)) {
            CHECK(T.on_curve(scale(f, g(f, 19), P)));
            CHECK(T.eq(T.negate(T.negate(P)), P));
        }
        CHECK(T.eq(T.negate(T.identity()), T.identity()));
        Point4<Gf2m> S{{f.zero(), f.one(), f.one(), f.one()}};
        CHECK(T.eq(T.negate(S), S));
        auto C = p13_split_twisted();
        CHECK(C.eq(C.negate(C.identity()), C.identity()));
    }

    TEST_CASE("serialization round trip") {
        auto T = t5_generic();
        const Gf2m& f = T.field();
        for (const auto& P : enumerate_points(T)) {
            auto s = serialize_point(f, scale(f, g(f, 3), P));
            CHECK(T.eq(parse_point(f, s), P));
            CHECK(s == serialize_point(f, P));
        }
        CHECK(serialize_point(f, T.identity()) == "(1:1:0:1)");
        CHECK_THROWS(parse_point(f, "(1:1:0)"));
        CHECK_THROWS(parse_point(f, "(0:0:0:0)"));
        CHECK_THROWS(parse_point(f, "1:1:0:1"));
    }

    TEST_CASE("tau and sigma translations on the untwisted split form, p = 13") {
        auto C = p13_split();
        const PrimeField& f = C.field();
        auto c = C.c(), i = n13(5);
        Point4<PrimeField> T{{f.one(), c, f.one(), f.zero()}};
        CHECK(C.eq(translate_tau(C, C.identity()), T));
        CHECK(C.eq(translate_sigma(C, C.identity(), i), Point4<PrimeField>{{c, i, f.zero(), f.neg(i)}}));
        // sigma orbit of O: {(c:1:0:1), (c:i:0:-i), (c:-1:0:-1), (c:-i:0:i)}.
        auto X = C.identity();
        std::vector<Point4<PrimeField>> orbit;
        for (int k = 0; k < 4; ++k) {
            orbit.push_back(X);
            X = translate_sigma(C, X, i);
        }
        CHECK(C.eq(X, C.identity()));
        CHECK(C.eq(orbit[2], Point4<PrimeField>{{c, f.neg(f.one()), f.zero(), f.neg(f.one())}}));
        CHECK(C.eq(orbit[3], Point4<PrimeField>{{c, f.neg(i), f.zero(), i}}));
        Arith<PrimeField> ar(f);
        auto S = orbit[1];
        for (const auto& P : enumerate_points(C)) {
            auto t = P;
            for (int k = 0; k < 4; ++k) t = translate_tau(C, t);
            CHECK(C.eq(t, P));
            CHECK(C.eq(translate_tau(C, P), add_complete(ar, C, P, T)));
            CHECK(C.eq(translate_sigma(C, P, i), add_complete(ar, C, P, S)));
        }
        CHECK_THROWS_AS(translate_sigma(C, C.identity(), n13(2)), std::domain_error);
        CHECK_THROWS_AS(translate_tau(p13_split_twisted(), C.identity()), std::domain_error);
        CHECK(sqrt_minus_one(p13()).has_value());
        CHECK_FALSE(sqrt_minus_one(PrimeField(7)).has_value());
    }

    TEST_CASE("torsion table") {
        auto C = p13_split_twisted();
        Arith<PrimeField> ar(C.field());
        auto t = torsion_table(C);
        CHECK(t.two_torsion.size() == 3);
        CHECK_FALSE(t.four_torsion_T.has_value());
        for (const auto& X : t.two_torsion) CHECK(C.eq(double_point(ar, C, X), C.identity()));
        auto U = torsion_table(p13_split());
        REQUIRE(U.four_torsion_T.has_value());
        auto T2 = double_point(ar, p13_split(), *U.four_torsion_T);
        CHECK(p13_split().eq(double_point(ar, p13_split(), T2), p13_split().identity()));
        for (const auto& G : {t5_generic(), semisplit_companion(t5_generic()), split_companion(t5_generic())}) {
            Arith<Gf2m> a2(G.field());
            auto tt = torsion_table(G);
            CHECK(tt.two_torsion.size() == 1);
            for (const auto& X : tt.two_torsion) CHECK(G.eq(double_binary(a2, G, X), G.identity()));
        }
    }

    TEST_CASE("hierarchy maps: bijective homomorphisms, O to O") {
        const Gf2m& f = gf2_5();
        for (uint64_t a : {0, 1, 6}) {
            Curve<Gf2m> G(f, Form::Generic, g(f, 5), g(f, a));
            auto Ss = semisplit_companion(G), Sp = split_companion(G);
            CHECK(Ss.param() == f.sqr(f.sqr(Sp.c())));
            CHECK(f.mul(G.param(), f.sqr(Ss.param())) == f.one());
            CHECK(Ss.eq(hierarchy_map(Sp.identity(), Sp, Ss), Ss.identity()));
            CHECK(G.eq(hierarchy_map(Ss.identity(), Ss, G), G.identity()));
            auto pts = enumerate_points(Sp);
            CHECK(pts.size() == enumerate_points(G).size());
            Arith<Gf2m> ar(f);
            for (const auto& P : pts) {
                auto s = hierarchy_map(P, Sp, Ss), q = hierarchy_map(s, Ss, G);
                REQUIRE(Ss.on_curve(s));
                REQUIRE(G.on_curve(q));
                REQUIRE(Sp.eq(hierarchy_map(q, G, Sp), P));
                for (const auto& Q : pts)
                    REQUIRE(G.eq(hierarchy_map(add_complete(ar, Sp, P, Q), Sp, G),
                                 add_complete(ar, G, q, hierarchy_map(Q, Sp, G))));
            }
        }
        // Odd characteristic, parameters supplied directly.
        auto C = p13_split_twisted();
        auto c = C.c();
        Curve<PrimeField> Ss(p13(), Form::Semisplit, p13().sqr(p13().sqr(c)), C.a());
        Curve<PrimeField> G(p13(), Form::Generic, C.effective_r(), C.a());
        for (const auto& P : enumerate_points(C)) {
            REQUIRE(Ss.on_curve(hierarchy_map(P, C, Ss)));
            REQUIRE(G.on_curve(hierarchy_map(P, C, G)));
            REQUIRE(C.eq(hierarchy_map(hierarchy_map(P, C, G), G, C), P));
        }
        Curve<PrimeField> wrong(p13(), Form::Generic, n13(5), C.a());
        CHECK_THROWS_AS(hierarchy_map(C.identity(), C, wrong), std::domain_error);
    }

    TEST_CASE("quadratic twist over GF(2^6) = GF(2^3)[w]") {
        const Gf2m& b = gf2_3();
        QuadExt<Gf2m> E(b, b.one());
        for (auto form : {Form::Generic, Form::Split}) {
            Curve<Gf2m> C0(b, form, g(b, 3), b.zero()), C1(b, form, g(b, 3), b.one());
            auto L0 = lift_curve(E, C0), L1 = lift_curve(E, C1);
            auto src = enumerate_points(L0), dst = enumerate_points(L1);
            CHECK(src.size() == dst.size());
            CHECK(L1.eq(twist_map(L0, L1, L0.identity(), E.omega()), L1.identity()));
            std::vector<bool> hit(dst.size(), false);
            for (const auto& Q : src) {
                auto t = twist_map(L0, L1, Q, E.omega());
                REQUIRE(L1.on_curve(t));
                REQUIRE(L0.eq(twist_map_inverse(L0, L1, t, E.omega()), Q));
                REQUIRE(L1.eq(conjugate(E, t), L1.negate(twist_map(L0, L1, conjugate(E, Q), E.omega()))));
                for (size_t j = 0; j < dst.size(); ++j)
                    if (L1.eq(t, dst[j])) hit[j] = true;
            }
            for (bool h : hit) CHECK(h);
        }
        CHECK_THROWS_AS(twist_constants(E, E.one(), E.one()), std::domain_error);
    }
}
