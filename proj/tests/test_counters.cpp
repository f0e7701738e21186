#include <doctest.h>

#include "support.hpp"

using namespace mu4;
using namespace mu4::test;

TEST_SUITE("counters") {
    TEST_CASE("empty region and single operations") {
        const Gf2m& f = gf2_5();
        auto x = g(f, 7), y = g(f, 9);
        CHECK(counted_region(f, [](Arith<Gf2m>&) {}) == OpCountReport{});
        CHECK(counted_region(f, [&](Arith<Gf2m>& ar) { ar.mul(x, y); }) == cost(1, 0));
        CHECK(counted_region(f, [&](Arith<Gf2m>& ar) { ar.sqr(x); }) == cost(0, 1));
        auto r = counted_region(f, [&](Arith<Gf2m>& ar) { return ar.mul(x, y); });
        CHECK(r.first == f.mul(x, y));
        CHECK(r.second.M == 1);
    }

    TEST_CASE("constant classes") {
        const Gf2m& f = gf2_5();
        ConstRegistry<Gf2m> reg;
        auto c = reg.curve("c", g(f, 3));
        auto t0 = reg.ladder("t0", g(f, 6));
        CHECK(reg.classify(g(f, 3)) == CostClass::Const);
        CHECK(reg.classify(g(f, 6)) == CostClass::Ladder);
        CHECK(reg.classify(g(f, 11)) == CostClass::General);
        Const<Gf2mElt> free{f.one(), CostClass::Free, "a"}, general{g(f, 11), CostClass::General, "x"};
        auto rep = counted_region(f, [&](Arith<Gf2m>& ar) {
            ar.mulc(c, g(f, 5));
            ar.mulc(t0, g(f, 5));
            ar.mulc(free, g(f, 5));
            ar.mulc(general, g(f, 5));
        });
        CHECK(rep.same_cost(cost(1, 0, 1, 1)));
        CHECK(std::string(cost_class_name(CostClass::Ladder)) == "mt");
    }

    TEST_CASE("small integers are additions; even multiples vanish in characteristic 2") {
        const Gf2m& f = gf2_5();
        auto x = g(f, 13);
        auto r = counted_region(f, [&](Arith<Gf2m>& ar) { return ar.mul_small(2, x); });
        CHECK(f.is_zero(r.first));
        CHECK(r.second == OpCountReport{});
        auto q = counted_region(p13(), [&](Arith<PrimeField>& ar) { return ar.mul_small(5, n13(3)); });
        CHECK(q.first == n13(15));
        CHECK(q.second.same_cost(cost(0, 0)));
        CHECK(q.second.adds == 3);
    }

    TEST_CASE("nesting sums into every enclosing region") {
        const Gf2m& f = gf2_5();
        auto x = g(f, 7);
        OpCountReport inner_a, inner_b;
        auto outer = counted_region(f, [&](Arith<Gf2m>& ar) {
            inner_a = counted_region(ar, [&](Arith<Gf2m>& a2) {
                a2.mul(x, x);
                inner_b = counted_region(a2, [&](Arith<Gf2m>& a3) { a3.sqr(x); });
            });
            ar.add(x, x);
        });
        CHECK(inner_b == cost(0, 1));
        CHECK(inner_a == cost(1, 1));
        OpCountReport add_only;
        add_only.adds = 1;
        CHECK(outer == inner_a + add_only);
    }

    TEST_CASE("report line format") {
        auto r = cost(9, 2);
        r.adds = 12;
        CHECK(r.line("add") == "add: 9M + 2S + 0m + 0mt (adds=12)");
        CHECK(cost(4, 4, 2, 1).cost_string() == "4M + 4S + 2m + 1mt");
    }

    TEST_CASE("curve constants are classified by value of a") {
        auto T = t5_generic();
        CHECK(T.k_a().cls == CostClass::Free);
        CHECK(T.k_param().cls == CostClass::Const);
        Curve<Gf2m> G(gf2_5(), Form::Generic, gf2_5().one(), g(gf2_5(), 6));
        CHECK(G.k_a().cls == CostClass::Const);
        auto S = split_companion(T);
        CHECK(S.k_u().cls == CostClass::Const);
        CHECK(S.k_c2().cls == CostClass::Const);
    }
}
