#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace mu4 {

struct OpCountReport {
    uint64_t M = 0;
    uint64_t S = 0;
    uint64_t m_const = 0;
    uint64_t m_t = 0;
    uint64_t adds = 0;

    OpCountReport& operator+=(const OpCountReport& o) {
        M += o.M;
        S += o.S;
        m_const += o.m_const;
        m_t += o.m_t;
        adds += o.adds;
        return *this;
    }
    friend OpCountReport operator+(OpCountReport a, const OpCountReport& b) { return a += b; }
    // Equality ignores the addition tally; costs are stated in M/S/m/m_t.
    bool same_cost(const OpCountReport& o) const {
        return M == o.M && S == o.S && m_const == o.m_const && m_t == o.m_t;
    }
    friend bool operator==(const OpCountReport& a, const OpCountReport& b) {
        return a.same_cost(b) && a.adds == b.adds;
    }

    std::string cost_string() const {
        return std::to_string(M) + "M + " + std::to_string(S) + "S + " + std::to_string(m_const) + "m + " +
               std::to_string(m_t) + "mt";
    }
    std::string line(const std::string& label) const {
        return label + ": " + cost_string() + " (adds=" + std::to_string(adds) + ")";
    }
};

inline OpCountReport cost(uint64_t M, uint64_t S, uint64_t m = 0, uint64_t mt = 0) {
    OpCountReport r;
    r.M = M;
    r.S = S;
    r.m_const = m;
    r.m_t = mt;
    return r;
}

enum class CostClass { Free, Const, Ladder, General };

inline const char* cost_class_name(CostClass c) {
    switch (c) {
        case CostClass::Free: return "free";
        case CostClass::Const: return "m";
        case CostClass::Ladder: return "mt";
        case CostClass::General: return "M";
    }
    return "?";
}

// Tallies land in this counter and every enclosing one.
class OpCounter {
public:
    explicit OpCounter(OpCounter* parent = nullptr) : parent_(parent) {}
    const OpCountReport& report() const { return r_; }

    void mul() { each([](OpCountReport& r) { ++r.M; }); }
    void sqr() { each([](OpCountReport& r) { ++r.S; }); }
    void add() { each([](OpCountReport& r) { ++r.adds; }); }
    void by_class(CostClass c) {
        switch (c) {
            case CostClass::Free: break;
            case CostClass::Const: each([](OpCountReport& r) { ++r.m_const; }); break;
            case CostClass::Ladder: each([](OpCountReport& r) { ++r.m_t; }); break;
            case CostClass::General: mul(); break;
        }
    }

private:
    template <class Fn>
    void each(Fn fn) {
        for (OpCounter* c = this; c; c = c->parent_) fn(c->r_);
    }
    OpCountReport r_;
    OpCounter* parent_;
};

// A constant registered with a cost class; multiplications go through Arith::mulc.
template <class Elt>
struct Const {
    Elt value;
    CostClass cls = CostClass::General;
    std::string name;
};

template <class F>
class ConstRegistry {
public:
    using Elt = typename F::Elt;
    ConstRegistry() = default;

    Const<Elt> add(const std::string& name, const Elt& v, CostClass cls) {
        entries_.push_back({v, cls, name});
        return entries_.back();
    }
    Const<Elt> curve(const std::string& name, const Elt& v) { return add(name, v, CostClass::Const); }
    Const<Elt> ladder(const std::string& name, const Elt& v) { return add(name, v, CostClass::Ladder); }

    CostClass classify(const Elt& v) const {
        for (const auto& e : entries_)
            if (e.value == v) return e.cls;
        return CostClass::General;
    }
    const std::vector<Const<Elt>>& entries() const { return entries_; }

private:
    std::vector<Const<Elt>> entries_;
};

// Field arithmetic facade that attributes every operation to a counter (if any).
template <class F>
class Arith {
public:
    using Elt = typename F::Elt;
    static constexpr bool kChar2 = F::kChar2;

    Arith(const F& f, OpCounter* c = nullptr) : f_(&f), c_(c) {}

    const F& field() const { return *f_; }
    OpCounter* counter() const { return c_; }

    Elt zero() const { return f_->zero(); }
    Elt one() const { return f_->one(); }
    bool is_zero(const Elt& a) const { return f_->is_zero(a); }

    Elt add(const Elt& a, const Elt& b) const {
        if (c_) c_->add();
        return f_->add(a, b);
    }
    Elt sub(const Elt& a, const Elt& b) const {
        if (c_) c_->add();
        return f_->sub(a, b);
    }
    Elt neg(const Elt& a) const { return f_->neg(a); }
    Elt mul(const Elt& a, const Elt& b) const {
        if (c_) c_->mul();
        return f_->mul(a, b);
    }
    Elt sqr(const Elt& a) const {
        if (c_) c_->sqr();
        return f_->sqr(a);
    }
    Elt mulc(const Const<Elt>& k, const Elt& a) const {
        if (c_) c_->by_class(k.cls);
        return f_->mul(k.value, a);
    }
    // Multiplication by a small integer: repeated doubling, tallied as additions.
    Elt mul_small(int64_t k, const Elt& a) const {
        if (kChar2) return (k & 1) ? a : f_->zero();
        bool negative = k < 0;
        uint64_t n = negative ? uint64_t(-k) : uint64_t(k);
        Elt r = f_->zero(), base = a;
        bool first = true;
        while (n) {
            if (n & 1) {
                r = first ? base : add(r, base);
                first = false;
            }
            n >>= 1;
            if (n) base = add(base, base);
        }
        return negative ? f_->neg(r) : r;
    }

private:
    const F* f_;
    OpCounter* c_;
};

// Run body(Arith&) under a fresh counter nested in the parent's counter.
template <class F, class Body>
auto counted_region(const Arith<F>& parent, Body&& body) {
    OpCounter c(parent.counter());
    Arith<F> ar(parent.field(), &c);
    if constexpr (std::is_void_v<decltype(body(ar))>) {
        body(ar);
        return c.report();
    } else {
        auto result = body(ar);
        return std::make_pair(std::move(result), c.report());
    }
}

template <class F, class Body>
auto counted_region(const F& field, Body&& body) {
    return counted_region(Arith<F>(field), std::forward<Body>(body));
}

}  // namespace mu4
