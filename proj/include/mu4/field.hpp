#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mu4 {

inline std::string strip_hex_prefix(const std::string& s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) return s.substr(2);
    return s;
}

inline int hex_digit(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    throw std::invalid_argument(std::string("invalid hex digit '") + ch + "'");
}

// ---------------------------------------------------------------------------
// GF(2^m), polynomial basis, word-packed.

inline constexpr int kMaxWords = 9;

struct Gf2mElt {
    std::array<uint64_t, kMaxWords> w{};
    friend bool operator==(const Gf2mElt& a, const Gf2mElt& b) { return a.w == b.w; }
    friend bool operator!=(const Gf2mElt& a, const Gf2mElt& b) { return !(a == b); }
};

namespace detail {

inline std::array<uint16_t, 256> make_spread_table() {
    std::array<uint16_t, 256> t{};
    for (int i = 0; i < 256; ++i) {
        uint16_t v = 0;
        for (int b = 0; b < 8; ++b)
            if (i >> b & 1) v |= uint16_t(1u << (2 * b));
        t[i] = v;
    }
    return t;
}

inline uint64_t spread32(uint32_t x) {
    static const auto table = make_spread_table();
    return uint64_t(table[x & 0xff]) | uint64_t(table[(x >> 8) & 0xff]) << 16 |
           uint64_t(table[(x >> 16) & 0xff]) << 32 | uint64_t(table[x >> 24]) << 48;
}

// 64x64 -> 128 carryless product, 4-bit window.
inline void clmul64(uint64_t a, uint64_t b, uint64_t& lo, uint64_t& hi) {
    uint64_t tl[16], th[16];
    tl[0] = th[0] = 0;
    tl[1] = a;
    th[1] = 0;
    for (int i = 2; i < 16; i += 2) {
        tl[i] = tl[i / 2] << 1;
        th[i] = th[i / 2] << 1 | tl[i / 2] >> 63;
        tl[i + 1] = tl[i] ^ a;
        th[i + 1] = th[i];
    }
    uint64_t l = 0, h = 0;
    for (int s = 60; s >= 0; s -= 4) {
        h = h << 4 | l >> 60;
        l <<= 4;
        unsigned nib = unsigned(b >> s) & 15u;
        l ^= tl[nib];
        h ^= th[nib];
    }
    lo = l;
    hi = h;
}

}  // namespace detail

class Gf2m {
public:
    using Elt = Gf2mElt;
    static constexpr bool kChar2 = true;

    Gf2m(int m, std::vector<int> poly_exponents) : m_(m) {
        if (m < 2 || m > 64 * kMaxWords - 1) throw std::invalid_argument("binary field degree out of range");
        std::sort(poly_exponents.begin(), poly_exponents.end());
        poly_exponents.erase(std::unique(poly_exponents.begin(), poly_exponents.end()), poly_exponents.end());
        if (poly_exponents.empty() || poly_exponents.back() != m || poly_exponents.front() != 0)
            throw std::invalid_argument("reduction polynomial must contain x^m and 1");
        poly_ = poly_exponents;
        for (int e : poly_)
            if (e < m) low_terms_.push_back(e);
        nw_ = (m + 63) / 64;
        top_mask_ = (m % 64 == 0) ? ~uint64_t(0) : ((uint64_t(1) << (m % 64)) - 1);
        if (!irreducible()) throw std::invalid_argument("reduction polynomial is reducible");
    }

    int degree() const { return m_; }
    const std::vector<int>& poly() const { return poly_; }
    int words() const { return nw_; }

    std::string spec_string() const {
        std::ostringstream os;
        os << "binary m=" << m_ << " poly=";
        for (size_t i = poly_.size(); i-- > 0;) os << poly_[i] << (i ? "," : "");
        return os.str();
    }

    Elt zero() const { return Elt{}; }
    Elt one() const {
        Elt r;
        r.w[0] = 1;
        return r;
    }
    Elt from_int(int64_t v) const { return (v & 1) ? one() : zero(); }
    bool is_zero(const Elt& a) const { return a == Elt{}; }
    bool is_one(const Elt& a) const { return a == one(); }

    Elt add(const Elt& a, const Elt& b) const {
        Elt r;
        for (int i = 0; i < nw_; ++i) r.w[i] = a.w[i] ^ b.w[i];
        return r;
    }
    Elt sub(const Elt& a, const Elt& b) const { return add(a, b); }
    Elt neg(const Elt& a) const { return a; }

    Elt mul(const Elt& a, const Elt& b) const {
        uint64_t t[2 * kMaxWords] = {};
        for (int i = 0; i < nw_; ++i) {
            if (!a.w[i]) continue;
            for (int j = 0; j < nw_; ++j) {
                uint64_t lo, hi;
                detail::clmul64(a.w[i], b.w[j], lo, hi);
                t[i + j] ^= lo;
                t[i + j + 1] ^= hi;
            }
        }
        return reduce(t);
    }

    Elt sqr(const Elt& a) const {
        uint64_t t[2 * kMaxWords] = {};
        for (int i = 0; i < nw_; ++i) {
            t[2 * i] = detail::spread32(uint32_t(a.w[i]));
            t[2 * i + 1] = detail::spread32(uint32_t(a.w[i] >> 32));
        }
        return reduce(t);
    }

    Elt sqr_n(Elt a, int n) const {
        for (int i = 0; i < n; ++i) a = sqr(a);
        return a;
    }

    // Itoh-Tsujii: a^(2^(m-1)-1), then one squaring.
    Elt inv(const Elt& a) const {
        if (is_zero(a)) throw std::domain_error("inverse of zero");
        int e = m_ - 1;
        Elt acc = a;  // a^(2^k - 1) with k = 1
        int k = 1;
        int top = 31;
        while (!((e >> top) & 1)) --top;
        for (int bit = top - 1; bit >= 0; --bit) {
            acc = mul(sqr_n(acc, k), acc);
            k *= 2;
            if ((e >> bit) & 1) {
                acc = mul(sqr(acc), a);
                k += 1;
            }
        }
        return sqr(acc);
    }

    Elt sqrt(const Elt& a) const { return sqr_n(a, m_ - 1); }

    int trace(const Elt& a) const {
        Elt t = a, x = a;
        for (int i = 1; i < m_; ++i) {
            x = sqr(x);
            t = add(t, x);
        }
        return int(t.w[0] & 1);
    }

    // For odd m: z with z^2 + z = a + trace(a).
    Elt half_trace(const Elt& a) const {
        if (m_ % 2 == 0) throw std::domain_error("half-trace requires odd extension degree");
        Elt h = a, x = a;
        for (int i = 1; i <= (m_ - 1) / 2; ++i) {
            x = sqr(sqr(x));
            h = add(h, x);
        }
        return h;
    }

    bool bit(const Elt& a, int i) const { return (a.w[i / 64] >> (i % 64)) & 1; }

    // Enumeration helpers (small fields).
    uint64_t size_if_small() const { return m_ < 63 ? (uint64_t(1) << m_) : 0; }
    Elt element(uint64_t index) const {
        Elt r;
        r.w[0] = index;
        return r;
    }
    uint64_t index(const Elt& a) const { return a.w[0]; }

    Elt random(std::mt19937_64& rng) const {
        Elt r;
        for (int i = 0; i < nw_; ++i) r.w[i] = rng();
        r.w[nw_ - 1] &= top_mask_;
        return r;
    }

    std::string to_hex(const Elt& a) const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        for (int i = nw_ - 1; i >= 0; --i)
            for (int sh = 60; sh >= 0; sh -= 4) s.push_back(digits[(a.w[i] >> sh) & 15]);
        size_t nz = s.find_first_not_of('0');
        return nz == std::string::npos ? "0" : s.substr(nz);
    }

    Elt from_hex(const std::string& text) const {
        std::string h = strip_hex_prefix(text);
        if (h.empty()) throw std::invalid_argument("empty hex string");
        Elt r;
        int pos = 0;
        for (size_t i = h.size(); i-- > 0; pos += 4) {
            uint64_t d = uint64_t(hex_digit(h[i]));
            if (!d) continue;
            if (pos + 3 >= 64 * kMaxWords) throw std::invalid_argument("hex value too large for field");
            r.w[pos / 64] |= d << (pos % 64);
        }
        for (int i = nw_; i < kMaxWords; ++i)
            if (r.w[i]) throw std::invalid_argument("hex value exceeds field degree");
        if (r.w[nw_ - 1] & ~top_mask_) throw std::invalid_argument("hex value exceeds field degree");
        return r;
    }

private:
    static void xor_shifted(uint64_t* t, int nwords, uint64_t v, int pos) {
        // t ^= v << pos, pos may be negative (low bits of v are then known zero)
        if (pos < 0) {
            t[0] ^= v >> (-pos);
            return;
        }
        int wi = pos / 64, sh = pos % 64;
        if (wi < nwords) t[wi] ^= v << sh;
        if (sh && wi + 1 < nwords) t[wi + 1] ^= v >> (64 - sh);
    }

    Elt reduce(uint64_t* t) const {
        const int total = 2 * nw_;
        for (int i = total - 1; i >= 0; --i) {
            for (;;) {
                int lowbit = m_ - 64 * i;  // first position >= m inside word i
                uint64_t mask;
                if (lowbit <= 0)
                    mask = ~uint64_t(0);
                else if (lowbit >= 64)
                    mask = 0;
                else
                    mask = ~uint64_t(0) << lowbit;
                uint64_t v = t[i] & mask;
                if (!v) break;
                t[i] ^= v;
                for (int e : low_terms_) xor_shifted(t, total, v, 64 * i - m_ + e);
            }
        }
        Elt r;
        for (int i = 0; i < nw_; ++i) r.w[i] = t[i];
        return r;
    }

    // Rabin-style check: x^(2^m) = x mod f and gcd(x^(2^(m/q)) - x, f) = 1 for prime q | m.
    bool irreducible() const {
        Elt x;
        if (m_ == 1) return true;
        x.w[0] = 2;
        if (sqr_n(x, m_) != x) return false;
        std::vector<int> primes;
        int n = m_;
        for (int q = 2; q * q <= n; ++q)
            if (n % q == 0) {
                primes.push_back(q);
                while (n % q == 0) n /= q;
            }
        if (n > 1) primes.push_back(n);
        for (int q : primes) {
            Elt h = add(sqr_n(x, m_ / q), x);
            if (!poly_gcd_is_one(h)) return false;
        }
        return true;
    }

    bool poly_gcd_is_one(const Elt& h) const {
        std::vector<uint64_t> a(nw_ + 1, 0), b(nw_ + 1, 0);
        for (int e : poly_) a[e / 64] |= uint64_t(1) << (e % 64);
        for (int i = 0; i < nw_; ++i) b[i] = h.w[i];
        auto deg = [](const std::vector<uint64_t>& p) {
            for (int i = int(p.size()) - 1; i >= 0; --i)
                if (p[i]) return 64 * i + 63 - __builtin_clzll(p[i]);
            return -1;
        };
        for (;;) {
            int db = deg(b);
            if (db < 0) return deg(a) == 0;
            int da;
            while ((da = deg(a)) >= db) {
                int s = da - db;
                for (int i = int(a.size()) - 1; i >= 0; --i) {
                    // a ^= b << s
                    uint64_t v = 0;
                    int src = i - s / 64;
                    int sh = s % 64;
                    if (src >= 0 && src < int(b.size())) v |= b[src] << sh;
                    if (sh && src - 1 >= 0 && src - 1 < int(b.size())) v |= b[src - 1] >> (64 - sh);
                    a[i] ^= v;
                }
            }
            std::swap(a, b);
        }
    }

    int m_;
    int nw_;
    uint64_t top_mask_;
    std::vector<int> poly_;
    std::vector<int> low_terms_;
};

// ---------------------------------------------------------------------------
// Small prime field.

struct PrimeElt {
    uint64_t v = 0;
    friend bool operator==(const PrimeElt& a, const PrimeElt& b) { return a.v == b.v; }
    friend bool operator!=(const PrimeElt& a, const PrimeElt& b) { return a.v != b.v; }
};

class PrimeField {
public:
    using Elt = PrimeElt;
    static constexpr bool kChar2 = false;

    explicit PrimeField(uint64_t p) : p_(p) {
        if (p < 3 || p >= (uint64_t(1) << 31)) throw std::invalid_argument("prime modulus out of range");
        for (uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("modulus is not prime");
    }

    uint64_t modulus() const { return p_; }
    std::string spec_string() const { return "prime p=" + std::to_string(p_); }

    Elt zero() const { return {0}; }
    Elt one() const { return {1}; }
    Elt from_int(int64_t v) const {
        int64_t r = v % int64_t(p_);
        if (r < 0) r += int64_t(p_);
        return {uint64_t(r)};
    }
    bool is_zero(const Elt& a) const { return a.v == 0; }
    bool is_one(const Elt& a) const { return a.v == 1; }
    Elt add(const Elt& a, const Elt& b) const { return {(a.v + b.v) % p_}; }
    Elt sub(const Elt& a, const Elt& b) const { return {(a.v + p_ - b.v) % p_}; }
    Elt neg(const Elt& a) const { return {(p_ - a.v) % p_}; }
    Elt mul(const Elt& a, const Elt& b) const { return {a.v * b.v % p_}; }
    Elt sqr(const Elt& a) const { return mul(a, a); }
    Elt pow(Elt a, uint64_t e) const {
        Elt r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Elt inv(const Elt& a) const {
        if (a.v == 0) throw std::domain_error("inverse of zero");
        return pow(a, p_ - 2);
    }
    bool is_square(const Elt& a) const { return a.v == 0 || pow(a, (p_ - 1) / 2).v == 1; }
    // Tonelli-Shanks by brute force is adequate at this scale.
    bool sqrt(const Elt& a, Elt& out) const {
        for (uint64_t x = 0; x < p_; ++x)
            if (x * x % p_ == a.v) {
                out = {x};
                return true;
            }
        return false;
    }

    uint64_t size_if_small() const { return p_; }
    Elt element(uint64_t index) const { return {index % p_}; }
    uint64_t index(const Elt& a) const { return a.v; }
    Elt random(std::mt19937_64& rng) const { return {rng() % p_}; }

    std::string to_hex(const Elt& a) const {
        std::ostringstream os;
        os << std::hex << a.v;
        return os.str();
    }
    Elt from_hex(const std::string& text) const {
        std::string h = strip_hex_prefix(text);
        if (h.empty()) throw std::invalid_argument("empty hex string");
        uint64_t v = 0;
        for (char ch : h) {
            v = v * 16 + uint64_t(hex_digit(ch));
            if (v >= p_) throw std::invalid_argument("hex value not reduced modulo p");
        }
        return {v};
    }

private:
    uint64_t p_;
};

// ---------------------------------------------------------------------------
// k[w] with w^2 = w + a (any characteristic). Conjugation w -> 1 - w.

template <class Base>
struct QuadElt {
    typename Base::Elt a0, a1;
    friend bool operator==(const QuadElt& x, const QuadElt& y) { return x.a0 == y.a0 && x.a1 == y.a1; }
    friend bool operator!=(const QuadElt& x, const QuadElt& y) { return !(x == y); }
};

template <class Base>
class QuadExt {
public:
    using Elt = QuadElt<Base>;
    using BaseElt = typename Base::Elt;
    static constexpr bool kChar2 = Base::kChar2;

    QuadExt(const Base& base, BaseElt a) : base_(&base), a_(a) {
        // w^2 - w - a must have no root in the base field for this to be a field.
        if (base.size_if_small()) {
            for (uint64_t i = 0; i < base.size_if_small(); ++i) {
                BaseElt x = base.element(i);
                if (base.is_zero(base.sub(base.sub(base.sqr(x), x), a)))
                    throw std::domain_error("w^2 - w - a splits over the base field");
            }
        }
    }

    const Base& base() const { return *base_; }
    const BaseElt& a() const { return a_; }

    Elt lift(const BaseElt& x) const { return {x, base_->zero()}; }
    Elt omega() const { return {base_->zero(), base_->one()}; }
    Elt omega_bar() const { return conj(omega()); }

    Elt zero() const { return lift(base_->zero()); }
    Elt one() const { return lift(base_->one()); }
    Elt from_int(int64_t v) const { return lift(base_->from_int(v)); }
    bool is_zero(const Elt& x) const { return base_->is_zero(x.a0) && base_->is_zero(x.a1); }
    bool is_one(const Elt& x) const { return base_->is_one(x.a0) && base_->is_zero(x.a1); }
    Elt add(const Elt& x, const Elt& y) const { return {base_->add(x.a0, y.a0), base_->add(x.a1, y.a1)}; }
    Elt sub(const Elt& x, const Elt& y) const { return {base_->sub(x.a0, y.a0), base_->sub(x.a1, y.a1)}; }
    Elt neg(const Elt& x) const { return {base_->neg(x.a0), base_->neg(x.a1)}; }
    Elt mul(const Elt& x, const Elt& y) const {
        const Base& B = *base_;
        BaseElt t = B.mul(x.a1, y.a1);
        return {B.add(B.mul(x.a0, y.a0), B.mul(a_, t)), B.add(B.add(B.mul(x.a0, y.a1), B.mul(x.a1, y.a0)), t)};
    }
    Elt sqr(const Elt& x) const { return mul(x, x); }
    Elt conj(const Elt& x) const { return {base_->add(x.a0, x.a1), base_->neg(x.a1)}; }
    BaseElt norm(const Elt& x) const {
        const Base& B = *base_;
        return B.sub(B.add(B.sqr(x.a0), B.mul(x.a0, x.a1)), B.mul(a_, B.sqr(x.a1)));
    }
    Elt inv(const Elt& x) const {
        BaseElt n = norm(x);
        if (base_->is_zero(n)) throw std::domain_error("inverse of zero");
        BaseElt ni = base_->inv(n);
        Elt c = conj(x);
        return {base_->mul(c.a0, ni), base_->mul(c.a1, ni)};
    }

    uint64_t size_if_small() const {
        uint64_t q = base_->size_if_small();
        return (q && q < (uint64_t(1) << 31)) ? q * q : 0;
    }
    Elt element(uint64_t index) const {
        uint64_t q = base_->size_if_small();
        return {base_->element(index % q), base_->element(index / q)};
    }
    Elt random(std::mt19937_64& rng) const { return {base_->random(rng), base_->random(rng)}; }

    std::string to_hex(const Elt& x) const { return "[" + base_->to_hex(x.a0) + "," + base_->to_hex(x.a1) + "]"; }

private:
    const Base* base_;
    BaseElt a_;
};

// ---------------------------------------------------------------------------
// Field spec text: "binary m=233 poly=233,74,0" or "prime p=13".

struct FieldSpec {
    enum class Kind { Binary, Prime } kind = Kind::Binary;
    int m = 0;
    std::vector<int> poly;
    uint64_t p = 0;
};

inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in integer list");
        size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

inline FieldSpec parse_field_spec(const std::string& text) {
    std::istringstream is(text);
    std::string kind, tok;
    is >> kind;
    FieldSpec fs;
    if (kind == "binary") {
        fs.kind = FieldSpec::Kind::Binary;
        while (is >> tok) {
            if (tok.rfind("m=", 0) == 0)
                fs.m = std::stoi(tok.substr(2));
            else if (tok.rfind("poly=", 0) == 0)
                fs.poly = parse_int_list(tok.substr(5));
            else
                throw std::invalid_argument("unknown binary field token '" + tok + "'");
        }
        if (fs.m <= 0 || fs.poly.empty()) throw std::invalid_argument("binary field spec needs m= and poly=");
        if (*std::max_element(fs.poly.begin(), fs.poly.end()) != fs.m)
            throw std::invalid_argument("poly degree does not match m");
    } else if (kind == "prime") {
        fs.kind = FieldSpec::Kind::Prime;
        while (is >> tok) {
            if (tok.rfind("p=", 0) == 0)
                fs.p = std::stoull(tok.substr(2));
            else
                throw std::invalid_argument("unknown prime field token '" + tok + "'");
        }
        if (!fs.p) throw std::invalid_argument("prime field spec needs p=");
    } else {
        throw std::invalid_argument("field spec must start with 'binary' or 'prime'");
    }
    return fs;
}

}  // namespace mu4
