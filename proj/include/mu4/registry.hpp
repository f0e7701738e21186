#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "model.hpp"
#include "scalar.hpp"
#include "weierstrass.hpp"

#ifndef MU4_DEFAULT_REGISTRY
#define MU4_DEFAULT_REGISTRY "data/curves.txt"
#endif

namespace mu4 {

struct RegistryEntry {
    std::string name;
    int m = 0;
    std::vector<int> poly;
    std::string a, b, gx, gy, n, h;
};

class RegistryError : public std::runtime_error {
public:
    RegistryError(int line, const std::string& msg)
        : std::runtime_error("registry line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

inline std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got '" + tok + "'");
        if (!kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second)
            throw std::invalid_argument("duplicate key '" + tok.substr(0, eq) + "'");
    }
    return kv;
}

// field=binary:<m>:<exponents>
inline void parse_registry_field(const std::string& v, RegistryEntry& e) {
    auto p1 = v.find(':'), p2 = v.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (v.rfind("binary:", 0) != 0 || p2 == std::string::npos)
        throw std::invalid_argument("field must look like binary:<m>:<exponents>");
    e.m = std::stoi(v.substr(p1 + 1, p2 - p1 - 1));
    e.poly = parse_int_list(v.substr(p2 + 1));
}

inline std::vector<RegistryEntry> parse_registry(std::istream& in) {
    std::vector<RegistryEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            auto kv = parse_key_values(line);
            RegistryEntry e;
            for (const char* key : {"name", "field", "a", "b", "gx", "gy", "n", "h"})
                if (!kv.count(key)) throw std::invalid_argument(std::string("missing ") + key + "=");
            e.name = kv["name"];
            parse_registry_field(kv["field"], e);
            e.a = kv["a"];
            e.b = kv["b"];
            e.gx = kv["gx"];
            e.gy = kv["gy"];
            e.n = kv["n"];
            e.h = kv["h"];
            if (kv.size() != 8) throw std::invalid_argument("unexpected extra keys");
            out.push_back(e);
        } catch (const RegistryError&) {
            throw;
        } catch (const std::exception& ex) {
            throw RegistryError(lineno, ex.what());
        }
    }
    return out;
}

inline std::string registry_path() {
    if (const char* env = std::getenv("MU4_REGISTRY"); env && *env) return env;
    return MU4_DEFAULT_REGISTRY;
}

inline std::vector<RegistryEntry> load_registry(const std::string& path = registry_path()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curve registry '" + path + "'");
    return parse_registry(in);
}

// A binary curve with its field, its mu4 model in the chosen form, and the matching Weierstrass curve.
struct BinarySetup {
    std::string name;
    std::shared_ptr<const Gf2m> field;
    Curve<Gf2m> curve;
    WeierstrassCurve<Gf2m> W;
    std::optional<AffinePointW<Gf2m>> gen;
    Scalar n = 0, h = 0;

    const Gf2m& f() const { return *field; }
    std::string spec() const { return field->spec_string() + " " + curve.describe(); }
};

inline BinarySetup make_binary_setup(const std::string& name, std::shared_ptr<const Gf2m> field, Form form,
                                     const Gf2mElt& param, const Gf2mElt& a) {
    Curve<Gf2m> C(*field, form, param, a);
    auto W = weierstrass_of(C);
    return BinarySetup{name, field, C, W, std::nullopt, 0, 0};
}

inline BinarySetup setup_from_entry(const RegistryEntry& e, Form form = Form::Generic) {
    auto field = std::make_shared<const Gf2m>(e.m, e.poly);
    const Gf2m& f = *field;
    auto a = f.from_hex(e.a), b = f.from_hex(e.b);
    Curve<Gf2m> G(f, Form::Generic, b, a);
    Curve<Gf2m> C = form == Form::Generic ? G : form == Form::Split ? split_companion(G) : semisplit_companion(G);
    BinarySetup s{e.name, field, C, binary_weierstrass(f, a, b), std::nullopt, 0, 0};
    s.gen = AffinePointW<Gf2m>::at(f.from_hex(e.gx), f.from_hex(e.gy));
    s.n = parse_scalar_hex(e.n);
    s.h = parse_scalar_hex(e.h);
    return s;
}

inline Form parse_form(const std::string& s) {
    if (s == "generic") return Form::Generic;
    if (s == "semisplit") return Form::Semisplit;
    if (s == "split") return Form::Split;
    throw std::invalid_argument("unknown form '" + s + "'");
}

inline Point4<Gf2m> w_to_curve(const BinarySetup& s, const AffinePointW<Gf2m>& P) {
    auto G = generic_companion(s.curve);
    return hierarchy_map(to_mu4(P, s.W, G), G, s.curve);
}

inline AffinePointW<Gf2m> curve_to_w(const BinarySetup& s, const Point4<Gf2m>& Q) { return from_mu4_any(Q, s.curve); }

// Inline spec: "binary m=5 poly=5,2,0 form=generic b=1 a=1 [gx=.. gy=.. n=.. h=..]";
// the parameter key is b (generic), s (semisplit) or c (split). Gen/order are optional.
inline BinarySetup parse_binary_curve_spec(const std::string& text) {
    std::istringstream is(text);
    std::string kind;
    is >> kind;
    if (kind != "binary") throw std::invalid_argument("only binary curve specs are supported here");
    std::string rest((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    auto kv = parse_key_values(rest);
    if (!kv.count("m") || !kv.count("poly")) throw std::invalid_argument("curve spec needs m= and poly=");
    auto field = std::make_shared<const Gf2m>(std::stoi(kv["m"]), parse_int_list(kv["poly"]));
    const Gf2m& f = *field;
    Form form = parse_form(kv.count("form") ? kv["form"] : "generic");
    const char* pkey = form == Form::Generic ? "b" : form == Form::Semisplit ? "s" : "c";
    if (!kv.count(pkey)) throw std::invalid_argument(std::string("curve spec needs ") + pkey + "=");
    auto a = f.from_hex(kv.count("a") ? kv["a"] : "0");
    auto s = make_binary_setup("custom", field, form, f.from_hex(kv[pkey]), a);
    for (const auto& [k, v] : kv) {
        static const char* known[] = {"m", "poly", "form", "a", "b", "s", "c", "gx", "gy", "n", "h"};
        bool ok = false;
        for (auto* kn : known) ok = ok || k == kn;
        if (!ok) throw std::invalid_argument("unknown curve spec key '" + k + "'");
    }
    if (kv.count("gx") != kv.count("gy")) throw std::invalid_argument("gx= and gy= go together");
    if (kv.count("gx")) s.gen = AffinePointW<Gf2m>::at(f.from_hex(kv["gx"]), f.from_hex(kv["gy"]));
    if (kv.count("n")) s.n = parse_scalar_hex(kv["n"]);
    if (kv.count("h")) s.h = parse_scalar_hex(kv["h"]);
    return s;
}

// Registry name (optionally with ":split" / ":semisplit" suffix) or inline spec.
inline BinarySetup resolve_binary_curve(const std::string& text, const std::vector<RegistryEntry>& reg) {
    if (text.find(' ') != std::string::npos) return parse_binary_curve_spec(text);
    std::string name = text;
    Form form = Form::Generic;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        name = text.substr(0, colon);
        form = parse_form(text.substr(colon + 1));
    }
    for (const auto& e : reg)
        if (e.name == name) return setup_from_entry(e, form);
    throw std::invalid_argument("unknown curve '" + name + "'");
}

}  // namespace mu4
