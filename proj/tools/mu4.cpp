#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <mu4/grouplaw.hpp>
#include <mu4/kummer.hpp>
#include <mu4/registry.hpp>
#include <mu4/weierstrass.hpp>

using namespace mu4;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kMismatch = 1, kUsage = 2;
constexpr uint64_t kExhaustiveMaxPoints = 1024;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string curve, k, point, wpoint, level = "quick", format = "text", out;
    uint64_t seed = 1;
    int count = 10;
    bool weierstrass = false;
};

class Emitter {
public:
    explicit Emitter(bool jsonl, std::ostream& os = std::cout) : jsonl_(jsonl), os_(os) {}
    void emit(const std::string& text, const json& j) const {
        if (jsonl_) os_ << j.dump() << '\n';
        else os_ << text << '\n';
    }

private:
    bool jsonl_;
    std::ostream& os_;
};

std::string w_string(const Gf2m& f, const AffinePointW<Gf2m>& P) {
    if (P.inf) return "inf";
    return "(" + f.to_hex(P.x) + "," + f.to_hex(P.y) + ")";
}

AffinePointW<Gf2m> parse_w(const Gf2m& f, const std::string& s) {
    if (s == "inf") return AffinePointW<Gf2m>::infinity();
    std::string t = s;
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    auto comma = t.find(',');
    if (comma == std::string::npos) throw UsageError("Weierstrass point must be 'x,y', '(x,y)' or 'inf'");
    return AffinePointW<Gf2m>::at(f.from_hex(t.substr(0, comma)), f.from_hex(t.substr(comma + 1)));
}

BinarySetup load_curve(const std::string& text, const std::string& cmd) {
    if (text.empty()) throw UsageError("--curve is required");
    if (text.rfind("prime", 0) == 0)
        throw UsageError("odd-characteristic curves are unsupported for '" + cmd + "'");
    std::vector<RegistryEntry> reg;
    if (text.find(' ') == std::string::npos) reg = load_registry();
    try {
        return resolve_binary_curve(text, reg);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

// Rows: M and S always, then the constant classes that occur.
std::string cost_row(const OpCountReport& r, bool ladder) {
    std::ostringstream os;
    os << r.M << "M + " << r.S << "S";
    if (ladder) {
        if (r.m_t) os << " + " << r.m_t << "mt";
        if (r.m_const) os << " + " << r.m_const << "mc";
    } else if (r.m_const) {
        os << " + " << r.m_const << "m";
    }
    return os.str();
}

// ---------------------------------------------------------------------------

int cmd_count(const Options& o) {
    auto s = load_curve(o.curve, "count");
    const Gf2m& f = s.f();
    Emitter out(o.format == "jsonl");
    auto G = generic_companion(s.curve), Sp = split_companion(G);
    std::mt19937_64 rng(o.seed);
    Point4<Gf2m> P, Q;
    for (;;) {
        P = to_mu4(binary_random_point(s.W, rng), s.W, G);
        Q = to_mu4(binary_random_point(s.W, rng), s.W, G);
        auto Ps = hierarchy_map(P, G, Sp);
        if (!f.is_zero(f.add(Ps[1], Ps[3])) && !G.eq(P, Q)) break;
    }
    auto Pp = hierarchy_map(P, G, Sp), Qp = hierarchy_map(Q, G, Sp);
    uint64_t am = f.is_zero(G.a()) || f.is_one(G.a()) ? 0 : 1;  // general a: one m per use

    struct Row {
        std::string name;
        OpCountReport measured, expected;
        bool ladder;
    };
    std::vector<Row> rows;
    auto region = [&](auto&& body) { return counted_region(f, body); };
    rows.push_back({"add", region([&](Arith<Gf2m>& ar) { add_binary_twisted(ar, G, P, Q); }), cost(9, 2, am), false});
    if (!G.twisted())
        rows.push_back(
            {"add-untwisted", region([&](Arith<Gf2m>& ar) { add_split_s2(ar, Sp, Pp, Qp); }), cost(7, 2, 2), false});
    rows.push_back({"dbl", region([&](Arith<Gf2m>& ar) { double_binary(ar, G, P); }), cost(2, 5, 2 + am), false});
    rows.push_back(
        {"dbl-split", region([&](Arith<Gf2m>& ar) { double_binary(ar, Sp, Pp); }), cost(2, 5, 3 + am), false});
    for (auto [name, var, want] : {std::tuple{"step", LadderVariant::FourSquare, cost(4, 4, 2, 1)},
                                   std::tuple{"step-5S", LadderVariant::FiveSquare, cost(4, 5, 1, 1)}}) {
        MontContext<Gf2m> ctx(Sp, Pp, var);
        auto st = ladder(Scalar(3), ctx);
        rows.push_back({name, region([&](Arith<Gf2m>& ar) { mont_step(ar, st, 1, ctx); }), want, true});
    }

    bool all = true;
    for (const auto& r : rows) {
        bool ok = r.measured.same_cost(r.expected);
        all = all && ok;
        std::string text = r.name + ": " + cost_row(r.measured, r.ladder);
        if (!ok) text += "  MISMATCH, expected " + cost_row(r.expected, r.ladder);
        out.emit(text, json{{"row", r.name},
                            {"measured", cost_row(r.measured, r.ladder)},
                            {"expected", cost_row(r.expected, r.ladder)},
                            {"adds", r.measured.adds},
                            {"ok", ok}});
    }
    return all ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------

struct SuiteResult {
    std::string name;
    uint64_t checks = 0, failures = 0;
    std::string note;
    void check(bool ok) {
        ++checks;
        if (!ok) ++failures;
    }
    // Exceptions from the library (off-curve inputs and the like) count as failures.
    template <class Fn>
    void check_that(Fn&& fn) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception&) {
        }
        check(ok);
    }
};

int cmd_verify(const Options& o) {
    if (o.level != "quick" && o.level != "exhaustive") throw UsageError("--level must be quick or exhaustive");
    auto s = load_curve(o.curve, "verify");
    const Gf2m& f = s.f();
    const auto& C = s.curve;
    Emitter out(o.format == "jsonl");
    std::mt19937_64 rng(o.seed);
    bool exhaustive = o.level == "exhaustive";
    Arith<Gf2m> ar(f);

    std::vector<AffinePointW<Gf2m>> wpts;
    if (exhaustive) {
        uint64_t q = f.size_if_small();
        // #E >= q + 1 - 2 sqrt(q) exceeds the limit well before q = 2^11.
        if (!q || q > 2048) {
            std::cerr << "mu4: exhaustive verification is limited to curves with at most " << kExhaustiveMaxPoints
                      << " points; use --level quick\n";
            return kUsage;
        }
        wpts = enumerate_weierstrass(s.W);
        if (wpts.size() > kExhaustiveMaxPoints) {
            std::cerr << "mu4: curve has " << wpts.size() << " points; exhaustive verification is limited to "
                      << kExhaustiveMaxPoints << "\n";
            return kUsage;
        }
    } else {
        wpts.push_back(AffinePointW<Gf2m>::infinity());
        if (s.gen) wpts.push_back(*s.gen);
        while (wpts.size() < 10) wpts.push_back(binary_random_point(s.W, rng));
    }
    std::vector<Point4<Gf2m>> pts;
    for (const auto& A : wpts) pts.push_back(w_to_curve(s, A));

    std::vector<SuiteResult> suites;
    auto add = [&](const Point4<Gf2m>& P, const Point4<Gf2m>& Q) { return add_complete(ar, C, P, Q); };

    {
        SuiteResult r{"on_curve"};
        if (s.gen) r.check(w_on_curve(s.W, *s.gen));
        for (const auto& P : pts) r.check(C.on_curve(P));
        r.check(C.on_curve(C.identity()));
        suites.push_back(r);
    }
    {
        SuiteResult r{"weierstrass_roundtrip"};
        for (size_t i = 0; i < pts.size(); ++i) r.check_that([&] { return w_eq(curve_to_w(s, pts[i]), wpts[i]); });
        suites.push_back(r);
    }
    {
        SuiteResult r{"addition_vs_oracle"};
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = 0; j < pts.size(); ++j)
                r.check_that([&] { return C.eq(add(pts[i], pts[j]), w_to_curve(s, oracle_add(s.W, wpts[i], wpts[j]))); });
        suites.push_back(r);
    }
    {
        SuiteResult r{"doubling"};
        for (size_t i = 0; i < pts.size(); ++i)
            r.check_that([&] { return C.eq(double_binary(ar, C, pts[i]), w_to_curve(s, oracle_add(s.W, wpts[i], wpts[i]))); });
        suites.push_back(r);
    }
    {
        SuiteResult r{"associativity"};
        size_t n = pts.size(), third = exhaustive && n > 64 ? 8 : n;
        if (third < n) r.note = "third operand restricted to 8 points";
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < third; ++k)
                    r.check_that([&] { return C.eq(add(add(pts[i], pts[j]), pts[k]), add(pts[i], add(pts[j], pts[k]))); });
        suites.push_back(r);
    }
    {
        // s0 vanishes exactly on P = Q, s2 exactly on P - Q = the X0 = 0 two-torsion point.
        SuiteResult r{"exceptional_loci"};
        auto T = torsion_table(C);
        std::optional<Point4<Gf2m>> S;
        for (const auto& X : T.two_torsion)
            if (f.is_zero(X[0])) S = X;
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = 0; j < pts.size(); ++j) {
                const auto &P = pts[i], &Q = pts[j];
                r.check_that([&] { return is_zero_tuple(f, add_binary_twisted(ar, C, P, Q)) == C.eq(P, Q); });
                r.check_that([&] {
                    bool z2 = is_zero_tuple(f, add_binary_twisted_s2(ar, C, P, Q));
                    return z2 == (S && C.eq(add(P, C.negate(Q)), *S));
                });
            }
        suites.push_back(r);
    }
    {
        SuiteResult r{"ladder"};
        std::vector<std::pair<Point4<Gf2m>, AffinePointW<Gf2m>>> bases;
        for (size_t i = 0; i < std::min<size_t>(pts.size(), exhaustive ? pts.size() : 3); ++i)
            bases.push_back({pts[i], wpts[i]});
        for (const auto& [P, A] : bases) {
            std::vector<Scalar> ks;
            if (exhaustive) {
                for (uint64_t k = 0; k <= wpts.size(); ++k) ks.push_back(Scalar(k));
            } else {
                Scalar bound = s.n > 0 ? s.n : Scalar(1) << f.degree();
                for (int t = 0; t < 4; ++t) ks.push_back(random_below(bound, rng));
            }
            for (const auto& k : ks)
                for (auto var : {LadderVariant::FourSquare, LadderVariant::FiveSquare})
                    r.check_that([&] { return C.eq(scalar_mul(k, P, C, var), w_to_curve(s, oracle_mul(s.W, k, A))); });
        }
        suites.push_back(r);
    }
    if (s.gen && s.n > 0) {
        SuiteResult r{"generator_order"};
        r.check_that([&] { return oracle_mul(s.W, s.n, *s.gen).inf; });
        r.check_that([&] { return C.eq(scalar_mul(s.n, w_to_curve(s, *s.gen), C), C.identity()); });
        suites.push_back(r);
    }

    bool all = true;
    for (const auto& r : suites) {
        bool ok = r.failures == 0;
        all = all && ok;
        std::string text = (ok ? "PASS " : "FAIL ") + r.name + " (" + std::to_string(r.checks) + " checks";
        if (!ok) text += ", " + std::to_string(r.failures) + " failed";
        if (!r.note.empty()) text += "; " + r.note;
        text += ")";
        json j{{"suite", r.name}, {"pass", ok}, {"checks", r.checks}, {"failures", r.failures}};
        if (!r.note.empty()) j["note"] = r.note;
        out.emit(text, j);
    }
    return all ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------

Point4<Gf2m> input_point(const BinarySetup& s, const Options& o) {
    Point4<Gf2m> P;
    if (!o.point.empty()) {
        try {
            P = parse_point(s.f(), o.point);
        } catch (const std::exception& e) {
            throw UsageError(std::string("bad --point: ") + e.what());
        }
    } else if (!o.wpoint.empty()) {
        auto A = parse_w(s.f(), o.wpoint);
        if (!w_on_curve(s.W, A)) throw UsageError("--wpoint is not on the Weierstrass curve");
        P = w_to_curve(s, A);
    } else if (s.gen) {
        P = w_to_curve(s, *s.gen);
    } else {
        throw UsageError("no --point given and the curve has no generator");
    }
    if (!s.curve.on_curve(P)) throw UsageError("input point is not on the curve");
    return P;
}

int cmd_mul(const Options& o) {
    auto s = load_curve(o.curve, "mul");
    if (o.k.empty()) throw UsageError("--k is required");
    Scalar k;
    try {
        k = parse_scalar_hex(o.k);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad --k: ") + e.what());
    }
    auto P = input_point(s, o);
    auto R = scalar_mul(k, P, s.curve);
    auto text = serialize_point(s.f(), R);
    json j{{"k", scalar_hex(k)}, {"point", text}};
    if (o.weierstrass) {
        auto w = w_string(s.f(), curve_to_w(s, R));
        text += " " + w;
        j["weierstrass"] = w;
    }
    Emitter(o.format == "jsonl").emit(text, j);
    return kOk;
}

int cmd_convert(const Options& o) {
    auto s = load_curve(o.curve, "convert");
    if (o.point.empty() == o.wpoint.empty()) throw UsageError("convert takes exactly one of --point, --wpoint");
    auto P = input_point(s, o);
    auto ser = serialize_point(s.f(), P);
    auto w = w_string(s.f(), curve_to_w(s, P));
    Emitter(o.format == "jsonl").emit(o.point.empty() ? ser : w, json{{"point", ser}, {"weierstrass", w}});
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_kat(const Options& o) {
    auto s = load_curve(o.curve, "kat");
    if (!s.gen || s.n <= 0) throw UsageError("kat needs a curve with generator and order (gx, gy, n)");
    if (o.count < 1) throw UsageError("--count must be positive");
    const Gf2m& f = s.f();
    const auto& C = s.curve;
    auto Sp = split_companion(C);
    auto P = w_to_curve(s, *s.gen);
    if (!C.on_curve(P)) {
        std::cerr << "mu4: generator is not on the curve\n";
        return kMismatch;
    }
    std::mt19937_64 rng(o.seed);
    std::vector<std::string> lines;
    for (int i = 0; i < o.count; ++i) {
        Scalar k = random_below(s.n, rng);
        auto ladder_kP = scalar_mul(k, P, C);
        auto oracle_w = oracle_mul(s.W, k, *s.gen);
        auto oracle_kP = w_to_curve(s, oracle_w);
        auto pi_l = project_kummer(Sp, hierarchy_map(ladder_kP, C, Sp));
        auto pi_o = project_kummer(Sp, hierarchy_map(oracle_kP, C, Sp));
        auto w_l = curve_to_w(s, ladder_kP);
        if (!C.eq(ladder_kP, oracle_kP) || !kummer_eq(f, pi_l, pi_o) || !w_eq(w_l, oracle_w)) {
            std::cerr << "mu4: ladder and oracle disagree at k=" << scalar_hex(k) << "; nothing written\n";
            return kMismatch;
        }
        auto pi = serialize_kummer(f, pi_l), pt = serialize_point(f, ladder_kP), w = w_string(f, w_l);
        if (o.format == "jsonl")
            lines.push_back(json{{"k", scalar_hex(k)}, {"kummer", pi}, {"point", pt}, {"weierstrass", w}}.dump());
        else
            lines.push_back(scalar_hex(k) + " " + pi + " " + pt + " " + w);
    }
    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::binary);
        if (!file) throw UsageError("cannot open '" + o.out + "' for writing");
    }
    std::ostream& os = o.out.empty() ? std::cout : file;
    for (const auto& l : lines) os << l << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twisted mu4-normal form arithmetic over binary fields"};
    app.require_subcommand(1);
    Options o;
    std::map<std::string, std::function<int(const Options&)>> handlers;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--curve", o.curve, "registry name (optionally name:split or name:semisplit) or inline spec")
            ->required();
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "jsonl"}));
        sub->add_option("--seed", o.seed, "random seed");
    };
    auto* count = app.add_subcommand("count", "measure operation counts and compare with the reference rows");
    common(count);
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    common(verify);
    verify->add_option("--level", o.level, "quick or exhaustive")->check(CLI::IsMember({"quick", "exhaustive"}));
    auto* mul = app.add_subcommand("mul", "scalar multiplication via the Montgomery ladder");
    common(mul);
    mul->add_option("--k", o.k, "scalar, hex")->required();
    mul->add_option("--point", o.point, "mu4 point (X0:X1:X2:X3), hex coordinates; default generator");
    mul->add_option("--wpoint", o.wpoint, "Weierstrass point x,y");
    mul->add_flag("--weierstrass", o.weierstrass, "also print the Weierstrass affine form");
    auto* convert = app.add_subcommand("convert", "convert between mu4 and Weierstrass coordinates");
    common(convert);
    convert->add_option("--point", o.point, "mu4 point to convert to Weierstrass form");
    convert->add_option("--wpoint", o.wpoint, "Weierstrass point to convert to mu4 form");
    auto* kat = app.add_subcommand("kat", "emit dual-path known-answer tests");
    common(kat);
    kat->add_option("--count", o.count, "number of vectors");
    kat->add_option("--out", o.out, "output file (default stdout)");

    handlers["count"] = cmd_count;
    handlers["verify"] = cmd_verify;
    handlers["mul"] = cmd_mul;
    handlers["convert"] = cmd_convert;
    handlers["kat"] = cmd_kat;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    try {
        return handlers.at(app.get_subcommands().front()->get_name())(o);
    } catch (const UsageError& e) {
        std::cerr << "mu4: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "mu4: " << e.what() << "\n";
        return kUsage;
    }
}
