#include "scenarios.hpp"

#include "k3lat/gsignature.hpp"
#include "k3lat/nikulin.hpp"
#include "k3lat/realization.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace k3r {

using namespace k3lat;

namespace {

const std::set<std::string>& plumbing_names() {
    static const std::set<std::string> s{
        "generator preserves the K3 Gram",
        "isotypic projectors sum to the identity",
        "glued lattice is even unimodular of signature (3,19)",
        "L_G isometric to L_p (independent search)",
    };
    return s;
}

bool is_plumbing(const std::string& name) {
    if (plumbing_names().count(name)) return true;
    return name.rfind("discriminant forms of L_p and", 0) == 0 || name.rfind("generator preserves the K3 Gram", 0) == 0;
}

std::string q(const Rat& x) { return x.str(); }

void defect_table(Report& r) {
    const std::string closure = "isolated fixed points close the signature balance";
    const std::string maxima = "the point defect is maximal at q = p-1";
    for (auto [p, nu] : std::vector<std::pair<long, long>>{{2, 8}, {3, 6}, {5, 4}, {7, 3}}) {
        const std::string tag = " (p=" + std::to_string(p) + ", nu=" + std::to_string(nu) + ")";
        const Rat lhs = Rat(nu) * defect_point(p, p - 1), rhs = Rat((p - 1) * (nu * p - 16));
        r.checks.push_back({make_check("nu*def(p,p-1) = (p-1)(nu p-16)" + tag, lhs == rhs, q(rhs), q(lhs)), closure});
        r.checks.push_back({make_check("24 - nu p = nu" + tag, 24 - nu * p == nu, std::to_string(nu), std::to_string(24 - nu * p)), closure});
        FixedPointPrediction fp = fixed_point_predictions(p, nu);
        BalanceReport b = signature_balance(p, -16, fp.quotient_signature, {p, std::vector<long>(static_cast<std::size_t>(nu), p - 1), {}});
        r.checks.push_back({make_check("signature balance" + tag, b.balanced, q(b.rhs), q(b.lhs)), closure});
        if (p == 2) continue;   // the p = 2 identity only involves fixed surfaces
        NoetherReport nr = noether_identity_check({p, std::vector<long>(static_cast<std::size_t>(nu), p - 1), {}});
        r.checks.push_back({make_check("Noether-type identity" + tag, nr.equals_eight, "8", q(nr.value)), closure});
    }
    for (long p : {3L, 5L, 7L}) {
        MaxDefectReport m = max_defect_check(p);
        const Rat want(Int((p - 1) * (p - 2)), Int(3));
        r.checks.push_back({make_check("strict maximum at q = p-1 (p=" + std::to_string(p) + ")",
                                       m.strict_at_minus_one && m.argmax == p - 1 && m.max == want, q(want),
                                       "argmax " + std::to_string(m.argmax) + ", max " + q(m.max)),
                            maxima});
    }
}

void dehn_twist(Report& r) {
    const std::string claim = "a reflection in a (-2)-class is not realized by a finite-order map";
    IntVector v = IntVector::Zero(22);
    v(0) = 1;
    v(1) = -1;
    DehnTwistReport d = dehn_twist_obstruction(v);
    auto prof = [](const std::vector<long>& b) {
        std::ostringstream os;
        for (std::size_t k = 1; k < b.size(); ++k)
            if (b[k]) os << (os.tellp() ? ", " : "") << b[k] << " of size " << k;
        return os.str();
    };
    r.checks.push_back({make_check("metric verdict", !d.realizability.metric, "no", d.realizability.metric ? "yes" : "no"), claim});
    r.checks.push_back({make_check("witness is v", d.witness_is_v, "e1 - f1", d.witness_is_v ? "e1 - f1" : "other"), claim});
    r.checks.push_back({make_check("(t,c,r) of the reflection", d.zg.t == 20 && d.zg.c == 0 && d.zg.r == 1, "(20,0,1)",
                                   "(" + std::to_string(d.zg.t) + "," + std::to_string(d.zg.c) + "," + std::to_string(d.zg.r) + ")"),
                        claim});
    r.checks.push_back({make_check("mod-2 Jordan profile differs from the realizable one", d.profile_differs,
                                   prof(d.realizable_blocks), prof(d.zg.blocks)),
                        claim});
}

void genus_check(Report& r) {
    const std::string claim = "fixed lattice genus candidates glue to L_p";
    for (long p : {3L, 5L, 7L}) {
        NikulinFamily fam = build_family(p);
        GenusReport g = genus_check_lambda_G(p, fam);
        const std::string tag = " (p=" + std::to_string(p) + ", " + g.candidate_name + ")";
        const long lr = fam.nu * (p - 1);
        r.checks.push_back({make_check("rank" + tag, g.rank_ok, std::to_string(22 - lr), std::to_string(g.candidate.rank())), claim});
        r.checks.push_back({make_check("signature" + tag, g.signature_ok, "(3," + std::to_string(19 - lr) + ")",
                                       "(" + std::to_string(g.signature.plus) + "," + std::to_string(g.signature.minus) + ")"),
                            claim});
        r.checks.push_back({make_check("discriminant form opposite to L_p" + tag, g.opposite_match, "true", g.opposite_match ? "true" : "false"), claim});
    }
}

void model_prime(Report& r, long p, long budget) {
    ModelPrimeAction m = build_model_prime_action(p, budget);
    append(r, m.example.checks, "order-p model action with coinvariant lattice L_p");
    DichotomyReport d = classify_dichotomy(m.example.group.generators()[0], p);
    const std::string claim = "order-p actions split into Nikulin and Coxeter kinds";
    r.checks.push_back({make_check("dichotomy kind", d.kind == "Nikulin", "Nikulin", d.kind), claim});
    append(r, d.checks, claim);
}

const std::map<std::string, std::function<void(Report&, long)>>& table() {
    static const std::map<std::string, std::function<void(Report&, long)>> t{
        {"a4-example", [](Report& r, long) {
             append(r, build_a4_example().checks, "A4 preserves a Ricci-flat metric but no complex structure");
         }},
        {"nikulin-involution", [](Report& r, long) {
             append(r, build_nikulin_involution().checks, "symplectic involution: 8 fixed points and L_G = E8(-2)");
         }},
        {"nikulin-family-p2", [](Report& r, long b) { append(r, verify_family(2, b), "lattice family for p = 2"); }},
        {"nikulin-family-p3", [](Report& r, long b) { append(r, verify_family(3, b), "lattice family for p = 3"); }},
        {"nikulin-family-p5", [](Report& r, long b) { append(r, verify_family(5, b), "lattice family for p = 5"); }},
        {"nikulin-family-p7", [](Report& r, long b) { append(r, verify_family(7, b), "lattice family for p = 7"); }},
        {"defect-table", [](Report& r, long) { defect_table(r); }},
        {"dehn-twist", [](Report& r, long) { dehn_twist(r); }},
        {"genus-check", [](Report& r, long) { genus_check(r); }},
        {"model-prime-3", [](Report& r, long b) { model_prime(r, 3, b); }},
        {"model-prime-5", [](Report& r, long b) { model_prime(r, 5, b); }},
        {"model-prime-7", [](Report& r, long b) { model_prime(r, 7, b); }},
    };
    return t;
}

}  // namespace

bool Report::failed() const {
    for (const auto& c : checks)
        if (c.check.failed()) return true;
    return false;
}

Json Report::to_json(bool timing) const {
    Json j;
    j["schema_version"] = schema_version;
    j["scenario"] = scenario;
    Json cs = Json::array();
    long pass = 0, fail = 0, inc = 0;
    for (const auto& c : checks) {
        Json x;
        x["name"] = c.check.name;
        x["status"] = c.check.status;
        x["expected"] = c.check.expected;
        x["computed"] = c.check.computed;
        x["anchor"] = c.anchor;
        cs.push_back(std::move(x));
        (c.check.passed() ? pass : c.check.failed() ? fail : inc)++;
    }
    j["checks"] = std::move(cs);
    j["summary"] = {{"pass", pass}, {"fail", fail}, {"inconclusive", inc}};
    if (timing) j["runtime_s"] = runtime_s;
    return j;
}

std::string Report::to_text(bool timing) const {
    std::ostringstream os;
    os << "scenario " << scenario << "\n";
    long pass = 0, fail = 0, inc = 0;
    for (const auto& c : checks) {
        std::string tag = c.check.passed() ? "PASS" : c.check.failed() ? "FAIL" : "INCONCLUSIVE";
        os << "  " << tag << "  " << c.check.name;
        if (!c.check.expected.empty() || !c.check.computed.empty())
            os << "  [expected " << (c.check.expected.empty() ? "-" : c.check.expected) << ", computed "
               << (c.check.computed.empty() ? "-" : c.check.computed) << "]";
        os << "  <" << c.anchor << ">\n";
        (c.check.passed() ? pass : c.check.failed() ? fail : inc)++;
    }
    os << pass << " passed, " << fail << " failed, " << inc << " inconclusive";
    if (timing) os << " in " << runtime_s << " s";
    os << "\n";
    return os.str();
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, f] : table()) v.push_back(k);
        return v;
    }();
    return names;
}

Report run_scenario(const std::string& name, long budget) {
    auto it = table().find(name);
    if (it == table().end()) throw std::invalid_argument("unknown scenario: " + name);
    Report r;
    r.scenario = name;
    const auto t0 = std::chrono::steady_clock::now();
    it->second(r, budget);
    r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

void append(Report& r, const std::vector<Check>& checks, const std::string& claim) {
    for (const auto& c : checks) r.checks.push_back({c, is_plumbing(c.name) ? "plumbing" : claim});
}

}  // namespace k3r
