#include "scenarios.hpp"

#include "k3lat/gsignature.hpp"
#include "k3lat/io.hpp"
#include "k3lat/nikulin.hpp"
#include "k3lat/realization.hpp"
#include "k3lat/shortvec.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace k3lat;

namespace {

struct Options {
    std::string format = "human";
    std::optional<long> budget;
    std::optional<unsigned long> seed;   // accepted for interface stability; every search here is deterministic
    bool timing = false;

    bool structured() const { return format == "structured"; }
    long resolved_budget() const {
        if (budget) return *budget;
        if (const char* env = std::getenv("K3R_BUDGET")) {
            char* end = nullptr;
            const long b = std::strtol(env, &end, 10);
            if (end && *end == '\0' && b > 0) return b;
            throw CLI::ValidationError("K3R_BUDGET", "expected a positive integer, got \"" + std::string(env) + "\"");
        }
        return default_budget;
    }
};

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string vec_text(const IntVector& v) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? " " : "") << v(i);
    return os.str();
}

std::string mat_text(const IntMatrix& m) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i) os << vec_text(m.row(i).transpose()) << "\n";
    return os.str();
}

Json rat_vector_json(const RatVector& v) {
    Json r = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) r.push_back(to_json(Rat(v(i))));
    return r;
}

Lattice load_lattice(const std::string& path) { return lattice_from_json(read_json_file(path)); }

GroupFile load_group(const std::string& path, const std::string& isotypic) {
    GroupFile g = group_from_json(read_json_file(path));
    if (!isotypic.empty()) g.isotypic = isotypic_from_json(read_json_file(isotypic));
    return g;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io-error", "cannot write " + path);
    out << text;
}

int emit_report(const Options& o, const k3r::Report& r) {
    if (o.structured()) print_json(r.to_json(o.timing));
    else std::cout << r.to_text(o.timing);
    return r.failed() ? 1 : 0;
}

void compute_commands(CLI::App& app, Options& o, std::function<int()>& action) {
    auto* compute = app.add_subcommand("compute", "One-shot library operations")->require_subcommand(1);

    static std::string lattice, other, group, isotypic;
    static long norm = 2, p = 2, q = 1;

    auto* sig = compute->add_subcommand("signature", "Signature (plus minus zero)");
    sig->add_option("--lattice", lattice, "Lattice file")->required();
    sig->callback([&] {
        action = [&] {
            const Signature s = signature(load_lattice(lattice));
            if (o.structured()) print_json({{"plus", s.plus}, {"minus", s.minus}, {"zero", s.zero}});
            else std::cout << s.plus << " " << s.minus << " " << s.zero << "\n";
            return 0;
        };
    });

    auto* dt = compute->add_subcommand("det", "Determinant of the Gram matrix");
    dt->add_option("--lattice", lattice, "Lattice file")->required();
    dt->callback([&] {
        action = [&] {
            const Int d = det(load_lattice(lattice));
            if (o.structured()) print_json({{"det", to_json(d)}});
            else std::cout << d << "\n";
            return 0;
        };
    });

    auto* disc = compute->add_subcommand("disc", "Discriminant form");
    disc->add_option("--lattice", lattice, "Lattice file")->required();
    disc->callback([&] {
        action = [&] {
            const DiscriminantForm d = discriminant_group(load_lattice(lattice));
            Json orders = Json::array();
            for (const auto& x : d.orders) orders.push_back(to_json(x));
            Json j;
            j["cyclic_orders"] = orders;
            j["bilinear"] = to_json(d.bilinear);
            if (d.quadratic) j["quadratic"] = rat_vector_json(*d.quadratic);
            if (o.structured()) {
                print_json(j);
            } else {
                std::cout << "cyclic orders:";
                if (d.orders.empty()) std::cout << " none";
                for (const auto& x : d.orders) std::cout << " " << x;
                std::cout << "\n";
                if (d.quadratic) {
                    std::cout << "quadratic:";
                    for (Eigen::Index i = 0; i < d.quadratic->size(); ++i) std::cout << " " << (*d.quadratic)(i);
                    std::cout << "\n";
                }
            }
            return 0;
        };
    });

    auto* en = compute->add_subcommand("enumerate", "Vectors of a given norm, one per +- pair");
    en->add_option("--lattice", lattice, "Lattice file")->required();
    en->add_option("--norm", norm, "Target norm (sign must match a definite lattice)")->required();
    en->callback([&] {
        action = [&] {
            const auto vs = enumerate_vectors(load_lattice(lattice), Int(norm));
            if (o.structured()) {
                Json arr = Json::array();
                for (const auto& v : vs) arr.push_back(to_json(v));
                print_json({{"norm", norm}, {"count", vs.size()}, {"vectors", arr}});
            } else {
                for (const auto& v : vs) std::cout << vec_text(v) << "\n";
            }
            return 0;
        };
    });

    auto* roots = compute->add_subcommand("roots", "Root system of a definite lattice");
    roots->add_option("--lattice", lattice, "Lattice file")->required();
    roots->callback([&] {
        action = [&] {
            const RootSystem rs = classify_root_system(load_lattice(lattice));
            if (o.structured()) print_json({{"label", rs.label()}, {"roots", rs.roots.size()}, {"spanning", rs.spanning}});
            else std::cout << rs.label() << " (" << rs.roots.size() << " roots" << (rs.spanning ? ", spanning" : "") << ")\n";
            return 0;
        };
    });

    auto* mn = compute->add_subcommand("min", "Minimal |norm| and kissing number");
    mn->add_option("--lattice", lattice, "Lattice file")->required();
    mn->callback([&] {
        action = [&] {
            const MinNorm m = min_norm_and_kissing(load_lattice(lattice));
            if (o.structured()) print_json({{"min_norm", to_json(m.min_norm)}, {"count", m.count}});
            else std::cout << m.min_norm << " " << m.count << "\n";
            return 0;
        };
    });

    auto* iso = compute->add_subcommand("isometry", "Isometry search between two definite lattices");
    iso->add_option("--lattice", lattice, "Source lattice file")->required();
    iso->add_option("--other", other, "Target lattice file")->required();
    iso->callback([&] {
        action = [&] {
            const IsometryResult r = lattice_isometry(load_lattice(lattice), load_lattice(other), o.resolved_budget());
            if (o.structured()) {
                Json j{{"status", to_string(r.status)}, {"nodes", r.nodes}};
                if (r.status == SearchStatus::found) j["T"] = to_json(r.T);
                if (!r.reason.empty()) j["reason"] = r.reason;
                print_json(j);
            } else {
                std::cout << to_string(r.status) << "\n";
                if (r.status == SearchStatus::found) std::cout << mat_text(r.T);
            }
            return r.status == SearchStatus::none ? 1 : 0;
        };
    });

    auto* def = compute->add_subcommand("defect", "Point defect of type (1, q), or the table over q");
    def->add_option("--p", p, "Prime")->required();
    auto* qopt = def->add_option("--q", q, "Rotation exponent, 1 <= q < p");
    auto* table = def->add_flag("--table", "All q in 1..p-1 with the maximum");
    qopt->excludes(table);
    def->callback([&, qopt, table] {
        action = [&, qopt, table] {
            if (table->count()) {
                const MaxDefectReport m = max_defect_check(p);
                if (o.structured()) {
                    Json vals = Json::array();
                    for (const auto& v : m.values) vals.push_back(to_json(v));
                    print_json({{"p", p}, {"values", vals}, {"argmax", m.argmax}, {"max", to_json(m.max)},
                                {"strict_at_minus_one", m.strict_at_minus_one}});
                } else {
                    for (std::size_t i = 0; i < m.values.size(); ++i) std::cout << i + 1 << " " << m.values[i] << "\n";
                    std::cout << "max " << m.max << " at q = " << m.argmax << "\n";
                }
                return 0;
            }
            if (!qopt->count()) throw CLI::RequiredError("--q or --table");
            const Rat d = defect_point(p, q);
            if (o.structured()) print_json({{"p", p}, {"q", q}, {"defect", to_json(d)}});
            else std::cout << d << "\n";
            return 0;
        };
    });

    auto* zg = compute->add_subcommand("zg", "Z[G] summand counts (t, c, r) of a cyclic generator");
    zg->add_option("--group", group, "Group file (first generator is used)")->required();
    zg->add_option("--p", p, "Prime order")->required();
    zg->callback([&] {
        action = [&] {
            const GroupFile g = load_group(group, "");
            if (g.group.generators().empty()) throw Error("empty-group", "the group file has no generators");
            const ZGDecomposition z = zg_decomposition(g.group.generators()[0], p);
            if (o.structured()) {
                print_json({{"p", z.p}, {"t", z.t}, {"c", z.c}, {"r", z.r}, {"blocks", z.blocks}});
            } else {
                std::cout << z.t << " " << z.c << " " << z.r << "\nblocks";
                for (long b : z.blocks) std::cout << " " << b;
                std::cout << "\n";
            }
            return 0;
        };
    });
}

Json realizability_json(const RealizabilityReport& r) {
    Json j;
    j["schema_version"] = k3r::schema_version;
    j["metric"] = r.metric;
    j["metric_witness"] = r.metric_witness ? to_json(*r.metric_witness) : Json();
    j["complex"] = r.complex;
    j["reason"] = r.reason;
    j["complex_witness"] = r.complex_witness ? to_json(*r.complex_witness) : Json();
    j["mode"] = to_string(r.coinvariant.mode);
    j["p_types"] = r.coinvariant.p_types;
    j["L_G"] = {{"rank", r.coinvariant.L_G.rank()}, {"basis", to_json(r.coinvariant.L_G.basis())}};
    j["caveat"] = r.caveat;
    return j;
}

std::string realizability_text(const RealizabilityReport& r) {
    std::ostringstream os;
    os << "L_G rank " << r.coinvariant.L_G.rank() << " (" << to_string(r.coinvariant.mode) << ")\n";
    os << "metric: " << (r.metric ? "yes" : "no");
    if (r.metric_witness) os << " (witness " << vec_text(*r.metric_witness) << ")";
    os << "\ncomplex: " << (r.complex ? "yes" : "no") << " (" << r.reason << ")";
    if (r.complex_witness) os << " (witness " << vec_text(*r.complex_witness) << ")";
    os << "\n" << r.caveat << "\n";
    return os.str();
}

void group_commands(CLI::App& app, Options& o, std::function<int()>& action) {
    static std::string group, isotypic, out, name;
    static long p = 0, scale = 1;

    auto* decide = app.add_subcommand("decide", "Homological realizability verdicts for a finite group");
    decide->add_option("--group", group, "Group file")->required();
    decide->add_option("--isotypic", isotypic, "Isotypic projector file (non-cyclic groups)");
    decide->callback([&] {
        action = [&] {
            const GroupFile g = load_group(group, isotypic);
            const RealizabilityReport r = decide_realizability(g.group, g.isotypic);
            if (o.structured()) print_json(realizability_json(r));
            else std::cout << realizability_text(r);
            return 0;
        };
    });

    auto* dich = app.add_subcommand("dichotomy", "Nikulin or Coxeter kind of an order-p action");
    dich->add_option("--group", group, "Group file (first generator is used)")->required();
    dich->add_option("--p", p, "Odd prime (defaults to the group order)");
    dich->callback([&] {
        action = [&] {
            const GroupFile g = load_group(group, "");
            if (g.group.generators().empty()) throw Error("empty-group", "the group file has no generators");
            const long pp = p ? p : static_cast<long>(g.group.order());
            const DichotomyReport d = classify_dichotomy(g.group.generators()[0], pp);
            k3r::Report r;
            r.scenario = "dichotomy";
            k3r::append(r, d.checks, "order-p actions split into Nikulin and Coxeter kinds");
            if (o.structured()) {
                Json j = r.to_json(false);
                j["p"] = d.p;
                j["nu"] = d.nu;
                j["kind"] = d.kind;
                j["root_label"] = d.root_label;
                j["evidence"] = d.evidence;
                print_json(j);
            } else {
                std::cout << "kind " << d.kind << " (p = " << d.p << ", nu = " << d.nu << ", roots " << d.root_label << ")\n";
                for (const auto& e : d.evidence) std::cout << "  " << e << "\n";
                std::cout << r.to_text(false);
            }
            return r.failed() ? 1 : 0;
        };
    });

    auto* ex = app.add_subcommand("example", "Build a worked example: group file plus verification report");
    ex->add_option("name", name, "a4 | nikulin-involution | coxeter-model | prime-p")
        ->required()
        ->check(CLI::IsMember({"a4", "nikulin-involution", "coxeter-model", "prime-p"}));
    ex->add_option("--p", p, "Prime for prime-p (2, 3, 5 or 7)");
    ex->add_option("--out", out, "Write the group file here instead of embedding it in the output");
    ex->callback([&] {
        action = [&] {
            Example e;
            std::string claim;
            if (name == "a4") {
                e = build_a4_example();
                claim = "A4 preserves a Ricci-flat metric but no complex structure";
            } else if (name == "nikulin-involution") {
                e = build_nikulin_involution();
                claim = "symplectic involution: 8 fixed points and L_G = E8(-2)";
            } else if (name == "coxeter-model") {
                e = build_coxeter_model();
                claim = "order-3 action of Coxeter kind on A2(-1)^6";
            } else {
                if (!p) throw CLI::RequiredError("--p");
                e = build_model_prime_action(p, o.resolved_budget()).example;
                claim = "order-p model action with coinvariant lattice L_p";
            }
            k3r::Report r;
            r.scenario = "example-" + name;
            k3r::append(r, e.checks, claim);
            const Json gj = group_to_json(e.group, e.iso);
            if (!out.empty()) write_file(out, gj.dump(2) + "\n");
            if (o.structured()) {
                Json j = r.to_json(false);
                if (out.empty()) j["group"] = gj;
                print_json(j);
            } else {
                std::cout << r.to_text(false);
                if (out.empty()) std::cout << gj.dump(2) << "\n";
            }
            return r.failed() ? 1 : 0;
        };
    });

    auto* nik = app.add_subcommand("nikulin", "Verify the lattice family N_p, L_p, K_p");
    nik->add_option("--p", p, "Prime (2, 3, 5 or 7)")->required();
    nik->add_flag("--verify", "Run every family check (the default)");
    nik->callback([&] {
        action = [&] {
            k3r::Report r;
            r.scenario = "nikulin-p" + std::to_string(p);
            k3r::append(r, verify_family(p, o.resolved_budget()), "lattice family for p = " + std::to_string(p));
            return emit_report(o, r);
        };
    });

    auto* std_cmd = app.add_subcommand("standard", "Emit a named lattice file");
    std_cmd->add_option("name", name, "k3 | U | zero | A<n> | D<n> | E6 | E7 | E8")->required();
    std_cmd->add_option("--scale", scale, "Multiply the form by this integer");
    std_cmd->callback([&] {
        action = [&] {
            NamedLattice n = name == "k3" ? k3_lattice() : name == "U" ? hyperbolic_u() : name == "zero" ? zero_form_line() : root_lattice(name);
            if (scale != 1) {
                if (scale == 0) throw CLI::ValidationError("--scale", "must be nonzero");
                n.lattice = rescale(n.lattice, Int(scale));
                n.name += "(" + std::to_string(scale) + ")";
            }
            print_json(named_lattice_to_json(n));
            return 0;
        };
    });
}

void scenario_commands(CLI::App& app, Options& o, std::function<int()>& action) {
    static std::string name;
    auto* run = app.add_subcommand("run_scenario", "Run a named reproduction scenario");
    run->alias("run");
    run->add_option("name", name, "Scenario name")->required();
    run->callback([&] {
        action = [&] {
            const auto& names = k3r::scenario_names();
            if (std::find(names.begin(), names.end(), name) == names.end()) {
                std::cerr << "error: unknown scenario \"" << name << "\"; known:";
                for (const auto& n : names) std::cerr << " " << n;
                std::cerr << "\n";
                return 2;
            }
            return emit_report(o, k3r::run_scenario(name, o.resolved_budget()));
        };
    });
    app.add_subcommand("scenarios", "List scenario names")->callback([&] {
        action = [] {
            for (const auto& n : k3r::scenario_names()) std::cout << n << "\n";
            return 0;
        };
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice computations for finite symmetry groups of the K3 lattice"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "structured"}));
    app.add_option("--budget", o.budget, "Node budget for searches (overrides K3R_BUDGET)")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Accepted for compatibility; results never depend on it");
    app.add_flag("--timing", o.timing, "Include runtimes in reports");

    std::function<int()> action;
    compute_commands(app, o, action);
    group_commands(app, o, action);
    scenario_commands(app, o, action);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return action();
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == "io-error" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
