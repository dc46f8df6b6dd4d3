// mackey: command-line front end for the Mackey functor library.
//
// Exit codes: 0 success, 1 selftest failure, 2 invalid input, 3 resource limit.

#include "acceptance/criteria.hpp"
#include "acceptance/golden.hpp"
#include "acceptance/parallel.hpp"

#include "mackey/box.hpp"
#include "mackey/catalog.hpp"
#include "mackey/errors.hpp"
#include "mackey/hom.hpp"
#include "mackey/resolution.hpp"
#include "mackey/serialize.hpp"
#include "mackey/spheres.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace mackey;
namespace acc = mackey::acceptance;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;

struct Globals {
    int p = 2;
    int n = 1;
    std::string format = "lewis";
    int jobs = 1;

    TowerShape shape() const {
        TowerShape s{p, n};
        s.validate();
        return s;
    }
};

// A catalog name, or a path to a JSON functor (which must live on the requested group).
MackeyFunctor operand(const std::string& text, const TowerShape& shape) {
    const bool looks_like_path = text.find('/') != std::string::npos || text.ends_with(".json");
    if (looks_like_path || std::filesystem::exists(text)) {
        std::ifstream in(text);
        if (!in) throw ValidationError("cannot open operand file '" + text + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::parse_error& e) {
            throw ValidationError(text + ": " + e.what());
        }
        MackeyFunctor m = from_json(j);
        if (!(m.shape == shape))
            throw ValidationError(text + ": functor is over C_" + std::to_string(m.shape.p) + "^" +
                                  std::to_string(m.shape.n) + ", expected C_" + std::to_string(shape.p) + "^" +
                                  std::to_string(shape.n));
        return m;
    }
    return catalog_by_name(text, shape);
}

Json header(const std::string& command, const TowerShape& s) {
    return Json{{"schema", kSchema}, {"command", command}, {"p", s.p}, {"n", s.n}};
}

void print_functor(const Globals& g, const std::string& command, const MackeyFunctor& m, Json extra = Json::object()) {
    if (g.format == "json") {
        Json j = header(command, m.shape);
        for (auto& [k, v] : extra.items()) j[k] = v;
        j["label"] = identify(m);
        j["fingerprint"] = fingerprint_to_json(fingerprint(m));
        j["functor"] = to_json(m);
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (auto& [k, v] : extra.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    std::cout << identify(m) << "\n";
    if (g.format == "lewis") std::cout << render_lewis(m);
}

// `pi_label(d)` gives the homotopy-grading name of degree d, or "" when not applicable.
void print_graded(const Globals& g, const std::string& command, const TowerShape& s, const GradedMackey& h,
                  const std::string& degree_name, const std::function<std::string(int)>& pi_label = nullptr,
                  Json extra = Json::object()) {
    if (g.format == "json") {
        Json j = header(command, s);
        for (auto& [k, v] : extra.items()) j[k] = v;
        Json degrees = acc::graded_to_json(h)["degrees"];
        if (pi_label)
            for (auto& d : degrees) d["pi"] = pi_label(d["degree"].get<int>());
        j["degrees"] = degrees;
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (auto& [k, v] : extra.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    bool any = false;
    for (const auto& [d, m] : h) {
        if (m.is_zero()) continue;
        any = true;
        if (g.format == "grid") {
            std::cout << degree_name << std::left << std::setw(4) << d << std::right;
            if (pi_label) std::cout << "  " << std::left << std::setw(22) << pi_label(d) << std::right;
            std::cout << "  " << identify(m) << "\n";
        } else {
            std::cout << degree_name << d;
            if (pi_label) std::cout << "  (" << pi_label(d) << ")";
            std::cout << ": " << identify(m) << "\n" << render_lewis(m) << "\n";
        }
    }
    if (!any) std::cout << "all degrees zero\n";
}

std::string pi_name(int d, const RepLabel& v) { return "pi_{" + std::to_string(d) + "-(" + to_string(v) + ")}"; }

int cmd_sphere(const Globals& g, const std::vector<std::string>& labels, bool no_cross_check) {
    const TowerShape s = g.shape();
    std::vector<RepLabel> reps;
    for (const auto& l : labels) reps.push_back(parse_rep(l, s));
    std::vector<GradedMackey> results(reps.size());
    acc::parallel_for(reps.size(), g.jobs,
                      [&](std::size_t i) { results[i] = bredon_homology(s, reps[i], !no_cross_check); });
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const RepLabel& v = reps[i];
        Json extra{{"V", to_string(v)}, {"dimension", v.dimension()}};
        print_graded(g, "sphere", s, results[i], "H_", [&](int d) { return pi_name(d, v); }, extra);
        if (g.format != "json" && i + 1 < reps.size()) std::cout << "\n";
    }
    return 0;
}

int cmd_forms(const Globals& g) {
    const TowerShape s = g.shape();
    Json rows = Json::array();
    for (const auto& t : all_t_vectors(s.n)) {
        const MackeyFunctor f = form_z(s, t);
        const RepLabel v = form_to_rep(f);
        const GradedMackey h = bredon_homology(s, v);
        bool concentrated = true;
        for (const auto& [d, m] : h)
            if (d != 0 && !m.is_zero()) concentrated = false;
        const bool matches = concentrated && is_isomorphic(graded_at(h, 0, s), f);
        if (g.format == "json")
            rows.push_back(Json{{"form", "Z" + t_vector_name(t)}, {"V", to_string(v)}, {"verified", matches}});
        else
            std::cout << "Z" << t_vector_name(t) << "  V = " << to_string(v) << "  "
                      << (matches ? "H(S^V) = form in degree 0" : "MISMATCH") << "\n";
    }
    if (g.format == "json") {
        Json j = header("forms", s);
        j["forms"] = rows;
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_duality(const Globals& g, const std::string& label) {
    const TowerShape s = g.shape();
    const RepLabel v = parse_rep(label, s);
    const DualityReport r = anderson_check(s, v);
    if (g.format == "json") {
        Json j = header("duality", s);
        j["V"] = to_string(v);
        j["ok"] = r.ok;
        j["mismatches"] = r.mismatches;
        j["nonsplit_degrees"] = r.nonsplit_degrees;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "V = " << to_string(v) << ": " << (r.ok ? "duality holds" : "duality FAILS") << "\n";
        for (const auto& m : r.mismatches) std::cout << "  " << m << "\n";
        for (int d : r.nonsplit_degrees) std::cout << "  nonsplit extension in degree " << d << "\n";
    }
    return r.ok ? 0 : kExitFailure;
}

int cmd_crosscheck(const Globals& g, const std::string& a, const std::string& b) {
    const TowerShape s = g.shape();
    const MackeyFunctor m = operand(a, s), n = operand(b, s);
    const CompatReport r = ext_sphere_crosscheck(m, n);
    if (g.format == "json") {
        Json j = header("crosscheck", s);
        j["V_M"] = to_string(form_to_rep(m));
        j["V_N"] = to_string(form_to_rep(n));
        j["ok"] = r.ok;
        j["mismatches"] = r.mismatches;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "V_M = " << to_string(form_to_rep(m)) << ", V_N = " << to_string(form_to_rep(n)) << ": "
                  << (r.ok ? "Ext and Tor agree with sphere homology" : "MISMATCH") << "\n";
        for (const auto& line : r.mismatches) std::cout << "  " << line << "\n";
    }
    return r.ok ? 0 : kExitFailure;
}

int cmd_selftest(const Globals& g, const std::string& suite, int pmax, bool write, bool matrices) {
    const std::string dir = acc::golden_dir();
    if (write) {
        for (const auto& path : acc::write_golden(dir)) std::cout << "wrote " << path << "\n";
        return 0;
    }
    acc::AcceptanceOptions options;
    options.jobs = g.jobs;
    options.primes_cp2.clear();
    for (int p = 2; p <= pmax; ++p)
        if (is_prime(p)) options.primes_cp2.push_back(p);

    std::vector<int> ids;
    bool golden = false;
    if (suite == "all") {
        for (int id = 1; id <= acc::kCriterionCount; ++id) ids.push_back(id);
        golden = true;
    } else if (suite == "criteria") {
        for (int id = 1; id <= acc::kCriterionCount; ++id) ids.push_back(id);
    } else if (suite == "golden") {
        golden = true;
    } else if (suite == "cp2") {
        ids.push_back(8);
    } else {
        std::stringstream ss(suite);
        std::string item;
        while (std::getline(ss, item, ',')) {
            int id = 0;
            try {
                id = std::stoi(item);
            } catch (...) {
                throw ValidationError("unknown suite '" + suite + "' (all, criteria, golden, cp2 or criterion ids)");
            }
            if (id < 1 || id > acc::kCriterionCount) throw ValidationError("no criterion " + item);
            ids.push_back(id);
        }
    }

    int failures = 0;
    for (int id : ids) {
        const acc::CriterionResult r = acc::run_criterion(id, options);
        std::cout << acc::summary_line(r) << std::endl;
        for (const auto& note : r.notes) std::cout << "    " << note << "\n";
        for (const auto& f : r.failures) std::cout << "    mismatch: " << f << "\n";
        if (!r.pass) ++failures;
    }
    if (golden) {
        int missing = 0, bad = 0;
        for (const auto& r : acc::check_golden(dir, matrices)) {
            if (r.status == acc::GoldenStatus::pass) continue;
            (r.status == acc::GoldenStatus::missing ? missing : bad)++;
            std::cout << "golden " << acc::status_name(r.status) << " " << r.name << "\n";
            for (const auto& d : r.details) std::cout << "    " << d << "\n";
        }
        const std::size_t total = acc::golden_cases().size();
        std::cout << "golden: " << total - missing - bad << "/" << total << " match, " << bad << " mismatched, "
                  << missing << " missing (" << dir << ")\n";
        if (missing + bad > 0) ++failures;
    }
    return failures == 0 ? 0 : kExitFailure;
}

// Labels such as "-L1+L0" would be taken for short options. A leading space keeps them
// positional, and the label parser ignores whitespace.
std::vector<std::string> protect_labels(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) {
        std::string a = argv[i];
        if (a.size() > 1 && a[0] == '-' && a[1] != '-' && a != "-h") a.insert(0, " ");
        args.push_back(a);
    }
    return args;  // reversed, as CLI11 expects
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mackey functors for cyclic p-groups: box products, Ext/Tor and representation spheres"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--p", g.p, "prime p (G = C_{p^n})")->capture_default_str();
    app.add_option("--n", g.n, "exponent n (G = C_{p^n})")->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"lewis", "json", "grid"}))
        ->capture_default_str();
    app.add_option("--jobs", g.jobs, "worker threads for grid commands")->check(CLI::PositiveNumber);

    std::string a, b;
    auto binary = [&](const std::string& name, const std::string& help) {
        CLI::App* c = app.add_subcommand(name, help);
        c->add_option("M", a, "catalog name (Z, Z*, Z10, B1, B01^E, Zm, P0, ...) or JSON file")->required();
        c->add_option("N", b, "second operand")->required();
        return c;
    };
    CLI::App* box_cmd = binary("box", "box product of two Z-modules");
    CLI::App* hom_cmd = binary("hom", "internal Hom and the group Hom(M, N)");
    CLI::App* ext_cmd = binary("ext", "Ext^i(M, N) for i = 0..5");
    CLI::App* tor_cmd = binary("tor", "Tor_i(M, N) for i = 0..5");
    CLI::App* cross_cmd = binary("crosscheck", "compare Ext/Tor of two forms of Z with sphere homology");

    std::vector<std::string> labels;
    bool no_cross_check = false;
    CLI::App* sphere_cmd = app.add_subcommand("sphere", "homology of S^V with constant Z coefficients");
    sphere_cmd->add_option("V", labels, "representation labels such as 2L1-3L0+4, -3s, L0@2")->required();
    sphere_cmd->add_flag("--no-cross-check", no_cross_check, "skip the reduced-model comparison for actual V");

    CLI::App* forms_cmd = app.add_subcommand("forms", "forms of Z and the representations realizing them");

    std::string pull_operand;
    int pull_k = 1;
    CLI::App* pull_cmd = app.add_subcommand("pullback", "inflate a functor from C_{p^n} to C_{p^{n+k}}");
    pull_cmd->add_option("M", pull_operand, "operand over C_{p^n}")->required();
    pull_cmd->add_option("--k", pull_k, "size of the kernel C_{p^k}")->capture_default_str();

    std::string dual_label;
    CLI::App* dual_cmd = app.add_subcommand("duality", "Anderson duality check for S^V");
    dual_cmd->add_option("V", dual_label, "representation label")->required();

    std::string suite = "all";
    int pmax = 5;
    bool write = false, matrices = false;
    CLI::App* self_cmd = app.add_subcommand("selftest", "run the acceptance criteria and golden files");
    self_cmd->add_option("--suite", suite, "all, criteria, golden, cp2, or comma-separated criterion ids")
        ->capture_default_str();
    self_cmd->add_option("--pmax", pmax, "largest prime for the C_{p^2} grid and duality checks")
        ->check(CLI::Range(2, 7))
        ->capture_default_str();
    self_cmd->add_flag("--write-golden", write, "regenerate the golden files instead of checking them");
    self_cmd->add_flag("--matrices", matrices, "also compare stored structure matrices");

    try {
        app.parse(protect_labels(argc, argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*box_cmd) {
            const TowerShape s = g.shape();
            print_functor(g, "box", box(operand(a, s), operand(b, s)));
        } else if (*hom_cmd) {
            const TowerShape s = g.shape();
            const MackeyFunctor m = operand(a, s), n = operand(b, s);
            const MackeyHomGroup h = hom_group(m, n);
            print_functor(g, "hom", internal_hom(m, n), Json{{"Hom(M, N)", h.group.canonical().to_string()}});
        } else if (*ext_cmd) {
            const TowerShape s = g.shape();
            print_graded(g, "ext", s, ext_z(operand(a, s), operand(b, s)), "Ext^");
        } else if (*tor_cmd) {
            const TowerShape s = g.shape();
            print_graded(g, "tor", s, tor_z(operand(a, s), operand(b, s)), "Tor_");
        } else if (*cross_cmd) {
            return cmd_crosscheck(g, a, b);
        } else if (*sphere_cmd) {
            return cmd_sphere(g, labels, no_cross_check);
        } else if (*forms_cmd) {
            return cmd_forms(g);
        } else if (*pull_cmd) {
            if (pull_k < 0) throw ValidationError("--k must be nonnegative");
            const MackeyFunctor m = pullback_psi(operand(pull_operand, g.shape()), pull_k);
            print_functor(g, "pullback", m);
        } else if (*dual_cmd) {
            return cmd_duality(g, dual_label);
        } else if (*self_cmd) {
            return cmd_selftest(g, suite, pmax, write, matrices);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    }
    return 0;
}
