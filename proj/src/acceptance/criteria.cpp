#include "acceptance/criteria.hpp"

#include "acceptance/oracles.hpp"
#include "acceptance/parallel.hpp"

#include "mackey/box.hpp"
#include "mackey/catalog.hpp"
#include "mackey/hom.hpp"
#include "mackey/spheres.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

namespace mackey::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string shape_name(const TowerShape& s) {
    return "C_" + std::to_string(s.p) + (s.n == 1 ? "" : "^" + std::to_string(s.n));
}

void expect_graded(CriterionResult& r, const std::string& what, const GradedMackey& got, const Expected& want,
                   const TowerShape& shape) {
    for (const auto& line : compare_graded(got, want, shape)) r.failures.push_back(what + ": " + line);
}

void expect(CriterionResult& r, bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
}

std::string signed_term(long c, const std::string& symbol) {
    if (c == 0) return "";
    std::string out = c < 0 ? "-" : "+";
    if (c != 1 && c != -1) out += std::to_string(c < 0 ? -c : c);
    return out + symbol;
}

std::string label_text(long n_coef, long m_coef, long trivial = 0) {
    std::string out = signed_term(n_coef, "L1") + signed_term(m_coef, "L0");
    if (trivial != 0) out += (trivial < 0 ? "" : "+") + std::to_string(trivial);
    if (!out.empty() && out[0] == '+') out.erase(0, 1);
    return out.empty() ? "0" : out;
}

// Sphere grid entry: computes H(S^V) and compares it with the oracle, catching engine errors.
struct GridJob {
    TowerShape shape;
    std::string label;
    Expected expected;
    std::vector<std::string> failures;
};

void run_grid(std::vector<GridJob>& jobs, int workers) {
    parallel_for(jobs.size(), workers, [&](std::size_t i) {
        GridJob& job = jobs[i];
        try {
            GradedMackey h = bredon_homology(job.shape, parse_rep(job.label, job.shape));
            for (const auto& line : compare_graded(h, job.expected, job.shape))
                job.failures.push_back(shape_name(job.shape) + " V=" + job.label + " " + line);
        } catch (const std::exception& e) {
            job.failures.push_back(shape_name(job.shape) + " V=" + job.label + ": " + e.what());
        }
    });
}

void collect(CriterionResult& r, const std::vector<GridJob>& jobs) {
    for (const auto& job : jobs)
        for (const auto& f : job.failures) r.failures.push_back(f);
}

void c1(CriterionResult& r, const AcceptanceOptions&) {
    for (int p : {2, 3, 5}) {
        const TowerShape s{p, 1};
        const MackeyFunctor b = torsion_b(s, {1}), z = constant_z(s), zs = form_z(s, {1});
        struct Case {
            std::string name;
            MackeyFunctor target;
            Expected want;
        };
        std::vector<Case> cases{{"Ext(B1, Z)", z, {{3, b}}},
                                {"Ext(B1, B1)", b, {{0, b}, {3, b}}},
                                {"Ext(B1, Z*)", zs, {{1, b}}}};
        for (const auto& c : cases) {
            const auto start = Clock::now();
            GradedMackey e = ext_z(b, c.target);
            const double t = since(start);
            expect_graded(r, shape_name(s) + " " + c.name, e, c.want, s);
            if (t >= 1.0) r.failures.push_back(shape_name(s) + " " + c.name + " took " + std::to_string(t) + " s");
        }
    }
}

void c2(CriterionResult& r, const AcceptanceOptions&) {
    r.budget_seconds = 30;
    int count = 0;
    for (int p : {2, 3})
        for (int n : {1, 2}) {
            const TowerShape s{p, n};
            for (const auto& m : torsion_catalog(s)) {
                expect_graded(r, shape_name(s) + " Ext(" + identify(m) + ", Z)", ext_z(m, constant_z(s)),
                              {{3, dual_levelwise(m, DualMode::E)}}, s);
                ++count;
            }
        }
    r.notes.push_back(std::to_string(count) + " torsion modules");
}

void c3(CriterionResult& r, const AcceptanceOptions&) {
    for (int p : {2, 3}) {
        const TowerShape s{p, 2};
        for (const auto& t : all_t_vectors(2)) {
            Expected want{{0, constant_z(s)}};
            const MackeyFunctor b = torsion_b(s, t);
            if (!b.is_zero()) want[2] = dual_levelwise(b, DualMode::E);
            expect_graded(r, shape_name(s) + " Ext(Z" + t_vector_name(t) + ", Z)", ext_z(form_z(s, t), constant_z(s)),
                          want, s);
        }
    }
}

void c4(CriterionResult& r, const AcceptanceOptions&) {
    for (int p : {2, 3}) {
        for (int n : {1, 2}) {
            const TowerShape s{p, n};
            const std::vector<int> ones(n, 1);
            const MackeyFunctor zs = form_z(s, ones);
            expect_graded(r, shape_name(s) + " Tor(Z*, Z*)", tor_z(zs, zs), {{0, zs}, {1, torsion_b(s, ones)}}, s);
        }
        const TowerShape s{p, 2};
        const MackeyFunctor z10 = form_z(s, {1, 0});
        const MackeyFunctor sum = direct_sum_m(form_z(s, {1, 1}), torsion_b(s, {0, 1}));
        expect_graded(r, shape_name(s) + " Tor(Z10, Z10)", tor_z(z10, z10), {{0, sum}, {1, torsion_b(s, {1, 0})}}, s);
        const MackeyFunctor b = box(z10, z10);
        expect(r, same_fingerprint(b, sum) && is_isomorphic(b, sum),
               shape_name(s) + " box(Z10, Z10) = " + identify(b) + ", expected Z(1,1) + B(0,1)");
    }
}

void c5(CriterionResult& r, const AcceptanceOptions&) {
    int pairs = 0;
    for (int p : {2, 3})
        for (int n : {1, 2}) {
            const TowerShape s{p, n};
            const auto mods = corpus(s);
            std::vector<Resolution> res;
            for (const auto& m : mods) {
                res.push_back(resolve(m));
                expect(r, res.back().certified(), shape_name(s) + " resolution of " + identify(m) + " not exact");
            }
            for (std::size_t i = 0; i < mods.size(); ++i)
                for (std::size_t j = 0; j < mods.size(); ++j) {
                    GradedMackey e = ext_z(res[i], mods[j]);
                    GradedMackey t = tor_z(mods[j], res[i]);
                    for (int d : {4, 5}) {
                        expect(r, graded_at(e, d, s).is_zero(),
                               shape_name(s) + " Ext^" + std::to_string(d) + "(" + identify(mods[i]) + ", " +
                                   identify(mods[j]) + ") != 0");
                        expect(r, graded_at(t, d, s).is_zero(),
                               shape_name(s) + " Tor_" + std::to_string(d) + "(" + identify(mods[j]) + ", " +
                                   identify(mods[i]) + ") != 0");
                    }
                    ++pairs;
                }
        }
    r.notes.push_back(std::to_string(pairs) + " ordered pairs");
}

void c6(CriterionResult& r, const AcceptanceOptions& o) {
    r.budget_seconds = 60;
    std::vector<GridJob> jobs;
    for (int p : {3, 5})
        for (long a = -4; a <= 4; ++a)
            for (long b = -8; b <= 8; ++b)
                jobs.push_back({TowerShape{p, 1}, label_text(0, a, b), cp_sphere(p, a, b), {}});
    run_grid(jobs, o.jobs);
    collect(r, jobs);
    r.notes.push_back(std::to_string(jobs.size()) + " representations");
}

void c7(CriterionResult& r, const AcceptanceOptions& o) {
    std::vector<GridJob> jobs;
    for (long s = -6; s <= 6; ++s)
        for (long b = -6; b <= 6; ++b) {
            std::string text = signed_term(s, "s");
            if (b != 0) text += (b < 0 ? "" : "+") + std::to_string(b);
            if (!text.empty() && text[0] == '+') text.erase(0, 1);
            jobs.push_back({TowerShape{2, 1}, text.empty() ? "0" : text, c2_sphere(s, b), {}});
        }
    run_grid(jobs, o.jobs);
    collect(r, jobs);
    r.notes.push_back(std::to_string(jobs.size()) + " representations");
}

void c8(CriterionResult& r, const AcceptanceOptions& o) {
    r.budget_seconds = 600;
    std::vector<GridJob> jobs;
    int pulled = 0;
    for (int p : o.primes_cp2)
        for (long n = -3; n <= 3; ++n)
            for (long m = -3; m <= 3; ++m) {
                Expected e;
                if (!cp2_sphere(p, n, m, &e)) {
                    e = cp2_pulled_back(p, n);
                    ++pulled;
                }
                jobs.push_back({TowerShape{p, 2}, label_text(n, m), e, {}});
            }
    run_grid(jobs, o.jobs);
    collect(r, jobs);
    r.notes.push_back(std::to_string(jobs.size()) + " representations, " + std::to_string(pulled) +
                      " of them (n < 0, m = 0) checked against the pullback from C_p");
}

void c9(CriterionResult& r, const AcceptanceOptions&) {
    const TowerShape s{2, 2};
    expect_graded(r, "4s-3L0", bredon_homology(s, parse_rep("4s-3L0", s)), c4_four_sigma(), s);
    const GradedMackey h = bredon_homology(s, parse_rep("3s-3L0", s));
    expect_graded(r, "3s-3L0", h, c4_three_sigma_stated(), s);
    std::ostringstream computed;
    computed << "computed 3s-3L0:";
    for (const auto& [d, m] : h)
        if (!m.is_zero()) computed << " " << d << ": " << identify(m) << ";";
    r.notes.push_back(computed.str());
    const MackeyFunctor bottom = graded_at(h, -3, s);
    r.notes.push_back(std::string("degree -3 is the nonsplit extension M1: ") +
                      (is_isomorphic(bottom, c4_m1()) ? "yes" : "no"));
}

void c10(CriterionResult& r, const AcceptanceOptions&) {
    for (int p : {2, 3, 5})
        for (int n : {1, 2}) {
            const TowerShape s{p, n};
            for (int k = 0; k < n; ++k) {
                const CellComplex base = chain_lambda(s, k, 1);
                const GradedMackey h = bredon_homology(base), hd = bredon_homology(dualize(base));
                for (long rr = 2; rr <= 7; ++rr) {
                    if (rr % p == 0) continue;
                    const CellComplex c = chain_lambda(s, k, rr);
                    const std::string what = shape_name(s) + " lambda(" + std::to_string(rr) + "*p^" +
                                             std::to_string(k) + ")";
                    for (const auto& line : compare_graded(bredon_homology(c), h, s))
                        r.failures.push_back(what + " " + line);
                    for (const auto& line : compare_graded(bredon_homology(dualize(c)), hd, s))
                        r.failures.push_back(what + " dual " + line);
                }
            }
            const std::vector<int> ones(n, 1);
            expect_graded(r, shape_name(s) + " S^{-lambda_0}", bredon_homology(s, parse_rep("-L0", s)),
                          {{-2, form_z(s, ones)}}, s);
        }
}

void c11(CriterionResult& r, const AcceptanceOptions&) {
    int count = 0;
    for (int p : {2, 3})
        for (int n : {1, 2, 3}) {
            const TowerShape s{p, n};
            for (const auto& t : all_t_vectors(n)) {
                const MackeyFunctor f = form_z(s, t);
                const RepLabel v = form_to_rep(f);
                expect_graded(r, shape_name(s) + " Z" + t_vector_name(t) + " -> " + to_string(v),
                              bredon_homology(s, v), {{0, f}}, s);
                ++count;
            }
        }
    const TowerShape c8{2, 3};
    const RepLabel v = form_to_rep(form_z(c8, {1, 0, 1}));
    const RepLabel want = canonicalize(parse_rep("-L0+L1-L2+2", c8), c8);
    expect(r, v == want, "C_8 example: got " + to_string(v) + ", expected " + to_string(want));
    r.notes.push_back(std::to_string(count) + " forms; C_8 Z(1,0,1) -> " + to_string(v));
}

void c12(CriterionResult& r, const AcceptanceOptions&) {
    for (int p : {2, 3}) {
        const TowerShape s{p, 2};
        for (const auto& a : all_t_vectors(2))
            for (const auto& b : all_t_vectors(2)) {
                CompatReport c = ext_sphere_crosscheck(form_z(s, a), form_z(s, b));
                for (const auto& line : c.mismatches)
                    r.failures.push_back(shape_name(s) + " (Z" + t_vector_name(a) + ", Z" + t_vector_name(b) +
                                         ") " + line);
            }
    }
}

void c13(CriterionResult& r, const AcceptanceOptions& o) {
    struct Job {
        TowerShape shape;
        std::string label;
        DualityReport report;
        std::string error;
    };
    std::vector<Job> jobs;
    for (int p : o.primes_cp2)
        for (long n = -3; n <= 3; ++n)
            for (long m = -3; m <= 3; ++m) jobs.push_back({TowerShape{p, 2}, label_text(n, m), {}, {}});
    parallel_for(jobs.size(), o.jobs, [&](std::size_t i) {
        try {
            jobs[i].report = anderson_check(jobs[i].shape, parse_rep(jobs[i].label, jobs[i].shape));
        } catch (const std::exception& e) {
            jobs[i].error = e.what();
        }
    });
    int nonsplit = 0;
    for (const auto& j : jobs) {
        const std::string where = shape_name(j.shape) + " V=" + j.label;
        if (!j.error.empty()) r.failures.push_back(where + ": " + j.error);
        for (const auto& line : j.report.mismatches) r.failures.push_back(where + " " + line);
        nonsplit += static_cast<int>(j.report.nonsplit_degrees.size());
    }
    r.notes.push_back(std::to_string(jobs.size()) + " representations, " + std::to_string(nonsplit) +
                      " nonsplit degrees");
}

void c14(CriterionResult& r, const AcceptanceOptions&) {
    int pairs = 0;
    for (int p : {2, 3}) {
        const TowerShape s{p, 1};
        const auto mods = corpus(s);
        for (const auto& a : mods)
            for (const auto& b : mods) {
                CompatReport c = pullback_compat_check(a, b, 1);
                for (const auto& line : c.mismatches)
                    r.failures.push_back(shape_name(s) + " (" + identify(a) + ", " + identify(b) + ") " + line);
                ++pairs;
            }
    }
    r.notes.push_back(std::to_string(pairs) + " ordered pairs");
}

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

void c15(CriterionResult& r, const AcceptanceOptions&) {
    r.budget_seconds = 120;
    std::mt19937 rng(20261018);

    // random direct sums, kernels and cokernels of corpus functors
    int constructions = 0;
    std::vector<TowerShape> shapes{{2, 1}, {3, 1}, {2, 2}, {3, 2}};
    while (constructions < 200) {
        const TowerShape s = shapes[constructions % shapes.size()];
        const auto mods = corpus(s);
        std::uniform_int_distribution<std::size_t> pick(0, mods.size() - 1);
        const MackeyFunctor a = mods[pick(rng)], b = mods[pick(rng)];
        const MackeyFunctor sum = direct_sum_m(a, b);
        std::vector<MackeyFunctor> built{sum};
        MackeyHomGroup h = hom_group(sum, direct_sum_m(b, mods[pick(rng)]));
        if (h.group.num_generators() > 0) {
            IntVector coef(h.group.num_generators());
            std::uniform_int_distribution<int> cd(-3, 3);
            for (int g = 0; g < coef.size(); ++g) coef(g) = cd(rng);
            const MackeyHom f = h.element(coef);
            expect(r, validate(f).empty(), "random hom is not a Mackey map");
            built.push_back(kernel_m(f));
            built.push_back(cokernel_m(f));
        }
        for (const auto& m : built) {
            const auto problems = validate(m);
            if (!problems.empty()) r.failures.push_back(shape_name(s) + " construction: " + problems.front());
            expect(r, is_cohomological(m), shape_name(s) + " construction is not cohomological");
        }
        ++constructions;
    }

    // Smith normal form certificates
    for (int trial = 0; trial < 500; ++trial) {
        std::uniform_int_distribution<int> dim(1, 8);
        const int rows = dim(rng), cols = dim(rng);
        const IntMatrix a = random_matrix(rng, rows, cols, 50);
        SmithOptions opts;
        opts.track_u_inverse = true;
        const SmithForm f = smith_normal_form(a, opts);
        bool ok = matrices_equal(multiply(multiply(f.U, a), f.V), f.D);
        ok = ok && abs(determinant(f.U)) == 1 && abs(determinant(f.V)) == 1;
        ok = ok && matrices_equal(multiply(f.U, f.U_inverse), identity_matrix(rows));
        for (std::size_t i = 0; i + 1 < f.d.size(); ++i) ok = ok && f.d[i + 1] % f.d[i] == 0;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                const bool diagonal = i == j && i < static_cast<int>(f.d.size());
                ok = ok && (diagonal ? f.D(i, j) == f.d[i] && f.d[i] > 0 : f.D(i, j) == 0);
            }
        if (!ok) r.failures.push_back("Smith form certificate failed on random matrix " + std::to_string(trial));
    }

    // box unit, commutativity and associativity on the catalog
    int products = 0;
    for (const auto& s : shapes) {
        const auto mods = corpus(s);
        const MackeyFunctor z = constant_z(s);
        for (std::size_t i = 0; i < mods.size(); ++i) {
            expect(r, same_fingerprint(box(z, mods[i]), mods[i]),
                   shape_name(s) + " Z box " + identify(mods[i]) + " is not " + identify(mods[i]));
            for (std::size_t j = i + 1; j < mods.size(); ++j) {
                expect(r, same_fingerprint(box(mods[i], mods[j]), box(mods[j], mods[i])),
                       shape_name(s) + " box not symmetric on " + identify(mods[i]) + ", " + identify(mods[j]));
                ++products;
            }
        }
        std::vector<std::vector<MackeyFunctor>> pair(mods.size());
        for (std::size_t i = 0; i < mods.size(); ++i)
            for (std::size_t j = 0; j < mods.size(); ++j)
                pair[i].push_back(j < i ? pair[j][i] : box(mods[i], mods[j]));
        // commutativity is checked above, so triples i <= j <= k suffice
        for (std::size_t i = 0; i < mods.size(); ++i)
            for (std::size_t j = i; j < mods.size(); ++j)
                for (std::size_t k = j; k < mods.size(); ++k) {
                    expect(r, same_fingerprint(box(pair[i][j], mods[k]), box(mods[i], pair[j][k])),
                           shape_name(s) + " box not associative on " + identify(mods[i]) + ", " +
                               identify(mods[j]) + ", " + identify(mods[k]));
                    ++products;
                }
    }
    r.notes.push_back(std::to_string(constructions) + " constructions, 500 matrices, " + std::to_string(products) +
                      " box checks");
}

using Runner = std::function<void(CriterionResult&, const AcceptanceOptions&)>;

struct Entry {
    const char* title;
    Runner run;
};

const std::vector<Entry>& table() {
    static const std::vector<Entry> entries{
        {"C_p Ext table for B(1)", c1},
        {"Ext of torsion modules into Z is the E-dual in degree 3", c2},
        {"Ext of forms of Z into Z over C_{p^2}", c3},
        {"Tor and box examples", c4},
        {"Ext and Tor vanish in degrees 4 and 5", c5},
        {"C_p sphere grid", c6},
        {"C_2 sphere grid", c7},
        {"C_{p^2} oriented sphere grid", c8},
        {"C_4 examples with 4 and 3 sign representations", c9},
        {"twist invariance and S^{-lambda}", c10},
        {"forms of Z as representation spheres", c11},
        {"Ext and Tor of forms against sphere homology", c12},
        {"Anderson duality pairing", c13},
        {"pullback compatibility of Ext and Tor", c14},
        {"property suites", c15},
    };
    return entries;
}

}  // namespace

std::string criterion_title(int id) {
    if (id < 1 || id > kCriterionCount) return "unknown criterion";
    return table()[id - 1].title;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
    CriterionResult r;
    r.id = id;
    r.title = criterion_title(id);
    if (id < 1 || id > kCriterionCount) {
        r.failures.push_back("no such criterion");
        return r;
    }
    const auto start = Clock::now();
    try {
        table()[id - 1].run(r, options);
    } catch (const std::exception& e) {
        r.failures.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = since(start);
    if (r.budget_seconds > 0 && r.seconds >= r.budget_seconds)
        r.failures.push_back("took " + std::to_string(r.seconds) + " s, limit " + std::to_string(r.budget_seconds) +
                             " s");
    r.pass = r.failures.empty();
    return r;
}

CriterionResult run_cp2_grid(const AcceptanceOptions& options) { return run_criterion(8, options); }

std::string summary_line(const CriterionResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", r.seconds);
    std::string id = std::to_string(r.id);
    if (id.size() < 2) id = " " + id;
    return "criterion " + id + " " + (r.pass ? "PASS" : "FAIL") + "  " + r.title + "  (" + buf + " s)";
}

}  // namespace mackey::acceptance
