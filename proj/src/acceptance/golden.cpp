#include "acceptance/golden.hpp"

#include "mackey/box.hpp"
#include "mackey/catalog.hpp"
#include "mackey/hom.hpp"
#include "mackey/resolution.hpp"
#include "mackey/spheres.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#ifndef MACKEY_DEFAULT_GOLDEN_DIR
#define MACKEY_DEFAULT_GOLDEN_DIR "golden"
#endif

namespace mackey::acceptance {

namespace fs = std::filesystem;

Json graded_to_json(const GradedMackey& g) {
    Json degrees = Json::array();
    for (const auto& [d, m] : g) {
        if (m.is_zero()) continue;
        degrees.push_back(Json{{"degree", d},
                               {"label", identify(m)},
                               {"fingerprint", fingerprint_to_json(fingerprint(m))},
                               {"functor", to_json(m)}});
    }
    return Json{{"degrees", degrees}};
}

namespace {

GradedMackey single(const MackeyFunctor& m) { return {{0, m}}; }

GoldenCase ext_case(int p, int n, const std::string& a, const std::string& b) {
    const TowerShape s{p, n};
    return {"ext_c" + std::to_string(p) + "n" + std::to_string(n) + "_" + a + "_" + b, s,
            [=] { return ext_z(catalog_by_name(a, s), catalog_by_name(b, s)); }};
}

GoldenCase tor_case(int p, int n, const std::string& a, const std::string& b) {
    const TowerShape s{p, n};
    return {"tor_c" + std::to_string(p) + "n" + std::to_string(n) + "_" + a + "_" + b, s,
            [=] { return tor_z(catalog_by_name(a, s), catalog_by_name(b, s)); }};
}

GoldenCase box_case(int p, int n, const std::string& a, const std::string& b) {
    const TowerShape s{p, n};
    return {"box_c" + std::to_string(p) + "n" + std::to_string(n) + "_" + a + "_" + b, s,
            [=] { return single(box(catalog_by_name(a, s), catalog_by_name(b, s))); }};
}

GoldenCase sphere_case(int p, int n, const std::string& label, const std::string& stem) {
    const TowerShape s{p, n};
    return {"sphere_c" + std::to_string(p) + "n" + std::to_string(n) + "_" + stem, s,
            [=] { return bredon_homology(s, parse_rep(label, s)); }};
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
    return out;
}

}  // namespace

const std::vector<GoldenCase>& golden_cases() {
    static const std::vector<GoldenCase> cases = [] {
        std::vector<GoldenCase> c;
        for (int p : {2, 3, 5}) {
            c.push_back(ext_case(p, 1, "B1", "Z"));
            c.push_back(ext_case(p, 1, "B1", "B1"));
            c.push_back(ext_case(p, 1, "B1", "Z1"));
        }
        for (int p : {2, 3}) {
            c.push_back(ext_case(p, 2, "Z10", "Z"));
            c.push_back(ext_case(p, 2, "Z01", "B10"));
            c.push_back(ext_case(p, 2, "B11", "Z"));
            c.push_back(tor_case(p, 2, "Z10", "Z10"));
            c.push_back(tor_case(p, 2, "Z11", "Z11"));
            c.push_back(box_case(p, 2, "Z10", "Z10"));
            c.push_back(box_case(p, 2, "B10", "Z01"));
            const TowerShape s{p, 2};
            c.push_back({"ihom_c" + std::to_string(p) + "n2_Z10_Z01", s,
                         [s] { return single(internal_hom(form_z(s, {1, 0}), form_z(s, {0, 1}))); }});
        }
        c.push_back(sphere_case(3, 1, "-3L0+1", "m3L0p1"));
        c.push_back(sphere_case(5, 1, "2L0-4", "2L0m4"));
        c.push_back(sphere_case(2, 1, "-5s", "m5s"));
        c.push_back(sphere_case(2, 1, "3s-2", "3sm2"));
        c.push_back(sphere_case(2, 2, "4s-3L0", "4sm3L0"));
        c.push_back(sphere_case(2, 2, "3s-3L0", "3sm3L0"));
        c.push_back(sphere_case(3, 2, "2L1-3L0", "2L1m3L0"));
        c.push_back(sphere_case(3, 2, "-2L1+2L0", "m2L1p2L0"));
        c.push_back(sphere_case(5, 2, "-L1-2L0", "mL1m2L0"));
        c.push_back(sphere_case(2, 3, "L1-L0-2s+2", "c8_form101"));
        return c;
    }();
    return cases;
}

std::string golden_dir() {
    if (const char* env = std::getenv("MACKEY_GOLDEN_DIR"); env && *env) return env;
    return MACKEY_DEFAULT_GOLDEN_DIR;
}

std::string status_name(GoldenStatus s) {
    switch (s) {
        case GoldenStatus::pass: return "pass";
        case GoldenStatus::mismatch: return "MISMATCH";
        case GoldenStatus::missing: return "MISSING";
        case GoldenStatus::unreadable: return "UNREADABLE";
    }
    return "?";
}

std::vector<std::string> write_golden(const std::string& dir) {
    fs::create_directories(dir);
    std::vector<std::string> written;
    for (const auto& c : golden_cases()) {
        Json j{{"schema", kSchema}, {"case", c.name}, {"p", c.shape.p}, {"n", c.shape.n}};
        j["degrees"] = graded_to_json(c.compute())["degrees"];
        const fs::path path = fs::path(dir) / (c.name + ".json");
        std::ofstream(path) << j.dump(1) << "\n";
        written.push_back(path.string());
    }
    return written;
}

std::vector<GoldenResult> check_golden(const std::string& dir, bool matrices) {
    std::vector<GoldenResult> out;
    for (const auto& c : golden_cases()) {
        GoldenResult r{c.name, GoldenStatus::pass, {}};
        const fs::path path = fs::path(dir) / (c.name + ".json");
        if (!fs::exists(path)) {
            r.status = GoldenStatus::missing;
            r.details.push_back("no file " + path.string());
            out.push_back(r);
            continue;
        }
        std::map<int, Json> stored;
        try {
            std::ifstream in(path);
            const Json j = Json::parse(in);
            if (j.at("schema") != kSchema) throw std::runtime_error("unsupported schema " + j.at("schema").dump());
            for (const auto& d : j.at("degrees")) stored[d.at("degree").get<int>()] = d;
            for (auto& [d, entry] : stored) fingerprint_from_json(entry.at("fingerprint"));
        } catch (const std::exception& e) {
            r.status = GoldenStatus::unreadable;
            r.details.push_back(path.string() + ": " + e.what());
            out.push_back(r);
            continue;
        }
        std::map<int, MackeyFunctor> computed;
        for (auto& [d, m] : c.compute())
            if (!m.is_zero()) computed.emplace(d, m);
        for (const auto& [d, m] : computed) {
            auto it = stored.find(d);
            if (it == stored.end()) {
                r.details.push_back("degree " + std::to_string(d) + ": computed " + identify(m) + ", golden has 0");
                continue;
            }
            const Fingerprint want = fingerprint_from_json(it->second.at("fingerprint"));
            const Fingerprint got = fingerprint(m);
            if (!(want == got)) {
                r.details.push_back("degree " + std::to_string(d) + ": fingerprint differs (" + join(got.diff(want)) +
                                    ")");
            } else if (matrices && to_json(m) != it->second.at("functor")) {
                r.details.push_back("degree " + std::to_string(d) + ": structure matrices differ");
            }
        }
        for (const auto& [d, entry] : stored)
            if (!computed.count(d))
                r.details.push_back("degree " + std::to_string(d) + ": computed 0, golden has " +
                                    entry.value("label", std::string("?")));
        if (!r.details.empty()) r.status = GoldenStatus::mismatch;
        out.push_back(r);
    }
    return out;
}

}  // namespace mackey::acceptance
