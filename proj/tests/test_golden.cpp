#include "doctest.h"

#include "acceptance/golden.hpp"

#include "mackey/catalog.hpp"
#include "mackey/hom.hpp"
#include "mackey/resolution.hpp"
#include "mackey/spheres.hpp"

#include <filesystem>
#include <fstream>

using namespace mackey;
namespace acc = mackey::acceptance;
namespace fs = std::filesystem;

namespace {

fs::path scratch_copy(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("mackey_golden_" + tag);
    fs::remove_all(dir);
    fs::copy(acc::golden_dir(), dir);
    return dir;
}

int count_status(const std::vector<acc::GoldenResult>& results, acc::GoldenStatus s) {
    int n = 0;
    for (const auto& r : results) n += r.status == s;
    return n;
}

}  // namespace

TEST_CASE("bundled golden files match, including matrices") {
    const auto results = acc::check_golden(acc::golden_dir(), true);
    CHECK(results.size() == acc::golden_cases().size());
    for (const auto& r : results) {
        INFO(r.name);
        for (const auto& d : r.details) INFO(d);
        CHECK(r.status == acc::GoldenStatus::pass);
    }
}

TEST_CASE("a perturbed invariant factor is exactly one named mismatch") {
    const fs::path dir = scratch_copy("perturbed");
    const fs::path file = dir / "ext_c3n1_B1_Z.json";
    Json j;
    {
        std::ifstream in(file);
        j = Json::parse(in);
    }
    REQUIRE(j["degrees"][0]["fingerprint"]["levels"][1]["torsion"][0] == "3");
    j["degrees"][0]["fingerprint"]["levels"][1]["torsion"][0] = "9";
    std::ofstream(file) << j.dump(1);

    const auto results = acc::check_golden(dir.string());
    CHECK(count_status(results, acc::GoldenStatus::mismatch) == 1);
    CHECK(count_status(results, acc::GoldenStatus::missing) == 0);
    for (const auto& r : results)
        if (r.status == acc::GoldenStatus::mismatch) CHECK(r.name == "ext_c3n1_B1_Z");
    fs::remove_all(dir);
}

TEST_CASE("missing and unreadable golden files are reported separately") {
    const fs::path dir = scratch_copy("missing");
    fs::remove(dir / "tor_c2n2_Z10_Z10.json");
    std::ofstream(dir / "box_c3n2_Z10_Z10.json") << "{ not json";
    const auto results = acc::check_golden(dir.string());
    CHECK(count_status(results, acc::GoldenStatus::missing) == 1);
    CHECK(count_status(results, acc::GoldenStatus::unreadable) == 1);
    CHECK(count_status(results, acc::GoldenStatus::mismatch) == 0);
    fs::remove_all(dir);
}

TEST_CASE("graded JSON round trips") {
    const TowerShape s{2, 2};
    for (const GradedMackey& g : {ext_z(form_z(s, {1, 0}), constant_z(s)), tor_z(form_z(s, {1, 0}), form_z(s, {1, 0})),
                                  bredon_homology(s, parse_rep("3s-3L0", s))}) {
        const Json j = acc::graded_to_json(g);
        const Json again = Json::parse(j.dump());
        for (const auto& entry : again["degrees"]) {
            const int d = entry["degree"].get<int>();
            const MackeyFunctor m = from_json(entry["functor"]);
            CHECK(to_json(m) == to_json(g.at(d)));
            CHECK(fingerprint_from_json(entry["fingerprint"]) == fingerprint(g.at(d)));
        }
    }
}
