// Case configuration, end-to-end runs, and the command line front end.
// CLI tests drive the real binary through std::system and only assert on
// exit codes and produced files.

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "xiga/case_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using xiga::CaseConfig;
using xiga::InputError;

namespace {

json base_config() {
    return json{
        {"version", 1},
        {"geometry", {{"kind", "square"}, {"length", 1.0}, {"width", 1.0}}},
        {"thickness", 0.01},
        {"material", {{"solid", "aluminum"}}},
        {"boundary", {{"preset", "ssss"}}},
        {"mesh", {{"degree", 2}, {"elements", 4}}},
        {"n_modes", 4},
    };
}

void expect_input_error(const json& j, const std::string& needle) {
    try {
        CaseConfig::from_json(j);
        FAIL_CHECK("expected InputError mentioning '" << needle << "'");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
}

int run_command(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path);
    REQUIRE(os.good());
    os << text;
}

} // namespace

TEST_CASE("full config round trips every field") {
    json j = {
        {"version", 1},
        {"name", "annulus-demo"},
        {"geometry",
         {{"kind", "half_annulus"}, {"r_inner", 0.5}, {"r_outer", 1.0}}},
        {"thickness", 0.1},
        {"material",
         {{"ceramic", "alumina"},
          {"metal", {{"young", 70.0e9}, {"poisson", 0.3}, {"density", 2707.0}}},
          {"exponent", 2.5},
          {"scheme", "mori-tanaka"}}},
        {"theory", {{"model", "first-order"}, {"shear_correction", 0.9}}},
        {"crack", {{"a", {-0.75, 0.0}}, {"b", {-0.5, 0.0}}}},
        {"boundary", {{"preset", "annulus-symmetric"}, {"release_radius", 0.75}}},
        {"mesh", {{"degree", 3}, {"elements", 12}}},
        {"n_modes", 5},
        {"normalization",
         {{"kind", "shear-gap"}, {"reference", "ceramic"}, {"span", "gap"}}},
    };
    const CaseConfig cfg = CaseConfig::from_json(j);
    CHECK(cfg.name == "annulus-demo");
    CHECK(cfg.geometry == xiga::GeometryKind::HalfAnnulus);
    CHECK(cfg.r_inner == 0.5);
    CHECK(cfg.r_outer == 1.0);
    CHECK(cfg.thickness == 0.1);
    CHECK(cfg.ceramic.young == 380.0e9);
    CHECK(cfg.metal.young == 70.0e9);
    CHECK(cfg.exponent == 2.5);
    CHECK(cfg.scheme == xiga::Homogenization::MoriTanaka);
    CHECK(cfg.theory.model == xiga::ShearModel::FirstOrder);
    CHECK(cfg.theory.shear_correction == 0.9);
    REQUIRE(cfg.crack.has_value());
    CHECK(cfg.crack->first.x() == -0.75);
    CHECK(cfg.crack->second.x() == -0.5);
    CHECK(cfg.boundary.edge[0] == xiga::EdgeCondition::Symmetry);
    CHECK(cfg.boundary.edge[2] == xiga::EdgeCondition::Free);
    CHECK(cfg.boundary.edge[3] == xiga::EdgeCondition::Clamped);
    CHECK(cfg.boundary.release_radius == 0.75);
    CHECK(cfg.degree == 3);
    CHECK(cfg.elements == 12);
    CHECK(cfg.n_modes == 5);
    CHECK(cfg.normalization == xiga::Normalization::ShearGap);
    CHECK(cfg.normalize_with_ceramic);
    CHECK(cfg.resolved_span() == doctest::Approx(0.5));
}

TEST_CASE("solid material shortcut and explicit edges parse") {
    json j = base_config();
    j["boundary"] = {{"edges", {"clamped", "free", "soft-ss", "symmetry"}}};
    const CaseConfig cfg = CaseConfig::from_json(j);
    CHECK(cfg.ceramic.young == cfg.metal.young);
    CHECK(cfg.exponent == 0.0);
    CHECK(cfg.boundary.edge[0] == xiga::EdgeCondition::Clamped);
    CHECK(cfg.boundary.edge[1] == xiga::EdgeCondition::Free);
    CHECK(cfg.boundary.edge[2] == xiga::EdgeCondition::SoftSimplySupported);
    CHECK(cfg.boundary.edge[3] == xiga::EdgeCondition::Symmetry);
    // defaults
    CHECK(cfg.theory.model == xiga::ShearModel::ThirdOrder);
    CHECK(cfg.normalization == xiga::Normalization::None);
    CHECK(cfg.name == "case");
}

TEST_CASE("numeric normalization span is taken verbatim") {
    json j = base_config();
    j["normalization"] = {{"kind", "shear-square"}, {"span", 2.5}};
    const CaseConfig cfg = CaseConfig::from_json(j);
    CHECK(cfg.span_choice == "value");
    CHECK(cfg.resolved_span() == 2.5);
}

TEST_CASE("config rejections name the offending field") {
    {
        json j = base_config();
        j.erase("version");
        expect_input_error(j, "version");
    }
    {
        json j = base_config();
        j["version"] = 2;
        expect_input_error(j, "version");
    }
    {
        json j = base_config();
        j["geometry"]["kind"] = "triangle";
        expect_input_error(j, "geometry.kind");
    }
    {
        json j = base_config();
        j.erase("material");
        expect_input_error(j, "material");
    }
    {
        json j = base_config();
        j["thickness"] = -0.1;
        expect_input_error(j, "thickness");
    }
    {
        json j = base_config();
        j["boundary"] = {{"preset", "simply"}};
        expect_input_error(j, "boundary.preset");
    }
    {
        json j = base_config();
        j["boundary"] = {{"edges", {"free", "free"}}};
        expect_input_error(j, "boundary.edges");
    }
    {
        json j = base_config();
        j["mesh"]["degree"] = 1;
        expect_input_error(j, "mesh.degree");
    }
    {
        json j = base_config();
        j["material"] = {{"ceramic", "alumina"},
                         {"metal", "aluminum"},
                         {"exponent", 1.0},
                         {"scheme", "voigt"}};
        expect_input_error(j, "material.scheme");
    }
    {
        json j = base_config();
        j["n_modes"] = 0;
        expect_input_error(j, "n_modes");
    }
    {
        json j = base_config();
        j["crack"] = {{"a", {0.1}}, {"b", {0.9, 0.5}}};
        expect_input_error(j, "crack");
    }
    {
        json j = base_config();
        j["normalization"] = {{"kind", "thin-plate"}, {"reference", "steel"}};
        expect_input_error(j, "normalization.reference");
    }
    {
        json j = base_config();
        j["normalization"] = {{"kind", "shear-gap"}, {"span", "gap"}};
        const CaseConfig cfg = CaseConfig::from_json(j);
        CHECK_THROWS_AS(cfg.resolved_span(), InputError); // gap on a square
    }
}

TEST_CASE("file loading reports open and parse failures") {
    CHECK_THROWS_WITH_AS(CaseConfig::from_file("/nonexistent/cfg.json"),
                         doctest::Contains("cannot open"), InputError);

    const fs::path dir = fresh_dir("xiga-badjson");
    write_text(dir / "broken.json", "{ not json ]");
    CHECK_THROWS_WITH_AS(CaseConfig::from_file((dir / "broken.json").string()),
                         doctest::Contains("not valid JSON"), InputError);

    // name falls back to the file stem
    json j = base_config();
    write_text(dir / "plate-a.json", j.dump());
    CHECK(CaseConfig::from_file((dir / "plate-a.json").string()).name ==
          "plate-a");
}

TEST_CASE("repeated runs of one case are reproducible") {
    const CaseConfig cfg = CaseConfig::from_json(base_config());
    const auto first = xiga::run_case(cfg);
    const auto second = xiga::run_case(cfg);
    REQUIRE(first.modal.omega.size() == second.modal.omega.size());
    for (size_t k = 0; k < first.modal.omega.size(); ++k)
        CHECK(first.modal.omega[k] ==
              doctest::Approx(second.modal.omega[k]).epsilon(1e-12));
}

TEST_CASE("frequency table serializes with the documented header") {
    json j = base_config();
    j["normalization"] = {{"kind", "thin-plate"}};
    const auto run = xiga::run_case(CaseConfig::from_json(j));
    const std::string csv = xiga::frequencies_csv(run);
    CHECK(csv.rfind("mode,omega_rad_s,normalized,convention\n", 0) == 0);
    const size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == run.modal.omega.size() + 1);
    CHECK(csv.find("thin-plate") != std::string::npos);
}

TEST_CASE("symmetric half annulus runs and edge release softens it") {
    json j = {
        {"version", 1},
        {"geometry",
         {{"kind", "half_annulus"}, {"r_inner", 0.5}, {"r_outer", 1.0}}},
        {"thickness", 0.05},
        {"material",
         {{"ceramic", "alumina"}, {"metal", "aluminum"}, {"exponent", 1.0}}},
        {"boundary", {{"preset", "annulus-symmetric"}}},
        {"mesh", {{"degree", 2}, {"elements", 8}}},
        {"n_modes", 3},
    };
    const auto intact = xiga::run_case(CaseConfig::from_json(j));
    CHECK(intact.constraints.n_tied > 0);
    CHECK(intact.constraints.n_eliminated > 0);
    REQUIRE(!intact.modal.omega.empty());
    CHECK(intact.modal.omega[0] > 0.0);

    j["boundary"]["release_radius"] = 0.75;
    const auto released = xiga::run_case(CaseConfig::from_json(j));
    REQUIRE(!released.modal.omega.empty());
    CHECK(released.modal.omega[0] <= intact.modal.omega[0] * (1.0 + 1e-12));
    CHECK(released.constraints.n_eliminated < intact.constraints.n_eliminated);
}

TEST_CASE("reference tables parse entries with per-row tolerances") {
    const fs::path dir = fresh_dir("xiga-reftable");
    write_text(dir / "table.json", R"({
        "label": "demo",
        "default_tolerance": 0.02,
        "entries": [
            {"case": "a", "mode": 1, "value": 19.739},
            {"case": "a", "mode": 2, "value": 49.348, "tolerance": 0.05}
        ]
    })");
    const auto table =
        xiga::ReferenceTable::from_file((dir / "table.json").string());
    CHECK(table.label == "demo");
    REQUIRE(table.entries.size() == 2);
    CHECK(table.entries[0].tolerance == 0.02);
    CHECK(table.entries[1].tolerance == 0.05);
    CHECK_THROWS_AS(xiga::ReferenceTable::from_file("/nonexistent.json"),
                    InputError);
}

TEST_CASE("command line front end honors the exit code contract") {
    const fs::path dir = fresh_dir("xiga-cli-test");
    const std::string cli = XIGA_CLI_PATH;
    const std::string quiet = " > /dev/null 2>&1";

    json cfg = base_config();
    cfg["name"] = "smoke";
    cfg["normalization"] = {{"kind", "thin-plate"}};
    write_text(dir / "smoke.json", cfg.dump(2));

    const fs::path out = dir / "out";
    CHECK(run_command(cli + " run " + (dir / "smoke.json").string() + " -o " +
                      out.string() + " --dump-modes 1 --grid 9" + quiet) == 0);
    CHECK(fs::exists(out / "frequencies.csv"));
    CHECK(fs::exists(out / "run.log"));
    CHECK(fs::exists(out / "mode_1.csv"));

    // input problems exit with 2
    CHECK(run_command(cli + " run " + (dir / "missing.json").string() + quiet) ==
          2);
    write_text(dir / "broken.json", "{ nope");
    CHECK(run_command(cli + " run " + (dir / "broken.json").string() + quiet) ==
          2);

    // comparison against a reference table: pass, fail, unknown case
    write_text(dir / "ref.json", R"({
        "label": "smoke reference",
        "entries": [
            {"case": "smoke", "mode": 1, "value": 19.7392, "tolerance": 0.05},
            {"case": "smoke", "mode": 2, "value": 49.348, "tolerance": 0.08}
        ]
    })");
    const std::string results = (out / "frequencies.csv").string();
    CHECK(run_command(cli + " compare " + (dir / "ref.json").string() +
                      " smoke " + results + quiet) == 0);

    write_text(dir / "ref_bad.json", R"({
        "entries": [{"case": "smoke", "mode": 1, "value": 25.0,
                     "tolerance": 0.001}]
    })");
    CHECK(run_command(cli + " compare " + (dir / "ref_bad.json").string() +
                      " smoke " + results + quiet) == 1);
    CHECK(run_command(cli + " compare " + (dir / "ref.json").string() +
                      " unknown " + results + quiet) == 2);

    // sweep: summary written, config failures surface as exit 3
    const fs::path sweep_dir = dir / "sweep";
    fs::create_directories(sweep_dir);
    write_text(sweep_dir / "one.json", cfg.dump(2));
    const fs::path sweep_out = dir / "sweep-out";
    CHECK(run_command(cli + " sweep " + sweep_dir.string() + " -o " +
                      sweep_out.string() + quiet) == 0);
    CHECK(fs::exists(sweep_out / "sweep_summary.csv"));

    write_text(sweep_dir / "two.json", "{ nope");
    CHECK(run_command(cli + " sweep " + sweep_dir.string() + quiet) == 3);

    // mesh and matrix dumps for the small case
    CHECK(run_command(cli + " dump-mesh " + (dir / "smoke.json").string() +
                      " -o " + (dir / "mesh.txt").string() + quiet) == 0);
    CHECK(fs::exists(dir / "mesh.txt"));
    CHECK(run_command(cli + " dump-matrices " + (dir / "smoke.json").string() +
                      " -o " + (dir / "mats").string() + quiet) == 0);
    CHECK(fs::exists(dir / "mats" / "K.mtx"));
    CHECK(fs::exists(dir / "mats" / "M.mtx"));
}

TEST_CASE("antisymmetric mirror edges complement the symmetric family") {
    json j = {
        {"version", 1},
        {"geometry",
         {{"kind", "half_annulus"}, {"r_inner", 0.5}, {"r_outer", 1.0}}},
        {"thickness", 0.05},
        {"material",
         {{"ceramic", "alumina"}, {"metal", "aluminum"}, {"exponent", 1.0}}},
        {"boundary", {{"preset", "annulus-antisymmetric"}}},
        {"mesh", {{"degree", 2}, {"elements", 8}}},
        {"n_modes", 3},
    };
    const auto anti = xiga::run_case(CaseConfig::from_json(j));
    // The odd family pins w on the mirror plane instead of tying its
    // normal slope, so it carries no tie constraints at all.
    CHECK(anti.constraints.n_tied == 0);
    CHECK(anti.constraints.n_eliminated > 0);
    REQUIRE(!anti.modal.omega.empty());

    j["boundary"]["preset"] = "annulus-symmetric";
    const auto sym = xiga::run_case(CaseConfig::from_json(j));
    // Distinct families: the lowest mode of each differs.
    CHECK(std::abs(anti.modal.omega[0] - sym.modal.omega[0]) >
          1e-3 * sym.modal.omega[0]);

    // Releasing a crack span frees previously pinned control points.
    j["boundary"]["preset"] = "annulus-antisymmetric";
    j["boundary"]["release_radius"] = 0.75;
    const auto released = xiga::run_case(CaseConfig::from_json(j));
    CHECK(released.constraints.n_eliminated < anti.constraints.n_eliminated);
    CHECK(released.modal.omega[0] <= anti.modal.omega[0] * (1.0 + 1e-12));
}

TEST_CASE("mirror split merges the parity families in ascending order") {
    json j = {
        {"version", 1},
        {"geometry",
         {{"kind", "half_annulus"}, {"r_inner", 0.5}, {"r_outer", 1.0}}},
        {"thickness", 0.05},
        {"material",
         {{"ceramic", "alumina"}, {"metal", "aluminum"}, {"exponent", 1.0}}},
        {"boundary",
         {{"preset", "annulus-split"}, {"release_radius", 0.75}}},
        {"mesh", {{"degree", 2}, {"elements", 8}}},
        {"n_modes", 4},
    };
    const auto merged = xiga::run_case(CaseConfig::from_json(j));
    REQUIRE(merged.modal.omega.size() == 4);

    j["boundary"] = {{"preset", "annulus-symmetric"}, {"release_radius", 0.75}};
    const auto sym = xiga::run_case(CaseConfig::from_json(j));
    j["boundary"] = {{"preset", "annulus-antisymmetric"},
                     {"release_radius", 0.75}};
    const auto anti = xiga::run_case(CaseConfig::from_json(j));

    std::vector<double> pool = sym.modal.omega;
    pool.insert(pool.end(), anti.modal.omega.begin(), anti.modal.omega.end());
    std::sort(pool.begin(), pool.end());
    for (size_t k = 0; k < merged.modal.omega.size(); ++k)
        CHECK(merged.modal.omega[k] ==
              doctest::Approx(pool[k]).epsilon(1e-12));
    CHECK(std::is_sorted(merged.modal.omega.begin(), merged.modal.omega.end()));
}

TEST_CASE("cut quadrature mode parses and only nudges the spectrum") {
    json j = base_config();
    j["thickness"] = 0.01;
    j["mesh"] = {{"degree", 2}, {"elements", 8}};
    j["crack"] = {{"a", {0.25, 0.5}}, {"b", {0.75, 0.5}}};

    CHECK(CaseConfig::from_json(j).quadrature ==
          xiga::CutQuadrature::Conforming);
    j["quadrature"] = "full-gauss";
    CHECK(CaseConfig::from_json(j).quadrature ==
          xiga::CutQuadrature::FullGauss);
    j["quadrature"] = "gauss";
    expect_input_error(j, "quadrature");

    j["quadrature"] = "conforming";
    const auto conforming = xiga::run_case(CaseConfig::from_json(j));
    j["quadrature"] = "full-gauss";
    const auto crude = xiga::run_case(CaseConfig::from_json(j));
    REQUIRE(!conforming.modal.omega.empty());
    REQUIRE(!crude.modal.omega.empty());
    const double rel = std::abs(crude.modal.omega[0] -
                                conforming.modal.omega[0]) /
                       conforming.modal.omega[0];
    CHECK(rel > 0.0);    // the rules genuinely differ on cut elements
    CHECK(rel < 0.02);   // but only as a quadrature-level perturbation
}

TEST_CASE("bundled case library is loadable and referenced consistently") {
    const fs::path cases = fs::path(XIGA_DATA_DIR) / "cases";
    const fs::path tables = fs::path(XIGA_DATA_DIR) / "reference";
    REQUIRE(fs::is_directory(cases));
    REQUIRE(fs::is_directory(tables));

    std::set<std::string> names;
    for (const auto& entry : fs::directory_iterator(cases)) {
        if (entry.path().extension() != ".json") continue;
        const auto cfg = CaseConfig::from_file(entry.path().string());
        CHECK(cfg.name == entry.path().stem().string());
        names.insert(cfg.name);
    }
    CHECK(names.size() >= 50);

    int tables_seen = 0;
    for (const auto& entry : fs::directory_iterator(tables)) {
        if (entry.path().extension() != ".json") continue;
        const auto table =
            xiga::ReferenceTable::from_file(entry.path().string());
        ++tables_seen;
        CHECK(!table.label.empty());
        for (const auto& row : table.entries) {
            CHECK(names.count(row.case_name));
            CHECK(row.mode >= 1);
            CHECK(row.value > 0.0);
            CHECK(row.tolerance > 0.0);
        }
    }
    CHECK(tables_seen == 5);
}
