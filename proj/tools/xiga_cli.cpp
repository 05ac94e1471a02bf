// Command line front end: runs modal cases from JSON configs, sweeps
// config sets, compares frequencies against reference tables, and dumps
// meshes/matrices for inspection.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "xiga/case_config.hpp"

namespace fs = std::filesystem;
using namespace xiga;

namespace {

constexpr int kExitComparisonFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw InputError(fmt::format("cannot write '{}'", path.string()));
    os << content;
}

std::string run_log(const CaseRun& run) {
    std::ostringstream os;
    const auto& c = run.config;
    os << "case: " << c.name << '\n';
    os << "mesh: " << c.elements << "x" << c.elements << " elements, degree "
       << c.degree << ", " << run.patch.num_control_points()
       << " control points\n";
    os << "dofs: " << run.dofs.n_total() << " assembled ("
       << run.dofs.n_standard() << " standard, " << run.dofs.n_enriched()
       << " enriched), " << run.constraints.n_reduced << " after constraints\n";
    os << "enrichment: " << run.plan.n_heaviside_cp << " step control points, "
       << run.plan.n_tip_cp << " branch control points, "
       << run.constraints.n_pruned << " pruned dofs\n";
    os << "constraints: " << run.constraints.n_eliminated << " eliminated, "
       << run.constraints.n_tied << " tied\n";
    os << fmt::format("timing: assemble {:.3f} s, solve {:.3f} s\n",
                      run.assemble_seconds, run.solve_seconds);
    os << "modes:";
    for (size_t k = 0; k < run.modal.omega.size(); ++k)
        os << fmt::format(" {:.6g}", run.normalized[k]);
    os << '\n';
    return os.str();
}

std::string mode_grid_csv(const CaseRun& run, int mode, int n_grid) {
    std::ostringstream os;
    os.precision(10);
    os << "x,y,w\n";
    const Eigen::VectorXd full = run.modal.shapes.col(mode);
    const CrackModel* crack = run.crack ? &*run.crack : nullptr;
    // Cell centers: avoids the crack line and any degenerate corners.
    for (int j = 0; j < n_grid; ++j)
        for (int i = 0; i < n_grid; ++i) {
            const double u = (i + 0.5) / n_grid;
            const double v = (j + 0.5) / n_grid;
            const double w = evaluate_deflection(run.patch, run.dofs, run.plan,
                                                 crack, full, u, v);
            const Eigen::Vector2d x = run.patch.map_point(u, v);
            os << x.x() << ',' << x.y() << ',' << w << '\n';
        }
    return os.str();
}

int do_run(const std::string& config_path, const std::string& outdir,
           int dump_modes, int grid) {
    const CaseConfig cfg = CaseConfig::from_file(config_path);
    const CaseRun run = run_case(cfg);
    const fs::path out = outdir.empty() ? fs::path(cfg.name) : fs::path(outdir);
    write_file(out / "frequencies.csv", frequencies_csv(run));
    write_file(out / "run.log", run_log(run));
    for (int m = 0; m < dump_modes && m < static_cast<int>(run.modal.omega.size()); ++m)
        write_file(out / fmt::format("mode_{}.csv", m + 1),
                   mode_grid_csv(run, m, grid));
    std::cout << run_log(run);
    return 0;
}

int do_sweep(std::vector<std::string> inputs, const std::string& outdir,
             int jobs) {
    std::vector<std::string> configs;
    for (const auto& in : inputs) {
        if (fs::is_directory(in)) {
            for (const auto& e : fs::directory_iterator(in))
                if (e.path().extension() == ".json")
                    configs.push_back(e.path().string());
        } else {
            configs.push_back(in);
        }
    }
    std::sort(configs.begin(), configs.end());
    if (configs.empty()) throw InputError("sweep: no config files found");

    struct Row {
        std::string name;
        std::vector<double> normalized;
        std::string error;
    };
    std::vector<Row> rows(configs.size());
    std::atomic<size_t> next{0};
    std::mutex io;
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            Row& row = rows[i];
            try {
                const CaseConfig cfg = CaseConfig::from_file(configs[i]);
                const CaseRun run = run_case(cfg);
                row.name = cfg.name;
                row.normalized = run.normalized;
                if (!outdir.empty()) {
                    write_file(fs::path(outdir) / cfg.name / "frequencies.csv",
                               frequencies_csv(run));
                    write_file(fs::path(outdir) / cfg.name / "run.log", run_log(run));
                }
                std::lock_guard<std::mutex> lock(io);
                std::cout << fmt::format("done {}\n", cfg.name);
            } catch (const std::exception& e) {
                row.name = configs[i];
                row.error = e.what();
                std::lock_guard<std::mutex> lock(io);
                std::cout << fmt::format("FAILED {}: {}\n", configs[i], e.what());
            }
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ostringstream os;
    os.precision(10);
    os << "case,modes...\n";
    bool any_failed = false;
    for (const auto& row : rows) {
        os << row.name;
        for (double v : row.normalized) os << ',' << v;
        if (!row.error.empty()) {
            os << ",ERROR: " << row.error;
            any_failed = true;
        }
        os << '\n';
    }
    if (!outdir.empty()) write_file(fs::path(outdir) / "sweep_summary.csv", os.str());
    std::cout << os.str();
    return any_failed ? kExitNumericalError : 0;
}

int do_compare(const std::string& table_path, const std::string& case_name,
               const std::string& csv_path) {
    const ReferenceTable table = ReferenceTable::from_file(table_path);
    std::ifstream is(csv_path);
    if (!is) throw InputError(fmt::format("cannot open results '{}'", csv_path));
    std::string line;
    std::getline(is, line); // header
    std::vector<double> normalized;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string mode, omega, norm;
        std::getline(ls, mode, ',');
        std::getline(ls, omega, ',');
        std::getline(ls, norm, ',');
        normalized.push_back(std::stod(norm));
    }

    bool all_ok = true;
    int n_checked = 0;
    for (const auto& e : table.entries) {
        if (e.case_name != case_name) continue;
        ++n_checked;
        if (e.mode < 1 || e.mode > static_cast<int>(normalized.size())) {
            std::cout << fmt::format("mode {}: MISSING (only {} modes in results)\n",
                                     e.mode, normalized.size());
            all_ok = false;
            continue;
        }
        const double got = normalized[e.mode - 1];
        const double rel = std::abs(got - e.value) / std::abs(e.value);
        const bool ok = rel <= e.tolerance;
        all_ok = all_ok && ok;
        std::cout << fmt::format(
            "mode {}: ref={:.6g} got={:.6g} rel_err={:.3e} tol={:.1e} {}\n",
            e.mode, e.value, got, rel, e.tolerance, ok ? "PASS" : "FAIL");
    }
    if (n_checked == 0)
        throw InputError(fmt::format("reference table has no entries for case '{}'",
                                     case_name));
    return all_ok ? 0 : kExitComparisonFailed;
}

int do_dump_mesh(const std::string& config_path, const std::string& out) {
    const CaseConfig cfg = CaseConfig::from_file(config_path);
    const CaseRun run = run_case(cfg); // small configs expected
    std::ostringstream os;
    run.patch.write(os);
    if (out.empty())
        std::cout << os.str();
    else
        write_file(out, os.str());
    return 0;
}

std::string matrix_market(const Eigen::MatrixXd& m) {
    std::ostringstream os;
    os.precision(17);
    std::vector<std::string> lines;
    long long nnz = 0;
    std::ostringstream body;
    body.precision(17);
    for (int j = 0; j < m.cols(); ++j)
        for (int i = j; i < m.rows(); ++i)
            if (m(i, j) != 0.0) {
                body << i + 1 << ' ' << j + 1 << ' ' << m(i, j) << '\n';
                ++nnz;
            }
    os << "%%MatrixMarket matrix coordinate real symmetric\n";
    os << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
    os << body.str();
    return os.str();
}

int do_dump_matrices(const std::string& config_path, const std::string& outdir) {
    const CaseConfig cfg = CaseConfig::from_file(config_path);

    Patch patch = [&] {
        switch (cfg.geometry) {
        case GeometryKind::Square:
            return square_patch(cfg.length, cfg.width, cfg.degree, cfg.elements);
        case GeometryKind::Disk:
            return circular_patch(cfg.radius, cfg.degree, cfg.elements);
        case GeometryKind::HalfAnnulus:
            return half_annulus_patch(cfg.r_inner, cfg.r_outer, cfg.degree,
                                      cfg.elements);
        }
        throw InputError("unknown geometry kind");
    }();
    GradedMaterial material(cfg.ceramic, cfg.metal, cfg.exponent, cfg.scheme);
    std::optional<CrackModel> crack;
    if (cfg.crack)
        crack = CrackModel::on_patch(patch, cfg.crack->first, cfg.crack->second);
    EnrichmentPlan plan = crack ? classify(patch, *crack) : no_enrichment(patch);
    DofMap dofs(patch.num_control_points(), plan);
    AssembledSystem sys = assemble(patch, material, cfg.thickness, cfg.theory,
                                   dofs, plan, crack ? &*crack : nullptr);
    const fs::path out = outdir.empty() ? fs::path(cfg.name) : fs::path(outdir);
    write_file(out / "K.mtx", matrix_market(sys.K));
    write_file(out / "M.mtx", matrix_market(sys.M));
    std::cout << fmt::format("wrote {} and {} ({} dofs)\n",
                             (out / "K.mtx").string(), (out / "M.mtx").string(),
                             dofs.n_total());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    spdlog::set_pattern("[%l] %v");

    CLI::App app{"Modal analysis of cracked graded plates on NURBS patches"};
    app.require_subcommand(1);

    std::string config, outdir, table, case_name, csv, out;
    int dump_modes = 0, grid = 41, jobs = 1;
    std::vector<std::string> sweep_inputs;

    auto* run_cmd = app.add_subcommand("run", "Run one case config");
    run_cmd->add_option("config", config, "case config JSON")->required();
    run_cmd->add_option("-o,--out", outdir, "output directory (default: case name)");
    run_cmd->add_option("--dump-modes", dump_modes, "write the first N mode shape grids");
    run_cmd->add_option("--grid", grid, "mode shape grid resolution");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run many case configs");
    sweep_cmd->add_option("inputs", sweep_inputs, "config files or directories")
        ->required();
    sweep_cmd->add_option("-o,--out", outdir, "output directory");
    sweep_cmd->add_option("-j,--jobs", jobs, "worker threads");

    auto* cmp_cmd = app.add_subcommand("compare", "Check results against a reference table");
    cmp_cmd->add_option("table", table, "reference table JSON")->required();
    cmp_cmd->add_option("case", case_name, "case name in the table")->required();
    cmp_cmd->add_option("results", csv, "frequencies.csv from a run")->required();

    auto* mesh_cmd = app.add_subcommand("dump-mesh", "Write the refined patch");
    mesh_cmd->add_option("config", config, "case config JSON")->required();
    mesh_cmd->add_option("-o,--out", out, "output file (default: stdout)");

    auto* mat_cmd = app.add_subcommand("dump-matrices",
                                       "Assemble and write K/M in MatrixMarket form");
    mat_cmd->add_option("config", config, "case config JSON")->required();
    mat_cmd->add_option("-o,--out", outdir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return do_run(config, outdir, dump_modes, grid);
        if (sweep_cmd->parsed()) return do_sweep(sweep_inputs, outdir, jobs);
        if (cmp_cmd->parsed()) return do_compare(table, case_name, csv);
        if (mesh_cmd->parsed()) return do_dump_mesh(config, out);
        if (mat_cmd->parsed()) return do_dump_matrices(config, outdir);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumericalError;
    }
    return 0;
}
