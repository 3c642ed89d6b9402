#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>

#include "dgmr/config.hpp"
#include "dgmr/dg_solver.hpp"
#include "dgmr/errors.hpp"
#include "dgmr/experiments.hpp"
#include "dgmr/norms.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = "results";
    long long seed = -1;
};

dgmr::Config load_config(const Options& opt) {
    dgmr::Config cfg = opt.config_path.empty() ? dgmr::Config() : dgmr::Config::load(opt.config_path);
    if (opt.seed >= 0) {
        cfg.set("seed", std::to_string(opt.seed));
    }
    return cfg;
}

bool run_experiments(const std::vector<const dgmr::ExperimentEntry*>& entries, const Options& opt) {
    const dgmr::Config cfg = load_config(opt);
    fs::create_directories(opt.out_dir);
    std::set<std::string> failed;
    for (const auto* entry : entries) {
        const auto start = std::chrono::steady_clock::now();
        const dgmr::ExperimentResult result = entry->run(dgmr::scoped_config(cfg, entry->id));
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const fs::path csv = fs::path(opt.out_dir) / (entry->id + ".csv");
        std::ofstream out(csv);
        result.table.write(out);
        std::cout << "== " << entry->id << " (" << std::fixed << std::setprecision(2) << seconds << " s) -> "
                  << csv.string() << '\n';
        std::cout.unsetf(std::ios::fixed);
        for (const auto& c : result.checks) {
            std::cout << (c.pass ? "  PASS " : "  FAIL ");
            if (c.criterion > 0) {
                std::cout << "[" << c.criterion << "] ";
            }
            std::cout << c.name;
            if (!c.detail.empty()) {
                std::cout << ": " << c.detail;
            }
            std::cout << '\n';
            if (!c.pass) {
                failed.insert(c.criterion > 0 ? std::to_string(c.criterion) : entry->id + "/" + c.name);
            }
        }
    }
    if (failed.empty()) {
        std::cout << "CONFIRMED\n";
        return true;
    }
    std::cout << "FAILED";
    for (const auto& f : failed) {
        std::cout << ' ' << f;
    }
    std::cout << '\n';
    return false;
}

void solve_command(const Options& opt) {
    const dgmr::Config cfg = load_config(opt);
    const dgmr::SpatialOperator op = dgmr::make_operator(cfg);
    const int r = static_cast<int>(cfg.get_int("r", 1));
    const auto n = static_cast<std::size_t>(cfg.get_int("N", 16));
    const double c = cfg.get_double("c", 1.0);
    const double final_time = cfg.get_double("T", 1.0);
    const dgmr::TemporalMesh mesh =
        dgmr::TemporalMesh::make_quasi_uniform(final_time, n, c, cfg.get_seed("seed", 1));
    const std::vector<double> u0_list = cfg.get_doubles("u0", {});
    Eigen::VectorXd u0 = Eigen::VectorXd::Ones(op.dim());
    if (!u0_list.empty()) {
        if (u0_list.size() != static_cast<std::size_t>(op.dim())) {
            throw dgmr::ConfigError("solve: u0 has wrong length");
        }
        u0 = Eigen::Map<const Eigen::VectorXd>(u0_list.data(), op.dim());
    }
    const std::vector<double> load = cfg.get_doubles("f", {});
    Eigen::VectorXd fv = Eigen::VectorXd::Zero(op.dim());
    if (!load.empty()) {
        if (load.size() != static_cast<std::size_t>(op.dim())) {
            throw dgmr::ConfigError("solve: f has wrong length");
        }
        fv = Eigen::Map<const Eigen::VectorXd>(load.data(), op.dim());
    }
    const dgmr::TimeFunction f = [fv](double) { return fv; };
    const dgmr::PiecewisePoly u = dgmr::solve_primal(op, mesh, r, f, u0);
    fs::create_directories(opt.out_dir);
    {
        std::ofstream out(fs::path(opt.out_dir) / "solution.txt");
        dgmr::write_solution(out, u);
    }
    {
        std::ofstream out(fs::path(opt.out_dir) / "breakpoints.txt");
        dgmr::write_breakpoints(out, mesh);
    }
    const double p = cfg.get_double("p", 2.0);
    const dgmr::NormReport rep = dgmr::mr_functional(op, u, f, p);
    std::cout << dgmr::NormReport::csv_header() << '\n' << rep.csv_row() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DG time stepping for u' + Au = f: experiments and solver"};
    app.require_subcommand(1);
    Options opt;
    const auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "flat key = value file")->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--seed", opt.seed, "seed override");
    };

    std::vector<const dgmr::ExperimentEntry*> selected;
    for (const auto& entry : dgmr::experiment_registry()) {
        CLI::App* sub = app.add_subcommand(entry.id, entry.summary);
        add_common(sub);
        sub->callback([&selected, &entry] { selected.push_back(&entry); });
    }
    CLI::App* all = app.add_subcommand("all", "run every experiment");
    add_common(all);
    all->callback([&selected] {
        for (const auto& entry : dgmr::experiment_registry()) {
            selected.push_back(&entry);
        }
    });
    bool solve = false;
    CLI::App* solve_sub = app.add_subcommand("solve", "solve with a constant load and dump the solution");
    add_common(solve_sub);
    solve_sub->callback([&solve] { solve = true; });

    CLI11_PARSE(app, argc, argv);
    try {
        if (solve) {
            solve_command(opt);
            return 0;
        }
        return run_experiments(selected, opt) ? 0 : 1;
    } catch (const dgmr::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const dgmr::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
}
