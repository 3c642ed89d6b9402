#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "dgmr/config.hpp"
#include "dgmr/experiments.hpp"

namespace {

struct Criterion {
    int number;
    std::string title;
    std::vector<std::string> experiments;
    double seconds;  // 0 means no runtime limit
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "polynomial exactness", {"exactness"}, 1.0},
        {2, "convergence order r+1", {"converge"}, 10.0},
        {3, "rational stability functions", {"rational"}, 5.0},
        {4, "Duhamel product formula", {"duhamel"}, 1.0},
        {5, "discrete maximal regularity", {"mr-sweep"}, 120.0},
        {6, "mollifier and interpolation scaling", {"interp", "mollifier"}, 10.0},
        {7, "weighted Green's function rate and locality", {"green"}, 60.0},
        {8, "fully discrete heat equation", {"heat"}, 120.0},
        {9, "duality and Galerkin orthogonality", {"duality"}, 0.0},
    };
    return list;
}

const dgmr::ExperimentEntry* find_experiment(const std::string& id) {
    for (const auto& entry : dgmr::experiment_registry()) {
        if (entry.id == id) {
            return &entry;
        }
    }
    return nullptr;
}

bool evaluate(const Criterion& crit) {
    bool pass = true;
    int counted = 0;
    std::vector<std::string> failures;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& id : crit.experiments) {
        const dgmr::ExperimentEntry* entry = find_experiment(id);
        if (entry == nullptr) {
            failures.push_back("missing experiment " + id);
            pass = false;
            continue;
        }
        try {
            const dgmr::ExperimentResult result = entry->run(dgmr::Config());
            for (const auto& c : result.checks) {
                if (c.criterion != crit.number) {
                    continue;
                }
                ++counted;
                if (!c.pass) {
                    pass = false;
                    failures.push_back(id + ": " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
                }
            }
        } catch (const std::exception& e) {
            pass = false;
            failures.push_back(id + ": exception: " + e.what());
        }
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (counted == 0) {
        pass = false;
        failures.push_back("no checks recorded");
    }
    if (crit.seconds > 0.0 && elapsed > crit.seconds) {
        pass = false;
        failures.push_back("runtime " + std::to_string(elapsed) + " s exceeds " + std::to_string(crit.seconds) + " s");
    }
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << crit.number << ": " << crit.title << " ("
              << counted << " checks, " << elapsed << " s)\n";
    for (const auto& f : failures) {
        std::cout << "    " << f << '\n';
    }
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int k = 1; k < argc; ++k) {
        wanted.push_back(std::atoi(argv[k]));
    }
    if (wanted.empty()) {
        for (const auto& crit : criteria()) {
            wanted.push_back(crit.number);
        }
    }
    bool all = true;
    for (int n : wanted) {
        bool found = false;
        for (const auto& crit : criteria()) {
            if (crit.number == n) {
                found = true;
                all = evaluate(crit) && all;
            }
        }
        if (!found) {
            std::cerr << "unknown criterion " << n << '\n';
            return 2;
        }
    }
    return all ? 0 : 1;
}
