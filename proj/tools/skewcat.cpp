#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "skewcat/skewcat.hpp"

int main(int argc, char** argv)
{
    using namespace skewcat;
    CLI::App app{"Skew categories, matrix categories and Hochschild-Mitchell (co)homology"};
    Job job;
    std::string out;
    bool coinvariants = false, invariants = false, timing = false;
    std::string transversal;

    app.add_option("command", job.command, "validate | skew | mg | quotient | hh | hhc | oracle | verify")
        ->required()
        ->check(CLI::IsMember({"validate", "skew", "mg", "quotient", "hh", "hhc", "oracle", "verify"}));
    app.add_option("input", job.input, "input JSON document")->required();
    app.add_option("--max-degree,-n", job.max_degree, "highest (co)homology degree")->capture_default_str();
    app.add_flag("--classes", job.classes, "split by conjugacy class of the grading (C[G] unless the input is graded)");
    auto* co = app.add_flag("--coinvariants", coinvariants, "hh: homology of the coinvariant complex");
    auto* inv = app.add_flag("--invariants", invariants, "hhc: cohomology of the invariant complex");
    co->excludes(inv);
    app.add_option("--field", job.field, "rational | p:<prime> (default: document, else p:101)");
    app.add_option("--transversal", transversal, "comma-separated orbit representatives (names or indices)");
    app.add_option("--out,-o", out, "write the JSON report here");
    app.add_option("--threads,-j", job.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--budget", job.budget.max_tuples, "maximum basis size per degree")->capture_default_str();
    app.add_option("--samples", job.cup_samples, "random cup-product pairs per check")->capture_default_str();
    app.add_option("--seed", job.seed, "sampler seed")->capture_default_str();
    app.add_flag("--time", timing, "print wall time on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code::input;
    }
    if (coinvariants) job.variant = "coinvariants";
    if (invariants) job.variant = "invariants";
    if (!transversal.empty()) {
        std::vector<std::string> names;
        std::stringstream ss(transversal);
        for (std::string item; std::getline(ss, item, ',');) names.push_back(item);
        job.transversal = std::move(names);
    }

    const auto start = std::chrono::steady_clock::now();
    Report rep = run(job);
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::cout << rep.text;
    if (rep.exit_code == exit_code::input || rep.exit_code == exit_code::budget)
        std::cerr << rep.doc["error"]["message"].get<std::string>() << "\n";
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return exit_code::input;
        }
        f << rep.doc.dump(2) << "\n";
    }
    if (timing) std::cerr << "wall time: " << secs << " s\n";
    return rep.exit_code;
}
