// exactkit: reproducible experiment runner over modules of F_p[x]/(x^N).
//
// Exit codes: 0 pass, 1 property violation (witness in the report), 2 usage or
// config error, 3 budget refusal.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "exactkit/error.hpp"
#include "exactkit/report.hpp"

namespace {

std::vector<unsigned> parse_generators(const std::string& text) {
    std::vector<unsigned> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw exactkit::InputError("--generators: expected a comma-separated list of indices, got \"" + text + "\"");
        out.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exactkit: Ext groups, subfunctors and the 3x3 property over F_p[x]/(x^N)"};
    exactkit::RunConfig rc;
    bool d_given = false;
    std::string generators;
    int threads = 0;

    app.add_option("command", rc.command, "ext-table | verify-core | enumerate | subcategory")
        ->required()
        ->check(CLI::IsMember({"ext-table", "verify-core", "enumerate", "subcategory"}));
    app.add_option("--p", rc.p, "prime modulus")->capture_default_str();
    app.add_option("--nilpotency", rc.N, "nilpotency bound N")->capture_default_str();
    auto* dopt = app.add_option("--max-dim", rc.D, "dimension bound D (default N + 1)");
    app.add_option("--trials", rc.trials, "random trials")->capture_default_str();
    app.add_option("--seed", rc.seed, "64-bit seed")->capture_default_str();
    app.add_option("--format", rc.format, "json | tsv")->check(CLI::IsMember({"json", "tsv"}))->capture_default_str();
    app.add_option("--generators", generators, "subcategory generators, e.g. 1,3");
    app.add_option("--variant", rc.variant, "cov | contra")->check(CLI::IsMember({"cov", "contra"}))->capture_default_str();
    app.add_option("--out", rc.out, "output path (default stdout)");
    app.add_option("--threads", threads, "OpenMP worker count (0 = runtime default); never changes the output");
    app.add_flag("--inject-fault", rc.inject_fault, "verify-core negative control: corrupt Baer sums");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    d_given = dopt->count() > 0;
    if (!d_given) rc.D = rc.N + 1;
    if (threads > 0) omp_set_num_threads(threads);

    try {
        rc.generators = parse_generators(generators);
        exactkit::Report rep = exactkit::run_command(rc);
        std::string text = rep.render(rc.format);
        if (rc.out.empty()) {
            std::cout << text;
            std::cout.flush();
        } else {
            std::ofstream f(rc.out, std::ios::binary);
            if (!f) {
                std::cerr << "exactkit: cannot write " << rc.out << "\n";
                return 2;
            }
            f << text;
        }
        if (rep.exit_code == 1) std::cerr << "exactkit: property violation; see the report for witnesses\n";
        return rep.exit_code;
    } catch (const exactkit::BudgetError& e) {
        std::cerr << "exactkit: refused: " << e.what() << "\n";
        return 3;
    } catch (const exactkit::InputError& e) {
        std::cerr << "exactkit: " << e.what() << "\n";
        return 2;
    } catch (const exactkit::ValidationError& e) {
        std::cerr << "exactkit: " << e.what() << "\n";
        return 2;
    }
}
