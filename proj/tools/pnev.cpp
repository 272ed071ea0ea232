// pnev: command-line front-end. Reads a scenario document, runs one
// subcommand and writes the report, the exact dump and the plot table.

#include "pnev/errors.hpp"
#include "pnev/run.hpp"
#include "pnev/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::vector<pnev::Rational> parse_grid(const std::string& text) {
    std::vector<pnev::Rational> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(pnev::parse_rational(item));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i - 1] < grid[i])) throw pnev::InputError("--grid must be strictly increasing");
    }
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact non-archimedean Nevanlinna functions for maps to projective space"};
    app.require_subcommand(1);

    std::string input;
    std::string out_dir = ".";
    std::string grid;
    unsigned multiplier = 0;
    long p = 0;
    std::size_t n = 0;
    unsigned d = 0;
    bool quiet = false;

    const char* names[] = {"fmt-check", "smt-report", "defect", "sharpness", "polygon", "bounded-proximity"};
    const char* help[] = {
        "Check m + N - d*T is the predicted constant for each hypersurface",
        "Compare sum m_i/deg D_i with (n - 1 + max_i M/deg D_i) T",
        "Exact defects and the defect relation",
        "Generate the sharpness family and confirm equality",
        "Newton polygons, Gauss norms, counting functions and zero counts",
        "Check that all but n proximity functions stay bounded",
    };
    for (std::size_t k = 0; k < 6; ++k) {
        CLI::App* sub = app.add_subcommand(names[k], help[k]);
        sub->add_option("input", input, "Scenario document (YAML or JSON)")->required(k != 3);
        sub->add_option("-o,--out", out_dir, "Output directory for artifacts");
        sub->add_option("--grid", grid, "Override the s-grid, e.g. 0,1/2,1");
        sub->add_option("-M,--multiplier", multiplier, "Override the multiplier M")->check(CLI::PositiveNumber);
        sub->add_flag("-q,--quiet", quiet, "Do not print the report");
        if (k == 3) {
            sub->add_option("-p,--prime", p, "Prime p (without a scenario document)");
            sub->add_option("-n", n, "Dimension n")->check(CLI::PositiveNumber);
            sub->add_option("-d", d, "Degree d")->check(CLI::PositiveNumber);
        }
    }
    CLI11_PARSE(app, argc, argv);

    const CLI::App* chosen = app.get_subcommands().front();
    const pnev::Subcommand cmd = *pnev::parse_subcommand(chosen->get_name());

    pnev::Scenario scenario;
    try {
        if (!input.empty()) {
            scenario = pnev::load_scenario_file(input);
        } else {
            if (p == 0 || n == 0 || d == 0) throw pnev::InputError("sharpness without a document needs -p, -n and -d");
            pnev::PrimeConfig check(p);
            scenario.p = p;
            scenario.N = n;
            scenario.sharpness = pnev::SharpnessSpec{n, d};
        }
        if (cmd == pnev::Subcommand::sharpness && input.empty() == false && (n || d)) {
            throw pnev::InputError("-n/-d cannot be combined with a scenario document");
        }
        if (!grid.empty()) scenario.s_grid = parse_grid(grid);
        if (multiplier) scenario.M = multiplier;
    } catch (const pnev::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return pnev::exit_input_error;
    }

    pnev::RunResult result = pnev::run(cmd, scenario);
    if (result.exit_code == pnev::exit_input_error) {
        std::cerr << result.report;
        return result.exit_code;
    }
    if (!quiet) std::cout << result.report;

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    for (const pnev::Artifact& a : result.artifacts) {
        fs::path path = fs::path(out_dir) / a.path;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << path << '\n';
            return pnev::exit_input_error;
        }
        out << a.content;
    }
    return result.exit_code;
}
