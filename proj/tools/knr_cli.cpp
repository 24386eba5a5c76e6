#include "knr/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

void add_common(CLI::App* cmd, knr::io::JobSpec& job) {
    cmd->add_option("--input", job.input_path, "input JSON file")->required();
    cmd->add_option("--out", job.out_path, "output file (default: stdout)");
    cmd->add_option("--svg", job.svg_path, "also render an SVG figure to this path");
    cmd->add_option("--grid", job.grid, "number of support directions on [0, 2pi)");
    cmd->add_option("--samples", job.samples, "Monte Carlo sample count per sign class");
    cmd->add_option("--seed", job.seed, "Monte Carlo seed");
    cmd->add_option("--tol", job.tol, "verification tolerance");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw knr::StructureError("cannot write output file '" + path + "'");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Krein-space numerical range toolkit: certify, classify, trace and "
                 "sample the indefinite numerical range of small complex matrices"};
    app.require_subcommand(1);

    knr::io::JobSpec job;
    CLI::App* certify = app.add_subcommand(
        "certify", "run the entry-wise hyperbolicity certificate (orders 3-6)");
    CLI::App* classify = app.add_subcommand("classify", "classify the range shape");
    CLI::App* boundary =
        app.add_subcommand("boundary", "sweep the boundary generating curve to CSV/SVG");
    CLI::App* sample = app.add_subcommand("sample", "Monte Carlo sample the range to CSV");
    for (CLI::App* cmd : {certify, classify, boundary, sample})
        add_common(cmd, job);

    CLI11_PARSE(app, argc, argv);

    try {
        knr::io::RunResult result;
        if (certify->parsed())
            result = knr::io::run_certify(job);
        else if (classify->parsed())
            result = knr::io::run_classify(job);
        else if (boundary->parsed())
            result = knr::io::run_boundary(job);
        else
            result = knr::io::run_sample(job);

        if (!result.csv.empty()) {
            write_text(job.out_path, result.csv);
            if (!job.out_path.empty())
                std::cout << knr::io::dump_report(result.report);
        } else {
            write_text(job.out_path, knr::io::dump_report(result.report));
        }
        if (!result.svg.empty() && !job.svg_path.empty()) {
            std::ofstream svg(job.svg_path, std::ios::binary);
            if (!svg)
                throw knr::StructureError("cannot write SVG file '" + job.svg_path + "'");
            svg << result.svg;
        }
        return result.exit_code;
    } catch (const knr::StructureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
