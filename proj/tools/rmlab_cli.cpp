#include "commands.hpp"
#include "rmlab/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace rmlab;
using namespace rmlab::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Tridiagonal random matrix experiments at high temperature"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value file; flags given on the command line take precedence");

    RunConfig c;
    std::string format = "csv";
    double beta = 0.0, threshold = 0.0;
    auto* o_beta = app.add_option("--beta", beta, "inverse temperature (beta families, toda-dos)");
    auto* o_thr = app.add_option("--threshold", threshold, "override the pass threshold of the command");
    app.add_option("--family", c.family, "gaussian|laguerre|jacobi or the -beta variants")->capture_default_str();
    app.add_option("--n", c.n, "matrix size")->capture_default_str();
    app.add_option("--trials", c.trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--alpha", c.alpha)->capture_default_str();
    app.add_option("--gamma", c.gamma, "Laguerre N/M")->capture_default_str();
    app.add_option("--a", c.a, "Jacobi a")->capture_default_str();
    app.add_option("--b", c.b, "Jacobi b")->capture_default_str();
    app.add_option("--seed", c.seed)->capture_default_str();
    app.add_option("--bins", c.bins)->capture_default_str();
    app.add_option("--out", c.out, "output path prefix")->capture_default_str();
    app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--l-max", c.l_max, "moments-table: largest moment order (<= 10)")->capture_default_str();
    app.add_option("--poly", c.poly, "fluctuations: ascending coefficients of P, comma separated")
        ->capture_default_str();
    app.add_option("--sampler", c.sampler, "toda-dos: approx|constrained")->capture_default_str();
    app.add_option("--alphas", c.alphas, "limit-check: ascending comma separated alphas")->capture_default_str();
    app.add_flag("--compare", c.compare, "toda-dos: also run the other sampler and compare");
    app.add_flag("--dump-spectra", c.dump_spectra, "write raw spectra as trial,index,value");

    const std::pair<const char*, const char*> subs[] = {
        {"sample-spectra", "pooled spectral histogram against the analytic density, with KS"},
        {"moments-table", "symbolic v and u moments with Monte Carlo estimates"},
        {"fluctuations", "CLT diagnostics of a polynomial linear statistic"},
        {"limit-check", "distance of the rescaled DOS to the arcsine law over alpha"},
        {"toda-dos", "Toda Lax matrix DOS under the Gibbs measure"},
    };
    for (auto [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    c.command = app.get_subcommands().front()->get_name();
    c.format = format == "json" ? Format::Json : Format::Csv;
    if (*o_beta) c.beta = beta;
    if (*o_thr) c.threshold = threshold;

    try {
        c.validate();
        if (c.command == "sample-spectra") return cmd_sample_spectra(c);
        if (c.command == "moments-table") return cmd_moments_table(c);
        if (c.command == "fluctuations") return cmd_fluctuations(c);
        if (c.command == "limit-check") return cmd_limit_check(c);
        return cmd_toda_dos(c);
    } catch (const DomainError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}
