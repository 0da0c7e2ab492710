#pragma once
#include "rmlab/densities.hpp"
#include "rmlab/ensembles.hpp"
#include "rmlab/motzkin.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rmlab::cli {

enum class Format { Csv, Json };

// Everything a subcommand needs; filled from defaults, then the config file, then flags.
struct RunConfig {
    std::string command;
    std::string family = "gaussian";
    int n = 500;
    int trials = 1000;
    double alpha = 1.0;
    std::optional<double> beta;
    double gamma = 0.8;
    double a = 25.8;
    double b = 10.0;
    std::uint64_t seed = 2024;
    int bins = 120;
    std::string out = "rmlab_out";
    Format format = Format::Csv;

    int l_max = 6;
    std::string poly = "0,0,1";
    std::string sampler = "approx";
    std::string alphas = "10,50,100";
    std::optional<double> threshold;
    bool compare = false;
    bool dump_spectra = false;

    Family ensemble_family() const;
    EnsembleParams ensemble() const;        // validated
    DensityParams density() const;          // analytic counterpart of ensemble()
    MomentFamily moment_family() const;
    std::vector<mpq_class> poly_coeffs() const;
    std::vector<double> alpha_list() const;
    // Throws DomainError/UsageError with a message naming the offending flag.
    void validate() const;
};

Family parse_family(const std::string& s);

} // namespace rmlab::cli
