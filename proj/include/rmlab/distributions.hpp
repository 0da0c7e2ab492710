#pragma once
#include <cstdint>
#include <random>
#include <variant>

namespace rmlab {

struct Gaussian { double variance; };
struct Chi { double dof; };
struct Beta { double a; double b; };

using DistSpec = std::variant<Gaussian, Chi, Beta>;

void validate(const DistSpec& spec);

struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// One reproducible stream. mt19937_64 seeded by seed_seq over the (seed, stream) words;
// both are pinned by the standard, so draws are identical across platforms.
// The variate transforms below are ours for the same reason.
class Rng {
public:
    explicit Rng(RngState s);
    Rng(std::uint64_t seed, std::uint64_t stream) : Rng(RngState{seed, stream}) {}

    std::uint64_t bits() { return eng_(); }
    double uniform();              // open interval (0,1)
    double normal();               // standard normal
    double log_gamma_variate(double shape);
    double gamma(double shape);    // unit scale
    double chi(double dof);
    double beta(double a, double b);

    RngState state() const { return origin_; }

private:
    std::mt19937_64 eng_;
    RngState origin_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

double sample(const DistSpec& spec, Rng& rng);

// E[X^order]. Gaussian odd orders give 0; Chi requires even order.
double closed_even_moment(const DistSpec& spec, unsigned order);

} // namespace rmlab
