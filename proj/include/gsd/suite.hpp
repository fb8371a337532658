#pragma once

#include "gsd/zk.hpp"

#include <random>
#include <string>
#include <vector>

namespace gsd::suite {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = true;
    std::string detail;
    double seconds = 0;
};

struct Options {
    std::uint64_t seed = 7;
    // Scales the randomized-case counts; 1 = the documented full battery.
    int scale = 1;
};

// Runs the full acceptance battery (nine criteria) and returns one result
// per criterion. Exact arithmetic throughout: a criterion passes only on
// literal equality.
std::vector<CriterionResult> run_acceptance(const Options& opts = {});

bool all_pass(const std::vector<CriterionResult>& results);
std::string format_results(const std::vector<CriterionResult>& results);

// Random polydifferential cochain on one chart: a short sum of
// coefficient-times-derivative terms (derivative order <= 2 per variable).
Cochain random_cochain(std::mt19937_64& rng, const AlgebraPtr& chart, std::size_t arity);

// Random morphism-part cochain Hom(source^arity, W) with every slot pulled
// back along the given morphism.
Cochain random_acochain(std::mt19937_64& rng, const AlgebraPtr& source, const AlgebraPtr& target,
                        const MorphismPtr& pull, std::size_t arity);

// Exact equality of two cochains on sampled grid tuples (full grid when it
// is small). Returns the first counterexample found.
std::optional<GridCounterexample> sampled_equal(std::mt19937_64& rng, const Cochain& f,
                                                const Cochain& g, int bound, int samples);
std::optional<GridCounterexample> sampled_zero(std::mt19937_64& rng, const Cochain& f, int bound,
                                               int samples);
std::optional<GridCounterexample> sampled_zero(std::mt19937_64& rng, const GElement& e, int bound,
                                               int samples);
std::optional<GridCounterexample> sampled_zero(std::mt19937_64& rng, const LInfElement& e,
                                               int bound, int samples);

} // namespace gsd::suite
