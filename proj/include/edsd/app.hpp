#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "edsd/descent.hpp"
#include "edsd/sets.hpp"

namespace edsd {

using Json = nlohmann::json;

inline constexpr char const *kSchemaVersion = "1.0";

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::array<Integer, 5> a{0, 0, 0, 0, -4};
    RatPoint Q{Rational(2), Rational(2)};
    IsogenyParams isogeny;

    std::size_t N = 100;              // terms for heights and growth
    std::size_t maxN = 40;            // classification tables, integral points
    std::size_t divisibilityN = 60;
    std::uint64_t primeBound = 200;   // rank-of-apparition sweep
    std::size_t descentN = 30;
    std::uint64_t decideBound = 10000;
    std::size_t heightLo = 40, heightHi = 100;
    std::size_t growthLo = 4, growthHi = 100;
    std::size_t twoDivisorLo = 7, twoDivisorHi = 40;
    std::uint32_t zetaBound = 1000000;
    std::size_t modelCount = 5;
    std::size_t decompositions = 100;

    std::uint64_t budget = 10'000'000;
    std::uint64_t certificateBudget = 200'000;
    std::uint64_t rhoSeed = 1;
    unsigned precision = 50;
    SetConfig sets;
    std::string outputDir = "edsd-out";

    CurveSpec curve() const { return CurveSpec(a); }
    FactorOptions factor_options() const { return {budget, rhoSeed, 1u << 16}; }
    FactorOptions certificate_options() const { return {certificateBudget, rhoSeed, 1u << 16}; }
};

RunConfig default_config();
// Fields absent from the JSON keep their defaults. Throws ConfigError.
RunConfig parse_config(Json const &j);
RunConfig load_config(std::string const &path);
Json to_json(RunConfig const &cfg);
void validate(RunConfig const &cfg);

// EDSD_OUTPUT_DIR overrides the configured directory.
std::string output_dir(RunConfig const &cfg);
// Writes via a temporary file and rename.
void write_artifact(std::string const &dir, std::string const &name, std::string const &content);

std::string dump(Json const &j);

// Every check returns {"anchor", "pass", "violations", "unknown", ...}.
Json check_eds_fixtures(RunConfig const &cfg);
Json check_divisibility_law(RunConfig const &cfg);
Json check_rank_law(RunConfig const &cfg);
Json check_descent_map(RunConfig const &cfg);
Json check_ord_chain(RunConfig const &cfg);
Json check_ord_addition(RunConfig const &cfg);
Json check_primitive_lift(RunConfig const &cfg);
Json check_two_divisors(RunConfig const &cfg);
Json check_hypotheses(RunConfig const &cfg);
Json check_heights(RunConfig const &cfg);
Json check_growth(RunConfig const &cfg);
Json check_prime_zeta(RunConfig const &cfg);
Json check_set_construction(RunConfig const &cfg, SetBuilder &sb);
Json check_integral_points(RunConfig const &cfg, SetBuilder &sb);
Json check_model(RunConfig const &cfg, SetBuilder &sb);
Json check_decomposition(RunConfig const &cfg, SetBuilder &sb);

Json report_all(RunConfig const &cfg);

// Building blocks of the individual subcommands.
std::string eds_table(RunConfig const &cfg, std::size_t maxN, bool includeB);
Json sets_build(RunConfig const &cfg, SetBuilder &sb, std::string *fragmentsCsv = nullptr);
Json to_json(MembershipVerdict const &v);
Json to_json(Decomposition const &d);
Json to_json(HeightEstimate const &h);

} // namespace edsd
