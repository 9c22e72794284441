#include "edsd/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace edsd {

namespace {

Integer integer_of(Json const &j, char const *what)
{
    try {
        if (j.is_number_integer())
            return Integer(j.dump());
        if (j.is_string())
            return Integer(j.get<std::string>());
    } catch (std::invalid_argument const &) {
    }
    throw ConfigError(std::string("expected an integer for ") + what);
}

Rational rational_of(Json const &j, char const *what)
{
    try {
        if (j.is_number_integer())
            return Rational(Integer(j.dump()));
        if (j.is_string())
            return parse_rational(j.get<std::string>());
    } catch (std::invalid_argument const &) {
    }
    throw ConfigError(std::string("expected a rational for ") + what);
}

RatPoint point_of(Json const &j, char const *what)
{
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(std::string(what) + " must be [x, y]");
    return RatPoint(rational_of(j[0], what), rational_of(j[1], what));
}

template <class T> void read(Json const &j, char const *key, T &out)
{
    if (!j.contains(key))
        return;
    auto const &v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0)
        throw ConfigError(std::string(key) + " must be a positive integer");
    out = v.get<T>();
}

ToleranceSchedule schedule_of(Json const &j)
{
    std::string kind;
    std::optional<Rational> c;
    if (j.is_string()) {
        kind = j.get<std::string>();
    } else if (j.is_object() && j.contains("kind")) {
        kind = j.at("kind").get<std::string>();
        if (j.contains("c"))
            c = rational_of(j.at("c"), "schedule.c");
    } else {
        throw ConfigError("schedule must be a name or {kind, c}");
    }
    if (c && *c <= 0)
        throw ConfigError("schedule constant must be positive");
    if (kind == "paper")
        return ToleranceSchedule::paper();
    if (kind == "relaxed")
        return ToleranceSchedule::relaxed(c.value_or(Rational(1, 2)));
    if (kind == "custom") {
        if (!c)
            throw ConfigError("custom schedule needs c");
        return ToleranceSchedule::custom(*c);
    }
    throw ConfigError("schedule must be paper, relaxed or custom");
}

Json schedule_json(ToleranceSchedule const &s)
{
    return {{"kind", s.name()}, {"c", format_rational(s.c)}};
}

Json point_json(RatPoint const &P)
{
    return Json::array({format_rational(P.x()), format_rational(P.y())});
}

} // namespace

RunConfig default_config()
{
    RunConfig cfg;
    cfg.sets.factor = cfg.factor_options();
    cfg.sets.certificateBudget = cfg.certificateBudget;
    cfg.sets.precision = cfg.precision;
    cfg.sets.q = cfg.isogeny.q;
    return cfg;
}

RunConfig parse_config(Json const &j)
{
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    RunConfig cfg = default_config();
    try {
        if (j.contains("curve")) {
            auto const &c = j.at("curve");
            if (c.contains("a")) {
                auto const &a = c.at("a");
                if (!a.is_array() || a.size() != 5)
                    throw ConfigError("curve.a must list a1, a2, a3, a4, a6");
                for (std::size_t i = 0; i < 5; ++i)
                    cfg.a[i] = integer_of(a[i], "curve.a");
            }
            if (c.contains("Q"))
                cfg.Q = point_of(c.at("Q"), "curve.Q");
        }
        if (j.contains("isogeny")) {
            auto const &g = j.at("isogeny");
            if (g.contains("a"))
                cfg.isogeny.a = integer_of(g.at("a"), "isogeny.a");
            if (g.contains("u"))
                cfg.isogeny.u = integer_of(g.at("u"), "isogeny.u");
            read(g, "q", cfg.isogeny.q);
            if (g.contains("Qprime"))
                cfg.isogeny.Qprime = point_of(g.at("Qprime"), "isogeny.Qprime");
        }
        if (j.contains("bounds")) {
            auto const &b = j.at("bounds");
            read(b, "N", cfg.N);
            read(b, "maxN", cfg.maxN);
            read(b, "divisibilityN", cfg.divisibilityN);
            read(b, "primeBound", cfg.primeBound);
            read(b, "descentN", cfg.descentN);
            read(b, "decideBound", cfg.decideBound);
            read(b, "heightLo", cfg.heightLo);
            read(b, "heightHi", cfg.heightHi);
            read(b, "growthLo", cfg.growthLo);
            read(b, "growthHi", cfg.growthHi);
            read(b, "twoDivisorLo", cfg.twoDivisorLo);
            read(b, "twoDivisorHi", cfg.twoDivisorHi);
            read(b, "zetaBound", cfg.zetaBound);
            read(b, "modelCount", cfg.modelCount);
            read(b, "decompositions", cfg.decompositions);
            read(b, "count", cfg.sets.count);
            read(b, "searchBound", cfg.sets.searchBound);
            read(b, "scanLimit", cfg.sets.scanLimit);
            read(b, "termBound", cfg.sets.termBound);
            read(b, "fragmentBound", cfg.sets.fragmentBound);
        }
        read(j, "budget", cfg.budget);
        read(j, "certificateBudget", cfg.certificateBudget);
        if (j.contains("rhoSeed")) {
            if (!j.at("rhoSeed").is_number_unsigned())
                throw ConfigError("rhoSeed must be a non-negative integer");
            cfg.rhoSeed = j.at("rhoSeed").get<std::uint64_t>();
        }
        read(j, "precision", cfg.precision);
        if (j.contains("schedule"))
            cfg.sets.schedule = schedule_of(j.at("schedule"));
        if (j.contains("mode"))
            cfg.sets.mode = parse_mode(j.at("mode").get<std::string>());
        if (j.contains("outputDir"))
            cfg.outputDir = j.at("outputDir").get<std::string>();
    } catch (Json::exception const &e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    } catch (std::invalid_argument const &e) {
        throw ConfigError(e.what());
    }
    cfg.sets.factor = cfg.factor_options();
    cfg.sets.certificateBudget = cfg.certificateBudget;
    cfg.sets.precision = cfg.precision;
    cfg.sets.q = cfg.isogeny.q;
    validate(cfg);
    return cfg;
}

RunConfig load_config(std::string const &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config " + path);
    Json j;
    try {
        in >> j;
    } catch (Json::exception const &e) {
        throw ConfigError("config " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

void validate(RunConfig const &cfg)
{
    std::optional<CurveSpec> curve;
    try {
        curve.emplace(cfg.a);
    } catch (std::invalid_argument const &e) {
        throw ConfigError(std::string("curve: ") + e.what());
    }
    if (cfg.Q.is_identity() || !on_curve(*curve, cfg.Q))
        throw ConfigError("Q is not on the curve");
    try {
        DescentPair const pair(cfg.isogeny, cfg.Q);
        if (!(pair.E() == *curve))
            throw ConfigError("isogeny target differs from the configured curve");
    } catch (std::invalid_argument const &e) {
        throw ConfigError(std::string("isogeny: ") + e.what());
    } catch (NoDescentError const &e) {
        throw ConfigError(std::string("isogeny: ") + e.what());
    }
    if (cfg.heightLo >= cfg.heightHi || cfg.heightHi > cfg.N)
        throw ConfigError("height range must satisfy heightLo < heightHi <= N");
    if (cfg.growthLo > cfg.growthHi || cfg.growthHi > cfg.N)
        throw ConfigError("growth window must lie within N");
    if (cfg.twoDivisorLo > cfg.twoDivisorHi || cfg.twoDivisorHi > cfg.maxN)
        throw ConfigError("two-divisor window must lie within maxN");
    if (cfg.maxN > cfg.sets.termBound)
        throw ConfigError("maxN must not exceed termBound");
    if (cfg.zetaBound < 2)
        throw ConfigError("zetaBound must be at least 2");
}

Json to_json(RunConfig const &cfg)
{
    Json a = Json::array();
    for (auto const &c : cfg.a)
        a.push_back(to_string(c));
    return {
        {"curve", {{"a", a}, {"Q", point_json(cfg.Q)}}},
        {"isogeny",
         {{"a", to_string(cfg.isogeny.a)},
          {"u", to_string(cfg.isogeny.u)},
          {"q", cfg.isogeny.q},
          {"Qprime", point_json(cfg.isogeny.Qprime)}}},
        {"bounds",
         {{"N", cfg.N},
          {"maxN", cfg.maxN},
          {"divisibilityN", cfg.divisibilityN},
          {"primeBound", cfg.primeBound},
          {"descentN", cfg.descentN},
          {"decideBound", cfg.decideBound},
          {"heightLo", cfg.heightLo},
          {"heightHi", cfg.heightHi},
          {"growthLo", cfg.growthLo},
          {"growthHi", cfg.growthHi},
          {"twoDivisorLo", cfg.twoDivisorLo},
          {"twoDivisorHi", cfg.twoDivisorHi},
          {"zetaBound", cfg.zetaBound},
          {"modelCount", cfg.modelCount},
          {"decompositions", cfg.decompositions},
          {"count", cfg.sets.count},
          {"searchBound", cfg.sets.searchBound},
          {"scanLimit", cfg.sets.scanLimit},
          {"termBound", cfg.sets.termBound},
          {"fragmentBound", cfg.sets.fragmentBound}}},
        {"budget", cfg.budget},
        {"certificateBudget", cfg.certificateBudget},
        {"rhoSeed", cfg.rhoSeed},
        {"precision", cfg.precision},
        {"schedule", schedule_json(cfg.sets.schedule)},
        {"mode", to_string(cfg.sets.mode)},
        {"outputDir", cfg.outputDir},
    };
}

std::string output_dir(RunConfig const &cfg)
{
    if (char const *env = std::getenv("EDSD_OUTPUT_DIR"); env && *env)
        return env;
    return cfg.outputDir;
}

void write_artifact(std::string const &dir, std::string const &name, std::string const &content)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path const target = fs::path(dir) / name;
    fs::path const tmp = fs::path(dir) / (name + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

std::string dump(Json const &j)
{
    return j.dump(2) + "\n";
}

} // namespace edsd
