#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "edsd/analytic.hpp"
#include "edsd/eds.hpp"

namespace edsd {

enum class Schedule { Paper, Relaxed, Custom };

// Paper: 1/(10i). Relaxed: constant c (default 1/2). Custom: c/i.
struct ToleranceSchedule {
    Schedule kind = Schedule::Paper;
    Rational c{1, 10};

    static ToleranceSchedule paper() { return {Schedule::Paper, Rational(1, 10)}; }
    static ToleranceSchedule relaxed(Rational c = Rational(1, 2)) { return {Schedule::Relaxed, c}; }
    static ToleranceSchedule custom(Rational c) { return {Schedule::Custom, c}; }

    Rational tolerance(std::size_t i) const;
    std::string name() const;
};

class SearchExhausted : public std::runtime_error {
public:
    SearchExhausted(std::size_t index, std::uint64_t bound);
    std::size_t index;
    std::uint64_t bound;
};

struct UEntry {
    std::size_t i = 0;
    std::uint64_t l = 0;
    Real y;
    bool exactVerified = false;
};

struct IndexRules {
    std::size_t floor = 0;                          // b: every l > b
    std::uint64_t q = 0;                            // excluded isogeny degree
    std::function<bool(std::uint64_t)> inL;         // excluded primes with B_l = 1
};

// Primes l_1 < l_2 < ... where l_i is the smallest admissible prime above
// l_{i-1} with |y(l_i Q) - i| < tolerance(i). Built lazily: scanning a prime
// decides its membership for good.
class IndexSetU {
public:
    IndexSetU(std::shared_ptr<RealEmbedding const> emb, IndexRules rules, ToleranceSchedule schedule,
              std::uint64_t searchBound, IndexSetU *excluded = nullptr);

    // Throws SearchExhausted when the scan passes searchBound first.
    void ensure_count(std::size_t count);

    // Membership of l; nullopt if deciding needs a scan beyond scanLimit.
    std::optional<bool> contains(std::uint64_t l, std::uint64_t scanLimit);

    std::vector<UEntry> const &entries() const { return entries_; }
    ToleranceSchedule const &schedule() const { return schedule_; }
    std::uint64_t search_bound() const { return searchBound_; }
    std::uint64_t scanned() const { return scanned_; }
    IndexRules const &rules() const { return rules_; }
    RealEmbedding const &embedding() const { return *emb_; }

private:
    bool admissible(std::uint64_t l, std::uint64_t scanLimit);
    void step(std::uint64_t scanLimit);

    std::shared_ptr<RealEmbedding const> emb_;
    IndexRules rules_;
    ToleranceSchedule schedule_;
    std::uint64_t searchBound_;
    IndexSetU *excluded_;
    std::vector<UEntry> entries_;
    std::uint64_t scanned_ = 1; // every prime <= scanned_ is decided
};

enum class SetMode { Complementary, Exact };
enum class Family { S, T, S1, S2, T1, T2 };
enum class Verdict { In, Out, Unknown };

std::string to_string(SetMode m);
std::string to_string(Family f);
std::string to_string(Verdict v);
Family parse_family(std::string const &s);
SetMode parse_mode(std::string const &s);

struct Witness {
    std::optional<std::uint64_t> rank; // n_p
    std::vector<std::pair<std::uint64_t, unsigned>> rankFactors;
    std::string clause;
    std::vector<std::string> steps;
};

struct MembershipVerdict {
    Integer prime;
    Family family = Family::S;
    Verdict verdict = Verdict::Unknown;
    Witness witness;
    std::uint64_t budgetSpent = 0;
    std::string blocking; // set for Unknown
};

struct FragmentEntry {
    Integer prime;
    std::size_t index = 0; // term the prime came from
    std::string clause;
    unsigned exponent = 0;
};

struct Fragment {
    std::string name;
    std::vector<FragmentEntry> members; // sorted by prime
    std::vector<std::pair<std::size_t, std::string>> unknown;
    std::vector<std::size_t> partialIndices; // terms only partly factored

    bool contains(Integer const &p) const;
};

struct VennReport {
    std::vector<Integer> S1capS2, T2capT1, T2capS2, T1capS1;
    std::vector<Integer> T2capS1; // expected non-empty when witnessed
    std::vector<Integer> notGood;
    bool ok() const;
};

struct SetConfig {
    SetMode mode = SetMode::Exact;
    ToleranceSchedule schedule = ToleranceSchedule::relaxed();
    std::uint64_t q = 3;
    std::size_t count = 5;
    std::uint64_t searchBound = 100000;
    std::uint64_t scanLimit = 1000000; // lazy extension of U for membership
    std::size_t termBound = 100;       // B_n available for n <= termBound
    std::size_t fragmentBound = 40;    // clause indices enumerated for fragments
    std::uint64_t certificateBudget = 200000;
    FactorOptions factor;
    unsigned precision = 50;
};

struct PrimeSetFamily {
    SetMode mode = SetMode::Exact;
    Fragment S1, S2, T1, T2;
    VennReport venn;
};

struct EzsRow {
    std::size_t n = 0;
    bool inU = false;
    bool inZS = false;      // decided membership of nQ in E(Z_S)
    bool decided = false;
    std::optional<Integer> witness; // absent when decided by counting
    std::string reason;
};

struct EzsReport {
    std::vector<EzsRow> rows;
    std::vector<std::size_t> exceptions; // n with inZS != inU, or undecided
};

struct Decomposition {
    Rational x;
    Rational s;  // s > 0, supported on S
    Rational t;  // supported on T, carries the sign
    std::vector<std::pair<Integer, Verdict>> primes;
    bool ok = false;
    std::optional<Integer> blocking;
};

struct ModelAddRow {
    std::size_t i, j, k;
    bool predicate;
    double deviation; // |(y_i + y_j - y_k) - (i + j - k)|
};

struct ModelReport {
    std::vector<ModelAddRow> rows;
    std::size_t disagreements = 0;
    std::size_t deviationViolations = 0;
    double maxDeviation = 0;
    std::size_t mulChecked = 0, mulDisagreements = 0;
};

class SetBuilder {
public:
    SetBuilder(CurveSpec curve, RatPoint Q, SetConfig config);

    SetConfig const &config() const { return config_; }
    EdsSequence const &sequence() const { return seq_; }
    CurveConstants const &constants() const { return constants_; }
    RealEmbedding const &embedding() const { return *emb_; }
    IndexSetU &U() { return *U_; }
    IndexSetU *Uprime() { return Uprime_.get(); }

    bool in_L(std::uint64_t l) const;
    std::optional<std::uint64_t> rank(Integer const &p);

    // Position of p among the distinct good primitive primes of B_n in
    // descending order: 1 largest, 2 second, 3 anything lower.
    std::optional<int> position(std::size_t n, Integer const &p, std::string &blocking);

    MembershipVerdict decide(Integer const &p, Family family);

    Fragment build_S1();
    Fragment build_T1();
    Fragment build_S2();
    Fragment build_T2();
    PrimeSetFamily assemble();

    EzsReport check_EZS(std::size_t N);
    Decomposition decompose(Rational const &x);

private:
    Verdict index_member(IndexSetU &V, std::uint64_t l, Witness &w, std::string &blocking);
    // Clause of the S2 / T2 style definition that index n falls under, if any.
    std::optional<std::string> clause_for(std::uint64_t n, IndexSetU &V, Witness &w, std::string &blocking,
                                          bool &unknown);
    Verdict clauses(Integer const &p, std::uint64_t n, IndexSetU &V, int primePos, int productPos, Witness &w,
                    std::string &blocking);
    Verdict decide_raw(Integer const &p, Family family, Witness &w, std::string &blocking);
    Fragment term_fragment(std::string name, IndexSetU &V);
    Fragment clause_fragment(std::string name, IndexSetU &V, bool secondForPrime, bool secondForProduct);

    SetConfig config_;
    EdsSequence seq_;
    CurveConstants constants_;
    std::shared_ptr<RealEmbedding const> emb_;
    std::unique_ptr<IndexSetU> U_, Uprime_;
    std::map<std::pair<std::size_t, Integer>, std::optional<int>> positionCache_;
    std::map<Integer, std::optional<std::uint64_t>> rankCache_;
    std::map<std::size_t, PrimitivePrimes> primitiveCache_;
    std::uint64_t spent_ = 0; // certificate budget units used so far
};

// Rounding predicate |y_i + y_j - y_k| <= 3/10. Throws std::invalid_argument
// if an index lies beyond U or the schedule cannot guarantee the rounding.
bool model_add(IndexSetU const &U, std::size_t i, std::size_t j, std::size_t k);
// |y_i^2 - y_s| < 1/2
bool model_square(IndexSetU const &U, std::size_t i, std::size_t s);
// 2k = (i+j)^2 - i^2 - j^2 through add and square predicates over U;
// nullopt if (i+j)^2 lies beyond U.
std::optional<bool> model_mul(IndexSetU const &U, std::size_t i, std::size_t j, std::size_t k);

ModelReport model_check(IndexSetU const &U);

} // namespace edsd
