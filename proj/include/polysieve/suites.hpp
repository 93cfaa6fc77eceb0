#pragma once

// Verification suites behind the CLI. Each returns a pass flag plus a JSON
// summary; all randomness is drawn from the given seed, so a rerun with the
// same seed and thread count reproduces the summary byte for byte.

#include <string>
#include <vector>

#include "polysieve/report.hpp"

namespace polysieve {

struct SuiteResult {
    std::string name;
    bool pass = false;
    Json summary;
};

// closed form vs direct summation on odd h <= hmax, all a coprime to h, all b < h
SuiteResult gauss_suite(i64 hmax = 99);

// |sum e(a n^2 + l n + c)|^2 against N + sum_l min(N, ||2 a l||^-1)
SuiteResult weyl_suite(unsigned long long seed, int samples = 1000, i64 max_N = 500, double bound = 10.0);

// lifted vs brute root counts, and the local bound, on odd p^alpha <= max_prime_power
SuiteResult roots_suite(unsigned long long seed, i64 max_prime_power = 343, int samples = 1000);

// K_delta sweep vs brute-force window maximisation on random windows
SuiteResult spacing_suite(unsigned long long seed, int windows = 100, std::size_t max_fractions = 500);

// One window: size, K_delta at the given delta ("a/b" or a decimal), sweep vs brute force.
SuiteResult farey_suite(const QuadPoly& f, i64 q_lo, i64 q_hi, const std::string& delta, Metric metric);

struct NormGridOptions {
    std::vector<QuadPoly> polys;
    std::vector<i64> Qs{3, 4, 5, 6, 7, 8};
    std::vector<i64> Ns{16, 64, 256, 1024};
    double tol = 1e-5;         // sandwich slack, relative
    double duality_tol = 1e-6; // farey vs time basis, relative
    NormOptions norm;
};

NormGridOptions default_norm_grid();

// N = 1 identity for q^2, the sandwich bounds, and basis duality
SuiteResult norm_suite(const NormGridOptions& opt);

SuiteResult witness_suite(const QuadPoly& f, const std::vector<int>& ms, const WitnessOptions& opt = {});

struct CharSuiteOptions {
    std::vector<QuadPoly> polys;
    std::vector<i64> rs{1, 3, 5};
    i64 max_Q = 4;
    i64 max_N = 50;
    int samples = 100;
    i64 count_limit = 500; // #characters = phi(n) for n <= count_limit
    i64 gauss_limit = 200; // |tau| = sqrt(n) for primitive chi, n <= gauss_limit
    i64 tau_r_limit = 15;
    unsigned long long seed = 1;
};

CharSuiteOptions default_char_suite();

SuiteResult char_suite(const CharSuiteOptions& opt);

// Every suite above with its default parameters.
SuiteResult all_checks(unsigned long long seed);

Json to_json(const SuiteResult& s);

} // namespace polysieve
