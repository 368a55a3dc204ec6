#pragma once

#include <functional>
#include <string>
#include <vector>

#include "blowlab/parallel.hpp"

namespace blowlab {

struct CheckOutcome {
    std::string suite;
    std::string name;
    bool pass = false;
    bool skipped = false;
    double value = 0;       // measured quantity
    double tolerance = 0;   // what it was held against
    std::string note;
};

struct VerifyReport {
    std::vector<CheckOutcome> checks;
    bool all_pass() const;
};

struct VerifyOptions {
    // empty = all; names: exponents, hypergeometric, cutoffs, scaling,
    // yfunctional, odelemma, solver, concentration
    std::vector<std::string> suites;
    unsigned seed = 12345;
    bool coarse = false;   // mark the slow grid-convergence checks skipped
    Exec exec = Exec::Serial;
    // test hook: lets a broken quadratic be injected to show the suite
    // actually detects it
    std::function<double(int, double)> strauss_quadratic_impl;
};

VerifyReport verify_all(const VerifyOptions& options = {});

} // namespace blowlab
