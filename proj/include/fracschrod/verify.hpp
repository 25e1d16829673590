#pragma once

// Acceptance checks. Each check is self-contained, times itself and reports
// the measured figure next to the threshold it was held to.

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "fracschrod/specfun.hpp"

namespace fracschrod::verify {

using cplx = std::complex<double>;

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
    double seconds = 0.0;
};

/// E_nu(sigma (+-i)^nu t^nu) as produced by the evaluator under test.
using DecompositionFn = std::function<cplx(double sigma, specfun::Ray ray, specfun::FractionalOrder order, double t)>;

DecompositionFn default_decomposition();

struct VerifyOptions {
    bool quick = false;
    DecompositionFn decomposition = default_decomposition();
};

enum class Suite { Specfun, Fraccalc, Tfse, All };

Suite parse_suite(const std::string& name);  // throws std::invalid_argument

CheckResult check_euler_identity(const VerifyOptions& opt);       // 1
CheckResult check_special_values(const VerifyOptions& opt);       // 2
CheckResult check_half_order(const VerifyOptions& opt);           // 3
CheckResult check_laplace_oracle(const VerifyOptions& opt);       // 4
CheckResult check_well_limit(const VerifyOptions& opt);           // 5
CheckResult check_energy_limit(const VerifyOptions& opt);         // 6
CheckResult check_continuity(const VerifyOptions& opt);           // 7
CheckResult check_caputo_residual(const VerifyOptions& opt);      // 8
CheckResult check_identity_residuals(const VerifyOptions& opt);   // 9
CheckResult check_unit_order(const VerifyOptions& opt);           // 10
CheckResult check_super_unit(const VerifyOptions& opt);           // 11

std::vector<CheckResult> run_suite(Suite suite, const VerifyOptions& opt = {});

/// "PASS  1 euler-identity  measured=... threshold=...  (0.42 s)  detail"
std::string format_line(const CheckResult& r);

}  // namespace fracschrod::verify
