#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hypdiff {

// One checked identity instance. For two-route checks lhs and rhs are the
// independent evaluations and rel_err = |lhs - rhs| / max(|rhs|, tiny).
// For pure deviation checks (targets that are exactly zero) lhs carries the
// measured deviation, rhs is 0 and rel_err equals lhs.
struct VerifyRecord {
    std::string anchor; // identity name or literature id
    std::string param;  // parameter point, human readable
    double lhs{0.0};
    double rhs{0.0};
    double rel_err{0.0};
    double tol{0.0};
    bool pass{false};
};

struct VerifyOptions {
    std::uint64_t seed{20260818};
    int mc_paths{100000};                // diffusion endpoint-law sample size
    std::optional<double> tol_override;  // replaces every record tolerance
};

struct SuiteReport {
    std::string suite;
    std::vector<VerifyRecord> records;
    bool pass{true};
    double wall_ms{0.0};
};

// Record builders grouped by what they exercise; default tolerances are
// pinned inside each builder. The acceptance runner consumes these directly.
std::vector<VerifyRecord> algebra_records();
std::vector<VerifyRecord> evolution_records();
std::vector<VerifyRecord> trajectory_records();
std::vector<VerifyRecord> metric_records();
std::vector<VerifyRecord> eigen_records();
std::vector<VerifyRecord> bridge_records();
std::vector<VerifyRecord> whipple_records();
std::vector<VerifyRecord> completeness_records();
std::vector<VerifyRecord> composition_records();
std::vector<VerifyRecord> kernel_records(std::uint64_t seed, int mc_paths);

// Suites runnable by name; "brachistochrone" bundles the evolution and
// trajectory groups. Unknown names throw std::invalid_argument.
const std::vector<std::string>& verify_suite_names();
SuiteReport run_verify_suite(const std::string& name, const VerifyOptions& opt = {});

} // namespace hypdiff
