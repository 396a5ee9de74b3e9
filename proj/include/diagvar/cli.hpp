#pragma once

// Command-line front end: subcommands that compute P(X) and run the
// individual verifications, plus the batch suite with JSON / text reports.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diagvar/diagvariety.hpp"
#include "diagvar/intlattice.hpp"

namespace diagvar::cli {

enum class ExitCode : int { Pass = 0, CheckFailed = 1, Usage = 2 };

/// One line of a report.
struct CheckRecord {
  CheckRecord() = default;
  CheckRecord(std::string name, std::size_t size,
              std::optional<std::uint32_t> prime = std::nullopt)
      : check(std::move(name)), n(size), p(prime) {}

  std::string check;
  std::size_t n = 0;
  std::optional<std::uint32_t> p;
  bool pass = false;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const CheckRecord& r);
std::string format_text(const CheckRecord& r);

enum class ReportFormat { Json, Text };

/// Canonical check order; reports are sorted by (check, n, p, variant).
inline const std::vector<std::string> kAllChecks = {
    "pofx", "lemma2", "induction", "antidiag",
    "sop",  "fedder", "lemma4",    "lemma5"};

struct SuiteConfig {
  std::size_t max_n = 4;
  std::vector<std::uint32_t> primes = {2, 3, 5, 7};
  std::vector<std::string> checks = kAllChecks;
  std::string output;  // empty = stdout
  ReportFormat format = ReportFormat::Text;
  bool force = false;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

/// Validates the configuration; throws GuardError / Error naming the problem.
void validate(const SuiteConfig& config);

/// Runs every in-range cell of the selected checks. The result order does not
/// depend on the thread count.
std::vector<CheckRecord> run_suite(const SuiteConfig& config);

// Individual checks. Exceptions other than GuardError become failing records.
CheckRecord check_pofx(std::size_t n, std::optional<SpecLabel> spec,
                       std::optional<TildeMode> mode, bool force);
CheckRecord check_pofx_matrix(const PolyMatrix& m, const std::string& source,
                              bool force);
CheckRecord check_lemma2(std::size_t n, TildeMode mode, bool force);
CheckRecord check_induction(std::size_t n, bool force);
CheckRecord check_antidiag(std::size_t n, SpecLabel spec, bool force);
CheckRecord check_sop(std::size_t n, bool force);
CheckRecord check_fedder(std::size_t n, std::uint32_t p, bool force);
CheckRecord check_lemma4(const IntMatrix& a, const std::string& source,
                         bool expect_unit);
CheckRecord check_lemma5(std::size_t n, std::optional<std::size_t> j_max);

enum class MatrixKind { Poly, Int };

/// Reads a matrix file: {"n": int, "entries": [[...]]}. Poly entries use the
/// polynomial text grammar over the variables of the n x n generic matrix.
std::variant<PolyMatrix, IntMatrix> load_matrix(
    const std::string& path, MatrixKind kind,
    CoefficientDomain dom = CoefficientDomain::integers());

/// Thread count from DIAGVAR_THREADS (unset or 0 = auto).
unsigned threads_from_env();

/// args excludes the program name. Returns the process exit status.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace diagvar::cli
