#ifndef QUILTKIT_CLI_HPP
#define QUILTKIT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qk {

/// Settings shared by every command. Reports record the seed.
struct RunConfig {
  int max_arity = 3;
  int black_cap = 2;
  int bound = 4;
  std::string format = "text";  // text | json
  std::uint64_t seed = 1;
  std::size_t samples = 10000;  // random axiom instances per operad
  bool mutate_signs = false;    // negate one seeded composition before checking axioms
  std::string prestack;         // optional GS input for the gs suite
};

/// One checked identity: how many instances were tested and the first
/// counterexamples.
struct CheckEntry {
  std::string suite;
  std::string identity;
  bool passed = true;
  std::size_t checks = 0;
  std::string detail;
  std::vector<std::string> failures;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckEntry> entries;

  bool passed() const;
  std::string text() const;
  std::string json() const;
};

/// Suite names accepted by `verify`, in the order `all` runs them.
const std::vector<std::string>& suite_names();

/// Runs one suite (or "all"). Throws std::invalid_argument on an unknown name.
VerifyReport run_verify(const std::string& suite, const RunConfig& cfg);

/// Entry point of the command line tool. Returns the process exit code:
/// 0 success, 1 verification failure, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qk

#endif  // QUILTKIT_CLI_HPP
