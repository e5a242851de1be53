#pragma once

#include <cobord/coeff.hpp>
#include <cobord/io.hpp>
#include <cobord/kl.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cobord::cli {

enum class Command { Segre, WClass, Kl, Check };
enum class Method { Closed, Iterative, Tower, All };

struct JobSpec {
  Command command = Command::Kl;
  TheoryKind theory = TheoryKind::Additive;
  std::optional<int> trunc;
  int d = 1;
  int n = 2;
  std::vector<int> lambda;
  Method method = Method::Closed;
  KlMode mode = KlMode::Evaluation;
  io::Format format = io::Format::Text;
  int rank = 1;
  int virtual_rank = 0;
  int range_lo = 0;
  int range_hi = 0;
  bool range_given = false;
  bool oracle = false;
  std::string suite = "all";
  std::string out;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMismatch = 2;

/// Parses argv-style arguments (without the program name) into a JobSpec,
/// runs it and writes the result to `out` (or to spec.out). Returns the
/// exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already parsed job. Throws std::invalid_argument for invalid
/// parameters.
int run(const JobSpec& spec, std::ostream& out);

/// "a..b" -> {a, b}.
std::pair<int, int> parse_range(const std::string& text);

}  // namespace cobord::cli
