#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hinv/verify.hpp"

namespace hinv::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kParseError = 2,
  kHypothesis = 3,
  kCapExceeded = 4,
};

/// Contents of an input document
/// {"p": 2, "matrix": [[...]], "subspaces": {"Z": [[...]]}, "r": [1, 0], "expect": {"Z": {"marked": false}}}.
struct ProblemInput {
  unsigned p = 2;
  MatrixF matrix{PrimeField(2), 0, 0};
  std::map<std::string, Subspace> subspaces;
  std::optional<std::vector<long long>> r;
  std::map<std::string, Expectations> expect;
};

/// Throws Error(ParseError) on malformed documents.
ProblemInput parse_input(const std::string& text);
ProblemInput load_input(const std::string& path);

/// "e1+2e3"; the zero vector prints as "0".
std::string format_vector(const VectorF& v);

/// Runs the command line (without the program name). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hinv::cli
