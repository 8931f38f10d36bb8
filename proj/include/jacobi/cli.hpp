#ifndef JACOBI_CLI_HPP
#define JACOBI_CLI_HPP

// jacobi-spectra command line:
//
//   analyze    eigenvector traces and S_n diagnostics per lambda
//   check      hypothesis checker verdicts as JSON
//   spectrum   truncation eigenvalues, Gauss weights, density bins
//   transform  flip | even | odd | bd coefficient tables
//
// Exit status: 0 on success (whatever the verdicts), 2 for usage and
// sequence-text errors, 3 for domain and precondition errors.

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace jacobi::cli {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string command;
  std::string kind;  // transform kind or theorem id
  std::string seq;
  std::string rates;
  std::vector<double> lambdas;
  std::size_t n = 0;
  std::string alpha = "a";
  std::string init = "p";
  int K = 1;
  std::optional<std::pair<double, double>> window;
  double bin = 0.5;
  bool weights = false;
  std::optional<double> tol;
  std::string format = "csv";
  std::string out;
};

/// JSON text of the config, including the tool version.
std::string serialize(const RunConfig& cfg);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace jacobi::cli

#endif
