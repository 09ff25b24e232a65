#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/error.hpp"

namespace toeplitz {

class ConfigError : public Error {
public:
  using Error::Error;
};

enum class Family { Banded, Exponential, Polynomial };
enum class OutputFormat { Csv, Json };
enum class Experiment { Example1, Example2, Clustering, Decay, Bounds };

Family parse_family(const std::string& s);
std::string to_string(Family f);
Experiment parse_experiment(const std::string& s);
std::string to_string(Experiment e);

struct ExperimentConfig {
  Family family = Family::Polynomial;
  double s = 2.0;
  double gamma = 1.0;
  double lambda = 1.0;
  double c = 1.0;
  /// a_0, a_1, ... for the banded family.
  std::vector<double> coeffs = {3.0, 1.0};
  std::vector<long> n_grid;
  long n0 = 8192;
  std::uint64_t seed = 20240601;
  double eps = 0.01;
  double tol = 1e-10;
  std::string out_path;
  OutputFormat format = OutputFormat::Csv;

  /// Throws ConfigError.
  void validate(Experiment e) const;
};

std::vector<long> make_grid(long nmin, long nmax, long nstep);

SymbolSequence make_symbol(const ExperimentConfig& cfg);

/// Random right-hand side y_k = u_k * decay(k), u_k uniform on [-1, 1) from
/// the counter-based generator, decay(k) = c (1+|k|)^{-s} or c e^{-gamma|k|^lambda}.
VectorSource decaying_rhs(const ExperimentConfig& cfg);

/// f_max / f_min on a 2^14-point uniform grid.
double condition_estimate(const SymbolSequence& seq);

struct ExperimentRow {
  long n = 0;
  double error_fs = 0.0;
  double error_emb = 0.0;
  double bound = 0.0;
  long iterations = 0;
  long outliers = 0;

  double ratio = 0.0;
  long iterations_cg = 0;
  long rank_window = 0;
  double fit_c = 0.0;
  double fit_gamma = 0.0;
  double fit_lambda = 0.0;
  double fit_s = 0.0;
  long demko_applicable = 0;
  long demko_pass = 0;
  double demko_worst_ratio = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double f_min = 0.0;
  double f_max = 0.0;
  double gap_bound = 0.0;
  double coeff_gap = 0.0;

  bool operator==(const ExperimentRow&) const = default;
};

std::vector<ExperimentRow> run_example1(const ExperimentConfig& cfg);
std::vector<ExperimentRow> run_example2(const ExperimentConfig& cfg);
std::vector<ExperimentRow> run_clustering(const ExperimentConfig& cfg);
std::vector<ExperimentRow> run_decay_study(const ExperimentConfig& cfg);
std::vector<ExperimentRow> run_bounds(const ExperimentConfig& cfg);
std::vector<ExperimentRow> run_experiment(Experiment e, const ExperimentConfig& cfg);

/// Column names emitted for a subcommand, in order.
std::vector<std::string> schema(Experiment e);

void write_csv(std::ostream& os, Experiment e, const std::vector<ExperimentRow>& rows);
void write_json(std::ostream& os, Experiment e, const std::vector<ExperimentRow>& rows);
/// Reads back CSV written by write_csv; throws ConfigError on a malformed file.
std::vector<ExperimentRow> read_csv(std::istream& is, Experiment e);

/// Least-squares slope of log(error) against log(n) over rows with
/// n in [n_lo, n_hi].
double loglog_slope(const std::vector<ExperimentRow>& rows, long n_lo, long n_hi);

}  // namespace toeplitz
