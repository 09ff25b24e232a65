#include "toeplitz/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "toeplitz/approx.hpp"
#include "toeplitz/decay.hpp"
#include "toeplitz/rng.hpp"
#include "toeplitz/solve.hpp"
#include "toeplitz/structured_ops.hpp"
#include "toeplitz/transform.hpp"

namespace toeplitz {

Family parse_family(const std::string& s) {
  if (s == "banded") return Family::Banded;
  if (s == "exponential") return Family::Exponential;
  if (s == "polynomial") return Family::Polynomial;
  throw ConfigError("unknown family '" + s + "' (banded|exponential|polynomial)");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Banded: return "banded";
    case Family::Exponential: return "exponential";
    case Family::Polynomial: return "polynomial";
  }
  return "unknown";
}

Experiment parse_experiment(const std::string& s) {
  if (s == "example1") return Experiment::Example1;
  if (s == "example2") return Experiment::Example2;
  if (s == "clustering") return Experiment::Clustering;
  if (s == "decay") return Experiment::Decay;
  if (s == "bounds") return Experiment::Bounds;
  throw ConfigError("unknown experiment '" + s + "'");
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::Example1: return "example1";
    case Experiment::Example2: return "example2";
    case Experiment::Clustering: return "clustering";
    case Experiment::Decay: return "decay";
    case Experiment::Bounds: return "bounds";
  }
  return "unknown";
}

void ExperimentConfig::validate(Experiment e) const {
  if (n_grid.empty()) throw ConfigError("n grid is empty");
  if (n_grid.front() < 1) throw ConfigError("n grid entries must be >= 1");
  if (!std::is_sorted(n_grid.begin(), n_grid.end()) ||
      std::adjacent_find(n_grid.begin(), n_grid.end()) != n_grid.end()) {
    throw ConfigError("n grid must be strictly ascending");
  }
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tol must lie in (0, 1)");
  if (!(c > 0.0)) throw ConfigError("c must be positive");
  if (family == Family::Polynomial && !(s > 1.0)) throw ConfigError("polynomial family needs s > 1");
  if (family == Family::Exponential && !(gamma > 0.0 && lambda > 0.0 && lambda <= 1.0)) {
    throw ConfigError("exponential family needs gamma > 0 and lambda in (0, 1]");
  }
  if (family == Family::Banded && coeffs.empty()) throw ConfigError("banded family needs coeffs");
  if (e == Experiment::Example1 || e == Experiment::Example2) {
    if (family != Family::Polynomial && e == Experiment::Example1) {
      throw ConfigError("example1 needs the polynomial family");
    }
    if (!(n0 > n_grid.back())) throw ConfigError("n0 must exceed every grid entry");
  }
  if (e == Experiment::Clustering || e == Experiment::Decay) {
    if (n_grid.back() > kDenseLimit) throw ConfigError("grid entries must be <= 2048");
  }
  if (e == Experiment::Clustering && !(eps > 0.0)) throw ConfigError("eps must be positive");
}

std::vector<long> make_grid(long nmin, long nmax, long nstep) {
  if (nmin < 1 || nmax < nmin || nstep < 1) throw ConfigError("invalid grid bounds");
  std::vector<long> g;
  for (long n = nmin; n <= nmax; n += nstep) g.push_back(n);
  return g;
}

SymbolSequence make_symbol(const ExperimentConfig& cfg) {
  switch (cfg.family) {
    case Family::Banded:
      return SymbolSequence::banded(CVector(cfg.coeffs.begin(), cfg.coeffs.end()));
    case Family::Exponential:
      return SymbolSequence::exponential(cfg.c, cfg.gamma, cfg.lambda);
    case Family::Polynomial:
      return SymbolSequence::polynomial(cfg.c, cfg.s);
  }
  throw ConfigError("unknown family");
}

VectorSource decaying_rhs(const ExperimentConfig& cfg) {
  const auto seed = cfg.seed;
  switch (cfg.family) {
    case Family::Polynomial: {
      const TailRule rule{TailRule::Kind::Polynomial, cfg.c, cfg.s, 1.0, 1.0};
      return [seed, rule](long k) { return cplx{uniform_pm1(seed, k) * rule(k), 0.0}; };
    }
    case Family::Exponential: {
      const TailRule rule{TailRule::Kind::Exponential, cfg.c, 2.0, cfg.gamma, cfg.lambda};
      return [seed, rule](long k) { return cplx{uniform_pm1(seed, k) * rule(k), 0.0}; };
    }
    case Family::Banded: {
      const long support = static_cast<long>(cfg.coeffs.size()) - 1;
      return [seed, support](long k) {
        return std::labs(k) <= support ? cplx{uniform_pm1(seed, k), 0.0} : cplx{};
      };
    }
  }
  throw ConfigError("unknown family");
}

double condition_estimate(const SymbolSequence& seq) {
  const auto grid = symbol_grid(seq, 1L << 14);
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  if (!(*lo > 0.0)) throw NotPositiveDefiniteError("symbol is not positive on the grid");
  return *hi / *lo;
}

namespace {

std::vector<long> grid_without(const std::vector<long>& g, long n0) {
  std::vector<long> out;
  std::copy_if(g.begin(), g.end(), std::back_inserter(out), [n0](long n) { return n != n0; });
  return out;
}

double distance(const ProjectedVector& ref, const CVector& x, long offset) {
  CVector diff = ref.data;
  for (long i = 0; i < static_cast<long>(x.size()); ++i) {
    const long j = offset + i - ref.offset;
    if (j < 0 || j >= ref.size()) throw DimensionError("section lies outside the reference window");
    diff[j] -= x[i];
  }
  return norm2(diff);
}

struct SectionStudy {
  SymbolSequence seq;
  VectorSource y;
  ProjectedVector reference;
  double cond;
};

SectionStudy prepare_sections(const ExperimentConfig& cfg) {
  SectionStudy st{make_symbol(cfg), decaying_rhs(cfg), {}, 0.0};
  SectionOptions ref_opts;
  ref_opts.tol = std::min(cfg.tol, 1e-12);
  ref_opts.preconditioned = true;
  const auto ref = finite_section_solve(st.seq, st.y, cfg.n0, Convention::Biinfinite, ref_opts);
  st.reference = {ref.x, ref.offset};
  st.cond = condition_estimate(st.seq);
  return st;
}

}  // namespace

std::vector<ExperimentRow> run_example1(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.n_grid = grid_without(cfg.n_grid, cfg.n0);
  cfg.validate(Experiment::Example1);
  const auto st = prepare_sections(cfg);
  SectionOptions opts;
  opts.tol = cfg.tol;
  opts.bound = SectionBound{DecayProfile(PolynomialDecay{cfg.c, cfg.s}), st.cond};

  std::vector<ExperimentRow> rows;
  for (long n : cfg.n_grid) {
    const auto rep = finite_section_solve(st.seq, st.y, n, Convention::Biinfinite, opts);
    ExperimentRow row;
    row.n = n;
    row.error_fs = distance(st.reference, rep.x, rep.offset);
    row.bound = *rep.bound_applied;
    row.iterations = rep.iterations;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ExperimentRow> run_example2(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.n_grid = grid_without(cfg.n_grid, cfg.n0);
  cfg.validate(Experiment::Example2);
  const auto st = prepare_sections(cfg);
  SectionOptions opts;
  opts.tol = cfg.tol;

  std::vector<ExperimentRow> rows;
  for (long n : cfg.n_grid) {
    const auto fs = finite_section_solve(st.seq, st.y, n, Convention::Biinfinite, opts);
    const auto rhs = project(st.y, n, Convention::Biinfinite);
    const auto emb = embedding_solve(st.seq, rhs.data, rhs.size());
    ExperimentRow row;
    row.n = n;
    row.error_fs = distance(st.reference, fs.x, fs.offset);
    row.error_emb = distance(st.reference, emb.x, rhs.offset);
    row.ratio = row.error_emb / row.error_fs;
    row.iterations = fs.iterations;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ExperimentRow> run_clustering(const ExperimentConfig& cfg) {
  cfg.validate(Experiment::Clustering);
  const auto seq = make_symbol(cfg);
  std::vector<ExperimentRow> rows;
  for (long n : cfg.n_grid) {
    const auto rep = clustering_report(seq, n, cfg.eps);
    CVector y(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k) y[k] = uniform_pm1(cfg.seed, k);
    const auto T = build_toeplitz(seq, n);
    const EmbeddingSystem sys(seq, n);
    const auto pcg = pcg_solve(T, y, embedding_preconditioner(sys), cfg.tol);
    const auto cg = cg_solve(T, y, cfg.tol);
    ExperimentRow row;
    row.n = n;
    row.outliers = rep.outliers;
    row.rank_window = rep.rank_window;
    row.iterations = pcg.iterations;
    row.iterations_cg = cg.iterations;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ExperimentRow> run_decay_study(const ExperimentConfig& cfg) {
  cfg.validate(Experiment::Decay);
  const auto seq = make_symbol(cfg);
  std::vector<ExperimentRow> rows;
  for (long n : cfg.n_grid) {
    const DenseMatrix A = to_dense(build_toeplitz(seq, n));
    const DenseMatrix inv = dense_inverse(A);
    const auto samples = row_decay_samples(inv, n / 2, 2, std::max(2L, n / 4));
    ExperimentRow row;
    row.n = n;
    const auto profile = fit_decay(samples, cfg.family == Family::Polynomial
                                                ? DecayKind::Polynomial
                                                : DecayKind::Exponential);
    row.fit_c = profile.c();
    if (profile.kind() == DecayKind::Polynomial) {
      row.fit_s = profile.polynomial().s;
    } else {
      row.fit_gamma = profile.exponential().gamma;
      row.fit_lambda = profile.exponential().lambda;
    }
    if (seq.is_banded()) {
      const auto ev = dense_eigenvalues(A);
      const auto bound = demko_bound(ev.back() / ev.front(), std::max(1L, seq.bandwidth()),
                                     1.0 / ev.front());
      const auto check =
          decay_envelope_check(all_entries(inv), [&](long d) { return bound.envelope(d); }, 1e-10);
      row.demko_applicable = 1;
      row.demko_pass = check.ok ? 1 : 0;
      row.demko_worst_ratio = check.worst_ratio;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ExperimentRow> run_bounds(const ExperimentConfig& cfg) {
  cfg.validate(Experiment::Bounds);
  const auto seq = make_symbol(cfg);
  std::vector<ExperimentRow> rows;
  for (long m : cfg.n_grid) {
    EigBracket b{};
    switch (cfg.family) {
      case Family::Banded: b = eig_bracket_banded(seq, m); break;
      case Family::Exponential:
        b = eig_bracket(seq, m, DecayProfile(ExponentialDecay{cfg.c, cfg.gamma, 1.0}));
        break;
      case Family::Polynomial:
        b = eig_bracket(seq, m, DecayProfile(PolynomialDecay{cfg.c, cfg.s}));
        break;
    }
    ExperimentRow row;
    row.n = m;
    row.lambda_min = b.lambda_min_m;
    row.lambda_max = b.lambda_max_m;
    row.f_min = b.f_min_est;
    row.f_max = b.f_max_est;
    row.gap_bound = b.gap_bound;
    row.coeff_gap = max_coeff_gap(compare_inverse_coeffs(seq, 2 * m - 1));
    rows.push_back(row);
  }
  return rows;
}

std::vector<ExperimentRow> run_experiment(Experiment e, const ExperimentConfig& cfg) {
  std::vector<ExperimentRow> rows;
  switch (e) {
    case Experiment::Example1: rows = run_example1(cfg); break;
    case Experiment::Example2: rows = run_example2(cfg); break;
    case Experiment::Clustering: rows = run_clustering(cfg); break;
    case Experiment::Decay: rows = run_decay_study(cfg); break;
    case Experiment::Bounds: rows = run_bounds(cfg); break;
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ExperimentRow& a, const ExperimentRow& b) { return a.n < b.n; });
  return rows;
}

namespace {

using Field = std::variant<long ExperimentRow::*, double ExperimentRow::*>;

struct Column {
  std::string name;
  Field field;
};

std::vector<Column> columns(Experiment e) {
  using R = ExperimentRow;
  switch (e) {
    case Experiment::Example1:
      return {{"n", &R::n}, {"error_fs", &R::error_fs}, {"bound", &R::bound},
              {"iterations", &R::iterations}};
    case Experiment::Example2:
      return {{"n", &R::n}, {"error_fs", &R::error_fs}, {"error_emb", &R::error_emb},
              {"ratio", &R::ratio}, {"iterations", &R::iterations}};
    case Experiment::Clustering:
      return {{"n", &R::n}, {"outliers", &R::outliers}, {"iterations", &R::iterations},
              {"iterations_cg", &R::iterations_cg}, {"rank_window", &R::rank_window}};
    case Experiment::Decay:
      return {{"n", &R::n}, {"fit_c", &R::fit_c}, {"fit_gamma", &R::fit_gamma},
              {"fit_lambda", &R::fit_lambda}, {"fit_s", &R::fit_s},
              {"demko_applicable", &R::demko_applicable}, {"demko_pass", &R::demko_pass},
              {"demko_worst_ratio", &R::demko_worst_ratio}};
    case Experiment::Bounds:
      return {{"m", &R::n}, {"lambda_min", &R::lambda_min}, {"lambda_max", &R::lambda_max},
              {"f_min", &R::f_min}, {"f_max", &R::f_max}, {"gap_bound", &R::gap_bound},
              {"coeff_gap", &R::coeff_gap}};
  }
  return {};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string format_field(const ExperimentRow& row, const Field& f) {
  if (auto* p = std::get_if<long ExperimentRow::*>(&f)) return std::to_string(row.*(*p));
  return format_double(row.*std::get<double ExperimentRow::*>(f));
}

}  // namespace

std::vector<std::string> schema(Experiment e) {
  std::vector<std::string> names;
  for (const auto& c : columns(e)) names.push_back(c.name);
  return names;
}

void write_csv(std::ostream& os, Experiment e, const std::vector<ExperimentRow>& rows) {
  const auto cols = columns(e);
  for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].name;
  os << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << format_field(row, cols[i].field);
    os << '\n';
  }
}

void write_json(std::ostream& os, Experiment e, const std::vector<ExperimentRow>& rows) {
  const auto cols = columns(e);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (const auto& c : cols) {
      if (auto* p = std::get_if<long ExperimentRow::*>(&c.field)) {
        obj[c.name] = row.*(*p);
      } else {
        obj[c.name] = row.*std::get<double ExperimentRow::*>(c.field);
      }
    }
    arr.push_back(obj);
  }
  os << arr.dump(2) << '\n';
}

std::vector<ExperimentRow> read_csv(std::istream& is, Experiment e) {
  const auto cols = columns(e);
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty CSV");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header != schema(e)) throw ConfigError("CSV header does not match the " + to_string(e) + " schema");

  std::vector<ExperimentRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    ExperimentRow row;
    size_t i = 0;
    for (; std::getline(ss, cell, ','); ++i) {
      if (i >= cols.size()) throw ConfigError("too many CSV fields");
      try {
        size_t used = 0;
        if (auto* p = std::get_if<long ExperimentRow::*>(&cols[i].field)) {
          row.*(*p) = std::stol(cell, &used);
        } else {
          row.*std::get<double ExperimentRow::*>(cols[i].field) = std::stod(cell, &used);
        }
        if (used != cell.size()) throw ConfigError("trailing characters");
      } catch (const std::logic_error&) {
        throw ConfigError("malformed CSV field '" + cell + "'");
      }
    }
    if (i != cols.size()) throw ConfigError("too few CSV fields");
    rows.push_back(row);
  }
  return rows;
}

double loglog_slope(const std::vector<ExperimentRow>& rows, long n_lo, long n_hi) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.n < n_lo || r.n > n_hi || !(r.error_fs > 0.0)) continue;
    x.push_back(std::log(static_cast<double>(r.n)));
    y.push_back(std::log(r.error_fs));
  }
  if (x.size() < 2) throw FitError("need at least two rows for a slope");
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

}  // namespace toeplitz
