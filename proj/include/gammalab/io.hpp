#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gammalab/stochastic.hpp"

namespace gammalab {

// 17-significant-digit decimal, round-trips a double exactly.
std::string format_double(double x);

// Columnar text formats.  Step functions: header
//   # gamma-step v1; dim=n; q=...; weight=...
// then one row per interval: t_i t_{i+1} followed by the interval value
// (real data; complex parts are stored as an extra block when present).
void write_step(std::ostream& os, const StepFunction& f);
StepFunction read_step(std::istream& is);
void write_step_file(const std::string& path, const StepFunction& f);
StepFunction read_step_file(const std::string& path);

// Operators: header `# sect-op v1; dim=n`, dense row-major matrix rows.
void write_op(std::ostream& os, const SectorialOp& a);
SectorialOp read_op(std::istream& is);
void write_op_file(const std::string& path, const SectorialOp& a);
SectorialOp read_op_file(const std::string& path);

// Ensembles: header `# ensemble v1; samples=S; dim=n; m=...`, then per
// sample the knot rows `t_j u[0] ... u[n-1]`.
void write_ensemble(std::ostream& os, const PathEnsemble& e);
PathEnsemble read_ensemble(std::istream& is);

// CSV result rows: op,dim,q,theta,seed,value,bound,margin.
struct ResultRow {
  std::string op;
  int dim = 0;
  double q = 2.0;
  double theta = 0.0;
  std::uint64_t seed = 0;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool pass = true;
  std::string note;
};

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
void write_csv_file(const std::string& path, const std::vector<ResultRow>& rows);

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gammalab
