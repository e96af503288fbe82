#include "gammalab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace gammalab {

namespace {

// Parse "key=value" fragments out of a header line like
// "# gamma-step v1; dim=3; q=2; weight=dt".
std::map<std::string, std::string> header_fields(const std::string& line,
                                                 const std::string& tag) {
  const std::string prefix = "# " + tag + " v1";
  if (line.rfind(prefix, 0) != 0)
    throw IoError("expected '" + prefix + "' header, got: " + line);
  std::map<std::string, std::string> out;
  std::stringstream ss(line.substr(prefix.size()));
  std::string part;
  while (std::getline(ss, part, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) continue;
    std::string k = part.substr(0, eq), v = part.substr(eq + 1);
    const auto strip = [](std::string& s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.erase(s.begin());
      while (!s.empty() && (s.back() == ' ' || s.back() == '\r'))
        s.pop_back();
    };
    strip(k);
    strip(v);
    out[k] = v;
  }
  return out;
}

std::string need(const std::map<std::string, std::string>& f,
                 const std::string& k, const std::string& tag) {
  const auto it = f.find(k);
  if (it == f.end()) throw IoError(tag + " header missing field " + k);
  return it->second;
}

double parse_num(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    if (s == "inf") return kInfExponent;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("bad numeric value for " + what + ": '" + s + "'");
  }
}

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(parse_num(tok, "data row"));
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_step(std::ostream& os, const StepFunction& f) {
  const TimeGrid& g = f.grid();
  os << "# gamma-step v1; dim=" << f.dim() << "; q=";
  if (f.target().exponent == kInfExponent)
    os << "inf";
  else
    os << format_double(f.target().exponent);
  os << "; weight=" << weight_name(g.weight);
  if (g.weight == Weight::power) os << "; beta=" << format_double(g.beta);
  os << "; m=" << f.noise_dim() << "\n";
  const bool cplx = !f.is_real(0.0);
  os << "# complex=" << (cplx ? 1 : 0) << "\n";
  for (int i = 0; i < g.intervals(); ++i) {
    os << format_double(g.knots[i]) << " " << format_double(g.knots[i + 1]);
    const CMatrix& v = f.value(i);
    for (int r = 0; r < v.rows(); ++r)
      for (int c = 0; c < v.cols(); ++c) os << " " << format_double(v(r, c).real());
    if (cplx)
      for (int r = 0; r < v.rows(); ++r)
        for (int c = 0; c < v.cols(); ++c)
          os << " " << format_double(v(r, c).imag());
    os << "\n";
  }
}

StepFunction read_step(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty step input");
  const auto f = header_fields(line, "gamma-step");
  const int dim = static_cast<int>(parse_num(need(f, "dim", "gamma-step"), "dim"));
  const double q = parse_num(need(f, "q", "gamma-step"), "q");
  const Weight w = weight_from_name(need(f, "weight", "gamma-step"));
  const int m = f.count("m")
                    ? static_cast<int>(parse_num(f.at("m"), "m"))
                    : 1;
  double beta = 0.0;
  if (w == Weight::power) beta = parse_num(need(f, "beta", "gamma-step"), "beta");
  bool cplx = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find("complex=");
      if (eq != std::string::npos) cplx = line[eq + 8] == '1';
      continue;
    }
    rows.push_back(split_numbers(line));
  }
  if (rows.empty()) throw IoError("gamma-step has no interval rows");
  TimeGrid grid;
  grid.weight = w;
  grid.beta = beta;
  std::vector<CMatrix> vals;
  const std::size_t expect = 2 + static_cast<std::size_t>(dim) * m * (cplx ? 2 : 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != expect)
      throw IoError("gamma-step row has " + std::to_string(r.size()) +
                    " fields, expected " + std::to_string(expect));
    if (i == 0) grid.knots.push_back(r[0]);
    grid.knots.push_back(r[1]);
    CMatrix v(dim, m);
    for (int rr = 0; rr < dim; ++rr)
      for (int cc = 0; cc < m; ++cc) {
        const std::size_t base = 2 + rr * m + cc;
        const double re = r[base];
        const double im = cplx ? r[base + static_cast<std::size_t>(dim) * m] : 0.0;
        v(rr, cc) = Complex(re, im);
      }
    vals.push_back(std::move(v));
  }
  try {
    grid.validate();
    return StepFunction(grid, SpaceModel::lq(dim, q), std::move(vals));
  } catch (const std::exception& e) {
    throw IoError(std::string("invalid gamma-step data: ") + e.what());
  }
}

void write_step_file(const std::string& path, const StepFunction& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_step(os, f);
}

StepFunction read_step_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  return read_step(is);
}

void write_op(std::ostream& os, const SectorialOp& a) {
  os << "# sect-op v1; dim=" << a.dim() << "\n";
  const CMatrix& m = a.matrix();
  const bool cplx = m.imag().norm() > 0.0;
  os << "# complex=" << (cplx ? 1 : 0) << "\n";
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) os << " ";
      os << format_double(m(r, c).real());
    }
    if (cplx)
      for (int c = 0; c < m.cols(); ++c) os << " " << format_double(m(r, c).imag());
    os << "\n";
  }
}

SectorialOp read_op(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty operator input");
  const auto f = header_fields(line, "sect-op");
  const int dim = static_cast<int>(parse_num(need(f, "dim", "sect-op"), "dim"));
  if (dim < 1) throw IoError("sect-op dim must be >= 1");
  bool cplx = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find("complex=");
      if (eq != std::string::npos) cplx = line[eq + 8] == '1';
      continue;
    }
    rows.push_back(split_numbers(line));
  }
  if (static_cast<int>(rows.size()) != dim)
    throw IoError("sect-op expects " + std::to_string(dim) + " matrix rows");
  CMatrix m(dim, dim);
  const std::size_t expect = static_cast<std::size_t>(dim) * (cplx ? 2 : 1);
  for (int r = 0; r < dim; ++r) {
    if (rows[r].size() != expect)
      throw IoError("sect-op row length mismatch");
    for (int c = 0; c < dim; ++c)
      m(r, c) = Complex(rows[r][c], cplx ? rows[r][dim + c] : 0.0);
  }
  try {
    return SectorialOp(m);
  } catch (const std::exception& e) {
    throw IoError(std::string("invalid sect-op data: ") + e.what());
  }
}

void write_op_file(const std::string& path, const SectorialOp& a) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_op(os, a);
}

SectorialOp read_op_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  return read_op(is);
}

void write_ensemble(std::ostream& os, const PathEnsemble& e) {
  os << "# ensemble v1; samples=" << e.samples() << "; dim=" << e.dim()
     << "; m=" << e.grid().intervals() << "\n";
  for (int w = 0; w < e.samples(); ++w) {
    os << "# sample " << w << "\n";
    for (std::size_t j = 0; j < e.grid().knots.size(); ++j) {
      os << format_double(e.grid().knots[j]);
      for (int c = 0; c < e.dim(); ++c)
        os << " " << format_double(e.at(w, static_cast<int>(j))[c]);
      os << "\n";
    }
  }
}

PathEnsemble read_ensemble(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty ensemble input");
  const auto f = header_fields(line, "ensemble");
  const int samples =
      static_cast<int>(parse_num(need(f, "samples", "ensemble"), "samples"));
  const int dim = static_cast<int>(parse_num(need(f, "dim", "ensemble"), "dim"));
  const int m = static_cast<int>(parse_num(need(f, "m", "ensemble"), "m"));
  if (samples < 1 || dim < 1 || m < 1)
    throw IoError("ensemble header values must be positive");
  const int knots = m + 1;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split_numbers(line));
  }
  if (static_cast<int>(rows.size()) != samples * knots)
    throw IoError("ensemble expects " + std::to_string(samples * knots) +
                  " knot rows");
  TimeGrid grid;
  for (int j = 0; j < knots; ++j) grid.knots.push_back(rows[j][0]);
  try {
    grid.validate();
  } catch (const std::exception& e) {
    throw IoError(std::string("invalid ensemble grid: ") + e.what());
  }
  PathEnsemble out(grid, dim, samples);
  for (int w = 0; w < samples; ++w)
    for (int j = 0; j < knots; ++j) {
      const auto& r = rows[w * knots + j];
      if (static_cast<int>(r.size()) != 1 + dim)
        throw IoError("ensemble row length mismatch");
      if (std::abs(r[0] - grid.knots[j]) >
          1e-12 * std::max(1.0, std::abs(grid.knots[j])))
        throw IoError("ensemble samples disagree on the time grid");
      for (int c = 0; c < dim; ++c) out.at(w, j)[c] = r[1 + c];
    }
  return out;
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "op,dim,q,theta,seed,value,bound,margin\n";
  for (const auto& r : rows) {
    os << r.op << "," << r.dim << ",";
    if (r.q == kInfExponent)
      os << "inf";
    else
      os << format_double(r.q);
    os << "," << format_double(r.theta) << "," << r.seed << ","
       << format_double(r.value) << "," << format_double(r.bound) << ","
       << format_double(r.margin) << "\n";
  }
}

void write_csv_file(const std::string& path,
                    const std::vector<ResultRow>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  write_csv(os, rows);
}

}  // namespace gammalab
