#include "dualwave/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dualwave {

namespace {

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_field(const std::string& cell, size_t row, size_t col, const std::string& file) {
  try {
    size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidInput(file + ": malformed CSV value at row " + std::to_string(row) + ", column " +
                       std::to_string(col));
  }
}

}  // namespace

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidInput("cannot open " + tmp.string() + " for writing");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

void write_profile_csv(const std::filesystem::path& path, const WaveProfile& p) {
  if (p.x.size() != p.f.size()) throw InvalidInput("write_profile_csv: x/f size mismatch");
  std::ostringstream out;
  out << "x,f,w,u_inf\n";
  for (int i = 0; i < p.x.size(); ++i) {
    out << format17(p.x[i]) << ',' << format17(p.f[i]) << ',' << format17(p.f[i] - p.u_inf) << ','
        << format17(p.u_inf) << '\n';
  }
  atomic_write(path, out.str());
}

WaveProfile read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open profile file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput(path.string() + ": empty profile file");

  std::vector<double> xs, fs, us;
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4)
      throw InvalidInput(path.string() + ": expected 4 columns at row " + std::to_string(row));
    xs.push_back(parse_field(cells[0], row, 1, path.string()));
    fs.push_back(parse_field(cells[1], row, 2, path.string()));
    parse_field(cells[2], row, 3, path.string());
    us.push_back(parse_field(cells[3], row, 4, path.string()));
  }
  if (xs.size() < 2) throw InvalidInput(path.string() + ": too few profile rows");

  WaveProfile p;
  p.x = Eigen::Map<Vector>(xs.data(), static_cast<int>(xs.size()));
  p.f = Eigen::Map<Vector>(fs.data(), static_cast<int>(fs.size()));
  p.u_inf = us.front();
  return p;
}

void write_dual_csv(const std::filesystem::path& path, const Vector& x, const Vector& field,
                    const std::string& name) {
  if (x.size() != field.size()) throw InvalidInput("write_dual_csv: size mismatch");
  std::ostringstream out;
  out << "x," << name << '\n';
  for (int i = 0; i < x.size(); ++i) out << format17(x[i]) << ',' << format17(field[i]) << '\n';
  atomic_write(path, out.str());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  atomic_write(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

nlohmann::json to_json(const SolverReport& rep) {
  return {{"converged", rep.converged},
          {"status", rep.status},
          {"iterations", rep.iterations},
          {"resets", rep.resets},
          {"residual_history", rep.residual_history},
          {"alpha_history", rep.alpha_history},
          {"final_residual", rep.final_residual},
          {"wall_time_sec", rep.wall_time_sec}};
}

nlohmann::json to_json(const QnReport& rep) {
  const char* reason = rep.reason == QnStop::gtol ? "gtol"
                       : rep.reason == QnStop::max_iters ? "max_iters"
                                                         : "line_search_failure";
  return {{"reason", reason},
          {"iterations", rep.iterations},
          {"evaluations", rep.evaluations},
          {"grad_inf_norm", rep.grad_inf_norm}};
}

nlohmann::json to_json(const SpectralReport& rep) {
  std::vector<double> low(rep.kappa_low.data(), rep.kappa_low.data() + rep.kappa_low.size());
  return {{"kappa1", rep.kappa1}, {"kappa_low", low}, {"min_sigma_c", rep.min_sigma_c}};
}

nlohmann::json to_json(const VerificationReport& rep) {
  nlohmann::json j;
  if (rep.err_max_interior) j["err_max_interior"] = *rep.err_max_interior;
  if (rep.d_of_m) j["d_of_m_percent"] = *rep.d_of_m;
  if (rep.nie_residual_inf) j["nie_residual_inf"] = *rep.nie_residual_inf;
  if (rep.tail_wavenumber) j["tail_wavenumber"] = *rep.tail_wavenumber;
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j;
}

nlohmann::json to_json(const PvResult& rep) {
  return {{"converged", rep.converged},
          {"unstable", rep.unstable},
          {"iterations", rep.iterations},
          {"status", rep.status},
          {"c_history", rep.c_history},
          {"residual_history", rep.residual_history}};
}

}  // namespace dualwave
