#include "skewq/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "skewq/errors.hpp"

namespace skewq {

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  return entries;
}

ComplexMatrix matrix_from_json(const Json& j, Eigen::Index dim) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim * dim) {
    std::ostringstream os;
    os << "matrix: expected " << dim * dim << " [re, im] entries";
    throw ConfigError(os.str());
  }
  ComplexMatrix m(dim, dim);
  for (Eigen::Index k = 0; k < dim * dim; ++k) {
    const Json& e = j[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ConfigError("matrix: every entry must be a [re, im] pair of numbers");
    m(k / dim, k % dim) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

Json state_to_json(const ComplexMatrix& m, int d_a, int d_b) {
  return Json{{"d_A", d_a}, {"d_B", d_b}, {"matrix", matrix_to_json(m)}};
}

Json state_to_json(const BipartiteDensityMatrix& rho) {
  return state_to_json(rho.matrix(), rho.d_a(), rho.d_b());
}

BipartiteDensityMatrix state_from_json(const Json& j, const Tolerances& tol) {
  if (!j.is_object()) throw ConfigError("state file: top level must be an object");
  for (const char* key : {"d_A", "d_B", "matrix"})
    if (!j.contains(key)) throw ConfigError(std::string("state file: missing field '") + key + "'");
  if (!j["d_A"].is_number_integer() || !j["d_B"].is_number_integer())
    throw ConfigError("state file: d_A and d_B must be integers");
  const int d_a = j["d_A"].get<int>();
  const int d_b = j["d_B"].get<int>();
  if (d_a < 1 || d_b < 1 || d_a * d_b > 64) throw ConfigError("state file: invalid dimensions");
  ComplexMatrix m = matrix_from_json(j["matrix"], static_cast<Eigen::Index>(d_a) * d_b);
  try {
    return BipartiteDensityMatrix(std::move(m), d_a, d_b, tol);
  } catch (const InvalidStateError& e) {
    throw ConfigError(std::string("state file: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

void save_state_file(const std::filesystem::path& path, const BipartiteDensityMatrix& rho) {
  write_text_file(path, state_to_json(rho).dump(2) + "\n");
}

BipartiteDensityMatrix load_state_file(const std::filesystem::path& path, const Tolerances& tol) {
  return state_from_json(read_json_file(path), tol);
}

Json basis_to_json(const ProjectiveBasis& basis) {
  Json vectors = Json::array();
  for (Eigen::Index k = 0; k < basis.dim(); ++k) {
    Json v = Json::array();
    for (Eigen::Index i = 0; i < basis.dim(); ++i)
      v.push_back({basis.vectors()(i, k).real(), basis.vectors()(i, k).imag()});
    vectors.push_back(std::move(v));
  }
  return vectors;
}

Json report_to_json(const BoundReport& report) {
  Json terms = Json::object();
  for (const auto& [name, value] : report.terms) terms[name] = value;
  return Json{{"name", report.name},
              {"lhs", report.lhs},
              {"rhs", report.rhs},
              {"slack", report.slack},
              {"tolerance", report.tolerance},
              {"holds", report.holds},
              {"terms", terms},
              {"per_k_L", report.per_k_L},
              {"per_k_UN_phi", report.per_k_UN_phi},
              {"per_k_UN_psi", report.per_k_UN_psi}};
}

}  // namespace skewq
