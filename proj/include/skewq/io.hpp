#pragma once

// File formats.
//
// State file (JSON):
//   {"d_A": 2, "d_B": 2, "matrix": [[re, im], [re, im], ...]}
// with the d*d entries in row-major order. Loading validates the state.
//
// Numbers written to CSV use 17 significant digits, '.' as the decimal
// separator and no locale dependence.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "skewq/bounds.hpp"
#include "skewq/linalg.hpp"
#include "skewq/skew.hpp"

namespace skewq {

using Json = nlohmann::json;

std::string format_number(double x);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, Eigen::Index dim);

Json state_to_json(const BipartiteDensityMatrix& rho);
Json state_to_json(const ComplexMatrix& m, int d_a, int d_b);
BipartiteDensityMatrix state_from_json(const Json& j, const Tolerances& tol = {});

void save_state_file(const std::filesystem::path& path, const BipartiteDensityMatrix& rho);
BipartiteDensityMatrix load_state_file(const std::filesystem::path& path, const Tolerances& tol = {});

Json basis_to_json(const ProjectiveBasis& basis);
Json report_to_json(const BoundReport& report);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace skewq
