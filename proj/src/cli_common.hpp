#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "skewq/cli.hpp"

namespace skewq::cli::detail {

// D_tilde from the requested oracle. The grid oracle needs d_A = 2.
double compute_d_tilde(const BipartiteDensityMatrix& rho, double alpha, OracleKind oracle,
                       int grid_points, const OptimizerConfig& optimizer);

// Runs `body`, translating library exceptions into exit codes.
int guarded(const std::function<int()>& body, std::ostream& err);

void emit(const std::string& text, const std::string& path, std::ostream& out);

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what);

double get_number(const Json& j, const char* key);
int get_int(const Json& j, const char* key);
std::uint64_t get_u64(const Json& j, const char* key);
std::string get_string(const Json& j, const char* key);
std::vector<double> get_number_list(const Json& j, const char* key);

void validate_alphas(const std::vector<double>& alphas);

}  // namespace skewq::cli::detail
