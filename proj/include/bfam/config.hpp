#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfam/besov.hpp"
#include "bfam/integrator.hpp"
#include "bfam/params.hpp"

namespace bfam {

// parse/validation failure; the message carries the line number or key
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataSpec {
  std::string kind = "zero";  // zero | gaussian-bump | sine | smooth-peak
  double amplitude = 0.5;
  double width = 0.6;       // gaussian-bump
  double center = -1.0;     // -1 -> length/2
  int wavenumber = 1;       // sine
  double sharpness = 8.0;   // smooth-peak
};

struct RunConfig {
  std::string scenario = "simulate";

  int grid_n = 256;
  double grid_length = 6.283185307179586;
  double t_end = 1.0;
  double s = 2.0;
  std::string rhs_form = "nonlocal";  // nonlocal | momentum

  DataSpec u0;
  DataSpec sigma0;

  std::string params_preset = "constant";  // constant | damped | custom
  double b = 2.0, kappa = 1.0, lambda = 0.5;
  ParamFn custom_alpha, custom_beta, custom_gamma, custom_xi;
  bool custom_given = false;

  StepControl step;

  double besov_p = 2.0, besov_r = 2.0;
  double theory_c = 1.0;

  double transform_lambda = 0.5;
  double transform_tolerance = 1e-5;

  int friedrichs_n_max = 8;
  int friedrichs_frames = 200;
  int friedrichs_substeps = 1;

  std::vector<double> scan_amplitudes;  // empty -> just u0.amplitude

  int seeds_count = 64;

  double norms_s1 = 0.4, norms_s2 = 0.6;
  int norms_corpus = 64;

  bool output_frames = false;
  bool output_traces = false;

  // set from command-line flags, not config keys
  std::string out_dir = "out";
  std::uint64_t seed = 12345;
  int workers = 1;
};

// key = value lines, '#' comments, unknown keys rejected by name
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

Grid make_grid(const RunConfig& cfg);
Field make_data(const Grid& g, const DataSpec& d);
ParamSet make_params(const RunConfig& cfg);
BesovSpec make_besov(const RunConfig& cfg);

// every recognized key with its final (defaulted) value, for the summary echo
std::map<std::string, std::string> resolved_entries(const RunConfig& cfg);

}  // namespace bfam
