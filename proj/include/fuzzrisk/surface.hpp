#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzrisk/fis.hpp"
#include "fuzzrisk/inference.hpp"

namespace fuzzrisk {

inline constexpr int kDefaultSweepSteps = 51;

struct SweepRequest {
  /// One name for a response curve, two for a response surface.
  std::vector<std::string> axes;
  /// Values for every input that is not an axis.
  std::vector<std::pair<std::string, double>> fixed;
  /// Samples per axis, inclusive universe endpoints, >= 2.
  int steps = kDefaultSweepSteps;
};

struct SweepAxis {
  std::string variable;
  std::vector<double> samples;

  bool operator==(const SweepAxis&) const = default;
};

struct SweepResult {
  std::string model;
  std::vector<SweepAxis> axes;
  /// Fixed inputs, sorted by variable name.
  std::vector<std::pair<std::string, double>> fixed;
  /// Crisp outputs, flattened row-major: axes[0] varies across rows, axes[1]
  /// across columns. A curve has axes.size() == 1 and steps values.
  std::vector<double> values;

  bool operator==(const SweepResult&) const = default;
};

/// Evaluates the model over the requested grid. Parallelised with OpenMP when
/// the build has it; results are assembled by index and bit-identical to
/// sweep_serial. Throws std::invalid_argument on a malformed request.
SweepResult sweep(const FisDefinition& fis, const SweepRequest& request,
                  int grid_size = kDefaultGridSize);

/// Single-threaded reference implementation with identical output; kept for
/// tests and the benchmark.
SweepResult sweep_serial(const FisDefinition& fis, const SweepRequest& request,
                         int grid_size = kDefaultGridSize);

/// CSV rendering: curves as "x,value" rows; surfaces as "x,y,value" rows in
/// row-major order behind an orientation comment line.
std::string export_csv(const SweepResult& result);

/// JSON rendering with model name, axes, fixed inputs and values (nested rows
/// for surfaces). Round-trips through sweep_from_json.
std::string export_json(const SweepResult& result);

/// Rebuilds a SweepResult from export_json output; throws
/// std::invalid_argument on malformed documents.
SweepResult sweep_from_json(std::string_view json_text);

}  // namespace fuzzrisk
