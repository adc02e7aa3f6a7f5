#include "fuzzrisk/surface.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "fuzzrisk/detail/number_format.hpp"

namespace fuzzrisk {

namespace {

using detail::format_number;

struct ResolvedRequest {
  std::vector<int> axis_inputs;      // input position per axis
  std::vector<double> base_inputs;   // fixed values; axis slots overwritten per point
};

ResolvedRequest resolve(const FisDefinition& fis, const SweepRequest& request) {
  if (request.axes.empty() || request.axes.size() > 2) {
    throw std::invalid_argument("sweep needs one or two axes");
  }
  if (request.steps < 2) {
    throw std::invalid_argument("sweep steps must be at least 2");
  }
  ResolvedRequest resolved;
  for (const std::string& axis : request.axes) {
    const int idx = fis.input_index(axis);
    if (idx < 0) {
      throw std::invalid_argument("unknown sweep axis '" + axis + "'");
    }
    resolved.axis_inputs.push_back(idx);
  }
  if (resolved.axis_inputs.size() == 2 && resolved.axis_inputs[0] == resolved.axis_inputs[1]) {
    throw std::invalid_argument("sweep axes must be distinct inputs");
  }

  resolved.base_inputs.assign(fis.inputs.size(), 0.0);
  std::vector<bool> assigned(fis.inputs.size(), false);
  for (const auto& [name, value] : request.fixed) {
    const int idx = fis.input_index(name);
    if (idx < 0) {
      throw std::invalid_argument("unknown fixed input '" + name + "'");
    }
    if (std::find(resolved.axis_inputs.begin(), resolved.axis_inputs.end(), idx) !=
        resolved.axis_inputs.end()) {
      throw std::invalid_argument("input '" + name + "' is a sweep axis and cannot be fixed");
    }
    if (assigned[static_cast<std::size_t>(idx)]) {
      throw std::invalid_argument("duplicate fixed value for input '" + name + "'");
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("fixed value for input '" + name + "' must be finite");
    }
    assigned[static_cast<std::size_t>(idx)] = true;
    resolved.base_inputs[static_cast<std::size_t>(idx)] = value;
  }
  for (std::size_t i = 0; i < fis.inputs.size(); ++i) {
    const bool is_axis = std::find(resolved.axis_inputs.begin(), resolved.axis_inputs.end(),
                                   static_cast<int>(i)) != resolved.axis_inputs.end();
    if (!is_axis && !assigned[i]) {
      throw std::invalid_argument("missing fixed value for input '" + fis.inputs[i].name() + "'");
    }
  }
  return resolved;
}

std::vector<double> axis_samples(const LinguisticVariable& input, int steps) {
  std::vector<double> samples(static_cast<std::size_t>(steps));
  const double step = (input.hi() - input.lo()) / static_cast<double>(steps - 1);
  for (int i = 0; i < steps; ++i) {
    samples[static_cast<std::size_t>(i)] = input.lo() + step * static_cast<double>(i);
  }
  return samples;
}

SweepResult run_sweep(const FisDefinition& fis, const SweepRequest& request, int grid_size,
                      bool parallel) {
  const ResolvedRequest resolved = resolve(fis, request);
  const Evaluator evaluator(fis, grid_size);

  SweepResult result;
  result.model = fis.name;
  for (std::size_t a = 0; a < request.axes.size(); ++a) {
    const LinguisticVariable& input =
        fis.inputs[static_cast<std::size_t>(resolved.axis_inputs[a])];
    result.axes.push_back({input.name(), axis_samples(input, request.steps)});
  }
  result.fixed = request.fixed;
  std::sort(result.fixed.begin(), result.fixed.end());

  const long long rows = static_cast<long long>(result.axes[0].samples.size());
  const long long cols =
      result.axes.size() == 2 ? static_cast<long long>(result.axes[1].samples.size()) : 1;
  const long long total = rows * cols;
  result.values.assign(static_cast<std::size_t>(total), 0.0);

  // Every point is written by index, so the parallel and serial paths fill
  // the same slots with the same numbers.
  std::exception_ptr first_error = nullptr;
  std::atomic<bool> failed{false};
  const auto eval_point = [&](long long k) {
    if (failed.load(std::memory_order_relaxed)) return;
    try {
      std::vector<double> inputs = resolved.base_inputs;
      inputs[static_cast<std::size_t>(resolved.axis_inputs[0])] =
          result.axes[0].samples[static_cast<std::size_t>(k / cols)];
      if (result.axes.size() == 2) {
        inputs[static_cast<std::size_t>(resolved.axis_inputs[1])] =
            result.axes[1].samples[static_cast<std::size_t>(k % cols)];
      }
      result.values[static_cast<std::size_t>(k)] = evaluator.crisp(inputs);
    } catch (...) {
      if (!failed.exchange(true)) first_error = std::current_exception();
    }
  };

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < total; ++k) eval_point(k);
#else
    for (long long k = 0; k < total; ++k) eval_point(k);
#endif
  } else {
    for (long long k = 0; k < total; ++k) eval_point(k);
  }
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

}  // namespace

SweepResult sweep(const FisDefinition& fis, const SweepRequest& request, int grid_size) {
  return run_sweep(fis, request, grid_size, /*parallel=*/true);
}

SweepResult sweep_serial(const FisDefinition& fis, const SweepRequest& request, int grid_size) {
  return run_sweep(fis, request, grid_size, /*parallel=*/false);
}

std::string export_csv(const SweepResult& result) {
  std::ostringstream out;
  if (result.axes.size() == 1) {
    out << "x,value\n";
    for (std::size_t i = 0; i < result.values.size(); ++i) {
      out << format_number(result.axes[0].samples[i]) << "," << format_number(result.values[i])
          << "\n";
    }
  } else {
    out << "# x: " << result.axes[0].variable << " (rows), y: " << result.axes[1].variable
        << " (columns)\n";
    out << "x,y,value\n";
    const std::size_t cols = result.axes[1].samples.size();
    for (std::size_t k = 0; k < result.values.size(); ++k) {
      out << format_number(result.axes[0].samples[k / cols]) << ","
          << format_number(result.axes[1].samples[k % cols]) << ","
          << format_number(result.values[k]) << "\n";
    }
  }
  return out.str();
}

std::string export_json(const SweepResult& result) {
  nlohmann::ordered_json doc;
  doc["model"] = result.model;
  nlohmann::ordered_json axes = nlohmann::ordered_json::array();
  for (const SweepAxis& axis : result.axes) {
    axes.push_back({{"variable", axis.variable}, {"samples", axis.samples}});
  }
  doc["axes"] = std::move(axes);
  nlohmann::ordered_json fixed = nlohmann::ordered_json::object();
  for (const auto& [name, value] : result.fixed) {
    fixed[name] = value;
  }
  doc["fixed"] = std::move(fixed);
  if (result.axes.size() == 1) {
    doc["values"] = result.values;
  } else {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    const std::size_t cols = result.axes[1].samples.size();
    for (std::size_t r = 0; r < result.axes[0].samples.size(); ++r) {
      rows.push_back(std::vector<double>(result.values.begin() + static_cast<long>(r * cols),
                                         result.values.begin() + static_cast<long>((r + 1) * cols)));
    }
    doc["values"] = std::move(rows);
  }
  return doc.dump(2);
}

SweepResult sweep_from_json(std::string_view json_text) {
  const nlohmann::json doc = nlohmann::json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw std::invalid_argument("sweep document is not valid JSON");
  }
  try {
    SweepResult result;
    result.model = doc.at("model").get<std::string>();
    for (const auto& axis : doc.at("axes")) {
      result.axes.push_back({axis.at("variable").get<std::string>(),
                             axis.at("samples").get<std::vector<double>>()});
    }
    if (result.axes.empty() || result.axes.size() > 2) {
      throw std::invalid_argument("sweep document must have one or two axes");
    }
    for (const auto& [name, value] : doc.at("fixed").items()) {
      result.fixed.emplace_back(name, value.get<double>());
    }
    std::sort(result.fixed.begin(), result.fixed.end());
    if (result.axes.size() == 1) {
      result.values = doc.at("values").get<std::vector<double>>();
      if (result.values.size() != result.axes[0].samples.size()) {
        throw std::invalid_argument("sweep document values do not match the axis");
      }
    } else {
      const auto& rows = doc.at("values");
      if (!rows.is_array() || rows.size() != result.axes[0].samples.size()) {
        throw std::invalid_argument("sweep document values do not match the axes");
      }
      for (const auto& row : rows) {
        const auto row_values = row.get<std::vector<double>>();
        if (row_values.size() != result.axes[1].samples.size()) {
          throw std::invalid_argument("sweep document values do not match the axes");
        }
        result.values.insert(result.values.end(), row_values.begin(), row_values.end());
      }
    }
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed sweep document: ") + e.what());
  }
}

}  // namespace fuzzrisk
