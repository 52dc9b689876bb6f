#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace elastica {

enum class ErrorCode {
  kInvalidGrid,
  kInvalidArgument,
  kUnknownPreset,
  kDegenerateMesh,
  kUnsupportedDimension,
  kInconsistency,
  kNonFinite,
  kInvalidMonitor,
  kSolverFailure,
  kAccuracy,
  kMeshCollapse,
  kConfig,
  kBlowDown,
  kUnsupportedReference,
  kGridMismatch,
  kUndefinedEoc,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. `index()` carries the offending
// edge, pivot column or step, depending on the code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace elastica
