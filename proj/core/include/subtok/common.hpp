#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace subtok {

// Granularity of the atomic character unit. Recorded in every serialized
// model and lexicon.
enum class SegmentationMode {
  kScalar,    // one unit per Unicode scalar value
  kGrapheme,  // one unit per extended grapheme cluster
};

enum class ModelKind { kChar, kBpe, kUnigram };

inline constexpr std::string_view kDefaultUnkToken = "<unk>";

// Heterogeneous-lookup hash for std::string keyed unordered containers.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

std::string_view to_string(SegmentationMode mode);
std::string_view to_string(ModelKind kind);

// Both throw Error(kInvalidArgument) on an unrecognized name.
SegmentationMode parse_segmentation_mode(std::string_view name);
ModelKind parse_model_kind(std::string_view name);

}  // namespace subtok
