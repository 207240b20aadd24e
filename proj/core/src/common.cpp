#include "subtok/common.hpp"

#include "subtok/error.hpp"

namespace subtok {

std::string_view to_string(SegmentationMode mode) {
  return mode == SegmentationMode::kScalar ? "scalar" : "grapheme";
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kChar: return "char";
    case ModelKind::kBpe: return "bpe";
    case ModelKind::kUnigram: return "unigram";
  }
  return "char";
}

SegmentationMode parse_segmentation_mode(std::string_view name) {
  if (name == "scalar") return SegmentationMode::kScalar;
  if (name == "grapheme") return SegmentationMode::kGrapheme;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown segmentation mode '" + std::string(name) + "'");
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "char") return ModelKind::kChar;
  if (name == "bpe") return ModelKind::kBpe;
  if (name == "unigram") return ModelKind::kUnigram;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown model kind '" + std::string(name) + "'");
}

}  // namespace subtok
