#pragma once

#include <string>
#include <variant>

#include "convcode/lrc.hpp"
#include "convcode/mds.hpp"

namespace convcode {

/// Any instance the serializer understands.
using AnyCode =
    std::variant<MdsConvertibleCode, LrcConvertibleCode, DefaultReencodeMds>;

/// "mds", "lrc" or "mds-reencode".
const char* spec_kind(const AnyCode& code);

/// Pretty JSON text describing the instance: field, parameters, evaluation
/// layout, pairing scalars, pairing matrices and final multipliers.
/// Serializing a loaded instance reproduces the file byte for byte.
std::string spec_to_json(const AnyCode& code);

/// Parses spec text.  Structural problems (malformed JSON, missing keys,
/// wrong shapes) raise IoError; the stored numbers are reassembled without
/// re-deriving them, so tampered values surface later as named condition
/// failures during verification instead of being silently repaired.
AnyCode spec_from_json(const std::string& text);

/// File wrappers; IoError when the file cannot be read or written.
void save_spec(const std::string& path, const AnyCode& code);
AnyCode load_spec(const std::string& path);

}  // namespace convcode
