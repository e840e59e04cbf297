#pragma once

#include <string>

#include "entrokit/distributions.hpp"

namespace entrokit::io {

enum class Format { json, csv };

/// `arg` itself when it starts with '{' (inline JSON), otherwise the
/// contents of the file it names. ValidationError if the file is unreadable.
std::string read_source(const std::string& arg);

// Parsers accept JSON ({"p": [...]}, {"m": [[...]]}, {"t": [[[...]]]},
// {"w": [[...]]}) or CSV, chosen by whether the text starts with '{'. CSV
// rows are comma-separated; lines starting with '#' are comments except for
// the shape header of three-way tables. Malformed input throws
// ValidationError.
Distribution parse_distribution(const std::string& text, bool normalize);
JointDistribution2 parse_joint2(const std::string& text, bool normalize);
JointDistribution3 parse_joint3(const std::string& text, bool normalize);
Channel parse_channel(const std::string& text);

/// True when `text` is a JSON object with a "t" key.
bool looks_like_joint3(const std::string& text);

std::string write(const Distribution& p, Format format);
std::string write(const JointDistribution2& j, Format format);
std::string write(const JointDistribution3& j, Format format);
std::string write(const Channel& w, Format format);

/// %.17g, which reads back to the same double.
std::string format_real(double v);

}  // namespace entrokit::io
